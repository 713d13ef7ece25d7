#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wmlg/cost.hpp"
#include "wmlg/limits.hpp"
#include "wmlg/panel.hpp"
#include "wmlg/weights.hpp"

namespace wmlg {

enum class IndexKind { General, Kakwani, Sen, Shorrocks, Thon, Fgt };
enum class TailVariant { Shorrocks, Thon };

/// Everything needed to evaluate one index family: the kind, its parameters,
/// the gap cost, and -- for General -- the weight scheme plus (optionally)
/// the limit kernels that make the asymptotic layer applicable to it.
struct IndexSpec {
    IndexKind kind = IndexKind::Fgt;
    int k = 1;                 ///< Kakwani order
    double alpha = 1.0;        ///< FGT exponent
    CostFunction cost = CostFunction::identity();
    std::optional<WeightScheme> scheme;    ///< General only
    std::optional<LimitFunctions> limits;  ///< General only, for asymptotics

    static IndexSpec kakwani(int k, CostFunction cost = CostFunction::identity());
    static IndexSpec sen(CostFunction cost = CostFunction::identity());
    static IndexSpec shorrocks(CostFunction cost = CostFunction::identity());
    static IndexSpec thon(CostFunction cost = CostFunction::identity());
    static IndexSpec fgt(double alpha);
    static IndexSpec general(WeightScheme scheme, CostFunction cost,
                             std::optional<LimitFunctions> limits = {});

    std::string label() const; ///< e.g. "kakwani(2)", "fgt(1)", "shorrocks"
};

/// The general upper-threshold weighted mean of normalized gaps,
///   (A(n,Q) / (n B(Q))) * sum_{j=1..Q} w(mu1 n + mu2 Q - mu3 j + mu4) d((z-Y_(j))/z),
/// with Q = #{Y_j <= z}. Empty marked set -> 0. Summation runs j = Q..1 so
/// the accumulated weights are added in the same order B(Q) accumulates them,
/// making full deprivation (all gaps at d = 1) return exactly 1.0.
double wmlg_general(const CrossSection& s, double z, const WeightScheme& scheme,
                    const CostFunction& cost);

/// Kakwani order-k index (k >= 1); k = 1 with identity cost is Sen.
double kakwani_index(const CrossSection& s, double z, int k,
                     const CostFunction& cost = CostFunction::identity());

/// Shorrocks / Thon: sum_{j<=Q} (2n - 2j + 1) d(gap_j) with normalizer
/// n(n+1) (Shorrocks) or n^2 (Thon).
double shorrocks_thon_index(const CrossSection& s, double z, TailVariant variant,
                            const CostFunction& cost = CostFunction::identity());

/// FGT(alpha >= 0): mean of ((z-Y)/z)^alpha over the marked set, 0^0 := 1,
/// so alpha = 0 is exactly the headcount ratio.
double fgt_index(const CrossSection& s, double z, double alpha);

/// Dispatch on the spec.
double evaluate_index(const CrossSection& s, double z, const IndexSpec& spec);

/// The index at every grid time, as (time, value) pairs. Errors from a single
/// slice are rethrown with the offending time named in the message.
std::vector<std::pair<double, double>> index_series(const PanelDataset& panel,
                                                    const ThresholdSchedule& thresholds,
                                                    const IndexSpec& spec);

} // namespace wmlg
