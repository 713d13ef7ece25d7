#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wmlg/covariance.hpp"
#include "wmlg/index.hpp"
#include "wmlg/panel.hpp"

namespace wmlg {

/// Delta-method variances for the index change between two grid times:
///   gamma4 for the absolute change J(s) - J(t),
///   gamma5 for the relative change (J(s) - J(t))/J(t),
/// with the linearization coefficients a1 = -(1 + DRJ)/J(t), a2 = 1/J(t).
/// Plug-in noise can push either slightly negative: within -1e-10 the value
/// is clamped to 0 with a warning; anything more negative is an error.
struct DeltaVariances {
    double gamma4 = 0.0;
    double gamma5 = 0.0;
    double a1 = 0.0, a2 = 0.0;
    double delta_rj = 0.0;
    std::vector<std::string> warnings;
};

DeltaVariances delta_variances(const CovarianceEstimate& cov, double t, double s, double j_t,
                               double j_s);

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

/// Two-sided normal interval point +- u_{1-alpha/2} sqrt(variance)/sqrt(n).
/// The half-width is evaluated so that quadrupling n halves it bit-for-bit.
Interval confidence_interval(double point, double variance, std::size_t n, double alpha);

enum class Verdict { Achieved, NotAchieved, Inconclusive };
std::string verdict_name(Verdict v);

/// Goal check against a relative-change target (default: halving, -0.5):
/// achieved when the whole interval sits at or below the target, not achieved
/// when it sits strictly above, inconclusive when the target is interior.
Verdict mdg_check(const Interval& relative_interval, double target = -0.5);

struct VariationReport {
    double t = 0.0, s = 0.0;
    std::size_t n = 0;
    std::string index_label, cov_method;
    double level = 0.05;
    double j_t = 0.0, j_s = 0.0;
    double delta_j = 0.0;   ///< J_n(s) - J_n(t)
    double delta_rj = 0.0;  ///< delta_j / J_n(t)
    double gamma4 = 0.0, gamma5 = 0.0, a1 = 0.0, a2 = 0.0;
    Interval interval_abs;  ///< for delta_j (gamma4)
    Interval interval_rel;  ///< for delta_rj (gamma5)
    std::optional<double> target;
    std::optional<Verdict> verdict; ///< present iff target is
    std::vector<std::string> warnings;
};

/// End-to-end variation inference on panel data with the plug-in covariance.
VariationReport variation_report(const PanelDataset& panel, const ThresholdSchedule& thresholds,
                                 const IndexSpec& spec, double t, double s, double alpha,
                                 std::optional<double> target = {},
                                 const CovarianceOptions& cov_opts = {});

/// Same assembly from precomputed pieces (any covariance source).
VariationReport variation_report_from(const CovarianceEstimate& cov, double t, double s,
                                      double j_t, double j_s, std::size_t n, double alpha,
                                      std::optional<double> target = {});

} // namespace wmlg
