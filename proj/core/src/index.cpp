#include "wmlg/index.hpp"

#include <cmath>
#include <stdexcept>

#include "wmlg/errors.hpp"
#include "wmlg/util.hpp"

namespace wmlg {

IndexSpec IndexSpec::kakwani(int k, CostFunction cost) {
    if (k < 1) throw std::invalid_argument("kakwani: k must be >= 1");
    IndexSpec s;
    s.kind = IndexKind::Kakwani;
    s.k = k;
    s.cost = std::move(cost);
    s.scheme = WeightScheme::kakwani(k);
    return s;
}

IndexSpec IndexSpec::sen(CostFunction cost) {
    IndexSpec s = kakwani(1, std::move(cost));
    s.kind = IndexKind::Sen;
    return s;
}

IndexSpec IndexSpec::shorrocks(CostFunction cost) {
    IndexSpec s;
    s.kind = IndexKind::Shorrocks;
    s.cost = std::move(cost);
    return s;
}

IndexSpec IndexSpec::thon(CostFunction cost) {
    IndexSpec s;
    s.kind = IndexKind::Thon;
    s.cost = std::move(cost);
    return s;
}

IndexSpec IndexSpec::fgt(double alpha) {
    IndexSpec s;
    s.kind = IndexKind::Fgt;
    s.alpha = alpha;
    s.cost = CostFunction::power(alpha);
    s.scheme = WeightScheme::unit();
    return s;
}

IndexSpec IndexSpec::general(WeightScheme scheme, CostFunction cost,
                             std::optional<LimitFunctions> limits) {
    IndexSpec s;
    s.kind = IndexKind::General;
    s.cost = std::move(cost);
    s.scheme = std::move(scheme);
    s.limits = std::move(limits);
    return s;
}

std::string IndexSpec::label() const {
    switch (kind) {
        case IndexKind::General:   return "general[" + scheme->name() + "," + cost.name() + "]";
        case IndexKind::Kakwani:   return "kakwani(" + std::to_string(k) + ")";
        case IndexKind::Sen:       return "sen";
        case IndexKind::Shorrocks: return "shorrocks";
        case IndexKind::Thon:      return "thon";
        case IndexKind::Fgt:       return "fgt(" + strfmt("%g", alpha) + ")";
    }
    return "?";
}

double wmlg_general(const CrossSection& s, double z, const WeightScheme& scheme,
                    const CostFunction& cost) {
    const std::int64_t n = (std::int64_t)s.sorted.size();
    const std::int64_t Q = headcount(s, z);
    if (Q == 0) return 0.0;

    // Descending j means the weight index mu2*Q - mu3*j + mu4 ascends for the
    // canonical (0,1,1,1) map, so at full deprivation with d == 1 the partial
    // sums replay B(Q)'s own accumulation order term by term; the final
    // single division (A*S)/(n*B) then returns exactly 1.0.
    double S = 0.0;
    for (std::int64_t j = Q; j >= 1; --j) {
        const std::int64_t arg = (std::int64_t)scheme.mu1() * n + (std::int64_t)scheme.mu2() * Q -
                                 (std::int64_t)scheme.mu3() * j + (std::int64_t)scheme.mu4();
        if (arg <= 0)
            throw InvalidWeightIndex("weight argument " + std::to_string(arg) +
                                     " out of range at rank " + std::to_string(j) +
                                     " (n=" + std::to_string(n) + ", Q=" + std::to_string(Q) + ")");
        S += scheme.w(arg) * cost((z - s.sorted[(std::size_t)j - 1]) / z);
    }
    const double B = scheme.B(Q);
    if (!(B > 0.0))
        throw DegenerateWeights("B(Q)=" + std::to_string(B) + " for Q=" + std::to_string(Q) +
                                " under scheme \"" + scheme.name() + "\"");
    return (scheme.A(n, Q) * S) / ((double)n * B);
}

double kakwani_index(const CrossSection& s, double z, int k, const CostFunction& cost) {
    return wmlg_general(s, z, WeightScheme::kakwani(k), cost);
}

double shorrocks_thon_index(const CrossSection& s, double z, TailVariant variant,
                            const CostFunction& cost) {
    const std::int64_t n = (std::int64_t)s.sorted.size();
    const std::int64_t Q = headcount(s, z);
    // Weights 2n-2j+1 are odd integers counting down from 2n-1; over a fully
    // deprived sample they sum to n^2 exactly (and to n(n+1) with the +1
    // convention absorbed), so both normalizers hit 1 with no rounding at all:
    // every term and every partial sum is an exact integer below 2^53.
    double S = 0.0;
    for (std::int64_t j = 1; j <= Q; ++j)
        S += (double)(2 * n - 2 * j + 1) * cost((z - s.sorted[(std::size_t)j - 1]) / z);
    const double denom = variant == TailVariant::Thon ? (double)n * (double)n
                                                      : (double)n * (double)(n + 1);
    return S / denom;
}

double fgt_index(const CrossSection& s, double z, double alpha) {
    return wmlg_general(s, z, WeightScheme::unit(), CostFunction::power(alpha));
}

double evaluate_index(const CrossSection& s, double z, const IndexSpec& spec) {
    switch (spec.kind) {
        case IndexKind::General:
            return wmlg_general(s, z, *spec.scheme, spec.cost);
        case IndexKind::Kakwani:
        case IndexKind::Sen:
            return wmlg_general(s, z, *spec.scheme, spec.cost);
        case IndexKind::Shorrocks:
            return shorrocks_thon_index(s, z, TailVariant::Shorrocks, spec.cost);
        case IndexKind::Thon:
            return shorrocks_thon_index(s, z, TailVariant::Thon, spec.cost);
        case IndexKind::Fgt:
            return wmlg_general(s, z, *spec.scheme, spec.cost);
    }
    throw std::invalid_argument("evaluate_index: bad kind");
}

namespace {
// Rethrow the same concrete error type with the offending time prepended.
template <typename E>
[[noreturn]] void rethrow_at(const E& e, double t) {
    throw E("at t=" + strfmt("%g", t) + ": " + e.what());
}
} // namespace

std::vector<std::pair<double, double>> index_series(const PanelDataset& panel,
                                                    const ThresholdSchedule& thresholds,
                                                    const IndexSpec& spec) {
    std::vector<std::pair<double, double>> out;
    out.reserve(panel.m());
    for (double t : panel.times()) {
        try {
            out.emplace_back(t, evaluate_index(cross_section(panel, t), thresholds.at(t), spec));
        } catch (const InvalidWeightIndex& e) { rethrow_at(e, t); }
          catch (const DegenerateWeights& e) { rethrow_at(e, t); }
          catch (const UnknownTime& e) { rethrow_at(e, t); }
          catch (const InvalidOutcome& e) { rethrow_at(e, t); }
          catch (const Error& e) { rethrow_at(e, t); }
    }
    return out;
}

} // namespace wmlg
