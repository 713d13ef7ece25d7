#include "wmlg/variation.hpp"

#include <algorithm>
#include <cmath>

#include "wmlg/errors.hpp"
#include "wmlg/stats.hpp"
#include "wmlg/util.hpp"

namespace wmlg {

namespace {

constexpr double kClampFloor = -1e-10;

double clamp_variance(double v, const char* label, std::vector<std::string>& warnings) {
    if (v >= 0.0) return v;
    if (v >= kClampFloor) {
        warnings.push_back(strfmt("%s = %.3e is negative within noise; clamped to 0", label, v));
        return 0.0;
    }
    throw NegativeVariance(strfmt("%s = %.6e is negative beyond the -1e-10 tolerance", label, v));
}

std::size_t index_of_time(const CovarianceEstimate& cov, double t) {
    for (std::size_t i = 0; i < cov.times.size(); ++i)
        if (cov.times[i] == t) return i;
    throw UnknownTime("time " + std::to_string(t) + " not present in the covariance estimate");
}

} // namespace

DeltaVariances delta_variances(const CovarianceEstimate& cov, double t, double s, double j_t,
                               double j_s) {
    const std::size_t it = index_of_time(cov, t);
    const std::size_t is = index_of_time(cov, s);
    const double g_tt = cov.at(it, it), g_ss = cov.at(is, is), g_ts = cov.at(it, is);

    DeltaVariances out;
    out.gamma4 = clamp_variance(g_tt + g_ss - 2.0 * g_ts, "gamma4", out.warnings);
    if (j_t == 0.0)
        throw UndefinedRelativeChange("relative change undefined: J_n(t) = 0 at t=" +
                                      std::to_string(t));
    out.delta_rj = (j_s - j_t) / j_t;
    out.a1 = -(1.0 + out.delta_rj) / j_t;
    out.a2 = 1.0 / j_t;
    out.gamma5 = clamp_variance(
        out.a1 * out.a1 * g_tt + out.a2 * out.a2 * g_ss + 2.0 * out.a1 * out.a2 * g_ts, "gamma5",
        out.warnings);
    return out;
}

Interval confidence_interval(double point, double variance, std::size_t n, double alpha) {
    if (n == 0) throw std::invalid_argument("confidence_interval: n must be positive");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("confidence_interval: level alpha must lie in (0,1)");
    if (variance < 0.0)
        throw NegativeVariance(strfmt("confidence_interval: variance %.6e < 0", variance));
    const double u = norm_quantile(1.0 - alpha / 2.0);
    // sqrt(v)/sqrt(n) rather than sqrt(v/n): with n -> 4n the denominator
    // doubles exactly (sqrt is correctly rounded), so the width halves
    // bit-for-bit given the same variance.
    const double hw = u * (std::sqrt(variance) / std::sqrt((double)n));
    return {point - hw, point + hw};
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Achieved: return "achieved";
        case Verdict::NotAchieved: return "not-achieved";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

Verdict mdg_check(const Interval& relative_interval, double target) {
    if (relative_interval.upper <= target) return Verdict::Achieved;
    if (relative_interval.lower > target) return Verdict::NotAchieved;
    return Verdict::Inconclusive;
}

VariationReport variation_report_from(const CovarianceEstimate& cov, double t, double s,
                                      double j_t, double j_s, std::size_t n, double alpha,
                                      std::optional<double> target) {
    VariationReport rep;
    rep.t = t;
    rep.s = s;
    rep.n = n;
    rep.index_label = cov.index_label;
    rep.cov_method = cov.method;
    rep.level = alpha;
    rep.j_t = j_t;
    rep.j_s = j_s;
    rep.delta_j = j_s - j_t;
    rep.warnings = cov.warnings;

    DeltaVariances dv = delta_variances(cov, t, s, j_t, j_s);
    rep.delta_rj = dv.delta_rj;
    rep.gamma4 = dv.gamma4;
    rep.gamma5 = dv.gamma5;
    rep.a1 = dv.a1;
    rep.a2 = dv.a2;
    rep.warnings.insert(rep.warnings.end(), dv.warnings.begin(), dv.warnings.end());

    rep.interval_abs = confidence_interval(rep.delta_j, rep.gamma4, n, alpha);
    rep.interval_rel = confidence_interval(rep.delta_rj, rep.gamma5, n, alpha);
    if (target) {
        rep.target = target;
        rep.verdict = mdg_check(rep.interval_rel, *target);
    }
    return rep;
}

VariationReport variation_report(const PanelDataset& panel, const ThresholdSchedule& thresholds,
                                 const IndexSpec& spec, double t, double s, double alpha,
                                 std::optional<double> target, const CovarianceOptions& cov_opts) {
    const double j_t = evaluate_index(cross_section(panel, t), thresholds.at(t), spec);
    const double j_s = evaluate_index(cross_section(panel, s), thresholds.at(s), spec);
    CovarianceEstimate cov = covariance_plugin(panel, {t, s}, thresholds, spec, cov_opts);
    return variation_report_from(cov, t, s, j_t, j_s, panel.n(), alpha, target);
}

} // namespace wmlg
