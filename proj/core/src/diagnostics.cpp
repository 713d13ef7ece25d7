#include "wmlg/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "wmlg/quadrature.hpp"
#include "wmlg/stats.hpp"
#include "wmlg/util.hpp"

namespace wmlg {

namespace {

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double hi = v[mid];
    if (v.size() % 2) return hi;
    std::nth_element(v.begin(), v.begin() + mid - 1, v.end());
    return 0.5 * (v[mid - 1] + hi);
}

void validate_r(double r) {
    if (!(r > 0.0 && r < 0.5))
        throw std::invalid_argument("diagnostics: exponent r must lie in (0, 1/2)");
}

// Flag quotients that stand out against the pack; with fewer than three pairs
// there is no meaningful pack, so nothing is flagged.
void apply_flags(DiagnosticsReport& rep) {
    if (rep.pairs.size() < 3) return;
    std::vector<double> zq, yq;
    for (const auto& p : rep.pairs) {
        zq.push_back(p.z_quotient);
        yq.push_back(p.y_quotient);
    }
    double zmed = median(zq), ymed = median(yq);
    for (auto& p : rep.pairs) {
        p.z_flagged = zmed > 0.0 && p.z_quotient > rep.flag_factor * zmed;
        p.y_flagged = ymed > 0.0 && p.y_quotient > rep.flag_factor * ymed;
        rep.any_flag = rep.any_flag || p.z_flagged || p.y_flagged;
    }
}

void finish(DiagnosticsReport& rep) {
    apply_flags(rep);
    if (!rep.mass_bounds_ok)
        rep.notes.push_back(strfmt(
            "mass bounds violated: need 0 < beta <= xi < 1, got beta=%g xi=%g (thresholds may "
            "sit outside the outcome range)", rep.beta_hat, rep.xi_hat));
    for (const auto& p : rep.pairs) {
        if (p.z_flagged)
            rep.notes.push_back(strfmt("threshold path jumps between t=%g and t=%g "
                                       "(quotient %.4g far above the pack)", p.t, p.s, p.z_quotient));
        if (p.y_flagged)
            rep.notes.push_back(strfmt("outcome increments spike between t=%g and t=%g "
                                       "(quotient %.4g far above the pack)", p.t, p.s, p.y_quotient));
    }
}

} // namespace

DiagnosticsReport hypothesis_diagnostics(const PanelDataset& panel,
                                         const ThresholdSchedule& thresholds, double r,
                                         double flag_factor) {
    validate_r(r);
    DiagnosticsReport rep;
    rep.r = r;
    rep.flag_factor = flag_factor;
    rep.z1 = thresholds.z1();
    rep.z2 = thresholds.z2();

    rep.beta_hat = 1.0;
    rep.xi_hat = 0.0;
    std::vector<CrossSection> secs;
    secs.reserve(panel.m());
    for (double t : panel.times()) secs.push_back(cross_section(panel, t));
    for (const auto& s : secs) {
        rep.beta_hat = std::min(rep.beta_hat, empirical_cdf(s, thresholds.z1()));
        rep.xi_hat = std::max(rep.xi_hat, empirical_cdf(s, thresholds.z2()));
    }
    rep.mass_bounds_ok = rep.beta_hat > 0.0 && rep.beta_hat <= rep.xi_hat && rep.xi_hat < 1.0;

    const auto& times = panel.times();
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        AdjacentQuotient aq;
        aq.t = times[k];
        aq.s = times[k + 1];
        double dt = std::abs(aq.s - aq.t);
        double denom = std::pow(dt, 1.0 + r);
        double dz = thresholds.at(aq.s) - thresholds.at(aq.t);
        aq.z_quotient = dz * dz / denom;
        double msq = 0.0;
        for (std::size_t i = 0; i < panel.n(); ++i) {
            double d = panel.value(i, k + 1) - panel.value(i, k);
            msq += d * d;
        }
        aq.y_quotient = msq / (double)panel.n() / denom;
        rep.pairs.push_back(aq);
    }
    finish(rep);
    return rep;
}

DiagnosticsReport hypothesis_diagnostics(const DistributionModel& model,
                                         const ThresholdSchedule& thresholds, double r,
                                         double flag_factor) {
    validate_r(r);
    DiagnosticsReport rep;
    rep.r = r;
    rep.flag_factor = flag_factor;
    rep.z1 = thresholds.z1();
    rep.z2 = thresholds.z2();

    MassBounds mb = mass_bounds(model, thresholds);
    rep.beta_hat = mb.beta_hat;
    rep.xi_hat = mb.xi_hat;
    rep.mass_bounds_ok = mb.ok;

    // E[Y(t)^2] and E[Y(t)Y(s)] in normal-score space; the phi weight tames
    // the unbounded quantiles, +-8.3 truncation discards ~1e-16 of the mass.
    const double cut = 8.3;
    QuadratureOptions q1;
    q1.base_nodes = 2049;
    auto ey2 = [&](const Marginal& m) {
        return integrate(
            [&](double x) {
                double y = m.quantile_normal(x);
                return norm_pdf(x) * y * y;
            },
            -cut, cut, q1);
    };
    auto evv = [&](const Marginal& mt, const Marginal& ms, double rho) {
        // E[q_t(X) q_s(rho X + sqrt(1-rho^2) W)] via the conditional mean of
        // the inner quantile, evaluated on a product grid.
        const int N = 513;
        double h = 2.0 * cut / (N - 1);
        double acc = 0.0;
        for (int i = 0; i < N; ++i) {
            double x = -cut + i * h;
            double wi = (i == 0 || i == N - 1 ? 1.0 : (i % 2 ? 4.0 : 2.0)) * h / 3.0;
            double inner = 0.0;
            for (int j = 0; j < N; ++j) {
                double w = -cut + j * h;
                double wj = (j == 0 || j == N - 1 ? 1.0 : (j % 2 ? 4.0 : 2.0)) * h / 3.0;
                double ys = ms.quantile_normal(rho * x + std::sqrt(1.0 - rho * rho) * w);
                inner += wj * norm_pdf(w) * ys;
            }
            acc += wi * norm_pdf(x) * mt.quantile_normal(x) * inner;
        }
        return acc;
    };

    const auto& times = model.times();
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        AdjacentQuotient aq;
        aq.t = times[k];
        aq.s = times[k + 1];
        double dt = std::abs(aq.s - aq.t);
        double denom = std::pow(dt, 1.0 + r);
        double dz = thresholds.at(aq.s) - thresholds.at(aq.t);
        aq.z_quotient = dz * dz / denom;
        const Marginal& mt = model.marginal_at(k);
        const Marginal& ms = model.marginal_at(k + 1);
        double rho = model.rho_between(aq.t, aq.s);
        double m2;
        if (rho == 1.0) {
            // comonotone: E (q_t(X) - q_s(X))^2 directly
            m2 = integrate(
                [&](double x) {
                    double d = mt.quantile_normal(x) - ms.quantile_normal(x);
                    return norm_pdf(x) * d * d;
                },
                -cut, cut, q1);
        } else {
            m2 = ey2(mt) + ey2(ms) - 2.0 * evv(mt, ms, rho);
        }
        aq.y_quotient = m2 / denom;
        rep.pairs.push_back(aq);
    }
    finish(rep);
    return rep;
}

} // namespace wmlg
