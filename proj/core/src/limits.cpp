#include "wmlg/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "wmlg/errors.hpp"
#include "wmlg/limits.hpp"

namespace wmlg {

LimitFunctions LimitFunctions::kakwani(int k) {
    if (k < 1) throw std::invalid_argument("kakwani limit kernels: k must be >= 1");
    LimitFunctions L;
    L.ratio_route = true;
    L.label = "kakwani(" + std::to_string(k) + ")";
    L.c = [k](double x, double y) { return ipow(x - y, k); };
    L.dc_dx = [k](double x, double y) { return k * ipow(x - y, k - 1); };
    L.dc_dy = [k](double x, double y) { return -k * ipow(x - y, k - 1); };
    L.pi = [k](double x, double y) { return ipow(y, k) / x; };
    L.dpi_dx = [k](double x, double y) { return -ipow(y, k) / (x * x); };
    L.dpi_dy = [k](double x, double y) { return k * ipow(y, k - 1) / x; };
    return L;
}

LimitFunctions LimitFunctions::shorrocks_thon() {
    LimitFunctions L;
    L.ratio_route = false;
    L.label = "shorrocks-thon";
    // Both variants share the limit: the rank weight (2n-2j+1)/n^2 tends to
    // the kernel 2(1-s) ds, and the n(n+1) vs n^2 normalizers agree to O(1/n).
    L.c = [](double, double y) { return 2.0 * (1.0 - y); };
    L.dc_dx = [](double, double) { return 0.0; };
    L.dc_dy = [](double, double) { return -2.0; };
    return L;
}

LimitFunctions LimitFunctions::fgt() {
    LimitFunctions L;
    L.ratio_route = false;
    L.label = "fgt";
    L.c = [](double, double) { return 1.0; };
    L.dc_dx = [](double, double) { return 0.0; };
    L.dc_dy = [](double, double) { return 0.0; };
    return L;
}

LimitFunctions limit_functions_for(const IndexSpec& spec) {
    switch (spec.kind) {
        case IndexKind::Kakwani:
        case IndexKind::Sen:
            return LimitFunctions::kakwani(spec.k);
        case IndexKind::Shorrocks:
        case IndexKind::Thon:
            return LimitFunctions::shorrocks_thon();
        case IndexKind::Fgt:
            return LimitFunctions::fgt();
        case IndexKind::General:
            if (spec.limits) return *spec.limits;
            throw std::invalid_argument(
                "general index spec has no limit kernels; supply them to use the asymptotic layer");
    }
    throw std::invalid_argument("limit_functions_for: bad kind");
}

namespace {

constexpr double kHpiFloor = 1e-12;

// gamma on the probability scale: d((Z - G^{-1}(p))/Z), clamped into [0,1]
// against quantile round-off at the p = q edge.
std::function<double(double)> make_gamma_tilde(std::shared_ptr<const Marginal> m, double z,
                                               CostFunction cost) {
    return [m = std::move(m), z, cost = std::move(cost)](double p) {
        double u = (z - m->quantile(p)) / z;
        return cost(std::clamp(u, 0.0, 1.0));
    };
}

} // namespace

TheoremOneBundle theorem_one_bundle(const DistributionModel& model, double t,
                                    const ThresholdSchedule& thresholds, const IndexSpec& spec,
                                    const QuadratureOptions& opts) {
    const LimitFunctions L = limit_functions_for(spec);
    auto marginal = model.marginal_ptr(t);
    const double z = thresholds.at(t);
    const double q = marginal->cdf(z);
    if (!(q > 0.0))
        throw DegenerateModel("no mass at or below the threshold (G_t(Z) = 0) at t=" +
                              std::to_string(t));

    TheoremOneBundle B;
    B.t = t;
    B.z = z;
    B.q = q;
    B.ratio_route = L.ratio_route;

    auto gamma_tilde = make_gamma_tilde(marginal, z, spec.cost);
    B.H_c = integrate_prob([&](double p) { return L.c(q, p) * gamma_tilde(p); }, 0.0, q, opts);
    B.K_c = integrate_prob([&](double p) { return L.dc_dx(q, p) * gamma_tilde(p); }, 0.0, q, opts);
    if (L.ratio_route) {
        B.H_pi = integrate_prob([&](double p) { return L.pi(q, p); }, 0.0, q, opts);
        if (!(std::abs(B.H_pi) > kHpiFloor))
            throw DegenerateModel("ratio normalizer H_pi ~ 0 at t=" + std::to_string(t) +
                                  " (marked mass too thin for the ratio route)");
        B.K_pi = integrate_prob([&](double p) { return L.dpi_dx(q, p); }, 0.0, q, opts);
    } else {
        B.H_pi = 1.0;
        B.K_pi = 0.0;
    }
    B.J = B.H_c / B.H_pi;
    // Fluctuation of the headcount ratio enters the representation with the
    // derivative of u -> int c(u,s) gamma / int pi(u,s) taken in the first
    // kernel argument only; by the quotient rule:
    B.K = B.K_c / B.H_pi - B.H_c * B.K_pi / (B.H_pi * B.H_pi);

    const double Hc = B.H_c, Hpi = B.H_pi, K = B.K;
    const double inv_pi = 1.0 / Hpi, ratio2 = Hc / (Hpi * Hpi);
    const bool ratio = L.ratio_route;

    // outcome-space gamma (and the marked-set indicator e(y) = 1{y <= z})
    auto cost = spec.cost;
    B.gamma = [marginal, z, cost](double y) {
        if (y > z) return 0.0;
        return cost(std::clamp((z - y) / z, 0.0, 1.0));
    };

    auto G = [marginal](double y) { return marginal->cdf(y); };
    auto gamma_y = B.gamma;

    B.g_c = [L, q, z, G, gamma_y](double y) {
        return y > z ? 0.0 : L.c(q, G(y)) * gamma_y(y);
    };
    B.g_pi = [L, q, z, G, ratio](double y) {
        return (!ratio || y > z) ? 0.0 : L.pi(q, G(y));
    };
    B.nu_c = [L, q, z, G, gamma_y](double y) {
        return y > z ? 0.0 : L.dc_dy(q, G(y)) * gamma_y(y);
    };
    B.nu_pi = [L, q, z, G, ratio](double y) {
        return (!ratio || y > z) ? 0.0 : L.dpi_dy(q, G(y));
    };

    // Assembled influence pieces. The headcount drift K multiplies the bare
    // indicator and sits at the top level of g (not inside the pi part).
    auto g_c = B.g_c, g_pi = B.g_pi, nu_c = B.nu_c, nu_pi = B.nu_pi;
    if (ratio) {
        B.g = [=](double y) {
            return y > z ? 0.0 : inv_pi * g_c(y) - ratio2 * g_pi(y) + K;
        };
        B.nu = [=](double y) {
            return y > z ? 0.0 : inv_pi * nu_c(y) - ratio2 * nu_pi(y);
        };
    } else {
        B.g = [=](double y) { return y > z ? 0.0 : g_c(y) + K; };
        B.nu = nu_c;
    }

    // probability-scale versions (p in [0, q]; zero above q)
    if (ratio) {
        B.g_p = [=](double p) {
            if (p > q) return 0.0;
            return inv_pi * L.c(q, p) * gamma_tilde(p) - ratio2 * L.pi(q, p) + K;
        };
        B.nu_p = [=](double p) {
            if (p > q) return 0.0;
            return inv_pi * L.dc_dy(q, p) * gamma_tilde(p) - ratio2 * L.dpi_dy(q, p);
        };
    } else {
        B.g_p = [=](double p) { return p > q ? 0.0 : L.c(q, p) * gamma_tilde(p) + K; };
        B.nu_p = [=](double p) { return p > q ? 0.0 : L.dc_dy(q, p) * gamma_tilde(p); };
    }

    B.eta = integrate_prob(B.g_p, 0.0, q, opts, std::abs(B.J) + 1.0);
    B.EGnu = integrate_prob([&](double p) { return p * B.nu_p(p); }, 0.0, q, opts,
                            std::abs(B.J) + 1.0);
    return B;
}

double exact_index(const DistributionModel& model, double t, const ThresholdSchedule& thresholds,
                   const IndexSpec& spec, const QuadratureOptions& opts) {
    const LimitFunctions L = limit_functions_for(spec);
    auto marginal = model.marginal_ptr(t);
    const double z = thresholds.at(t);
    const double q = marginal->cdf(z);
    if (q == 0.0) return 0.0; // threshold below the support: nobody is marked

    auto gamma_tilde = make_gamma_tilde(marginal, z, spec.cost);
    double H_c = integrate_prob([&](double p) { return L.c(q, p) * gamma_tilde(p); }, 0.0, q, opts);
    if (!L.ratio_route) return H_c;
    double H_pi = integrate_prob([&](double p) { return L.pi(q, p); }, 0.0, q, opts);
    if (!(std::abs(H_pi) > kHpiFloor))
        throw DegenerateModel("ratio normalizer H_pi ~ 0 at t=" + std::to_string(t));
    return H_c / H_pi;
}

double rk_moment(const DistributionModel& model, double t, const ThresholdSchedule& thresholds,
                 const CostFunction& cost, int k, const QuadratureOptions& opts) {
    if (k < 0) throw std::invalid_argument("rk_moment: k must be >= 0");
    auto marginal = model.marginal_ptr(t);
    const double z = thresholds.at(t);
    const double q = marginal->cdf(z);
    if (q == 0.0) return 0.0;
    auto gamma_tilde = make_gamma_tilde(marginal, z, cost);
    return integrate_prob([&](double p) { return ipow(q - p, k) * gamma_tilde(p); }, 0.0, q, opts);
}

} // namespace wmlg
