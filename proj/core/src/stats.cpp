#include "wmlg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wmlg {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;
constexpr double kInvSqrt2 = 0.7071067811865475244008443621048490;

} // namespace

double norm_pdf(double x) {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double norm_cdf(double x) {
    // erfc keeps relative accuracy in the lower tail where 1+erf would cancel
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("norm_quantile: p must lie strictly in (0,1)");

    // Acklam's rational approximation, |error| < 1.15e-9 on its own.
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;

    double x;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Newton step against the exact cdf; the density never underflows for
    // p >= 2^-54 (|x| <= 8.2), so this takes the error down to ~1 ulp of cdf.
    double e = norm_cdf(x) - p;
    x -= e / norm_pdf(x);
    return x;
}

namespace {

// Simpson refinement of int_{lo}^{hi} f, doubling panels until two passes
// agree; used only here (quadrature.hpp has the general engine, but stats
// must not depend on it -- the dependency points the other way).
template <typename F>
double simpson_refine(F&& f, double lo, double hi, double tol) {
    int n = 64;
    auto pass = [&](int panels) {
        double h = (hi - lo) / panels;
        double s = f(lo) + f(hi);
        for (int i = 1; i < panels; ++i)
            s += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
        return s * h / 3.0;
    };
    double prev = pass(n);
    for (int it = 0; it < 8; ++it) {
        n *= 2;
        double cur = pass(n);
        if (std::abs(cur - prev) <= tol * (1.0 + std::abs(cur)))
            return cur;
        prev = cur;
    }
    return prev;
}

} // namespace

double binorm_cdf(double a, double b, double rho) {
    if (!(rho >= -1.0 && rho <= 1.0))
        throw std::invalid_argument("binorm_cdf: correlation outside [-1,1]");
    if (rho == 1.0) return norm_cdf(std::min(a, b));
    if (rho == -1.0) return std::max(0.0, norm_cdf(a) + norm_cdf(b) - 1.0);
    if (rho == 0.0) return norm_cdf(a) * norm_cdf(b);

    // P(X<=a, Y<=b) = int_{-inf}^{a} phi(x) Phi((b - rho x)/s) dx.
    // Truncating the lower limit at -8.5 (and a at +8.5) discards ~1e-17 mass.
    const double s = std::sqrt(1.0 - rho * rho);
    const double lo = -8.5;
    if (a <= lo) return 0.0;
    const double hi = std::min(a, 8.5);
    double v = simpson_refine(
        [&](double x) { return norm_pdf(x) * norm_cdf((b - rho * x) / s); }, lo, hi, 1e-13);
    return std::min(1.0, std::max(0.0, v));
}

double ks_statistic_normal(const std::vector<double>& sorted_values) {
    const std::size_t n = sorted_values.size();
    if (n == 0) throw std::invalid_argument("ks_statistic_normal: empty sample");
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double f = norm_cdf(sorted_values[i]);
        double hi = (double)(i + 1) / n - f;
        double lo = f - (double)i / n;
        d = std::max(d, std::max(hi, lo));
    }
    return d;
}

double ks_pvalue(double d, std::size_t n) {
    if (n == 0) throw std::invalid_argument("ks_pvalue: n must be positive");
    if (d <= 0.0) return 1.0;
    double rn = std::sqrt((double)n);
    double lambda = (rn + 0.12 + 0.11 / rn) * d;
    // Kolmogorov tail Q(lambda) = 2 sum_k (-1)^{k-1} exp(-2 k^2 lambda^2)
    double sum = 0.0;
    for (int k = 1; k <= 101; ++k) {
        double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 ? term : -term);
        if (term < 1e-18) break;
    }
    return std::min(1.0, std::max(0.0, 2.0 * sum));
}

} // namespace wmlg
