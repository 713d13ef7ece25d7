#include "wmlg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wmlg/errors.hpp"
#include "wmlg/stats.hpp"

namespace wmlg {

double simpson(const std::function<double(double)>& f, double a, double b, int nodes) {
    if (nodes < 3 || nodes % 2 == 0)
        throw std::invalid_argument("simpson: nodes must be odd and >= 3");
    if (a == b) return 0.0;
    const int panels = nodes - 1;
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts, double scale_hint) {
    if (a > b) throw std::invalid_argument("integrate: reversed interval");
    if (a == b) return 0.0;
    int nodes = opts.base_nodes;
    if (nodes < 3 || nodes % 2 == 0)
        throw std::invalid_argument("integrate: base_nodes must be odd and >= 3");

    double prev = simpson(f, a, b, nodes);
    for (int r = 0; r < opts.max_refinements; ++r) {
        nodes = 2 * (nodes - 1) + 1;
        double cur = simpson(f, a, b, nodes);
        double scale = std::max({std::abs(cur), std::abs(scale_hint), opts.scale_floor});
        if (std::abs(cur - prev) <= opts.rtol * scale) return cur;
        prev = cur;
    }
    throw QuadratureError("integrate: no convergence after " +
                          std::to_string(opts.max_refinements) + " refinements (rtol " +
                          std::to_string(opts.rtol) + ")");
}

double integrate_prob(const std::function<double(double)>& f, double p_lo, double p_hi,
                      const QuadratureOptions& opts, double scale_hint) {
    if (p_lo > p_hi) throw std::invalid_argument("integrate_prob: reversed interval");
    if (!(p_lo >= 0.0 && p_hi <= 1.0))
        throw std::invalid_argument("integrate_prob: segment outside [0, 1]");
    if (p_lo == p_hi) return 0.0;
    const double cut = 8.3;
    double lo = p_lo <= 0.0 ? -cut : std::clamp(norm_quantile(p_lo), -cut, cut);
    double hi = p_hi >= 1.0 ? cut : std::clamp(norm_quantile(p_hi), -cut, cut);
    if (!(hi > lo)) return 0.0;
    return integrate([&f](double x) { return f(norm_cdf(x)) * norm_pdf(x); }, lo, hi, opts,
                     scale_hint);
}

TailIntegralTable::TailIntegralTable(const std::function<double(double)>& f, double a,
                                     double b, int nodes) {
    if (nodes < 3 || nodes % 2 == 0)
        throw std::invalid_argument("TailIntegralTable: nodes must be odd and >= 3");
    if (!(b >= a)) throw std::invalid_argument("TailIntegralTable: reversed interval");
    a_ = a;
    const int n = nodes;
    h_ = (b - a) / (n - 1);
    fv_.resize(n);
    for (int i = 0; i < n; ++i) fv_[i] = f(a + i * h_);
    cum_.assign(n, 0.0);
    if (b == a) return;

    // Even distances from the right end: composite Simpson pairs.
    for (int i = n - 3; i >= 0; i -= 2)
        cum_[i] = cum_[i + 2] + h_ / 3.0 * (fv_[i] + 4.0 * fv_[i + 1] + fv_[i + 2]);
    // Odd distances: one extra segment by the quadratic through the three
    // nodes around it, int_{x_i}^{x_{i+1}} ~ h(-f_{i-1} + 8 f_i + 5 f_{i+1})/12.
    for (int i = n - 2; i >= 1; i -= 2)
        cum_[i] = cum_[i + 1] + h_ / 12.0 * (-fv_[i - 1] + 8.0 * fv_[i] + 5.0 * fv_[i + 1]);
}

double TailIntegralTable::operator()(double x) const {
    if (cum_.empty() || h_ == 0.0) return 0.0;
    const int n = (int)cum_.size();
    double u = (x - a_) / h_;
    if (u <= 0.0) return cum_.front();
    if (u >= n - 1) return cum_.back();
    int k = std::min((int)u, n - 2);
    double t = u - k;
    // Hermite cubic: exact nodal values plus exact slopes Psi' = -f.
    double p0 = cum_[k], p1 = cum_[k + 1];
    double m0 = -fv_[k] * h_, m1 = -fv_[k + 1] * h_;
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * m0 +
           (-2 * t3 + 3 * t2) * p1 + (t3 - t2) * m1;
}

} // namespace wmlg
