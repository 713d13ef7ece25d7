#pragma once

#include <functional>
#include <vector>

namespace wmlg {

/// Controls for the one-dimensional integrals on the probability scale.
/// base_nodes must be 2^k + 1; refinement doubles the panel count and accepts
/// once two passes agree within rtol relative to max(|I|, scale_floor).
struct QuadratureOptions {
    int base_nodes = 4097;
    double rtol = 1e-8;
    int max_refinements = 3;
    double scale_floor = 1e-12;
};

/// Composite Simpson with `nodes` equally spaced nodes (nodes odd, >= 3).
double simpson(const std::function<double(double)>& f, double a, double b, int nodes);

/// Refined Simpson integral of f over [a, b]; throws QuadratureError when the
/// refinement ladder runs out before two passes agree. An optional scale hint
/// widens the relative-tolerance denominator (useful when the true value may
/// be ~0 but lives inside a larger computation with a known magnitude).
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {}, double scale_hint = 0.0);

/// Integral of f over a probability segment [p_lo, p_hi] <= [0, 1], evaluated
/// in normal-score coordinates p = Phi(x). Integrands composed with a quantile
/// function (anything touching G^{-1}(p)) have unbounded p-derivatives at the
/// distribution tails, which stalls the plain Simpson ladder; in x they are
/// smooth for the usual parametric families. Open endpoints are clipped at
/// |x| = 8.3, discarding ~5e-17 of mass.
double integrate_prob(const std::function<double(double)>& f, double p_lo, double p_hi,
                      const QuadratureOptions& opts = {}, double scale_hint = 0.0);

/// Precomputed tail integrals Psi(x) = int_x^b f(s) ds on a uniform grid over
/// [a, b], queryable at arbitrary x in [a, b]. Nodal values carry the O(h^4)
/// composite-Simpson accuracy; between nodes a cubic Hermite patch uses the
/// exact derivative Psi' = -f, keeping the O(h^4) order everywhere.
class TailIntegralTable {
public:
    TailIntegralTable() = default;
    TailIntegralTable(const std::function<double(double)>& f, double a, double b,
                      int nodes = 8193);

    double operator()(double x) const; ///< Psi(x); x clamped to [a, b]
    double full() const { return cum_.empty() ? 0.0 : cum_.front(); } ///< Psi(a)
    bool empty() const { return cum_.empty(); }

private:
    double a_ = 0.0, h_ = 0.0;
    std::vector<double> cum_; // cum_[i] = int_{x_i}^{b} f
    std::vector<double> fv_;  // f at the nodes
};

} // namespace wmlg
