#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace wmlg {

/// Normalized-gap cost d: [0,1] -> [0,1], d(0) = 0 (except the exponent-0
/// special case d == 1), nondecreasing with a finite derivative bound M where
/// one exists. The range conditions are enforced by grid sampling when an
/// instance is built, so downstream code can trust 0 <= d <= 1 blindly.
class CostFunction {
public:
    static CostFunction identity();
    /// d(u) = u^alpha, alpha >= 0, with 0^0 := 1 (so alpha = 0 is the
    /// indicator cost and the headcount drops out of the general form).
    /// For alpha in (0,1) the derivative is unbounded at 0; the reported
    /// bound is then the grid supremum, flagged by bounded_derivative().
    static CostFunction power(double alpha);
    /// Piecewise-linear through knots (u_0=0, d_0) ... (u_K=1, d_K); both
    /// coordinates must be inside [0,1] and the u's strictly increasing.
    static CostFunction piecewise_linear(std::vector<std::pair<double, double>> knots);
    /// Knot file: CSV `u,d` with header.
    static CostFunction load_knots(const std::string& path);
    /// Arbitrary cost with a caller-declared derivative bound; validated on
    /// the same grid as the named constructions.
    static CostFunction custom(std::string name, std::function<double(double)> d,
                               std::function<double(double)> dprime, double derivative_bound);

    double operator()(double u) const { return d_(u); }
    double derivative(double u) const { return dprime_(u); }
    double derivative_bound() const { return bound_; }
    bool bounded_derivative() const { return bounded_; }
    const std::string& name() const { return name_; }

private:
    CostFunction(std::string name, std::function<double(double)> d,
                 std::function<double(double)> dprime, double bound, bool bounded);
    void validate_range() const;

    std::string name_;
    std::function<double(double)> d_, dprime_;
    double bound_ = 1.0;
    bool bounded_ = true;
};

} // namespace wmlg
