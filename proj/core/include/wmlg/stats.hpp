#pragma once

#include <cstdint>
#include <vector>

// Scalar distribution helpers used across the library: standard normal pdf,
// cdf, quantile, the bivariate normal cdf, and the Kolmogorov-Smirnov tail.
// All of it is dependency-free on purpose -- these functions sit inside hot
// quadrature and simulation loops and their accuracy is pinned by tests.

namespace wmlg {

/// Standard normal density.
double norm_pdf(double x);

/// Standard normal CDF, computed via erfc; absolute error ~1e-16.
double norm_cdf(double x);

/// Standard normal quantile. Rational approximation (Acklam) polished with a
/// single Newton step against norm_cdf; absolute error around 1e-15 over
/// p in [2^-54, 1 - 2^-54], far inside the 1e-10 contract.
double norm_quantile(double p);

/// P(X <= a, Y <= b) for standard bivariate normal with correlation rho,
/// rho in [-1, 1]. One-dimensional reduction integrated adaptively; absolute
/// error ~1e-12. The degenerate rho = +/-1 cases use the comonotone forms.
double binorm_cdf(double a, double b, double rho);

/// One-sided sup-distance of sorted, already-standardized values against the
/// standard normal CDF (two-sided KS statistic D_n).
double ks_statistic_normal(const std::vector<double>& sorted_values);

/// Asymptotic Kolmogorov p-value for statistic d at sample size n, with the
/// Stephens small-sample correction lambda = (sqrt(n)+0.12+0.11/sqrt(n))*d.
double ks_pvalue(double d, std::size_t n);

} // namespace wmlg
