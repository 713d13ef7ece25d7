#pragma once

#include <functional>

#include "wmlg/index.hpp"
#include "wmlg/model.hpp"
#include "wmlg/quadrature.hpp"

namespace wmlg {

/// Limit kernels appropriate to a spec: the Kakwani family takes the ratio
/// route, Shorrocks/Thon and FGT the simple route; General specs must carry
/// their own kernels (std::invalid_argument otherwise).
LimitFunctions limit_functions_for(const IndexSpec& spec);

/// Everything the asymptotic representation
///   sqrt(n) (J_n(t) - J(t)) = alpha_n(g_t) + beta_n(nu_t, t) + o_P(1)
/// needs at one time: the population functionals, the drift coefficient K of
/// the headcount fluctuation, and the influence ingredients g_t and nu_t as
/// callables in outcome space (zero above the threshold) and on the
/// probability scale p in [0, q].
struct TheoremOneBundle {
    double t = 0.0;
    double z = 0.0;
    double q = 0.0;    ///< G_t(Z(t))
    bool ratio_route = false;

    double H_c = 0.0;  ///< int_0^q c(q,s) gamma ds
    double H_pi = 1.0; ///< int_0^q pi(q,s) ds (1 on the simple route)
    double K_c = 0.0;  ///< int_0^q dc/dx(q,s) gamma ds
    double K_pi = 0.0; ///< int_0^q dpi/dx(q,s) ds
    double K = 0.0;    ///< K_c/H_pi - H_c K_pi/H_pi^2
    double J = 0.0;    ///< H_c/H_pi
    double eta = 0.0;  ///< E g_t(Y(t)) = int_0^q g~ ds  (= J on the simple route, K q on the ratio route)
    double EGnu = 0.0; ///< E[G_t(Y) nu_t(Y)] = int_0^q s nu~(s) ds

    std::function<double(double)> gamma; ///< d((Z-y)/Z) 1{y<=Z}
    std::function<double(double)> g, nu;           ///< assembled, outcome space
    std::function<double(double)> g_c, g_pi, nu_c, nu_pi; ///< raw pieces
    std::function<double(double)> g_p, nu_p;       ///< probability scale on [0,q]
};

/// Build the bundle at grid time t. Throws DegenerateModel when the marked
/// set has no mass (q = 0) or the ratio normalizer H_pi is numerically zero,
/// QuadratureError if the integrals do not settle.
TheoremOneBundle theorem_one_bundle(const DistributionModel& model, double t,
                                    const ThresholdSchedule& thresholds, const IndexSpec& spec,
                                    const QuadratureOptions& opts = {});

/// Population index J(t) = H_c/H_pi. A threshold below the support gives 0.
double exact_index(const DistributionModel& model, double t,
                   const ThresholdSchedule& thresholds, const IndexSpec& spec,
                   const QuadratureOptions& opts = {});

/// The gap moment r_k(t) = int_0^q (q - s)^k gamma_t(G^{-1}(s)) ds, k >= 0
/// (the Kakwani-family building block; r_0 is the FGT value of the cost).
double rk_moment(const DistributionModel& model, double t, const ThresholdSchedule& thresholds,
                 const CostFunction& cost, int k, const QuadratureOptions& opts = {});

} // namespace wmlg
