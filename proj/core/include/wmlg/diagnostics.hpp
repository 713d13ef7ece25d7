#pragma once

#include <string>
#include <vector>

#include "wmlg/model.hpp"
#include "wmlg/panel.hpp"

namespace wmlg {

/// Smoothness evidence for one adjacent grid pair: the threshold-path and
/// outcome-path quotients |Z(s)-Z(t)|^2 / |s-t|^{1+r} and
/// E|Y(s)-Y(t)|^2 / |s-t|^{1+r}. Large spikes against the pack hint that the
/// continuity assumptions behind the asymptotics are implausible on this
/// grid; the check is advisory and never fatal.
struct AdjacentQuotient {
    double t = 0.0, s = 0.0;
    double z_quotient = 0.0;
    double y_quotient = 0.0;
    bool z_flagged = false;
    bool y_flagged = false;
};

struct DiagnosticsReport {
    double r = 0.25;            ///< Holder exponent probed, r in (0, 1/2)
    double flag_factor = 10.0;  ///< spike = quotient > factor * median
    double beta_hat = 0.0;      ///< min_t G_t(Z1) (empirical or model)
    double xi_hat = 0.0;        ///< max_t G_t(Z2)
    bool mass_bounds_ok = false;///< 0 < beta_hat <= xi_hat < 1
    double z1 = 0.0, z2 = 0.0;
    std::vector<AdjacentQuotient> pairs;
    std::vector<std::string> notes;
    bool any_flag = false;
};

/// Panel version: empirical CDFs and sample mean squared increments.
DiagnosticsReport hypothesis_diagnostics(const PanelDataset& panel,
                                         const ThresholdSchedule& thresholds, double r = 0.25,
                                         double flag_factor = 10.0);

/// Model version: population CDFs; mean squared increments computed under
/// the Gaussian copula by quadrature.
DiagnosticsReport hypothesis_diagnostics(const DistributionModel& model,
                                         const ThresholdSchedule& thresholds, double r = 0.25,
                                         double flag_factor = 10.0);

} // namespace wmlg
