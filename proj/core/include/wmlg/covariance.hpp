#pragma once

#include <string>
#include <vector>

#include "wmlg/asymptotics.hpp"
#include "wmlg/index.hpp"
#include "wmlg/model.hpp"
#include "wmlg/panel.hpp"

namespace wmlg {

struct CovarianceOptions {
    QuadratureOptions quad;      ///< one-dimensional integrals
    int grid_2d = 513;           ///< base nodes per axis (2^k + 1)
    int max_refinements_2d = 3;
    double rtol_2d = 1e-8;
    double tail_cut = 8.3;       ///< lower truncation in normal-score space
    int psi_table_nodes = 8193;  ///< tail-integral table for psi
    bool kappa_centered = true;  ///< center the g-psi cross moments (see docs)
    double symmetry_tol = 1e-10;
    std::size_t min_n_warn = 30; ///< plug-in small-sample warning threshold
};

/// A symmetric cross-time covariance of the limiting Gaussian field, with the
/// three additive components kept separately (variance of the direct part,
/// variance of the CDF-fluctuation part, and their cross term).
struct CovarianceEstimate {
    std::vector<double> times;
    std::vector<double> gamma, gamma1, gamma2, gamma3; ///< row-major m x m
    std::string method;      ///< "analytic-quadrature" or "plug-in-empirical"
    std::string index_label;
    std::size_t sample_size = 0; ///< plug-in only
    bool kappa_centered = true;
    std::vector<std::string> warnings;

    std::size_t dim() const { return times.size(); }
    double at(std::size_t i, std::size_t j) const { return gamma[i * dim() + j]; }
    double component1(std::size_t i, std::size_t j) const { return gamma1[i * dim() + j]; }
    double component2(std::size_t i, std::size_t j) const { return gamma2[i * dim() + j]; }
    double component3(std::size_t i, std::size_t j) const { return gamma3[i * dim() + j]; }

    /// CSV: header `time,<t1>,...`, one row per time, full matrix.
    std::string to_csv() const;
};

/// Population covariance by quadrature under the model's Gaussian copula.
/// Distinct times need |rho| < 1 (DegenerateModel otherwise); each off-
/// diagonal cell is computed in both argument orders and the two must agree
/// within symmetry_tol (InternalError otherwise -- that is a solver bug).
CovarianceEstimate covariance_analytic(const DistributionModel& model,
                                       const std::vector<double>& times,
                                       const ThresholdSchedule& thresholds, const IndexSpec& spec,
                                       const CovarianceOptions& opts = {});

/// Empirical plug-in: every population object in the analytic recipe is
/// replaced by its sample counterpart (ECDF for G_t, headcount ratio for q,
/// sample averages for the functionals, suffix sums for psi-hat). Costs
/// O(n log n) per time and O(n) per time pair.
CovarianceEstimate covariance_plugin(const PanelDataset& panel, const std::vector<double>& times,
                                     const ThresholdSchedule& thresholds, const IndexSpec& spec,
                                     const CovarianceOptions& opts = {});

/// Plug-in covariance from pre-built cross-sections (one threshold each).
/// The sections must be individual-aligned and of equal size; this is the
/// entry point the simulation lab uses to avoid re-packing panels.
CovarianceEstimate covariance_plugin(const std::vector<CrossSection>& sections,
                                     const std::vector<double>& z, const IndexSpec& spec,
                                     const CovarianceOptions& opts = {});

/// Per-individual plug-in influence ingredients at one time, in individual
/// order (exposed for the representation experiments and for tests).
struct PluginSlice {
    double time = 0.0, z = 0.0, qhat = 0.0;
    std::int64_t marked = 0;
    double H_c = 0.0, H_pi = 1.0, K_c = 0.0, K_pi = 0.0, K = 0.0;
    double eta_hat = 0.0;  ///< mean of ghat
    double egnu_hat = 0.0; ///< (1/n) sum Ghat nu-hat == mean of psihat
    std::vector<double> ghat, psihat;
};
PluginSlice plugin_slice(const CrossSection& s, double z, const IndexSpec& spec);

} // namespace wmlg
