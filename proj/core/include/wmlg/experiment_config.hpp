#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wmlg/cost.hpp"
#include "wmlg/index.hpp"
#include "wmlg/panel.hpp"
#include "wmlg/simulate.hpp"
#include "wmlg/util.hpp"

namespace wmlg {

/// A fully-resolved experiment: which run to make, on which sampling process,
/// with which index spec and thresholds, plus the provenance (canonical
/// config text and its hash) that makes the run reproducible and auditable.
struct ExperimentPlan {
    ExperimentPlan(ProcessModel process_, IndexSpec spec_, ThresholdSchedule thresholds_);

    std::string experiment; ///< clt | representation | coverage | consistency | plugin-vs-analytic
    ProcessModel process;
    IndexSpec spec;
    ThresholdSchedule thresholds;
    double t = 0.0;
    double s = 0.0;
    std::size_t n = 0;
    std::size_t R = 0;
    std::vector<std::size_t> n_list;
    double level = 0.05;
    std::optional<double> variance_override;
    ExperimentTolerances tol;
    std::string config_hash;    ///< sha1 of canonical_text
    std::string canonical_text; ///< normalized key=value lines
};

/// Cost registry used by configs and the CLI: "identity", "power:<alpha>",
/// "pwl:<knots.csv>". Anything else -> std::invalid_argument.
CostFunction parse_cost(const std::string& text);

/// Index registry shared by configs and the CLI. k is consumed by kakwani,
/// alpha_exp by fgt; a cost override applies to the rank-weighted families
/// only (fgt's cost IS power(alpha_exp), and general needs a programmatic
/// weight scheme, so neither is accepted here).
IndexSpec parse_index_spec(const std::string& index, std::optional<int> k,
                           std::optional<double> alpha_exp,
                           const std::optional<std::string>& cost);

/// Build a plan from key=value pairs. Recognized keys:
///   experiment, index, k, alpha_exp, cost, times, marginal, marginal.<i>,
///   corr, rho, z, z_file, seed, n, R, n_list, t, s, level,
///   variance_override (number or "inf"), tol.variance_rel, tol.ks_p_min,
///   tol.coverage_lo, tol.coverage_hi, tol.repr_frac, tol.qp_frac,
///   tol.consistency_mult, tol.plugin_rel.
/// Missing/contradictory keys -> std::invalid_argument (config error).
ExperimentPlan parse_experiment_config(const KeyValues& kv);
ExperimentPlan load_experiment_config(const std::string& path);

/// Dispatch the plan to its runner.
ExperimentResult run_experiment(const ExperimentPlan& plan);

} // namespace wmlg
