#include "wmlg/report_json.hpp"

#include <cmath>

#include <json.hpp>

namespace wmlg {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

json matrix_json(const std::vector<double>& flat, std::size_t m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m; ++j) row.push_back(flat[i * m + j]);
        rows.push_back(std::move(row));
    }
    return rows;
}

json interval_json(const Interval& iv) {
    return json{{"lower", iv.lower}, {"upper", iv.upper}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace

std::string index_report_json(const std::string& index_label, const std::string& source,
                              std::size_t sample_size, const std::vector<IndexReportRow>& rows) {
    json values = json::array();
    for (const IndexReportRow& r : rows)
        values.push_back(json{{"time", r.time}, {"z", r.z}, {"value", r.value}});
    json j{{"schema_version", kSchemaVersion},
           {"kind", "index-values"},
           {"index", index_label},
           {"source", source},
           {"n", sample_size},
           {"values", std::move(values)}};
    return dump(j);
}

std::string covariance_report_json(const CovarianceEstimate& cov) {
    const std::size_t m = cov.dim();
    json j{{"schema_version", kSchemaVersion},
           {"kind", "covariance"},
           {"index", cov.index_label},
           {"method", cov.method},
           {"kappa_centered", cov.kappa_centered},
           {"times", cov.times},
           {"gamma", matrix_json(cov.gamma, m)},
           {"component_direct", matrix_json(cov.gamma1, m)},
           {"component_cdf", matrix_json(cov.gamma2, m)},
           {"component_cross", matrix_json(cov.gamma3, m)},
           {"warnings", cov.warnings}};
    if (cov.method == "plug-in-empirical") j["n"] = cov.sample_size;
    return dump(j);
}

std::string variation_report_json(const VariationReport& rep) {
    json j{{"schema_version", kSchemaVersion},
           {"kind", "variation"},
           {"index", rep.index_label},
           {"covariance_method", rep.cov_method},
           {"t", rep.t},
           {"s", rep.s},
           {"n", rep.n},
           {"level", rep.level},
           {"j_t", rep.j_t},
           {"j_s", rep.j_s},
           {"delta_j", rep.delta_j},
           {"delta_rj", rep.delta_rj},
           {"gamma4", rep.gamma4},
           {"gamma5", rep.gamma5},
           {"a1", rep.a1},
           {"a2", rep.a2},
           {"interval_absolute", interval_json(rep.interval_abs)},
           {"interval_relative", interval_json(rep.interval_rel)},
           {"warnings", rep.warnings}};
    if (rep.target) {
        j["target"] = *rep.target;
        j["verdict"] = verdict_name(*rep.verdict);
    }
    return dump(j);
}

std::string diagnostics_report_json(const DiagnosticsReport& rep) {
    json pairs = json::array();
    for (const AdjacentQuotient& p : rep.pairs)
        pairs.push_back(json{{"t", p.t},
                             {"s", p.s},
                             {"z_quotient", p.z_quotient},
                             {"y_quotient", p.y_quotient},
                             {"z_flagged", p.z_flagged},
                             {"y_flagged", p.y_flagged}});
    json j{{"schema_version", kSchemaVersion},
           {"kind", "diagnostics"},
           {"r", rep.r},
           {"flag_factor", rep.flag_factor},
           {"beta_hat", rep.beta_hat},
           {"xi_hat", rep.xi_hat},
           {"mass_bounds_ok", rep.mass_bounds_ok},
           {"z1", rep.z1},
           {"z2", rep.z2},
           {"pairs", std::move(pairs)},
           {"notes", rep.notes},
           {"any_flag", rep.any_flag}};
    return dump(j);
}

std::string experiment_report_json(const ExperimentPlan& plan, const ExperimentResult& res) {
    json per_n = json::array();
    for (const SizeMetric& row : res.per_n)
        per_n.push_back(json{{"n", row.n}, {"primary", row.primary}, {"secondary", row.secondary}});
    json tol{{"variance_rel", res.tol.variance_rel},
             {"ks_p_min", res.tol.ks_p_min},
             {"coverage_lo", res.tol.coverage_lo},
             {"coverage_hi", res.tol.coverage_hi},
             {"repr_frac", res.tol.repr_frac},
             {"qp_frac", res.tol.qp_frac},
             {"consistency_mult", res.tol.consistency_mult},
             {"plugin_rel", res.tol.plugin_rel}};
    json j{{"schema_version", kSchemaVersion},
           {"kind", "experiment"},
           {"experiment", res.experiment},
           {"index", res.index_label},
           {"model", res.model_desc},
           {"t", res.t},
           {"s", res.s},
           {"n", res.n},
           {"n_list", res.n_list},
           {"replications", res.replications},
           {"seed", res.seed},
           {"tolerances", std::move(tol)},
           {"exact_value", res.exact_value},
           {"gamma_tt", res.gamma_tt},
           {"mean_scaled", res.mean_scaled},
           {"sample_variance", res.sample_variance},
           {"ks_stat", res.ks_stat},
           {"ks_p", res.ks_p},
           {"coverage", res.coverage},
           {"true_drj", res.true_drj},
           {"qp_rms", res.qp_rms},
           {"qp_ok", res.qp_ok},
           {"per_n", std::move(per_n)},
           {"pass", res.pass},
           {"details", res.details},
           {"provenance",
            json{{"config_hash", plan.config_hash},
                 {"config", plan.canonical_text},
                 {"level", plan.level}}}};
    if (plan.variance_override) {
        // JSON has no infinity literal; keep the rail value readable.
        if (std::isfinite(*plan.variance_override))
            j["provenance"]["variance_override"] = *plan.variance_override;
        else
            j["provenance"]["variance_override"] = "inf";
    }
    return dump(j);
}

} // namespace wmlg
