#pragma once

#include <string>
#include <vector>

#include "wmlg/covariance.hpp"
#include "wmlg/diagnostics.hpp"
#include "wmlg/experiment_config.hpp"
#include "wmlg/simulate.hpp"
#include "wmlg/variation.hpp"

namespace wmlg {

/// JSON emitters for every pipeline result. All documents are pretty-printed
/// UTF-8 with a top-level "schema_version" (currently 1) and a "kind" tag;
/// the corresponding JSON-schema files ship with the command-line tool.
/// Doubles are serialized at full round-trip precision.

struct IndexReportRow {
    double time = 0.0;
    double z = 0.0;
    double value = 0.0;
};

std::string index_report_json(const std::string& index_label, const std::string& source,
                              std::size_t sample_size, const std::vector<IndexReportRow>& rows);

std::string covariance_report_json(const CovarianceEstimate& cov);

std::string variation_report_json(const VariationReport& rep);

std::string diagnostics_report_json(const DiagnosticsReport& rep);

/// Experiment result with full provenance: seed, tolerances in force, and the
/// canonical config text plus its hash.
std::string experiment_report_json(const ExperimentPlan& plan, const ExperimentResult& res);

} // namespace wmlg
