// Command-line front end. All numerics live in the library; this file only
// parses flags, loads files, picks output shapes and maps errors to exit
// codes: 0 ok, 1 data/computation error (wmlg::Error), 2 usage or config
// error (bad flags, bad config files, std::invalid_argument).
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "wmlg/covariance.hpp"
#include "wmlg/diagnostics.hpp"
#include "wmlg/errors.hpp"
#include "wmlg/experiment_config.hpp"
#include "wmlg/index.hpp"
#include "wmlg/panel.hpp"
#include "wmlg/report_json.hpp"
#include "wmlg/util.hpp"
#include "wmlg/variation.hpp"

namespace {

using namespace wmlg;

// ---------------------------------------------------------------- plumbing

struct CommonArgs {
    std::string input;
    std::string index = "shorrocks";
    std::optional<int> k;
    std::optional<double> alpha_exp;
    std::optional<std::string> cost;
    std::string weights_file;
    std::optional<double> z;
    std::string z_file;
    bool json = false;
    std::string out;
};

void write_output(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw Error("cannot open output file: " + out);
    f << text;
    if (!f) throw Error("short write: " + out);
}

ThresholdSchedule thresholds_from(const CommonArgs& a) {
    if (a.z && !a.z_file.empty())
        throw std::invalid_argument("--z and --z-file are mutually exclusive");
    if (a.z) return ThresholdSchedule::constant(*a.z);
    if (!a.z_file.empty()) return ThresholdSchedule::load_csv(a.z_file);
    throw std::invalid_argument("a threshold is required: --z or --z-file");
}

// Tabulated weight scheme for `--index general`: CSV `j,w` with j = 1..K
// contiguous and w(j) >= 0. Ranks past the table end are a data error (the
// scheme is undefined there), reported as InvalidWeightIndex.
WeightScheme table_weights(const std::string& path) {
    auto text = read_file(path);
    auto lines = split(text, '\n');
    auto tab = std::make_shared<std::vector<double>>();
    bool header = true;
    std::size_t rowno = 0;
    for (const auto& raw : lines) {
        ++rowno;
        auto line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (header) { // `j,w` expected but not enforced beyond arity
            header = false;
            continue;
        }
        auto cells = split(line, ',');
        if (cells.size() != 2)
            throw ParseError(path + ": row " + std::to_string(rowno) + ": expected `j,w`");
        char* end = nullptr;
        const std::string js = trim(cells[0]), ws = trim(cells[1]);
        long j = std::strtol(js.c_str(), &end, 10);
        if (end != js.c_str() + js.size() || j != (long)tab->size() + 1)
            throw ParseError(path + ": row " + std::to_string(rowno) +
                             ": rank column must run 1.." + " contiguously");
        double w = std::strtod(ws.c_str(), &end);
        if (end != ws.c_str() + ws.size() || !(w >= 0.0) || !std::isfinite(w))
            throw ParseError(path + ": row " + std::to_string(rowno) +
                             ": weight must be a finite nonnegative number");
        tab->push_back(w);
    }
    if (tab->empty()) throw ParseError(path + ": no weight rows");
    const std::string name = "table(" + path + ")";
    return WeightScheme(
        name,
        [tab, path](std::int64_t j) {
            if (j < 1 || (std::size_t)j > tab->size())
                throw InvalidWeightIndex("weight table " + path + " covers ranks 1.." +
                                         std::to_string(tab->size()) + "; w(" +
                                         std::to_string(j) + ") requested");
            return (*tab)[(std::size_t)j - 1];
        },
        {0, 1, 1, 1}, [](std::int64_t, std::int64_t Q) { return (double)Q; });
}

// Index spec from flags. `general` carries a weight table and is only legal
// where no asymptotics are required (compute/series); everywhere else the
// registry call rejects it.
IndexSpec spec_from(const CommonArgs& a, bool allow_general) {
    if (a.index == "general") {
        if (!allow_general)
            throw std::invalid_argument(
                "--index general has no limit kernels; it is available for compute and "
                "series only");
        if (a.weights_file.empty())
            throw std::invalid_argument("--index general requires --weights <csv>");
        if (a.k || a.alpha_exp)
            throw std::invalid_argument("--k/--alpha-exp do not apply to --index general");
        CostFunction cost = a.cost ? parse_cost(*a.cost) : CostFunction::identity();
        return IndexSpec::general(table_weights(a.weights_file), cost);
    }
    if (!a.weights_file.empty())
        throw std::invalid_argument("--weights applies to --index general only");
    return parse_index_spec(a.index, a.k, a.alpha_exp, a.cost);
}

std::string format_rows(const std::vector<IndexReportRow>& rows) {
    std::string s = "time,z,value\n";
    for (const auto& r : rows) s += strfmt("%.17g,%.17g,%.17g\n", r.time, r.z, r.value);
    return s;
}

// --------------------------------------------------------------- commands

int run_compute(const CommonArgs& a, double t, bool all_times) {
    IndexSpec spec = spec_from(a, /*allow_general=*/true);
    ThresholdSchedule th = thresholds_from(a);
    PanelDataset panel = load_panel(a.input);
    std::vector<IndexReportRow> rows;
    if (all_times) {
        for (double tk : panel.times()) {
            auto s = cross_section(panel, tk);
            rows.push_back({tk, th.at(tk), evaluate_index(s, th.at(tk), spec)});
        }
    } else {
        auto s = cross_section(panel, t);
        rows.push_back({t, th.at(t), evaluate_index(s, th.at(t), spec)});
    }
    write_output(a.out, a.json ? index_report_json(spec.label(), a.input, panel.n(), rows)
                               : format_rows(rows));
    return 0;
}

int run_cov(const CommonArgs& a, std::vector<double> times, bool uncentered) {
    IndexSpec spec = spec_from(a, /*allow_general=*/false);
    ThresholdSchedule th = thresholds_from(a);
    PanelDataset panel = load_panel(a.input);
    if (times.empty()) times = panel.times();
    CovarianceOptions opts;
    opts.kappa_centered = !uncentered;
    auto cov = covariance_plugin(panel, times, th, spec, opts);
    for (const auto& w : cov.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    write_output(a.out, a.json ? covariance_report_json(cov) : cov.to_csv());
    return 0;
}

std::string format_variation(const VariationReport& r) {
    std::string s;
    s += strfmt("index      %s\n", r.index_label.c_str());
    s += strfmt("n          %zu\n", r.n);
    s += strfmt("J(t=%g)    %.12g\n", r.t, r.j_t);
    s += strfmt("J(s=%g)    %.12g\n", r.s, r.j_s);
    s += strfmt("delta_j    %.12g   ci%.0f%% [%.12g, %.12g]   gamma4 %.12g\n", r.delta_j,
                100.0 * (1.0 - r.level), r.interval_abs.lower, r.interval_abs.upper, r.gamma4);
    s += strfmt("delta_rj   %.12g   ci%.0f%% [%.12g, %.12g]   gamma5 %.12g\n", r.delta_rj,
                100.0 * (1.0 - r.level), r.interval_rel.lower, r.interval_rel.upper, r.gamma5);
    if (r.target)
        s += strfmt("target     %g   verdict %s\n", *r.target, verdict_name(*r.verdict).c_str());
    for (const auto& w : r.warnings) s += strfmt("warning    %s\n", w.c_str());
    return s;
}

int run_variation(const CommonArgs& a, double t, double s, double level,
                  std::optional<double> target) {
    IndexSpec spec = spec_from(a, /*allow_general=*/false);
    ThresholdSchedule th = thresholds_from(a);
    PanelDataset panel = load_panel(a.input);
    auto rep = variation_report(panel, th, spec, t, s, level, target);
    write_output(a.out, a.json ? variation_report_json(rep) : format_variation(rep));
    return 0;
}

std::string format_diagnostics(const DiagnosticsReport& r) {
    std::string s;
    s += strfmt("mass bounds    beta_hat %.6g  xi_hat %.6g  (Z1 %.6g, Z2 %.6g)  %s\n", r.beta_hat,
                r.xi_hat, r.z1, r.z2, r.mass_bounds_ok ? "ok" : "VIOLATED");
    s += strfmt("holder probe   r %.3g  flag factor %.3g\n", r.r, r.flag_factor);
    for (const auto& p : r.pairs)
        s += strfmt("  (%g, %g)  z-quotient %.6g%s  y-quotient %.6g%s\n", p.t, p.s, p.z_quotient,
                    p.z_flagged ? " FLAG" : "", p.y_quotient, p.y_flagged ? " FLAG" : "");
    for (const auto& nmsg : r.notes) s += strfmt("note: %s\n", nmsg.c_str());
    return s;
}

int run_check(const CommonArgs& a, double r, double flag_factor) {
    ThresholdSchedule th = thresholds_from(a);
    PanelDataset panel = load_panel(a.input);
    auto rep = hypothesis_diagnostics(panel, th, r, flag_factor);
    write_output(a.out, a.json ? diagnostics_report_json(rep) : format_diagnostics(rep));
    return 0; // advisory: flags do not fail the run
}

std::string format_experiment(const ExperimentPlan& plan, const ExperimentResult& r) {
    std::string s;
    s += strfmt("experiment  %s\n", r.experiment.c_str());
    s += strfmt("index       %s\n", r.index_label.c_str());
    s += strfmt("model       %s\n", r.model_desc.c_str());
    s += strfmt("seed        %llu   replications %zu\n", (unsigned long long)r.seed,
                r.replications);
    s += strfmt("config      %s\n", plan.config_hash.c_str());
    for (const auto& d : r.details) s += strfmt("  %s\n", d.c_str());
    s += strfmt("result      %s\n", r.pass ? "pass" : "FAIL");
    return s;
}

int run_simulate(const std::string& config_path, const std::vector<std::string>& sets,
                 std::optional<std::uint64_t> seed, bool json, const std::string& out) {
    // Everything on the way to a plan is configuration: any failure is a
    // usage error, including an unreadable config file.
    std::optional<ExperimentPlan> plan;
    try {
        KeyValues kv = load_keyvalues(config_path);
        for (const auto& sexpr : sets) {
            auto eq = sexpr.find('=');
            if (eq == std::string::npos || eq == 0)
                throw std::invalid_argument("--set expects key=value, got: " + sexpr);
            kv[trim(sexpr.substr(0, eq))] = trim(sexpr.substr(eq + 1));
        }
        if (seed) kv["seed"] = std::to_string(*seed);
        plan = parse_experiment_config(kv);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
    ExperimentResult res = run_experiment(*plan);
    write_output(out, json ? experiment_report_json(*plan, res) : format_experiment(*plan, res));
    return res.pass ? 0 : 1; // a failed experiment check is a reportable failure
}

// ------------------------------------------------------------------- main

void add_index_flags(CLI::App* cmd, CommonArgs& a, bool general) {
    cmd->add_option("--index", a.index,
                    general ? "kakwani|sen|shorrocks|thon|fgt|general"
                            : "kakwani|sen|shorrocks|thon|fgt")
        ->capture_default_str();
    cmd->add_option("--k", a.k, "kakwani order (k >= 1)");
    cmd->add_option("--alpha-exp,--alpha", a.alpha_exp, "fgt exponent (alpha >= 0)");
    cmd->add_option("--cost", a.cost, "gap cost: identity | power:<alpha> | pwl:<knots.csv>");
    if (general)
        cmd->add_option("--weights", a.weights_file, "weight table csv `j,w` (general only)");
}

void add_data_flags(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--input", a.input, "panel csv `id,time,value`")->required();
    cmd->add_option("--z", a.z, "constant threshold Z > 0");
    cmd->add_option("--z-file", a.z_file, "per-time thresholds csv `time,z`");
    cmd->add_flag("--json", a.json, "emit the json report instead of text");
    cmd->add_option("--out", a.out, "write output to a file instead of stdout");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"upper-threshold weighted mean loss/gain statistics"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::simple);

    CommonArgs a;
    double t = 0.0, s = 0.0, level = 0.05, r_exp = 0.25, flag_factor = 10.0;
    std::optional<double> target;
    std::vector<double> times;
    bool uncentered = false;
    std::string config_path, out;
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
    bool json = false;

    auto* c_compute = app.add_subcommand("compute", "index value at one grid time");
    add_data_flags(c_compute, a);
    add_index_flags(c_compute, a, true);
    c_compute->add_option("--t", t, "grid time")->required();

    auto* c_series = app.add_subcommand("series", "index value at every grid time");
    add_data_flags(c_series, a);
    add_index_flags(c_series, a, true);

    auto* c_cov = app.add_subcommand("cov", "plug-in covariance of the scaled index across times");
    add_data_flags(c_cov, a);
    add_index_flags(c_cov, a, false);
    c_cov->add_option("--times", times, "grid times (default: all)")->delimiter(',');
    c_cov->add_flag("--csv", "matrix csv output (the default)");
    c_cov->add_flag("--uncentered", uncentered, "uncentered cross moments in the third component");

    auto* c_var = app.add_subcommand("variation", "index change between two times, with intervals");
    add_data_flags(c_var, a);
    add_index_flags(c_var, a, false);
    c_var->add_option("--t", t, "base grid time")->required();
    c_var->add_option("--s", s, "comparison grid time")->required();
    c_var->add_option("--level", level, "two-sided error level")->capture_default_str();
    c_var->add_option("--target", target,
                      "relative-change goal (e.g. -0.5 for halving); enables the verdict");

    auto* c_sim = app.add_subcommand("simulate", "run a sampling experiment from a config file");
    c_sim->add_option("--config", config_path, "key=value experiment config")->required();
    c_sim->add_option("--set", sets, "override one config key (repeatable)");
    c_sim->add_option("--seed", seed, "override the base seed");
    c_sim->add_flag("--json", json, "emit the json report instead of text");
    c_sim->add_option("--out", out, "write output to a file instead of stdout");

    auto* c_check = app.add_subcommand("check", "advisory diagnostics for the panel and grid");
    add_data_flags(c_check, a);
    c_check->add_option("--r", r_exp, "smoothness exponent probed, in (0, 1/2)")
        ->capture_default_str();
    c_check->add_option("--flag-factor", flag_factor, "spike threshold vs median quotient")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    }

    try {
        if (c_compute->parsed()) return run_compute(a, t, false);
        if (c_series->parsed()) return run_compute(a, t, true);
        if (c_cov->parsed()) return run_cov(a, times, uncentered);
        if (c_var->parsed()) return run_variation(a, t, s, level, target);
        if (c_sim->parsed()) return run_simulate(config_path, sets, seed, json, out);
        if (c_check->parsed()) return run_check(a, r_exp, flag_factor);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2; // no subcommand (require_subcommand makes this unreachable)
}
