#include "wmlg/experiment_config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <set>

#include "wmlg/errors.hpp"
#include "wmlg/model.hpp"

namespace wmlg {

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& what) {
    throw std::invalid_argument("config key '" + key + "': " + what);
}

double num_of(const std::string& key, const std::string& v, bool allow_inf = false) {
    const char* c = v.c_str();
    char* end = nullptr;
    const double x = std::strtod(c, &end);
    if (end == c || *end != '\0') bad(key, "cannot parse number from '" + v + "'");
    if (!allow_inf && !std::isfinite(x)) bad(key, "value must be finite");
    return x;
}

std::size_t count_of(const std::string& key, const std::string& v) {
    const double x = num_of(key, v);
    if (x < 0.0 || x != std::floor(x) || x > 9e15) bad(key, "expected a nonnegative integer");
    return (std::size_t)x;
}

std::uint64_t seed_of(const std::string& key, const std::string& v) {
    if (v.empty() || v[0] == '-') bad(key, "seed must be a nonnegative integer");
    const char* c = v.c_str();
    char* end = nullptr;
    errno = 0;
    const unsigned long long x = std::strtoull(c, &end, 0); // base 0: decimal or 0x...
    if (end == c || *end != '\0' || errno == ERANGE) bad(key, "cannot parse seed from '" + v + "'");
    return (std::uint64_t)x;
}

std::vector<double> list_of(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const std::string& piece : split(v, ',')) out.push_back(num_of(key, trim(piece)));
    if (out.empty()) bad(key, "empty list");
    return out;
}

std::vector<std::size_t> count_list_of(const std::string& key, const std::string& v) {
    std::vector<std::size_t> out;
    for (const std::string& piece : split(v, ',')) out.push_back(count_of(key, trim(piece)));
    if (out.empty()) bad(key, "empty list");
    return out;
}

const std::string* find(const KeyValues& kv, const std::string& key) {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
}

const std::string& need(const KeyValues& kv, const std::string& key) {
    const std::string* v = find(kv, key);
    if (!v) throw std::invalid_argument("config key '" + key + "' is required");
    return *v;
}

} // namespace

ExperimentPlan::ExperimentPlan(ProcessModel process_, IndexSpec spec_,
                               ThresholdSchedule thresholds_)
    : process(std::move(process_)), spec(std::move(spec_)), thresholds(std::move(thresholds_)) {}

CostFunction parse_cost(const std::string& text) {
    const std::string v = trim(text);
    if (v == "identity") return CostFunction::identity();
    if (v.rfind("power:", 0) == 0) return CostFunction::power(num_of("cost", v.substr(6)));
    if (v.rfind("pwl:", 0) == 0) return CostFunction::load_knots(trim(v.substr(4)));
    throw std::invalid_argument("unknown cost '" + v +
                                "' (want identity, power:<alpha> or pwl:<knots.csv>)");
}

IndexSpec parse_index_spec(const std::string& index, std::optional<int> k,
                           std::optional<double> alpha_exp,
                           const std::optional<std::string>& cost) {
    const std::string name = trim(index);
    CostFunction d = cost ? parse_cost(*cost) : CostFunction::identity();
    if (name == "kakwani") {
        if (!k) throw std::invalid_argument("index kakwani requires k");
        if (alpha_exp) throw std::invalid_argument("alpha_exp only applies to fgt");
        return IndexSpec::kakwani(*k, std::move(d));
    }
    if (alpha_exp && name != "fgt") throw std::invalid_argument("alpha_exp only applies to fgt");
    if (k) throw std::invalid_argument("k only applies to kakwani");
    if (name == "sen") return IndexSpec::sen(std::move(d));
    if (name == "shorrocks") return IndexSpec::shorrocks(std::move(d));
    if (name == "thon") return IndexSpec::thon(std::move(d));
    if (name == "fgt") {
        if (cost)
            throw std::invalid_argument("fgt's cost is power(alpha_exp); drop the cost key");
        if (!alpha_exp) throw std::invalid_argument("index fgt requires alpha_exp");
        return IndexSpec::fgt(*alpha_exp);
    }
    if (name == "general")
        throw std::invalid_argument(
            "index 'general' needs a programmatic weight scheme; not available here");
    throw std::invalid_argument("unknown index '" + name + "'");
}

ExperimentPlan parse_experiment_config(const KeyValues& kv) {
    static const std::set<std::string> known = {
        "experiment", "index", "k",    "alpha_exp", "cost",  "times", "corr",
        "rho",        "z",     "z_file", "seed",     "n",     "R",     "n_list",
        "t",          "s",     "level",  "variance_override"};
    for (const auto& [key, value] : kv) {
        (void)value;
        if (known.count(key) || key == "marginal") continue;
        if (key.rfind("marginal.", 0) == 0 || key.rfind("tol.", 0) == 0) continue;
        throw std::invalid_argument("unknown config key '" + key + "'");
    }

    // --- process model -----------------------------------------------------
    std::vector<double> times = list_of("times", need(kv, "times"));
    for (const auto& [key, value] : kv) {
        (void)value;
        if (key.rfind("marginal.", 0) != 0) continue;
        const std::string suffix = key.substr(9);
        const bool digits = !suffix.empty() && suffix.find_first_not_of("0123456789") ==
                                                   std::string::npos;
        if (!digits || count_of(key, suffix) >= times.size())
            bad(key, "suffix must be a time index below " + std::to_string(times.size()));
    }
    std::vector<std::shared_ptr<const Marginal>> marginals;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const std::string per = "marginal." + std::to_string(i);
        const std::string* m = find(kv, per);
        if (!m) m = find(kv, "marginal");
        if (!m)
            throw std::invalid_argument("config key 'marginal' (or '" + per + "') is required");
        marginals.push_back(parse_marginal(*m));
    }
    CorrelationKind kind = CorrelationKind::Exchangeable;
    if (const std::string* c = find(kv, "corr")) {
        const std::string v = trim(*c);
        if (v == "exchangeable")
            kind = CorrelationKind::Exchangeable;
        else if (v == "ar1")
            kind = CorrelationKind::Ar1;
        else
            bad("corr", "want exchangeable or ar1");
    }
    const double rho = find(kv, "rho") ? num_of("rho", kv.at("rho")) : 0.0;
    DistributionModel model(times, std::move(marginals), kind, rho);

    // --- index spec ---------------------------------------------------------
    std::optional<int> kk;
    if (const std::string* v = find(kv, "k")) {
        const double x = num_of("k", *v);
        if (x != std::floor(x)) bad("k", "expected an integer");
        kk = (int)x;
    }
    std::optional<double> alpha_exp;
    if (const std::string* v = find(kv, "alpha_exp")) alpha_exp = num_of("alpha_exp", *v);
    std::optional<std::string> cost;
    if (const std::string* v = find(kv, "cost")) cost = *v;
    IndexSpec spec = parse_index_spec(need(kv, "index"), kk, alpha_exp, cost);

    // --- thresholds ----------------------------------------------------------
    const std::string* zv = find(kv, "z");
    const std::string* zf = find(kv, "z_file");
    if (!!zv == !!zf)
        throw std::invalid_argument("exactly one of 'z' and 'z_file' is required");
    ThresholdSchedule thresholds = ThresholdSchedule::constant(1.0);
    if (zf) {
        thresholds = ThresholdSchedule::load_csv(*zf);
    } else {
        std::vector<double> zs = list_of("z", *zv);
        if (zs.size() == 1) {
            thresholds = ThresholdSchedule::constant(zs[0]);
        } else if (zs.size() == times.size()) {
            std::vector<std::pair<double, double>> tz;
            for (std::size_t i = 0; i < times.size(); ++i) tz.push_back({times[i], zs[i]});
            thresholds = ThresholdSchedule::from_pairs(std::move(tz));
        } else {
            bad("z", "give one value or one per time");
        }
    }

    ExperimentPlan plan(ProcessModel{std::move(model), seed_of("seed", need(kv, "seed"))},
                        std::move(spec), std::move(thresholds));
    plan.experiment = trim(need(kv, "experiment"));

    // --- run geometry ---------------------------------------------------------
    const bool wants_nlist = plan.experiment == "representation" ||
                             plan.experiment == "consistency" ||
                             plan.experiment == "plugin-vs-analytic";
    const bool wants_s =
        plan.experiment == "coverage" || plan.experiment == "plugin-vs-analytic";
    const bool known_experiment = wants_nlist || plan.experiment == "clt" ||
                                  plan.experiment == "coverage";
    if (!known_experiment)
        throw std::invalid_argument("unknown experiment '" + plan.experiment +
                                    "' (want clt, representation, coverage, consistency or "
                                    "plugin-vs-analytic)");

    plan.R = count_of("R", need(kv, "R"));
    if (wants_nlist)
        plan.n_list = count_list_of("n_list", need(kv, "n_list"));
    else
        plan.n = count_of("n", need(kv, "n"));
    plan.t = num_of("t", need(kv, "t"));
    plan.process.model.time_index(plan.t); // validate against the grid now
    if (wants_s) {
        plan.s = num_of("s", need(kv, "s"));
        plan.process.model.time_index(plan.s);
    } else if (find(kv, "s")) {
        bad("s", "only coverage and plugin-vs-analytic take a second time");
    }
    if (const std::string* v = find(kv, "level")) plan.level = num_of("level", *v);
    if (!(plan.level > 0.0 && plan.level < 1.0)) bad("level", "must lie in (0,1)");
    if (const std::string* v = find(kv, "variance_override")) {
        const double x = num_of("variance_override", *v, /*allow_inf=*/true);
        if (x < 0.0) bad("variance_override", "must be >= 0 (or inf)");
        plan.variance_override = x;
    }

    // --- tolerance overrides ----------------------------------------------------
    static const std::set<std::string> tol_known = {
        "tol.variance_rel", "tol.ks_p_min", "tol.coverage_lo",      "tol.coverage_hi",
        "tol.repr_frac",    "tol.qp_frac",  "tol.consistency_mult", "tol.plugin_rel"};
    for (const auto& [key, value] : kv) {
        (void)value;
        if (key.rfind("tol.", 0) == 0 && !tol_known.count(key))
            throw std::invalid_argument("unknown config key '" + key + "'");
    }
    auto tolkey = [&](const char* name, double& slot) {
        if (const std::string* v = find(kv, std::string("tol.") + name))
            slot = num_of(std::string("tol.") + name, *v);
    };
    tolkey("variance_rel", plan.tol.variance_rel);
    tolkey("ks_p_min", plan.tol.ks_p_min);
    tolkey("coverage_lo", plan.tol.coverage_lo);
    tolkey("coverage_hi", plan.tol.coverage_hi);
    tolkey("repr_frac", plan.tol.repr_frac);
    tolkey("qp_frac", plan.tol.qp_frac);
    tolkey("consistency_mult", plan.tol.consistency_mult);
    tolkey("plugin_rel", plan.tol.plugin_rel);

    plan.canonical_text = canonical_keyvalues(kv);
    plan.config_hash = sha1_hex(plan.canonical_text);
    return plan;
}

ExperimentPlan load_experiment_config(const std::string& path) {
    return parse_experiment_config(load_keyvalues(path));
}

ExperimentResult run_experiment(const ExperimentPlan& p) {
    if (p.experiment == "clt")
        return clt_experiment(p.process, p.n, p.R, p.thresholds, p.spec, p.t, p.tol);
    if (p.experiment == "representation")
        return representation_check(p.process, p.n_list, p.R, p.thresholds, p.spec, p.t, p.tol);
    if (p.experiment == "coverage")
        return coverage_experiment(p.process, p.n, p.R, p.thresholds, p.spec, p.t, p.s, p.level,
                                   p.variance_override, p.tol);
    if (p.experiment == "consistency")
        return consistency_experiment(p.process, p.n_list, p.R, p.thresholds, p.spec, p.t, p.tol);
    if (p.experiment == "plugin-vs-analytic")
        return plugin_vs_analytic(p.process, p.n_list, p.R, p.thresholds, p.spec, p.t, p.s,
                                  p.tol);
    throw std::invalid_argument("unknown experiment '" + p.experiment + "'");
}

} // namespace wmlg
