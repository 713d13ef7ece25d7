#include "wmlg/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wmlg/errors.hpp"
#include "wmlg/stats.hpp"
#include "wmlg/util.hpp"

namespace wmlg {

double Marginal::quantile_normal(double x) const { return quantile(norm_cdf(x)); }

UniformMarginal::UniformMarginal(double a, double b) : a_(a), b_(b) {
    if (!(a >= 0.0 && b > a && std::isfinite(b)))
        throw std::invalid_argument("uniform marginal needs 0 <= a < b < inf");
}

double UniformMarginal::cdf(double y) const {
    if (y <= a_) return 0.0;
    if (y >= b_) return 1.0;
    return (y - a_) / (b_ - a_);
}

double UniformMarginal::pdf(double y) const {
    return (y < a_ || y > b_) ? 0.0 : 1.0 / (b_ - a_);
}

double UniformMarginal::quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile: p outside [0,1]");
    return a_ + p * (b_ - a_);
}

double UniformMarginal::quantile_normal(double x) const { return a_ + norm_cdf(x) * (b_ - a_); }

std::string UniformMarginal::describe() const { return strfmt("uniform(%g,%g)", a_, b_); }

LognormalMarginal::LognormalMarginal(double mu, double sigma) : mu_(mu), sigma_(sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mu))
        throw std::invalid_argument("lognormal marginal needs finite mu and sigma > 0");
}

double LognormalMarginal::cdf(double y) const {
    if (y <= 0.0) return 0.0;
    return norm_cdf((std::log(y) - mu_) / sigma_);
}

double LognormalMarginal::pdf(double y) const {
    if (y <= 0.0) return 0.0;
    return norm_pdf((std::log(y) - mu_) / sigma_) / (sigma_ * y);
}

double LognormalMarginal::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return 0.0;
        throw std::invalid_argument("lognormal quantile: p outside [0,1)");
    }
    return std::exp(mu_ + sigma_ * norm_quantile(p));
}

double LognormalMarginal::quantile_normal(double x) const { return std::exp(mu_ + sigma_ * x); }

std::string LognormalMarginal::describe() const { return strfmt("lognormal(%g,%g)", mu_, sigma_); }

std::shared_ptr<const Marginal> parse_marginal(const std::string& text) {
    std::string t = trim(text);
    auto open = t.find('(');
    if (open == std::string::npos || t.back() != ')')
        throw ParseError("cannot parse marginal \"" + text + "\" (want family(p1,p2))");
    std::string family = trim(t.substr(0, open));
    auto args = split(t.substr(open + 1, t.size() - open - 2), ',');
    if (args.size() != 2)
        throw ParseError("marginal \"" + text + "\": expected two parameters");
    double p1, p2;
    try {
        p1 = std::stod(trim(args[0]));
        p2 = std::stod(trim(args[1]));
    } catch (const std::exception&) {
        throw ParseError("marginal \"" + text + "\": cannot parse parameters");
    }
    if (family == "uniform") return std::make_shared<UniformMarginal>(p1, p2);
    if (family == "lognormal") return std::make_shared<LognormalMarginal>(p1, p2);
    throw ParseError("unknown marginal family \"" + family + "\" (known: uniform, lognormal)");
}

DistributionModel::DistributionModel(std::vector<double> times,
                                     std::vector<std::shared_ptr<const Marginal>> marginals,
                                     CorrelationKind kind, double rho)
    : times_(std::move(times)), marginals_(std::move(marginals)), kind_(kind), rho_(rho) {
    if (times_.empty()) throw std::invalid_argument("model needs at least one time");
    for (std::size_t k = 0; k + 1 < times_.size(); ++k)
        if (!(times_[k] < times_[k + 1]))
            throw std::invalid_argument("model time grid must be strictly increasing");
    if (marginals_.size() != times_.size())
        throw std::invalid_argument("model needs one marginal per time");
    for (const auto& m : marginals_)
        if (!m) throw std::invalid_argument("null marginal");
    const bool ok = kind_ == CorrelationKind::Exchangeable ? (rho_ >= 0.0 && rho_ <= 1.0)
                                                           : (rho_ > -1.0 && rho_ <= 1.0);
    if (!ok || !std::isfinite(rho_))
        throw std::invalid_argument("copula rho out of range (exchangeable: [0,1], ar1: (-1,1])");
}

DistributionModel DistributionModel::iid_copula(std::vector<double> times,
                                                std::shared_ptr<const Marginal> marginal,
                                                CorrelationKind kind, double rho) {
    std::vector<std::shared_ptr<const Marginal>> ms(times.size(), std::move(marginal));
    return DistributionModel(std::move(times), std::move(ms), kind, rho);
}

std::size_t DistributionModel::time_index(double t) const {
    for (std::size_t k = 0; k < times_.size(); ++k)
        if (times_[k] == t) return k;
    std::ostringstream os;
    for (std::size_t k = 0; k < times_.size(); ++k) os << (k ? ", " : "") << times_[k];
    throw UnknownTime("time " + std::to_string(t) + " not on the model grid {" + os.str() + "}");
}

double DistributionModel::rho_between(double t, double s) const {
    std::size_t i = time_index(t), j = time_index(s);
    if (i == j) return 1.0;
    if (kind_ == CorrelationKind::Exchangeable) return rho_;
    double r = 1.0;
    for (std::size_t k = 0; k < (i > j ? i - j : j - i); ++k) r *= rho_;
    return r;
}

double DistributionModel::joint_cdf(double t, double s, double u, double v) const {
    const Marginal& mt = marginal(t);
    const Marginal& ms = marginal(s);
    double pu = mt.cdf(u), pv = ms.cdf(v);
    if (pu <= 0.0 || pv <= 0.0) return 0.0;
    double a = pu >= 1.0 ? 8.5 : norm_quantile(pu);
    double b = pv >= 1.0 ? 8.5 : norm_quantile(pv);
    return binorm_cdf(a, b, rho_between(t, s));
}

std::string DistributionModel::describe() const {
    std::ostringstream os;
    os << (kind_ == CorrelationKind::Exchangeable ? "exchangeable" : "ar1") << "(rho=" << rho_
       << ") x {";
    for (std::size_t k = 0; k < times_.size(); ++k)
        os << (k ? "; " : "") << "t=" << times_[k] << ": " << marginals_[k]->describe();
    os << "}";
    return os.str();
}

MassBounds mass_bounds(const DistributionModel& model, const ThresholdSchedule& thresholds) {
    MassBounds b;
    b.beta_hat = 1.0;
    b.xi_hat = 0.0;
    for (std::size_t k = 0; k < model.num_times(); ++k) {
        const Marginal& m = model.marginal_at(k);
        b.beta_hat = std::min(b.beta_hat, m.cdf(thresholds.z1()));
        b.xi_hat = std::max(b.xi_hat, m.cdf(thresholds.z2()));
    }
    b.ok = b.beta_hat > 0.0 && b.beta_hat <= b.xi_hat && b.xi_hat < 1.0;
    return b;
}

} // namespace wmlg
