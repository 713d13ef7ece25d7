#include "wmlg/cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "wmlg/errors.hpp"
#include "wmlg/util.hpp"

namespace wmlg {

namespace {
constexpr int kGridPoints = 2049;
constexpr double kRangeSlack = 1e-12;
} // namespace

CostFunction::CostFunction(std::string name, std::function<double(double)> d,
                           std::function<double(double)> dprime, double bound, bool bounded)
    : name_(std::move(name)), d_(std::move(d)), dprime_(std::move(dprime)),
      bound_(bound), bounded_(bounded) {
    validate_range();
}

void CostFunction::validate_range() const {
    for (int i = 0; i < kGridPoints; ++i) {
        double u = (double)i / (kGridPoints - 1);
        double v = d_(u);
        if (!std::isfinite(v) || v < -kRangeSlack || v > 1.0 + kRangeSlack)
            throw std::invalid_argument("cost \"" + name_ + "\": d(" + std::to_string(u) +
                                        ") = " + std::to_string(v) + " outside [0,1]");
        if (bounded_) {
            double dv = dprime_(u);
            if (!std::isfinite(dv) || std::abs(dv) > bound_ * (1.0 + 1e-9) + 1e-12)
                throw std::invalid_argument("cost \"" + name_ + "\": |d'(" + std::to_string(u) +
                                            ")| exceeds the declared bound " + std::to_string(bound_));
        }
    }
}

CostFunction CostFunction::identity() {
    return CostFunction("identity", [](double u) { return u; }, [](double) { return 1.0; },
                        1.0, true);
}

CostFunction CostFunction::power(double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("power cost: exponent must be finite and >= 0");
    std::string name = "power(" + strfmt("%g", alpha) + ")";
    if (alpha == 0.0) {
        // 0^0 := 1 -- d is identically one on the marked set
        return CostFunction(std::move(name), [](double) { return 1.0; },
                            [](double) { return 0.0; }, 0.0, true);
    }
    auto d = [alpha](double u) { return std::pow(u, alpha); };
    auto dp = [alpha](double u) {
        if (u == 0.0) {
            if (alpha > 1.0) return 0.0;
            if (alpha == 1.0) return 1.0;
            return std::numeric_limits<double>::infinity();
        }
        return alpha * std::pow(u, alpha - 1.0);
    };
    if (alpha >= 1.0) return CostFunction(std::move(name), d, dp, std::max(1.0, alpha), true);
    // derivative blows up at 0: record the grid supremum, mark unbounded
    double sup = 0.0;
    for (int i = 1; i < kGridPoints; ++i)
        sup = std::max(sup, dp((double)i / (kGridPoints - 1)));
    return CostFunction(std::move(name), d, dp, sup, false);
}

CostFunction CostFunction::piecewise_linear(std::vector<std::pair<double, double>> knots) {
    if (knots.size() < 2) throw std::invalid_argument("piecewise-linear cost needs >= 2 knots");
    if (knots.front().first != 0.0 || knots.back().first != 1.0)
        throw std::invalid_argument("piecewise-linear cost: knots must span u in [0,1]");
    if (knots.front().second != 0.0)
        throw std::invalid_argument("piecewise-linear cost: d(0) must be 0");
    double bound = 0.0;
    for (std::size_t k = 0; k < knots.size(); ++k) {
        auto [u, v] = knots[k];
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("piecewise-linear cost: knot value outside [0,1]");
        if (k) {
            if (!(knots[k - 1].first < u))
                throw std::invalid_argument("piecewise-linear cost: knot abscissae must increase");
            if (v < knots[k - 1].second)
                throw std::invalid_argument("piecewise-linear cost: values must be nondecreasing");
            bound = std::max(bound, std::abs((v - knots[k - 1].second) / (u - knots[k - 1].first)));
        }
    }
    auto shared = std::make_shared<std::vector<std::pair<double, double>>>(std::move(knots));
    auto seg = [shared](double u) {
        const auto& kn = *shared;
        std::size_t k = 1;
        while (k + 1 < kn.size() && u > kn[k].first) ++k;
        return k;
    };
    auto d = [shared, seg](double u) {
        const auto& kn = *shared;
        u = std::clamp(u, 0.0, 1.0);
        std::size_t k = seg(u);
        double w = (u - kn[k - 1].first) / (kn[k].first - kn[k - 1].first);
        return kn[k - 1].second + w * (kn[k].second - kn[k - 1].second);
    };
    auto dp = [shared, seg](double u) {
        const auto& kn = *shared;
        u = std::clamp(u, 0.0, 1.0);
        std::size_t k = seg(u);
        return (kn[k].second - kn[k - 1].second) / (kn[k].first - kn[k - 1].first);
    };
    return CostFunction("piecewise-linear[" + std::to_string(shared->size()) + "]", d, dp,
                        bound, true);
}

CostFunction CostFunction::load_knots(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    std::size_t row = 0;
    std::vector<std::pair<double, double>> knots;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        if (row == 1) continue; // header `u,d`
        auto f = split(line, ',');
        if (f.size() < 2) throw ParseError(path + " row " + std::to_string(row) + ": expected u,d");
        try {
            knots.emplace_back(std::stod(trim(f[0])), std::stod(trim(f[1])));
        } catch (const std::exception&) {
            throw ParseError(path + " row " + std::to_string(row) + ": cannot parse knot");
        }
    }
    return piecewise_linear(std::move(knots));
}

CostFunction CostFunction::custom(std::string name, std::function<double(double)> d,
                                  std::function<double(double)> dprime, double derivative_bound) {
    if (!(derivative_bound >= 0.0) || !std::isfinite(derivative_bound))
        throw std::invalid_argument("custom cost: derivative bound must be finite");
    return CostFunction(std::move(name), std::move(d), std::move(dprime), derivative_bound, true);
}

} // namespace wmlg
