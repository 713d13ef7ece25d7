#include "wmlg/weights.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace wmlg {

double ipow(double base, int e) {
    double out = 1.0;
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

struct WeightScheme::Cache {
    std::mutex mu;
    std::vector<double> prefix{0.0}; // prefix[j] = w(1)+...+w(j)
};

WeightScheme::WeightScheme(std::string name, std::function<double(std::int64_t)> w,
                           std::array<int, 4> mu,
                           std::function<double(std::int64_t, std::int64_t)> A)
    : name_(std::move(name)), w_(std::move(w)), mu_(mu), A_(std::move(A)),
      cache_(std::make_shared<Cache>()) {}

WeightScheme WeightScheme::kakwani(int k) {
    if (k < 1) throw std::invalid_argument("kakwani weights: k must be >= 1");
    return WeightScheme("kakwani(" + std::to_string(k) + ")",
                        [k](std::int64_t j) { return ipow((double)j, k); },
                        {0, 1, 1, 1},
                        [](std::int64_t, std::int64_t Q) { return (double)Q; });
}

WeightScheme WeightScheme::unit() {
    return WeightScheme("unit", [](std::int64_t) { return 1.0; }, {0, 1, 1, 1},
                        [](std::int64_t, std::int64_t Q) { return (double)Q; });
}

double WeightScheme::w(std::int64_t j) const { return w_(j); }

double WeightScheme::B(std::int64_t Q) const {
    if (Q < 0) throw std::invalid_argument("B(Q): negative Q");
    std::lock_guard<std::mutex> g(cache_->mu);
    auto& p = cache_->prefix;
    while ((std::int64_t)p.size() <= Q) {
        std::int64_t j = (std::int64_t)p.size();
        double wj = w_(j);
        if (!(wj >= 0.0) || !std::isfinite(wj))
            throw std::invalid_argument("weight scheme \"" + name_ + "\": w(" +
                                        std::to_string(j) + ") is negative or non-finite");
        p.push_back(p.back() + wj);
    }
    return p[(std::size_t)Q];
}

} // namespace wmlg
