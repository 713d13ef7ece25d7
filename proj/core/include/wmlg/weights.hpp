#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>

namespace wmlg {

/// Rank-weight scheme of the general weighted-mean form: a nonnegative weight
/// sequence w(j), the affine argument coefficients (mu1..mu4) that map the
/// order statistic j to the weight index mu1*n + mu2*Q - mu3*j + mu4, and the
/// leading normalizer A(n, Q). Partial sums B(Q) = w(1)+...+w(Q) are cached
/// incrementally (thread-safe), so evaluating a whole series reuses them.
class WeightScheme {
public:
    WeightScheme(std::string name, std::function<double(std::int64_t)> w,
                 std::array<int, 4> mu, std::function<double(std::int64_t, std::int64_t)> A);

    /// Kakwani family: w(j) = j^k, argument Q - j + 1, A = Q. k >= 1.
    static WeightScheme kakwani(int k);
    /// Unit weights, same argument map, A = Q (the FGT backbone).
    static WeightScheme unit();

    double w(std::int64_t j) const;
    double A(std::int64_t n, std::int64_t Q) const { return A_(n, Q); }
    /// B(Q); grows the cache on demand. Throws std::invalid_argument if a
    /// negative weight is encountered while growing.
    double B(std::int64_t Q) const;

    int mu1() const { return mu_[0]; }
    int mu2() const { return mu_[1]; }
    int mu3() const { return mu_[2]; }
    int mu4() const { return mu_[3]; }
    const std::string& name() const { return name_; }

private:
    struct Cache; // prefix sums + mutex, shared so copies share the cache
    std::string name_;
    std::function<double(std::int64_t)> w_;
    std::array<int, 4> mu_;
    std::function<double(std::int64_t, std::int64_t)> A_;
    std::shared_ptr<Cache> cache_;
};

/// Integer power with exact double arithmetic for small exponents.
double ipow(double base, int e);

} // namespace wmlg
