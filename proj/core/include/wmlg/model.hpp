#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wmlg/panel.hpp"

namespace wmlg {

/// A one-dimensional outcome law on [0, inf): CDF, density and quantile, plus
/// the normal-score quantile G^{-1}(Phi(x)) used by the Gaussian-copula
/// machinery (overridable where a closed form avoids the Phi round-trip).
class Marginal {
public:
    virtual ~Marginal() = default;
    virtual double cdf(double y) const = 0;
    virtual double pdf(double y) const = 0;
    virtual double quantile(double p) const = 0;
    virtual double quantile_normal(double x) const;
    virtual std::string describe() const = 0; ///< e.g. "uniform(0,1)"
};

/// Uniform on [a, b], 0 <= a < b.
class UniformMarginal final : public Marginal {
public:
    UniformMarginal(double a, double b);
    double cdf(double y) const override;
    double pdf(double y) const override;
    double quantile(double p) const override;
    double quantile_normal(double x) const override;
    std::string describe() const override;
    double a() const { return a_; }
    double b() const { return b_; }

private:
    double a_, b_;
};

/// Lognormal: log Y ~ N(mu, sigma^2).
class LognormalMarginal final : public Marginal {
public:
    LognormalMarginal(double mu, double sigma);
    double cdf(double y) const override;
    double pdf(double y) const override;
    double quantile(double p) const override;
    double quantile_normal(double x) const override;
    std::string describe() const override;
    double mu() const { return mu_; }
    double sigma() const { return sigma_; }

private:
    double mu_, sigma_;
};

/// Parse "uniform(a,b)" / "lognormal(mu,sigma)" into a marginal.
std::shared_ptr<const Marginal> parse_marginal(const std::string& text);

enum class CorrelationKind { Exchangeable, Ar1 };

/// A process law on the time grid: one marginal per grid time plus a Gaussian
/// copula across times (exchangeable: pairwise rho; AR(1): rho^{|i-j|} by
/// grid *position*, not label distance). rho = 1 is legal for sampling but
/// the covariance quadrature requires |rho between distinct times| < 1.
class DistributionModel {
public:
    DistributionModel(std::vector<double> times,
                      std::vector<std::shared_ptr<const Marginal>> marginals,
                      CorrelationKind kind, double rho);
    /// Same marginal at every time.
    static DistributionModel iid_copula(std::vector<double> times,
                                        std::shared_ptr<const Marginal> marginal,
                                        CorrelationKind kind, double rho);

    const std::vector<double>& times() const { return times_; }
    std::size_t num_times() const { return times_.size(); }
    std::size_t time_index(double t) const; ///< UnknownTime off the grid
    const Marginal& marginal(double t) const { return *marginals_[time_index(t)]; }
    const Marginal& marginal_at(std::size_t idx) const { return *marginals_[idx]; }
    std::shared_ptr<const Marginal> marginal_ptr(double t) const {
        return marginals_[time_index(t)];
    }

    CorrelationKind correlation_kind() const { return kind_; }
    double rho() const { return rho_; }
    /// Copula correlation between grid times t and s.
    double rho_between(double t, double s) const;

    /// Joint CDF P(Y(t) <= u, Y(s) <= v) under the Gaussian copula.
    double joint_cdf(double t, double s, double u, double v) const;

    std::string describe() const;

private:
    std::vector<double> times_;
    std::vector<std::shared_ptr<const Marginal>> marginals_;
    CorrelationKind kind_;
    double rho_;
};

/// Lower/upper mass bounds over the grid: beta_hat = min_t G_t(Z1) and
/// xi_hat = max_t G_t(Z2); the marked-set regularity needs 0 < beta <= xi < 1.
struct MassBounds {
    double beta_hat = 0.0;
    double xi_hat = 0.0;
    bool ok = false;
};
MassBounds mass_bounds(const DistributionModel& model, const ThresholdSchedule& thresholds);

} // namespace wmlg
