#include "wmlg/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wmlg/errors.hpp"
#include "wmlg/stats.hpp"
#include "wmlg/util.hpp"

namespace wmlg {

std::string CovarianceEstimate::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "time";
    for (double t : times) os << "," << t;
    os << "\n";
    for (std::size_t i = 0; i < dim(); ++i) {
        os << times[i];
        for (std::size_t j = 0; j < dim(); ++j) os << "," << at(i, j);
        os << "\n";
    }
    return os.str();
}

namespace {

// Cached per-time material for the analytic solver.
struct TimeSlice {
    TheoremOneBundle bundle;
    TailIntegralTable psi; // psi~(p) = int_p^q nu~ ds on [0, q]
    double astar = 0.0;    // Phi^{-1}(q)
};

struct CellMoments {
    double gg = 0.0, pp = 0.0, gp = 0.0, pg = 0.0; // E[g_t g_s], E[psi psi], E[g_t psi_s], E[psi_t g_s]
};

struct Cell {
    double g1 = 0.0, g2 = 0.0, g3 = 0.0;
    double total() const { return g1 + g2 + g3; }
};

Cell assemble(const CellMoments& m, const TimeSlice& a, const TimeSlice& b, bool centered) {
    Cell c;
    c.g1 = m.gg - a.bundle.eta * b.bundle.eta;
    c.g2 = m.pp - a.bundle.EGnu * b.bundle.EGnu;
    c.g3 = centered ? (m.gp - a.bundle.eta * b.bundle.EGnu) + (m.pg - a.bundle.EGnu * b.bundle.eta)
                    : m.gp + m.pg;
    return c;
}

// E[F(Y_t) H(Y_s)] over the truncated marked rectangle in normal-score space,
// by a product Simpson rule with the bivariate normal density as weight. The
// density row is built incrementally (one exp per node instead of per entry)
// when |rho| is moderate; near-degenerate rho falls back to exact exponents.
CellMoments product_moments(const TimeSlice& a, const TimeSlice& b, double rho, int nodes,
                            double lo) {
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    const double v = 1.0 - rho * rho;
    const double norm_const = 1.0 / (kTwoPi * std::sqrt(v));
    const int N = nodes;
    const double ha = (a.astar - lo) / (N - 1);
    const double hb = (b.astar - lo) / (N - 1);

    auto simpson_w = [](int i, int n) { return i == 0 || i == n - 1 ? 1.0 : (i % 2 ? 4.0 : 2.0); };

    std::vector<double> av(N), bv(N), wa(N), wb(N), Fg(N), Fp(N), Hg(N), Hp(N), cb(N);
    for (int i = 0; i < N; ++i) {
        av[i] = lo + i * ha;
        bv[i] = lo + i * hb;
        wa[i] = simpson_w(i, N) * ha / 3.0;
        wb[i] = simpson_w(i, N) * hb / 3.0;
        double pa = norm_cdf(av[i]), pb = norm_cdf(bv[i]);
        Fg[i] = a.bundle.g_p(std::min(pa, a.bundle.q));
        Fp[i] = a.psi(std::min(pa, a.bundle.q));
        Hg[i] = b.bundle.g_p(std::min(pb, b.bundle.q));
        Hp[i] = b.psi(std::min(pb, b.bundle.q));
        cb[i] = std::exp(-bv[i] * bv[i] / (2.0 * v));
    }

    const bool fast = std::abs(rho) <= 0.95; // exponent-splitting stays in range

    CellMoments m;
    for (int i = 0; i < N; ++i) {
        double u_g = 0.0, u_p = 0.0; // sum_j w_j phi2(a_i, b_j) H{g,p}[j]
        if (fast) {
            // phi2 = C * exp(-a^2/2v) * exp(-b^2/2v) * exp(rho a b / v);
            // the cross factor advances by a constant multiplier along j.
            double run = std::exp(-av[i] * av[i] / (2.0 * v) + rho * av[i] * bv[0] / v);
            const double rowstep = std::exp(rho * av[i] * hb / v);
            for (int j = 0; j < N; ++j) {
                double dens = run * cb[j];
                u_g += wb[j] * dens * Hg[j];
                u_p += wb[j] * dens * Hp[j];
                run *= rowstep;
            }
        } else {
            for (int j = 0; j < N; ++j) {
                double e = -(av[i] * av[i] - 2.0 * rho * av[i] * bv[j] + bv[j] * bv[j]) / (2.0 * v);
                double dens = std::exp(e);
                u_g += wb[j] * dens * Hg[j];
                u_p += wb[j] * dens * Hp[j];
            }
        }
        m.gg += wa[i] * Fg[i] * u_g;
        m.gp += wa[i] * Fg[i] * u_p;
        m.pg += wa[i] * Fp[i] * u_g;
        m.pp += wa[i] * Fp[i] * u_p;
    }
    m.gg *= norm_const;
    m.gp *= norm_const;
    m.pg *= norm_const;
    m.pp *= norm_const;
    return m;
}

// Off-diagonal cell with refinement doubling; `scale` calibrates the relative
// tolerance (Cauchy-Schwarz bound sqrt(Gamma_tt Gamma_ss) of the target).
Cell cross_cell(const TimeSlice& a, const TimeSlice& b, double rho, const CovarianceOptions& opts,
                double scale, bool centered) {
    int nodes = opts.grid_2d;
    Cell prev = assemble(product_moments(a, b, rho, nodes, -opts.tail_cut), a, b, centered);
    for (int r = 0; r < opts.max_refinements_2d; ++r) {
        nodes = 2 * (nodes - 1) + 1;
        Cell cur = assemble(product_moments(a, b, rho, nodes, -opts.tail_cut), a, b, centered);
        double tol = opts.rtol_2d * std::max(scale, 1e-12);
        if (std::abs(cur.g1 - prev.g1) <= tol && std::abs(cur.g2 - prev.g2) <= tol &&
            std::abs(cur.g3 - prev.g3) <= tol)
            return cur;
        prev = cur;
    }
    throw QuadratureError("cross-covariance quadrature did not settle after " +
                          std::to_string(opts.max_refinements_2d) + " refinements");
}

// Diagonal cell: one-dimensional integrals on the probability scale.
Cell diagonal_cell(const TimeSlice& s, const CovarianceOptions& opts, bool centered) {
    const auto& B = s.bundle;
    const double q = B.q;
    double scale = std::abs(B.J) + 1.0;
    double Eg2 =
        integrate_prob([&](double p) { return B.g_p(p) * B.g_p(p); }, 0.0, q, opts.quad, scale);
    double Ep2 = integrate_prob([&](double p) { double w = s.psi(p); return w * w; }, 0.0, q,
                                opts.quad, scale);
    double Egp =
        integrate_prob([&](double p) { return B.g_p(p) * s.psi(p); }, 0.0, q, opts.quad, scale);
    Cell c;
    c.g1 = Eg2 - B.eta * B.eta;
    c.g2 = Ep2 - B.EGnu * B.EGnu;
    c.g3 = centered ? 2.0 * (Egp - B.eta * B.EGnu) : 2.0 * Egp;
    return c;
}

} // namespace

CovarianceEstimate covariance_analytic(const DistributionModel& model,
                                       const std::vector<double>& times,
                                       const ThresholdSchedule& thresholds, const IndexSpec& spec,
                                       const CovarianceOptions& opts) {
    if (times.empty()) throw std::invalid_argument("covariance_analytic: no times");
    const std::size_t m = times.size();

    std::vector<TimeSlice> slices(m);
    for (std::size_t i = 0; i < m; ++i) {
        TimeSlice& sl = slices[i];
        sl.bundle = theorem_one_bundle(model, times[i], thresholds, spec, opts.quad);
        if (sl.bundle.q >= 1.0)
            throw DegenerateModel("G_t(Z) = 1 at t=" + std::to_string(times[i]) +
                                  ": upper mass bound violated");
        sl.astar = norm_quantile(sl.bundle.q);
        if (sl.astar <= -opts.tail_cut)
            throw DegenerateModel("marked mass below the quadrature floor at t=" +
                                  std::to_string(times[i]));
        sl.psi = TailIntegralTable(sl.bundle.nu_p, 0.0, sl.bundle.q, opts.psi_table_nodes);
    }

    CovarianceEstimate est;
    est.times = times;
    est.method = "analytic-quadrature";
    est.index_label = spec.label();
    est.kappa_centered = opts.kappa_centered;
    est.gamma.assign(m * m, 0.0);
    est.gamma1.assign(m * m, 0.0);
    est.gamma2.assign(m * m, 0.0);
    est.gamma3.assign(m * m, 0.0);

    auto put = [&](std::size_t i, std::size_t j, const Cell& c) {
        est.gamma1[i * m + j] = c.g1;
        est.gamma2[i * m + j] = c.g2;
        est.gamma3[i * m + j] = c.g3;
        est.gamma[i * m + j] = c.total();
    };

    for (std::size_t i = 0; i < m; ++i) {
        Cell d = diagonal_cell(slices[i], opts, opts.kappa_centered);
        if (d.total() < -1e-10)
            throw InternalError("negative diagonal variance " + std::to_string(d.total()) +
                                " at t=" + std::to_string(times[i]));
        put(i, i, d);
    }

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            double rho = model.rho_between(times[i], times[j]);
            if (!(std::abs(rho) < 1.0))
                throw DegenerateModel("copula correlation |rho| >= 1 between t=" +
                                      std::to_string(times[i]) + " and t=" +
                                      std::to_string(times[j]));
            double scale = std::sqrt(std::max(est.gamma[i * m + i], 0.0) *
                                     std::max(est.gamma[j * m + j], 0.0));
            // Both argument orders: algebraically identical, numerically an
            // independent pass -- disagreement means the solver is broken.
            Cell ij = cross_cell(slices[i], slices[j], rho, opts, scale, opts.kappa_centered);
            Cell ji = cross_cell(slices[j], slices[i], rho, opts, scale, opts.kappa_centered);
            double tol = opts.symmetry_tol * std::max(1.0, scale);
            if (std::abs(ij.total() - ji.total()) > tol)
                throw InternalError(strfmt("asymmetric covariance cell (%g, %g): %.3e vs %.3e",
                                           times[i], times[j], ij.total(), ji.total()));
            Cell avg;
            avg.g1 = 0.5 * (ij.g1 + ji.g1);
            avg.g2 = 0.5 * (ij.g2 + ji.g2);
            // ji's cross moments swap roles: its g3 = E[g_s psi_t] + E[psi_s g_t],
            // which is the same symmetric sum, so averaging is well-posed.
            avg.g3 = 0.5 * (ij.g3 + ji.g3);
            put(i, j, avg);
            put(j, i, avg);
        }
    }
    return est;
}

PluginSlice plugin_slice(const CrossSection& s, double z, const IndexSpec& spec) {
    const LimitFunctions L = limit_functions_for(spec);
    const std::size_t n = s.sorted.size();
    const std::int64_t Q = headcount(s, z);
    if (Q == 0)
        throw DegenerateCrossSection("empty marked set at t=" + std::to_string(s.time) +
                                     " (no outcome <= " + std::to_string(z) + ")");
    PluginSlice out;
    out.time = s.time;
    out.z = z;
    out.marked = Q;
    out.qhat = (double)Q / (double)n;

    // ECDF values at the sorted points (ties share the upper step), gap costs.
    std::vector<double> Gh(n), gam(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
        if (pos + 1 < n && s.sorted[pos + 1] == s.sorted[pos]) {
            Gh[pos] = 0.0; // fill below from the right
        } else {
            Gh[pos] = (double)(pos + 1) / (double)n;
        }
    }
    for (std::size_t pos = n - 1; pos-- > 0;)
        if (Gh[pos] == 0.0) Gh[pos] = Gh[pos + 1];
    for (std::size_t pos = 0; pos < n; ++pos)
        gam[pos] = (std::int64_t)pos < Q ? spec.cost(std::clamp((z - s.sorted[pos]) / z, 0.0, 1.0))
                                         : 0.0;

    const double q = out.qhat;
    double Hc = 0.0, Hpi = 0.0, Kc = 0.0, Kpi = 0.0;
    for (std::int64_t pos = 0; pos < Q; ++pos) {
        double y = Gh[(std::size_t)pos];
        Hc += L.c(q, y) * gam[(std::size_t)pos];
        Kc += L.dc_dx(q, y) * gam[(std::size_t)pos];
        if (L.ratio_route) {
            Hpi += L.pi(q, y);
            Kpi += L.dpi_dx(q, y);
        }
    }
    Hc /= (double)n;
    Kc /= (double)n;
    if (L.ratio_route) {
        Hpi /= (double)n;
        Kpi /= (double)n;
        if (!(std::abs(Hpi) > 1e-12))
            throw DegenerateCrossSection("plug-in ratio normalizer ~ 0 at t=" +
                                         std::to_string(s.time));
    } else {
        Hpi = 1.0;
        Kpi = 0.0;
    }
    out.H_c = Hc;
    out.H_pi = Hpi;
    out.K_c = Kc;
    out.K_pi = Kpi;
    out.K = Kc / Hpi - Hc * Kpi / (Hpi * Hpi);

    const double inv_pi = 1.0 / Hpi, ratio2 = Hc / (Hpi * Hpi);
    std::vector<double> g_sorted(n, 0.0), nu_sorted(n, 0.0);
    for (std::int64_t pos = 0; pos < Q; ++pos) {
        double y = Gh[(std::size_t)pos], gm = gam[(std::size_t)pos];
        if (L.ratio_route) {
            g_sorted[(std::size_t)pos] = inv_pi * L.c(q, y) * gm - ratio2 * L.pi(q, y) + out.K;
            nu_sorted[(std::size_t)pos] = inv_pi * L.dc_dy(q, y) * gm - ratio2 * L.dpi_dy(q, y);
        } else {
            g_sorted[(std::size_t)pos] = L.c(q, y) * gm + out.K;
            nu_sorted[(std::size_t)pos] = L.dc_dy(q, y) * gm;
        }
    }

    // psi-hat(u) = (1/n) sum_{Y_i >= u} nu-hat(Y_i): suffix sums over the
    // sorted order; tied blocks share the suffix starting at their first slot.
    std::vector<double> suffix(n + 1, 0.0);
    for (std::size_t pos = n; pos-- > 0;) suffix[pos] = suffix[pos + 1] + nu_sorted[pos];
    std::vector<double> psi_sorted(n);
    std::size_t block_first = 0;
    for (std::size_t pos = 0; pos < n; ++pos) {
        if (pos > 0 && s.sorted[pos] != s.sorted[pos - 1]) block_first = pos;
        psi_sorted[pos] = suffix[block_first] / (double)n;
    }

    out.ghat.resize(n);
    out.psihat.resize(n);
    double eta = 0.0, egnu = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t pos = (std::size_t)s.ranks[i] - 1;
        out.ghat[i] = g_sorted[pos];
        out.psihat[i] = psi_sorted[pos];
    }
    for (std::size_t pos = 0; pos < n; ++pos) {
        eta += g_sorted[pos];
        egnu += Gh[pos] * nu_sorted[pos];
    }
    out.eta_hat = eta / (double)n;
    out.egnu_hat = egnu / (double)n;
    return out;
}

CovarianceEstimate covariance_plugin(const PanelDataset& panel, const std::vector<double>& times,
                                     const ThresholdSchedule& thresholds, const IndexSpec& spec,
                                     const CovarianceOptions& opts) {
    if (times.empty()) throw std::invalid_argument("covariance_plugin: no times");
    std::vector<CrossSection> secs;
    std::vector<double> zs;
    secs.reserve(times.size());
    zs.reserve(times.size());
    for (double t : times) {
        secs.push_back(cross_section(panel, t));
        zs.push_back(thresholds.at(t));
    }
    return covariance_plugin(secs, zs, spec, opts);
}

CovarianceEstimate covariance_plugin(const std::vector<CrossSection>& sections,
                                     const std::vector<double>& z, const IndexSpec& spec,
                                     const CovarianceOptions& opts) {
    if (sections.empty()) throw std::invalid_argument("covariance_plugin: no cross-sections");
    if (z.size() != sections.size())
        throw std::invalid_argument("covariance_plugin: one threshold per cross-section required");
    const std::size_t m = sections.size();
    const std::size_t n = sections.front().values.size();
    for (const CrossSection& s : sections)
        if (s.values.size() != n)
            throw UnbalancedPanel("covariance_plugin: cross-sections differ in size");

    std::vector<double> times;
    times.reserve(m);
    for (const CrossSection& s : sections) times.push_back(s.time);

    CovarianceEstimate est;
    est.times = times;
    est.method = "plug-in-empirical";
    est.index_label = spec.label();
    est.sample_size = n;
    est.kappa_centered = opts.kappa_centered;
    est.gamma.assign(m * m, 0.0);
    est.gamma1.assign(m * m, 0.0);
    est.gamma2.assign(m * m, 0.0);
    est.gamma3.assign(m * m, 0.0);
    if (n < opts.min_n_warn)
        est.warnings.push_back(strfmt("n=%zu is small; plug-in covariance is unreliable below %zu",
                                      n, opts.min_n_warn));

    std::vector<PluginSlice> sl;
    sl.reserve(m);
    for (std::size_t i = 0; i < m; ++i) sl.push_back(plugin_slice(sections[i], z[i], spec));

    auto cell = [&](const PluginSlice& A, const PluginSlice& B) {
        Cell c;
        double sgg = 0.0, spp = 0.0, sgp = 0.0, spg = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sgg += (A.ghat[i] - A.eta_hat) * (B.ghat[i] - B.eta_hat);
            spp += (A.psihat[i] - A.egnu_hat) * (B.psihat[i] - B.egnu_hat);
            if (opts.kappa_centered) {
                sgp += (A.ghat[i] - A.eta_hat) * (B.psihat[i] - B.egnu_hat);
                spg += (A.psihat[i] - A.egnu_hat) * (B.ghat[i] - B.eta_hat);
            } else {
                sgp += A.ghat[i] * B.psihat[i];
                spg += A.psihat[i] * B.ghat[i];
            }
        }
        c.g1 = sgg / (double)n;
        c.g2 = spp / (double)n;
        c.g3 = (sgp + spg) / (double)n;
        return c;
    };

    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            Cell c = cell(sl[i], sl[j]);
            est.gamma1[i * m + j] = est.gamma1[j * m + i] = c.g1;
            est.gamma2[i * m + j] = est.gamma2[j * m + i] = c.g2;
            est.gamma3[i * m + j] = est.gamma3[j * m + i] = c.g3;
            est.gamma[i * m + j] = est.gamma[j * m + i] = c.total();
        }

    for (std::size_t i = 0; i < m; ++i)
        if (est.gamma[i * m + i] < -1e-10)
            throw InternalError("negative plug-in diagonal at t=" + std::to_string(times[i]));
    return est;
}

} // namespace wmlg
