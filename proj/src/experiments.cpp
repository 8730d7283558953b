#include "ustatboot/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "ustatboot/error.hpp"
#include "ustatboot/lrv.hpp"
#include "ustatboot/parallel.hpp"
#include "ustatboot/summation.hpp"

namespace ustatboot {

namespace {

double fast_u_statistic(const Kernel& k, std::span<const double> xs) {
    return k.kind() == KernelKind::Variance ? sample_variance(xs) : detail::u_statistic(k, xs);
}

// Long-run variance sum_k Cov(f(X_0), f(X_k)) of a centred function of a
// stationary chain, summing lags until the terms die out.
std::optional<double> chain_long_run_variance(const Matrix& p, const std::vector<double>& pi,
                                              const std::vector<double>& f) {
    const std::size_t s = pi.size();
    std::vector<double> g = f;
    std::vector<double> next(s);
    CompensatedSum total;
    for (std::size_t i = 0; i < s; ++i) total += pi[i] * f[i] * f[i];
    int quiet = 0;
    for (int lag = 1; lag < 200000; ++lag) {
        for (std::size_t i = 0; i < s; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < s; ++j) acc += p[i][j] * g[j];
            next[i] = acc;
        }
        g.swap(next);
        double c = 0.0;
        for (std::size_t i = 0; i < s; ++i) c += pi[i] * f[i] * g[i];
        total += 2.0 * c;
        quiet = std::abs(c) < 1e-18 ? quiet + 1 : 0;
        if (quiet >= 10) return total.value();
    }
    return std::nullopt;
}

}  // namespace

Ecdf::Ecdf(std::vector<double> values) : sorted_(std::move(values)) {
    if (sorted_.empty()) fail(ErrorKind::InvalidInput, "empirical distribution needs at least one value");
    for (double v : sorted_) {
        if (std::isnan(v)) fail(ErrorKind::InvalidInput, "NaN in empirical distribution");
    }
    std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const noexcept {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double Ecdf::left_limit(double x) const noexcept {
    const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double ks_distance(const Ecdf& a, const Ecdf& b) {
    const auto& xa = a.sorted_values();
    const auto& xb = b.sorted_values();
    const auto na = static_cast<double>(xa.size());
    const auto nb = static_cast<double>(xb.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double sup = 0.0;
    // Both functions are constant between consecutive jump points, so the
    // supremum is attained just after some jump.
    while (i < xa.size() || j < xb.size()) {
        double x;
        if (j == xb.size() || (i < xa.size() && xa[i] <= xb[j])) {
            x = xa[i];
        } else {
            x = xb[j];
        }
        while (i < xa.size() && xa[i] == x) ++i;
        while (j < xb.size() && xb[j] == x) ++j;
        sup = std::max(sup, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return sup;
}

double ks_distance_vs_normal(const Ecdf& a, double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) fail(ErrorKind::InvalidScale, "normal scale must be positive");
    const auto& xs = a.sorted_values();
    const auto n = static_cast<double>(xs.size());
    double sup = 0.0;
    std::size_t i = 0;
    while (i < xs.size()) {
        const double x = xs[i];
        const double below = static_cast<double>(i) / n;
        while (i < xs.size() && xs[i] == x) ++i;
        const double at = static_cast<double>(i) / n;
        const double phi = normal_cdf(x / scale);
        sup = std::max({sup, std::abs(phi - below), std::abs(phi - at)});
    }
    return std::min(sup, 1.0);
}

double quantile_type7(std::span<const double> sorted, double p) {
    if (sorted.empty()) fail(ErrorKind::InvalidInput, "quantile of an empty list");
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

BoxplotSummary boxplot_summary(std::span<const double> samples) {
    if (samples.empty()) fail(ErrorKind::InvalidInput, "boxplot summary of an empty list");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());

    BoxplotSummary out;
    out.mean = compensated_mean(sorted);
    out.median = quantile_type7(sorted, 0.5);
    out.q1 = quantile_type7(sorted, 0.25);
    out.q3 = quantile_type7(sorted, 0.75);
    const double iqr = out.q3 - out.q1;
    const double lo_fence = out.q1 - 1.5 * iqr;
    const double hi_fence = out.q3 + 1.5 * iqr;
    out.lower_whisker = out.q1;
    out.upper_whisker = out.q3;
    for (double v : sorted) {
        if (v < lo_fence || v > hi_fence) {
            out.outliers.push_back(v);
        } else {
            out.lower_whisker = std::min(out.lower_whisker, v);
            out.upper_whisker = std::max(out.upper_whisker, v);
        }
    }
    return out;
}

CenteringModel gaussian_centering(const Kernel& k, double mean, double variance) {
    if (!(variance > 0.0)) fail(ErrorKind::InvalidParameter, "Gaussian centering needs a positive variance");
    switch (k.kind()) {
        case KernelKind::Variance:
            // E (x - Y)^2 / 2 = ((x - mean)^2 + variance) / 2
            return CenteringModel{variance, [mean, variance](double x) {
                                      const double d = x - mean;
                                      return 0.5 * (d * d - variance);
                                  }};
        case KernelKind::Indicator: {
            const double t = k.param("t");
            const double sd = std::sqrt(variance);
            // X - Y ~ N(0, 2 variance)
            const double theta = 2.0 * normal_cdf(t / (sd * std::sqrt(2.0))) - 1.0;
            return CenteringModel{theta, [mean, sd, t, theta](double x) {
                                      return normal_cdf((x - mean + t) / sd) - normal_cdf((x - mean - t) / sd) - theta;
                                  }};
        }
        case KernelKind::Custom:
            break;
    }
    fail(ErrorKind::InvalidParameter, "no Gaussian centering for kernel '" + k.name() + "'");
}

CenteringModel population_centering(const ProcessSpec& process, const Kernel& k) {
    process.validate();
    switch (process.kind) {
        case ProcessKind::Ar1:
        case ProcessKind::IidNormal: {
            const double phi = process.kind == ProcessKind::Ar1 ? process.phi : 0.0;
            const double sd = process.innovation_sd;
            return gaussian_centering(k, 0.0, sd * sd / (1.0 - phi * phi));
        }
        case ProcessKind::DiscreteMarkov: {
            const auto pi = stationary_distribution(process.transition);
            std::vector<double> states(pi.size());
            for (std::size_t i = 0; i < states.size(); ++i) states[i] = static_cast<double>(i);
            return centering_from(population_components(k, DiscreteDistribution(states, pi)));
        }
    }
    fail(ErrorKind::Config, "unknown process kind");
}

OracleSet oracles_for(const ProcessSpec& process, const Kernel& k) {
    process.validate();
    OracleSet out;
    switch (process.kind) {
        case ProcessKind::Ar1:
        case ProcessKind::IidNormal: {
            const double phi = process.kind == ProcessKind::Ar1 ? process.phi : 0.0;
            const double sd = process.innovation_sd;
            const double var = sd * sd / (1.0 - phi * phi);
            out.theta_true = gaussian_centering(k, 0.0, var).theta;
            if (k.kind() == KernelKind::Variance) {
                // h1(x) = (x^2 - var) / 2 and Cov(X_0^2, X_k^2) = 2 var^2 phi^(2|k|).
                out.clt_var = 2.0 * var * var * (1.0 + phi * phi) / (1.0 - phi * phi);
            }
            break;
        }
        case ProcessKind::DiscreteMarkov: {
            const auto pi = stationary_distribution(process.transition);
            std::vector<double> states(pi.size());
            for (std::size_t i = 0; i < states.size(); ++i) states[i] = static_cast<double>(i);
            const auto pc = population_components(k, DiscreteDistribution(states, pi));
            out.theta_true = pc.theta;
            if (const auto lrv = chain_long_run_variance(process.transition, pi, pc.h1)) out.clt_var = 4.0 * *lrv;
            break;
        }
    }
    return out;
}

Ecdf reference_distribution(std::size_t n, const ProcessSpec& process, const Kernel& k, double theta_true,
                            std::size_t ref_reps, const RngStream& rng) {
    if (ref_reps < 1) fail(ErrorKind::InsufficientReplicates, "reference distribution needs R_ref >= 1");
    if (n < 2) fail(ErrorKind::InsufficientData, "reference distribution needs n >= 2");
    process.validate();
    const double root_n = std::sqrt(static_cast<double>(n));
    std::vector<double> draws(ref_reps);
    parallel_for(ref_reps, [&](std::size_t r) {
        RngStream stream = rng.child(r);
        const Sample s = simulate(process, n, stream);
        draws[r] = root_n * (fast_u_statistic(k, s.values()) - theta_true);
    });
    return Ecdf(std::move(draws));
}

RngStream cell_stream(const RngStream& root, std::size_t n, std::size_t l) { return root.child({n, l}); }

ExperimentCell run_cell(const CellConfig& cfg, const Kernel& k, const RngStream& rng) {
    if (cfg.reps < 1) fail(ErrorKind::InsufficientReplicates, "a cell needs at least one realization");
    if (cfg.boot_reps < 1) fail(ErrorKind::InsufficientReplicates, "a cell needs at least one bootstrap replicate");
    const BlockScheme scheme{cfg.scheme, cfg.l};
    scheme.validate(cfg.n);
    if (cfg.l >= cfg.n) fail(ErrorKind::InvalidLag, "normal approximation lag must be below n");

    const OracleSet oracle = oracles_for(cfg.process, k);
    const Ecdf reference = reference_distribution(cfg.n, cfg.process, k, oracle.theta_true, cfg.ref_reps,
                                                  rng.child(Purpose::Reference));
    const Ecdf point_mass_at_zero(std::vector<double>{0.0});

    ExperimentCell cell;
    cell.n = cfg.n;
    cell.l = cfg.l;
    cell.reps = cfg.reps;
    cell.scheme = cfg.scheme;
    cell.d_boot.resize(cfg.reps);
    cell.d_norm.resize(cfg.reps);

    const double n = static_cast<double>(cfg.n);
    parallel_for(cfg.reps, [&](std::size_t r) {
        RngStream series_rng = rng.child({r, static_cast<std::uint64_t>(Purpose::Series)});
        const Sample s = simulate(cfg.process, cfg.n, series_rng);

        const auto boot = bootstrap_distribution(k, s, scheme, cfg.boot_reps,
                                                 rng.child({r, static_cast<std::uint64_t>(Purpose::Bootstrap)}),
                                                 cfg.center);
        cell.d_boot[r] = ks_distance(Ecdf(boot.replicates), reference);

        const double scale = std::sqrt(n * delta_method_var_hat(s, cfg.l).value);
        // A zero variance estimate degenerates Phi(x / scale) to a unit step at 0.
        cell.d_norm[r] = scale > 0.0 ? ks_distance_vs_normal(reference, scale)
                                     : ks_distance(reference, point_mass_at_zero);
    });

    cell.boot_summary = boxplot_summary(cell.d_boot);
    cell.norm_summary = boxplot_summary(cell.d_norm);
    return cell;
}

Kernel make_kernel(const KernelSpec& spec) {
    if (spec.name == "variance") return variance_kernel();
    if (spec.name == "indicator") return indicator_kernel(spec.t);
    fail(ErrorKind::Config, "unknown kernel '" + spec.name + "'");
}

std::size_t default_block_length(std::size_t n) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(std::cbrt(static_cast<double>(n)))));
}

TableResult run_table(const TableConfig& cfg, std::optional<std::size_t> rows) {
    const Kernel k = make_kernel(cfg.kernel);
    const RngStream root(cfg.seed);
    const std::size_t count = rows ? std::min(*rows, cfg.cells.size()) : cfg.cells.size();

    TableResult result;
    result.config = cfg;
    for (std::size_t i = 0; i < count; ++i) {
        CellConfig cell;
        cell.n = cfg.cells[i].n;
        cell.l = cfg.cells[i].l == 0 ? default_block_length(cell.n) : cfg.cells[i].l;
        cell.reps = cfg.reps;
        cell.boot_reps = cfg.boot_reps;
        cell.ref_reps = cfg.ref_reps;
        cell.scheme = cfg.scheme;
        cell.process = cfg.process;
        result.cells.push_back(run_cell(cell, k, cell_stream(root, cell.n, cell.l)));
    }
    return result;
}

std::vector<DecayPoint> decay_study(const Kernel& k, const ProcessSpec& process, std::span<const std::size_t> ns,
                                    std::size_t reps, const RngStream& rng) {
    const CenteringModel centering = population_centering(process, k);
    std::vector<DecayPoint> out;
    for (std::size_t n : ns) out.push_back({n, degenerate_second_moment(k, process, n, reps, rng, centering)});
    return out;
}

}  // namespace ustatboot
