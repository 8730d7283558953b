#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ustatboot/kernels.hpp"
#include "ustatboot/procgen.hpp"
#include "ustatboot/resample.hpp"
#include "ustatboot/rng.hpp"
#include "ustatboot/sample.hpp"
#include "ustatboot/ustat.hpp"

namespace ustatboot {

/// Right-continuous empirical distribution function.
class Ecdf {
public:
    explicit Ecdf(std::vector<double> values);

    [[nodiscard]] const std::vector<double>& sorted_values() const noexcept { return sorted_; }
    [[nodiscard]] std::size_t n_points() const noexcept { return sorted_.size(); }

    /// F(x) = #{values <= x} / n
    [[nodiscard]] double operator()(double x) const noexcept;
    /// F(x-) = #{values < x} / n
    [[nodiscard]] double left_limit(double x) const noexcept;

private:
    std::vector<double> sorted_;
};

/// sup_x |F_a(x) - F_b(x)|, exact.
[[nodiscard]] double ks_distance(const Ecdf& a, const Ecdf& b);

/// sup_x |Phi(x / scale) - F_a(x)|, exact (both one-sided limits at every jump).
[[nodiscard]] double ks_distance_vs_normal(const Ecdf& a, double scale);

/// Median, type-7 quartiles, Tukey whiskers at 1.5 IQR and the points beyond.
struct BoxplotSummary {
    double mean = 0.0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double lower_whisker = 0.0;
    double upper_whisker = 0.0;
    std::vector<double> outliers;
};

[[nodiscard]] double quantile_type7(std::span<const double> sorted, double p);
[[nodiscard]] BoxplotSummary boxplot_summary(std::span<const double> samples);

/// Closed-form targets for a (process, kernel) pair. clt_var is 4 sigma_inf^2,
/// the variance of the normal limit of sqrt(n) (U_n - theta); it is left
/// empty where no closed form is implemented.
struct OracleSet {
    double theta_true = 0.0;
    std::optional<double> clt_var;
};

[[nodiscard]] OracleSet oracles_for(const ProcessSpec& process, const Kernel& k);

/// Population centering of a built-in kernel for a N(mean, variance) marginal.
[[nodiscard]] CenteringModel gaussian_centering(const Kernel& k, double mean, double variance);

/// Population centering for the stationary law of `process` (Gaussian
/// marginal for ar1 / iid_normal, enumeration for discrete_markov).
[[nodiscard]] CenteringModel population_centering(const ProcessSpec& process, const Kernel& k);

/// ECDF of R_ref draws of sqrt(n) (U_n(h) - theta_true); draw r uses rng.child(r).
[[nodiscard]] Ecdf reference_distribution(std::size_t n, const ProcessSpec& process, const Kernel& k,
                                          double theta_true, std::size_t ref_reps, const RngStream& rng);

struct CellConfig {
    std::size_t n = 100;
    std::size_t l = 5;
    std::size_t reps = 1000;
    std::size_t boot_reps = 10000;
    std::size_t ref_reps = 10000;
    BlockKind scheme = BlockKind::Circular;
    CenterMode center = CenterMode::Exact;
    ProcessSpec process = ProcessSpec::ar1(0.5, 1.0);
};

struct ExperimentCell {
    std::size_t n = 0;
    std::size_t l = 0;
    std::size_t reps = 0;
    BlockKind scheme = BlockKind::Circular;
    std::vector<double> d_boot;
    std::vector<double> d_norm;
    BoxplotSummary boot_summary;
    BoxplotSummary norm_summary;
};

/// Stream used for cell (n, l) under master stream `root`.
[[nodiscard]] RngStream cell_stream(const RngStream& root, std::size_t n, std::size_t l);

/**
 * One row of the bootstrap-versus-normal comparison. The reference ECDF is
 * drawn once from rng.child(Purpose::Reference); realization r simulates its
 * series from rng.child({r, Series}) and bootstraps from rng.child({r, Bootstrap}).
 */
[[nodiscard]] ExperimentCell run_cell(const CellConfig& cfg, const Kernel& k, const RngStream& rng);

struct KernelSpec {
    std::string name = "variance";
    double t = 1.0;
};

[[nodiscard]] Kernel make_kernel(const KernelSpec& spec);

struct CellSize {
    std::size_t n = 0;
    std::size_t l = 0;
};

struct TableConfig {
    std::vector<CellSize> cells{{24, 3}, {48, 4}, {100, 5}, {200, 6}, {500, 8}};
    std::size_t reps = 1000;
    std::size_t boot_reps = 10000;
    std::size_t ref_reps = 10000;
    BlockKind scheme = BlockKind::Circular;
    ProcessSpec process = ProcessSpec::ar1(0.5, 1.0);
    KernelSpec kernel;
    std::uint64_t seed = 42;
};

struct TableResult {
    TableConfig config;
    std::vector<ExperimentCell> cells;
};

/// round(n^(1/3)), at least 1.
[[nodiscard]] std::size_t default_block_length(std::size_t n);

/// Runs the first `rows` cells of the configuration (all when rows is empty).
[[nodiscard]] TableResult run_table(const TableConfig& cfg, std::optional<std::size_t> rows = std::nullopt);

struct DecayPoint {
    std::size_t n = 0;
    MonteCarloEstimate estimate;
};

/// E[n U_n(h2)^2] for each n, population-centred. Every n reuses the same
/// replication streams, so replication r at a larger n extends the series
/// used at a smaller n (paired design).
[[nodiscard]] std::vector<DecayPoint> decay_study(const Kernel& k, const ProcessSpec& process,
                                                  std::span<const std::size_t> ns, std::size_t reps,
                                                  const RngStream& rng);

}  // namespace ustatboot
