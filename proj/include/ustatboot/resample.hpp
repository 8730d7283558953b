#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ustatboot/kernels.hpp"
#include "ustatboot/rng.hpp"
#include "ustatboot/sample.hpp"

namespace ustatboot {

enum class BlockKind { Circular, Moving, NonOverlapping };

[[nodiscard]] std::string to_string(BlockKind kind);
[[nodiscard]] BlockKind block_kind_from_string(const std::string& name);

struct BlockScheme {
    BlockKind kind = BlockKind::Circular;
    std::size_t block_length = 1;

    /// Throws invalid-block-length unless 1 <= l <= n.
    void validate(std::size_t n) const;
    /// b = floor(n / l).
    [[nodiscard]] std::size_t blocks(std::size_t n) const { return n / block_length; }
    /// b * l.
    [[nodiscard]] std::size_t resample_length(std::size_t n) const { return blocks(n) * block_length; }
    /// Number of admissible block starts: n, n - l + 1, or floor(n / l).
    [[nodiscard]] std::size_t start_count(std::size_t n) const;
};

/// Indices (0-based) into the original sample; circular blocks wrap modulo n.
struct BootstrapSample {
    std::vector<std::size_t> indices;

    [[nodiscard]] std::vector<double> values(const Sample& s) const;
};

enum class CenterMode { Exact, MonteCarlo };

/// Replicates of sqrt(bl) (U*_n - center) together with the raw U*_n draws.
struct BootstrapDistribution {
    std::vector<double> replicates;
    std::vector<double> raw;
    double center = 0.0;
    bool center_exact = false;
    std::size_t resample_length = 0;

    [[nodiscard]] std::size_t size() const noexcept { return replicates.size(); }
};

struct BootstrapCenter {
    double value = 0.0;
    bool exact = false;
};

/// b block starts (0-based) drawn iid uniformly from the admissible starts.
[[nodiscard]] std::vector<std::size_t> draw_block_starts(std::size_t n, const BlockScheme& scheme,
                                                         RngStream& rng);

/// Concatenates the blocks beginning at `starts`. Circular indices wrap; the
/// other kinds require start + l <= n.
[[nodiscard]] BootstrapSample materialize(std::size_t n, const std::vector<std::size_t>& starts,
                                          std::size_t block_length, BlockKind kind);

/**
 * Draws U*_n for one block-bootstrap resample of a fixed series.
 *
 * Construction precomputes whatever the kernel allows: for the variance
 * kernel each admissible block is reduced to its first two (mean-shifted)
 * power sums and a replicate costs O(b); other kernels materialise the
 * resample and sum over its (bl)(bl - 1)/2 pairs.
 */
class BlockResampler {
public:
    BlockResampler(const Kernel& k, const Sample& s, const BlockScheme& scheme);

    [[nodiscard]] double draw(RngStream& rng) const;
    [[nodiscard]] double evaluate(const std::vector<std::size_t>& starts) const;

    [[nodiscard]] std::size_t resample_length() const noexcept { return resample_length_; }
    [[nodiscard]] const BlockScheme& scheme() const noexcept { return scheme_; }

private:
    Kernel kernel_;
    Sample sample_;
    BlockScheme scheme_;
    std::size_t n_;
    std::size_t resample_length_;
    bool power_sums_ = false;
    std::vector<double> block_s1_;
    std::vector<double> block_s2_;
};

[[nodiscard]] double bootstrap_replicate(const Kernel& k, const Sample& s, const BlockScheme& scheme,
                                         RngStream& rng);

/// B replicates, replicate r drawn from rng.child(r). Exact centring is only
/// available for the circular scheme; other schemes fall back to the mean of
/// the raw replicates and report center_exact = false.
[[nodiscard]] BootstrapDistribution bootstrap_distribution(const Kernel& k, const Sample& s,
                                                           const BlockScheme& scheme, std::size_t B,
                                                           const RngStream& rng,
                                                           CenterMode center = CenterMode::Exact);

/// Sample variance (divisor B - 1) of the centred, scaled replicates.
[[nodiscard]] double bootstrap_variance(const BootstrapDistribution& dist);

/// E*[U*_n] in closed form for the circular scheme:
///   [ b * sum_{d=1}^{l-1} (l - d) A(d) + C * V_n ] / (bl (bl - 1) / 2)
/// with A(d) = (1/n) sum_j h(X_j, X_{j+d}) (indices mod n), C the number of
/// cross-block pairs and V_n the V-statistic. For other schemes the value is a
/// Monte Carlo mean over `fallback_reps` replicates drawn from `fallback_rng`.
[[nodiscard]] BootstrapCenter exact_bootstrap_expectation(
    const Kernel& k, const Sample& s, const BlockScheme& scheme,
    const std::optional<RngStream>& fallback_rng = std::nullopt, std::size_t fallback_reps = 10000);

}  // namespace ustatboot
