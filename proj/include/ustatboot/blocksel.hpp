#pragma once

#include <cstddef>
#include <map>

#include "ustatboot/kernels.hpp"
#include "ustatboot/resample.hpp"
#include "ustatboot/rng.hpp"
#include "ustatboot/sample.hpp"

namespace ustatboot {

struct BlockSelectConfig {
    std::size_t pilot_length = 1;    // l*, block length of the full-sample target
    std::size_t subsample_size = 2;  // m, window length
    double epsilon = 0.25;           // grid is [eps m^(1/3), m^(1/3) / eps]
    std::size_t boot_reps = 200;     // bootstrap replicates per variance
    BlockKind scheme = BlockKind::Circular;

    void validate(std::size_t n) const;
};

struct BlockSelectResult {
    std::size_t l_hat = 1;
    std::size_t argmin = 1;
    double target = 0.0;
    std::map<std::size_t, double> mse_curve;
};

/// Integer candidate block lengths [ceil(eps m^(1/3)), floor(m^(1/3) / eps)],
/// intersected with [1, m]. Throws config error when empty.
[[nodiscard]] std::pair<std::size_t, std::size_t> block_length_grid(const BlockSelectConfig& cfg);

/// Var*_{l*}[sqrt(bl) U*_n] on the full series, replicates from rng.child(Purpose::Selection).
[[nodiscard]] double pilot_target(const Sample& s, const Kernel& k, const BlockSelectConfig& cfg,
                                  const RngStream& rng);

/// Mean over the n - m + 1 overlapping windows of (Var*_l[window] - target)^2.
/// Window w draws from rng.child(w) whatever l is, so curves over l share
/// random numbers.
[[nodiscard]] double mse_hat_against(std::size_t l, const Sample& s, const Kernel& k,
                                     const BlockSelectConfig& cfg, double target, const RngStream& rng);

[[nodiscard]] double mse_hat(std::size_t l, const Sample& s, const Kernel& k, const BlockSelectConfig& cfg,
                             const RngStream& rng);

/// Smallest minimiser of the curve (ties go to the smaller l), scaled by
/// (n/m)^(1/3), rounded, clamped to [1, n].
[[nodiscard]] BlockSelectResult select_from_curve(std::map<std::size_t, double> curve, std::size_t n,
                                                  std::size_t m);

[[nodiscard]] BlockSelectResult select_block_length(const Sample& s, const Kernel& k,
                                                    const BlockSelectConfig& cfg, const RngStream& rng);

}  // namespace ustatboot
