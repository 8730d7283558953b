#include "ustatboot/blocksel.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ustatboot/error.hpp"
#include "ustatboot/parallel.hpp"
#include "ustatboot/summation.hpp"

namespace ustatboot {

void BlockSelectConfig::validate(std::size_t n) const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) fail(ErrorKind::Config, "epsilon must lie in (0, 1)");
    if (subsample_size < 2) fail(ErrorKind::InvalidSubsample, "subsample size must be at least 2");
    if (subsample_size >= n) fail(ErrorKind::InvalidSubsample, "subsample size must be below n");
    if (pilot_length < 1 || pilot_length > n) fail(ErrorKind::InvalidBlockLength, "pilot block length outside [1, n]");
    if (boot_reps < 2) fail(ErrorKind::InsufficientReplicates, "block selection needs at least 2 replicates");
    (void)block_length_grid(*this);
}

std::pair<std::size_t, std::size_t> block_length_grid(const BlockSelectConfig& cfg) {
    const double root = std::cbrt(static_cast<double>(cfg.subsample_size));
    const auto lo = static_cast<std::size_t>(std::max(1.0, std::ceil(cfg.epsilon * root)));
    const auto hi = std::min(cfg.subsample_size, static_cast<std::size_t>(std::floor(root / cfg.epsilon)));
    if (lo > hi) fail(ErrorKind::Config, "block length grid is empty");
    return {lo, hi};
}

double pilot_target(const Sample& s, const Kernel& k, const BlockSelectConfig& cfg, const RngStream& rng) {
    const BlockScheme pilot{cfg.scheme, cfg.pilot_length};
    return bootstrap_variance(bootstrap_distribution(k, s, pilot, cfg.boot_reps, rng.child(Purpose::Selection),
                                                     CenterMode::MonteCarlo));
}

double mse_hat_against(std::size_t l, const Sample& s, const Kernel& k, const BlockSelectConfig& cfg,
                       double target, const RngStream& rng) {
    const std::size_t n = s.size();
    const std::size_t m = cfg.subsample_size;
    if (m > n || m < 2) fail(ErrorKind::InvalidSubsample, "subsample size must lie in [2, n]");
    if (l < 1 || l > m) fail(ErrorKind::InvalidBlockLength, "block length must lie in [1, m]");
    const BlockScheme scheme{cfg.scheme, l};
    if (scheme.resample_length(m) < 2) fail(ErrorKind::InsufficientData, "window resample too short");

    const std::size_t windows = n - m + 1;
    std::vector<double> sq(windows);
    parallel_for(windows, [&](std::size_t w) {
        const auto first = s.vector().begin() + static_cast<std::ptrdiff_t>(w);
        const Sample window(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(m)));
        const double var = bootstrap_variance(
            bootstrap_distribution(k, window, scheme, cfg.boot_reps, rng.child(w), CenterMode::MonteCarlo));
        sq[w] = (var - target) * (var - target);
    });
    return compensated_mean(sq);
}

double mse_hat(std::size_t l, const Sample& s, const Kernel& k, const BlockSelectConfig& cfg,
               const RngStream& rng) {
    cfg.validate(s.size());
    return mse_hat_against(l, s, k, cfg, pilot_target(s, k, cfg, rng), rng);
}

BlockSelectResult select_from_curve(std::map<std::size_t, double> curve, std::size_t n, std::size_t m) {
    if (curve.empty()) fail(ErrorKind::Config, "empty MSE curve");
    if (m < 1 || n < 1) fail(ErrorKind::InvalidSubsample, "n and m must be positive");
    BlockSelectResult result;
    auto best = curve.begin();
    for (auto it = curve.begin(); it != curve.end(); ++it) {
        if (it->second < best->second) best = it;  // strict: ties keep the smaller l
    }
    result.argmin = best->first;
    const double scaled = std::cbrt(static_cast<double>(n) / static_cast<double>(m)) * static_cast<double>(best->first);
    const auto rounded = static_cast<std::size_t>(std::max(1.0, std::round(scaled)));
    result.l_hat = std::clamp<std::size_t>(rounded, 1, n);
    result.mse_curve = std::move(curve);
    return result;
}

BlockSelectResult select_block_length(const Sample& s, const Kernel& k, const BlockSelectConfig& cfg,
                                      const RngStream& rng) {
    cfg.validate(s.size());
    const auto [lo, hi] = block_length_grid(cfg);
    const double target = pilot_target(s, k, cfg, rng);
    std::map<std::size_t, double> curve;
    for (std::size_t l = lo; l <= hi; ++l) {
        if (BlockScheme{cfg.scheme, l}.resample_length(cfg.subsample_size) < 2) continue;
        curve[l] = mse_hat_against(l, s, k, cfg, target, rng);
    }
    auto result = select_from_curve(std::move(curve), s.size(), cfg.subsample_size);
    result.target = target;
    return result;
}

}  // namespace ustatboot
