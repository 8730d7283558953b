#include "ustatboot/resample.hpp"

#include <cmath>

#include "ustatboot/error.hpp"
#include "ustatboot/parallel.hpp"
#include "ustatboot/summation.hpp"
#include "ustatboot/ustat.hpp"

namespace ustatboot {

std::string to_string(BlockKind kind) {
    switch (kind) {
        case BlockKind::Circular: return "circular";
        case BlockKind::Moving: return "moving";
        case BlockKind::NonOverlapping: return "nonoverlapping";
    }
    return "unknown";
}

BlockKind block_kind_from_string(const std::string& name) {
    if (name == "circular") return BlockKind::Circular;
    if (name == "moving") return BlockKind::Moving;
    if (name == "nonoverlapping") return BlockKind::NonOverlapping;
    fail(ErrorKind::Config, "unknown block scheme '" + name + "'");
}

void BlockScheme::validate(std::size_t n) const {
    if (block_length < 1 || block_length > n) {
        fail(ErrorKind::InvalidBlockLength, "block length " + std::to_string(block_length) +
                                                " outside [1, " + std::to_string(n) + "]");
    }
}

std::size_t BlockScheme::start_count(std::size_t n) const {
    switch (kind) {
        case BlockKind::Circular: return n;
        case BlockKind::Moving: return n - block_length + 1;
        case BlockKind::NonOverlapping: return n / block_length;
    }
    return 0;
}

std::vector<double> BootstrapSample::values(const Sample& s) const {
    std::vector<double> out;
    out.reserve(indices.size());
    for (std::size_t i : indices) out.push_back(s[i]);
    return out;
}

std::vector<std::size_t> draw_block_starts(std::size_t n, const BlockScheme& scheme, RngStream& rng) {
    scheme.validate(n);
    const std::size_t b = scheme.blocks(n);
    const std::size_t count = scheme.start_count(n);
    const std::size_t stride = scheme.kind == BlockKind::NonOverlapping ? scheme.block_length : 1;
    std::vector<std::size_t> starts(b);
    for (auto& s : starts) s = static_cast<std::size_t>(rng.uniform_index(count)) * stride;
    return starts;
}

BootstrapSample materialize(std::size_t n, const std::vector<std::size_t>& starts,
                            std::size_t block_length, BlockKind kind) {
    BootstrapSample out;
    out.indices.reserve(starts.size() * block_length);
    for (std::size_t start : starts) {
        if (start >= n || (kind != BlockKind::Circular && start + block_length > n)) {
            fail(ErrorKind::InvalidBlockLength, "block start " + std::to_string(start) +
                                                    " is not admissible for the scheme");
        }
        for (std::size_t t = 0; t < block_length; ++t) out.indices.push_back((start + t) % n);
    }
    return out;
}

BlockResampler::BlockResampler(const Kernel& k, const Sample& s, const BlockScheme& scheme)
    : kernel_(k), sample_(s), scheme_(scheme), n_(s.size()) {
    scheme_.validate(n_);
    resample_length_ = scheme_.resample_length(n_);
    if (resample_length_ < 2) {
        fail(ErrorKind::InsufficientData, "bootstrap resample has fewer than 2 observations");
    }
    if (kernel_.kind() == KernelKind::Variance) {
        // Shift by the mean; the variance kernel is translation invariant and
        // the shift limits cancellation in S2 - S1^2 / N.
        power_sums_ = true;
        const double mean = compensated_mean(sample_.values());
        block_s1_.assign(n_, 0.0);
        block_s2_.assign(n_, 0.0);
        const std::size_t l = scheme_.block_length;
        for (std::size_t j = 0; j < n_; ++j) {
            double s1 = 0.0;
            double s2 = 0.0;
            for (std::size_t t = 0; t < l; ++t) {
                const double y = sample_[(j + t) % n_] - mean;
                s1 += y;
                s2 += y * y;
            }
            block_s1_[j] = s1;
            block_s2_[j] = s2;
        }
    }
}

double BlockResampler::evaluate(const std::vector<std::size_t>& starts) const {
    if (power_sums_) {
        double s1 = 0.0;
        double s2 = 0.0;
        for (std::size_t j : starts) {
            s1 += block_s1_[j];
            s2 += block_s2_[j];
        }
        const auto big_n = static_cast<double>(resample_length_);
        return (s2 - s1 * s1 / big_n) / (big_n - 1.0);
    }
    const auto bs = materialize(n_, starts, scheme_.block_length, scheme_.kind);
    return detail::u_statistic(kernel_, bs.values(sample_));
}

double BlockResampler::draw(RngStream& rng) const {
    return evaluate(draw_block_starts(n_, scheme_, rng));
}

double bootstrap_replicate(const Kernel& k, const Sample& s, const BlockScheme& scheme, RngStream& rng) {
    return BlockResampler(k, s, scheme).draw(rng);
}

BootstrapDistribution bootstrap_distribution(const Kernel& k, const Sample& s, const BlockScheme& scheme,
                                             std::size_t B, const RngStream& rng, CenterMode center) {
    if (B < 1) fail(ErrorKind::InsufficientReplicates, "bootstrap distribution needs B >= 1");
    const BlockResampler resampler(k, s, scheme);

    BootstrapDistribution dist;
    dist.resample_length = resampler.resample_length();
    dist.raw.resize(B);
    parallel_for(B, [&](std::size_t r) {
        RngStream stream = rng.child(r);
        dist.raw[r] = resampler.draw(stream);
    });

    if (center == CenterMode::Exact && scheme.kind == BlockKind::Circular) {
        dist.center = exact_bootstrap_expectation(k, s, scheme).value;
        dist.center_exact = true;
    } else {
        dist.center = compensated_mean(dist.raw);
        dist.center_exact = false;
    }

    const double scale = std::sqrt(static_cast<double>(dist.resample_length));
    dist.replicates.resize(B);
    for (std::size_t r = 0; r < B; ++r) dist.replicates[r] = scale * (dist.raw[r] - dist.center);
    return dist;
}

double bootstrap_variance(const BootstrapDistribution& dist) {
    const std::size_t B = dist.replicates.size();
    if (B < 2) fail(ErrorKind::InsufficientReplicates, "bootstrap variance needs B >= 2");
    const double mean = compensated_mean(dist.replicates);
    CompensatedSum ss;
    for (double v : dist.replicates) ss += (v - mean) * (v - mean);
    return ss.value() / static_cast<double>(B - 1);
}

BootstrapCenter exact_bootstrap_expectation(const Kernel& k, const Sample& s, const BlockScheme& scheme,
                                            const std::optional<RngStream>& fallback_rng,
                                            std::size_t fallback_reps) {
    const std::size_t n = s.size();
    scheme.validate(n);
    const std::size_t l = scheme.block_length;
    const std::size_t b = scheme.blocks(n);
    const std::size_t big_n = b * l;
    if (big_n < 2) fail(ErrorKind::InsufficientData, "bootstrap resample has fewer than 2 observations");

    if (scheme.kind != BlockKind::Circular) {
        const RngStream rng = fallback_rng.value_or(RngStream(0, {static_cast<std::uint64_t>(Purpose::Center)}));
        const auto dist = bootstrap_distribution(k, s, scheme, std::max<std::size_t>(fallback_reps, 1), rng,
                                                 CenterMode::MonteCarlo);
        return {dist.center, false};
    }

    const auto xs = s.values();
    CompensatedSum within;
    with_evaluator(k, [&](auto h) {
        for (std::size_t d = 1; d < l; ++d) {
            CompensatedSum lag;
            for (std::size_t j = 0; j < n; ++j) lag += h(xs[j], xs[(j + d) % n]);
            within += static_cast<double>(l - d) * lag.value() / static_cast<double>(n);
        }
        return 0;
    });

    double v_n;
    if (k.kind() == KernelKind::Variance) {
        v_n = sample_variance(xs) * static_cast<double>(n - 1) / static_cast<double>(n);
    } else {
        v_n = detail::v_statistic(k, xs);
    }

    const double total_pairs = 0.5 * static_cast<double>(big_n) * static_cast<double>(big_n - 1);
    const double within_pairs = 0.5 * static_cast<double>(b) * static_cast<double>(l) * static_cast<double>(l - 1);
    const double cross_pairs = total_pairs - within_pairs;
    return {(static_cast<double>(b) * within.value() + cross_pairs * v_n) / total_pairs, true};
}

}  // namespace ustatboot
