#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace ustatboot {

/// Philox4x32-10 block function (Salmon et al., SC'11). Exposed for the
/// known-answer tests; normal code goes through RngStream.
[[nodiscard]] std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                                        std::array<std::uint32_t, 2> key) noexcept;

/// Lower-tail quantile of the standard normal distribution (Wichura AS241),
/// relative accuracy about 1e-16 on (0, 1).
[[nodiscard]] double normal_quantile(double p) noexcept;

/// Tags for the last element of a stream path, so that the series and the
/// bootstrap draws of one realization never share a stream.
enum class Purpose : std::uint64_t {
    Series = 1,
    Bootstrap = 2,
    Reference = 3,
    Selection = 4,
    Center = 5,
};

/**
 * Counter-based random stream addressed by (seed, path).
 *
 * The path is hashed into a Philox key and the upper half of the counter; the
 * lower half of the counter enumerates blocks. Two streams with the same seed
 * and path produce the same sequence on every platform, and children are
 * derived without consuming any output of the parent, so work may be handed
 * to any worker in any order.
 */
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::vector<std::uint64_t> path = {});

    [[nodiscard]] RngStream child(std::uint64_t index) const;
    [[nodiscard]] RngStream child(Purpose purpose) const {
        return child(static_cast<std::uint64_t>(purpose));
    }
    [[nodiscard]] RngStream child(std::initializer_list<std::uint64_t> indices) const;

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] const std::vector<std::uint64_t>& path() const noexcept { return path_; }

    std::uint32_t next_u32() noexcept;
    std::uint64_t next_u64() noexcept;

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform01() noexcept;

    /// Uniform on {0, ..., bound - 1}; exact (rejection), bound >= 1.
    std::uint64_t uniform_index(std::uint64_t bound) noexcept;

    /// Standard normal variate by inversion.
    double normal() noexcept;

private:
    void refill() noexcept;

    std::uint64_t seed_;
    std::vector<std::uint64_t> path_;
    std::array<std::uint32_t, 2> key_{};
    std::uint64_t counter_hi_ = 0;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    unsigned used_ = 4;
};

}  // namespace ustatboot
