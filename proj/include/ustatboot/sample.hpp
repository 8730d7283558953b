#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ustatboot {

/// An ordered series of finite observations. Construction rejects NaN and
/// infinities, so downstream kernels never see them.
class Sample {
public:
    Sample() = default;
    explicit Sample(std::vector<double> values);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] const std::vector<double>& vector() const noexcept { return values_; }

    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

private:
    std::vector<double> values_;
};

}  // namespace ustatboot
