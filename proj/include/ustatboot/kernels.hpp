#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ustatboot {

enum class KernelKind { Variance, Indicator, Custom };

/**
 * Symmetric bivariate kernel h(x, y) with a name and named real parameters.
 *
 * The built-in kinds are recognised by the U-statistic routines, which use
 * closed forms or an inlined evaluator instead of going through the
 * type-erased function.
 */
class Kernel {
public:
    using Function = std::function<double(double, double)>;

    Kernel(std::string name, KernelKind kind, std::map<std::string, double> params, Function fn);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] KernelKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::map<std::string, double>& params() const noexcept { return params_; }
    [[nodiscard]] double param(const std::string& key) const;

    /// Checked evaluation: NaN arguments raise an invalid-input error.
    [[nodiscard]] double operator()(double x, double y) const;

    /// Evaluation without argument checks, for inputs already validated.
    [[nodiscard]] double eval_unchecked(double x, double y) const { return fn_(x, y); }

private:
    std::string name_;
    KernelKind kind_;
    std::map<std::string, double> params_;
    Function fn_;
};

/// h(x, y) = (x - y)^2 / 2; its U-statistic is the unbiased sample variance.
[[nodiscard]] Kernel variance_kernel();

/// h(x, y) = 1{|x - y| < t}; t must be positive.
[[nodiscard]] Kernel indicator_kernel(double t);

/// Wraps an arbitrary function. Symmetry is the caller's responsibility;
/// see check_symmetry.
[[nodiscard]] Kernel custom_kernel(std::string name, Kernel::Function fn);

/// Calls `body` with a concrete evaluator for `k`, so that tight pair loops
/// inline the built-in kernels.
template <class Body>
decltype(auto) with_evaluator(const Kernel& k, Body&& body) {
    switch (k.kind()) {
        case KernelKind::Variance:
            return body([](double x, double y) noexcept {
                const double d = x - y;
                return 0.5 * d * d;
            });
        case KernelKind::Indicator: {
            const double t = k.param("t");
            return body([t](double x, double y) noexcept { return std::abs(x - y) < t ? 1.0 : 0.0; });
        }
        case KernelKind::Custom:
            break;
    }
    return body([&k](double x, double y) { return k.eval_unchecked(x, y); });
}

[[nodiscard]] bool check_symmetry(const Kernel& k, std::span<const std::pair<double, double>> points,
                                  double tol);

/// Finite distribution used as an exactly enumerable oracle substrate.
class DiscreteDistribution {
public:
    DiscreteDistribution(std::vector<double> support, std::vector<double> probs);

    [[nodiscard]] const std::vector<double>& support() const noexcept { return support_; }
    [[nodiscard]] const std::vector<double>& probs() const noexcept { return probs_; }
    [[nodiscard]] std::size_t size() const noexcept { return support_.size(); }

    /// Position of `x` in the support; throws invalid-input if absent.
    [[nodiscard]] std::size_t index_of(double x) const;

private:
    std::vector<double> support_;
    std::vector<double> probs_;
};

/// Population Hoeffding components of a kernel under a discrete law:
/// theta = E h(X, Y), h1(x) = E h(x, Y) - theta,
/// h2(x, y) = h(x, y) - h1(x) - h1(y) - theta.
struct PopulationComponents {
    double theta = 0.0;
    std::vector<double> support;
    std::vector<double> h1;
    std::vector<double> h2;  // row-major, support.size() squared

    [[nodiscard]] double h2_at(std::size_t i, std::size_t j) const noexcept {
        return h2[i * support.size() + j];
    }
};

[[nodiscard]] PopulationComponents population_components(const Kernel& k,
                                                         const DiscreteDistribution& d);

/// Population centering (theta and the first-order projection h1) used to
/// form the degenerate kernel h2 on data from a known process.
struct CenteringModel {
    double theta = 0.0;
    std::function<double(double)> h1;

    [[nodiscard]] double h2(const Kernel& k, double x, double y) const {
        return k.eval_unchecked(x, y) - h1(x) - h1(y) - theta;
    }
};

[[nodiscard]] CenteringModel centering_from(const PopulationComponents& pc);

}  // namespace ustatboot
