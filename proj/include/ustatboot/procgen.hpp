#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ustatboot/rng.hpp"
#include "ustatboot/sample.hpp"

namespace ustatboot {

enum class ProcessKind { Ar1, IidNormal, DiscreteMarkov };

using Matrix = std::vector<std::vector<double>>;

/// Stationary test process. For DiscreteMarkov the states are labelled
/// 0, 1, ..., k - 1 and those labels are the observed values.
struct ProcessSpec {
    ProcessKind kind = ProcessKind::Ar1;
    double phi = 0.5;
    double innovation_sd = 1.0;
    Matrix transition;
    std::vector<double> init_dist;

    static ProcessSpec ar1(double phi, double sd = 1.0);
    static ProcessSpec iid_normal(double sd = 1.0);
    static ProcessSpec discrete_markov(Matrix transition, std::vector<double> init_dist);

    /// Throws nonstationary-config or config errors.
    void validate() const;
};

[[nodiscard]] std::string to_string(ProcessKind kind);
[[nodiscard]] ProcessKind process_kind_from_string(const std::string& name);

/// X_1 ~ N(0, sd^2 / (1 - phi^2)), X_{t+1} = phi X_t + eps_{t+1}.
[[nodiscard]] Sample simulate_ar1(std::size_t n, double phi, double sd, RngStream& rng);
[[nodiscard]] Sample simulate_iid_normal(std::size_t n, double sd, RngStream& rng);
[[nodiscard]] Sample simulate_discrete_markov(std::size_t n, const Matrix& transition,
                                              const std::vector<double>& init_dist, RngStream& rng);

[[nodiscard]] Sample simulate(const ProcessSpec& process, std::size_t n, RngStream& rng);

/// Invariant law of an irreducible chain, by power iteration.
[[nodiscard]] std::vector<double> stationary_distribution(const Matrix& transition);

}  // namespace ustatboot
