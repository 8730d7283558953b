#include "ustatboot/procgen.hpp"

#include <cmath>

#include "ustatboot/error.hpp"
#include "ustatboot/summation.hpp"

namespace ustatboot {

namespace {

void validate_probabilities(const std::vector<double>& p, const std::string& what) {
    CompensatedSum total;
    for (double x : p) {
        if (!(x >= 0.0) || !std::isfinite(x)) fail(ErrorKind::Config, what + " has a negative or non-finite entry");
        total += x;
    }
    if (std::abs(total.value() - 1.0) > 1e-12) fail(ErrorKind::Config, what + " does not sum to 1");
}

void validate_chain(const Matrix& transition, const std::vector<double>& init) {
    const std::size_t k = transition.size();
    if (k == 0) fail(ErrorKind::Config, "transition matrix is empty");
    for (std::size_t i = 0; i < k; ++i) {
        if (transition[i].size() != k) fail(ErrorKind::Config, "transition matrix is not square");
        validate_probabilities(transition[i], "transition row " + std::to_string(i));
    }
    if (init.size() != k) fail(ErrorKind::Config, "initial distribution size does not match the state space");
    validate_probabilities(init, "initial distribution");
}

std::size_t draw_state(const std::vector<double>& probs, RngStream& rng) {
    const double u = rng.uniform01();
    double cumulative = 0.0;
    for (std::size_t s = 0; s + 1 < probs.size(); ++s) {
        cumulative += probs[s];
        if (u < cumulative) return s;
    }
    // Skip trailing zero-probability states that rounding could otherwise select.
    std::size_t last = probs.size() - 1;
    while (last > 0 && probs[last] == 0.0) --last;
    return last;
}

}  // namespace

ProcessSpec ProcessSpec::ar1(double phi, double sd) {
    ProcessSpec p;
    p.kind = ProcessKind::Ar1;
    p.phi = phi;
    p.innovation_sd = sd;
    return p;
}

ProcessSpec ProcessSpec::iid_normal(double sd) {
    ProcessSpec p;
    p.kind = ProcessKind::IidNormal;
    p.phi = 0.0;
    p.innovation_sd = sd;
    return p;
}

ProcessSpec ProcessSpec::discrete_markov(Matrix transition, std::vector<double> init_dist) {
    ProcessSpec p;
    p.kind = ProcessKind::DiscreteMarkov;
    p.phi = 0.0;
    p.transition = std::move(transition);
    p.init_dist = std::move(init_dist);
    return p;
}

void ProcessSpec::validate() const {
    switch (kind) {
        case ProcessKind::Ar1:
            if (!(std::abs(phi) < 1.0)) fail(ErrorKind::NonstationaryConfig, "AR(1) requires |phi| < 1");
            [[fallthrough]];
        case ProcessKind::IidNormal:
            if (!(innovation_sd > 0.0) || !std::isfinite(innovation_sd)) {
                fail(ErrorKind::Config, "innovation standard deviation must be positive");
            }
            break;
        case ProcessKind::DiscreteMarkov:
            validate_chain(transition, init_dist);
            break;
    }
}

std::string to_string(ProcessKind kind) {
    switch (kind) {
        case ProcessKind::Ar1: return "ar1";
        case ProcessKind::IidNormal: return "iid_normal";
        case ProcessKind::DiscreteMarkov: return "discrete_markov";
    }
    return "unknown";
}

ProcessKind process_kind_from_string(const std::string& name) {
    if (name == "ar1") return ProcessKind::Ar1;
    if (name == "iid_normal" || name == "iid") return ProcessKind::IidNormal;
    if (name == "discrete_markov" || name == "markov") return ProcessKind::DiscreteMarkov;
    fail(ErrorKind::Config, "unknown process kind '" + name + "'");
}

Sample simulate_ar1(std::size_t n, double phi, double sd, RngStream& rng) {
    if (!(std::abs(phi) < 1.0)) fail(ErrorKind::NonstationaryConfig, "AR(1) requires |phi| < 1");
    if (!(sd > 0.0)) fail(ErrorKind::Config, "innovation standard deviation must be positive");
    std::vector<double> x(n);
    if (n == 0) return Sample(std::move(x));
    x[0] = rng.normal() * sd / std::sqrt(1.0 - phi * phi);
    for (std::size_t t = 1; t < n; ++t) x[t] = phi * x[t - 1] + sd * rng.normal();
    return Sample(std::move(x));
}

Sample simulate_iid_normal(std::size_t n, double sd, RngStream& rng) {
    if (!(sd > 0.0)) fail(ErrorKind::Config, "standard deviation must be positive");
    std::vector<double> x(n);
    for (auto& v : x) v = sd * rng.normal();
    return Sample(std::move(x));
}

Sample simulate_discrete_markov(std::size_t n, const Matrix& transition,
                                const std::vector<double>& init_dist, RngStream& rng) {
    validate_chain(transition, init_dist);
    std::vector<double> x(n);
    if (n == 0) return Sample(std::move(x));
    std::size_t state = draw_state(init_dist, rng);
    x[0] = static_cast<double>(state);
    for (std::size_t t = 1; t < n; ++t) {
        state = draw_state(transition[state], rng);
        x[t] = static_cast<double>(state);
    }
    return Sample(std::move(x));
}

Sample simulate(const ProcessSpec& process, std::size_t n, RngStream& rng) {
    process.validate();
    switch (process.kind) {
        case ProcessKind::Ar1: return simulate_ar1(n, process.phi, process.innovation_sd, rng);
        case ProcessKind::IidNormal: return simulate_iid_normal(n, process.innovation_sd, rng);
        case ProcessKind::DiscreteMarkov:
            return simulate_discrete_markov(n, process.transition, process.init_dist, rng);
    }
    fail(ErrorKind::Config, "unknown process kind");
}

std::vector<double> stationary_distribution(const Matrix& transition) {
    const std::size_t k = transition.size();
    validate_chain(transition, std::vector<double>(k, 1.0 / static_cast<double>(k)));
    std::vector<double> pi(k, 1.0 / static_cast<double>(k));
    std::vector<double> next(k);
    for (int iter = 0; iter < 100000; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) next[j] += pi[i] * transition[i][j];
        }
        // Lazy averaging keeps periodic chains from oscillating.
        double diff = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            next[j] = 0.5 * (next[j] + pi[j]);
            diff = std::max(diff, std::abs(next[j] - pi[j]));
        }
        pi.swap(next);
        if (diff < 1e-16) break;
    }
    double total = 0.0;
    for (double p : pi) total += p;
    for (double& p : pi) p /= total;
    return pi;
}

}  // namespace ustatboot
