#include "ustatboot/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "ustatboot/error.hpp"
#include "ustatboot/summation.hpp"

namespace ustatboot {

Kernel::Kernel(std::string name, KernelKind kind, std::map<std::string, double> params, Function fn)
    : name_(std::move(name)), kind_(kind), params_(std::move(params)), fn_(std::move(fn)) {
    if (!fn_) fail(ErrorKind::InvalidParameter, "kernel '" + name_ + "' has no function");
}

double Kernel::param(const std::string& key) const {
    const auto it = params_.find(key);
    if (it == params_.end()) {
        fail(ErrorKind::InvalidParameter, "kernel '" + name_ + "' has no parameter '" + key + "'");
    }
    return it->second;
}

double Kernel::operator()(double x, double y) const {
    if (std::isnan(x) || std::isnan(y)) fail(ErrorKind::InvalidInput, "NaN kernel argument");
    return fn_(x, y);
}

Kernel variance_kernel() {
    return Kernel("variance", KernelKind::Variance, {}, [](double x, double y) {
        const double d = x - y;
        return 0.5 * d * d;
    });
}

Kernel indicator_kernel(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        fail(ErrorKind::InvalidParameter, "indicator kernel threshold must be positive and finite");
    }
    return Kernel("indicator", KernelKind::Indicator, {{"t", t}},
                  [t](double x, double y) { return std::abs(x - y) < t ? 1.0 : 0.0; });
}

Kernel custom_kernel(std::string name, Kernel::Function fn) {
    return Kernel(std::move(name), KernelKind::Custom, {}, std::move(fn));
}

bool check_symmetry(const Kernel& k, std::span<const std::pair<double, double>> points, double tol) {
    if (!(tol > 0.0)) fail(ErrorKind::InvalidParameter, "symmetry tolerance must be positive");
    return std::all_of(points.begin(), points.end(), [&](const auto& p) {
        return std::abs(k(p.first, p.second) - k(p.second, p.first)) <= tol;
    });
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> support, std::vector<double> probs)
    : support_(std::move(support)), probs_(std::move(probs)) {
    if (support_.empty() || support_.size() != probs_.size()) {
        fail(ErrorKind::InvalidParameter, "support and probabilities must be nonempty and of equal length");
    }
    CompensatedSum total;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        if (!std::isfinite(support_[i])) fail(ErrorKind::InvalidParameter, "non-finite support value");
        if (!(probs_[i] >= 0.0)) fail(ErrorKind::InvalidParameter, "negative probability");
        total += probs_[i];
    }
    if (std::abs(total.value() - 1.0) > 1e-12) {
        fail(ErrorKind::InvalidParameter, "probabilities do not sum to 1");
    }
    auto sorted = support_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        fail(ErrorKind::InvalidParameter, "support values must be distinct");
    }
}

std::size_t DiscreteDistribution::index_of(double x) const {
    const auto it = std::find(support_.begin(), support_.end(), x);
    if (it == support_.end()) fail(ErrorKind::InvalidInput, "value outside the distribution support");
    return static_cast<std::size_t>(it - support_.begin());
}

PopulationComponents population_components(const Kernel& k, const DiscreteDistribution& d) {
    const std::size_t m = d.size();
    const auto& xs = d.support();
    const auto& ps = d.probs();

    PopulationComponents pc;
    pc.support = xs;
    pc.h1.assign(m, 0.0);
    pc.h2.assign(m * m, 0.0);

    std::vector<double> h(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) h[i * m + j] = k(xs[i], xs[j]);
    }

    std::vector<double> row_mean(m);
    CompensatedSum theta;
    for (std::size_t i = 0; i < m; ++i) {
        CompensatedSum acc;
        for (std::size_t j = 0; j < m; ++j) acc += ps[j] * h[i * m + j];
        row_mean[i] = acc.value();
        theta += ps[i] * row_mean[i];
    }
    pc.theta = theta.value();
    for (std::size_t i = 0; i < m; ++i) pc.h1[i] = row_mean[i] - pc.theta;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            pc.h2[i * m + j] = h[i * m + j] - pc.h1[i] - pc.h1[j] - pc.theta;
        }
    }
    return pc;
}

CenteringModel centering_from(const PopulationComponents& pc) {
    auto shared = std::make_shared<PopulationComponents>(pc);
    return CenteringModel{pc.theta, [shared](double x) {
                              const auto& s = shared->support;
                              const auto it = std::find(s.begin(), s.end(), x);
                              if (it == s.end()) {
                                  fail(ErrorKind::InvalidInput, "value outside the distribution support");
                              }
                              return shared->h1[static_cast<std::size_t>(it - s.begin())];
                          }};
}

}  // namespace ustatboot
