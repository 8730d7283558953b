#include "ustatboot/ustat.hpp"

#include <cmath>

#include "ustatboot/error.hpp"
#include "ustatboot/parallel.hpp"
#include "ustatboot/summation.hpp"

namespace ustatboot {

namespace detail {

double u_statistic(const Kernel& k, std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 2) fail(ErrorKind::InsufficientData, "U-statistic needs at least 2 observations");
    return with_evaluator(k, [&](auto h) {
        CompensatedSum acc;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double xi = xs[i];
            double row = 0.0;
            for (std::size_t j = i + 1; j < n; ++j) row += h(xi, xs[j]);
            acc += row;
        }
        const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
        return acc.value() / pairs;
    });
}

double v_statistic(const Kernel& k, std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 1) fail(ErrorKind::InsufficientData, "V-statistic needs at least 1 observation");
    return with_evaluator(k, [&](auto h) {
        CompensatedSum acc;
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n; ++j) row += h(xs[i], xs[j]);
            acc += row;
        }
        return acc.value() / (static_cast<double>(n) * static_cast<double>(n));
    });
}

}  // namespace detail

double u_statistic(const Kernel& k, const Sample& s) { return detail::u_statistic(k, s.values()); }

double v_statistic(const Kernel& k, const Sample& s) { return detail::v_statistic(k, s.values()); }

HoeffdingParts hoeffding_decompose(const Kernel& k, const Sample& s) {
    const std::size_t n = s.size();
    if (n < 2) fail(ErrorKind::InsufficientData, "decomposition needs at least 2 observations");
    const auto xs = s.values();

    // Symmetric kernel matrix off the diagonal; row sums exclude j == i.
    std::vector<double> hm(n * n, 0.0);
    with_evaluator(k, [&](auto h) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double v = h(xs[i], xs[j]);
                hm[i * n + j] = v;
                hm[j * n + i] = v;
            }
        }
        return 0;
    });

    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    CompensatedSum pair_sum;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) pair_sum += hm[i * n + j];
    }

    HoeffdingParts parts;
    parts.u = pair_sum.value() / pairs;
    parts.theta_hat = parts.u;
    parts.h1_hat.resize(n);
    CompensatedSum g_sum;
    for (std::size_t i = 0; i < n; ++i) {
        CompensatedSum row;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) row += hm[i * n + j];
        }
        parts.h1_hat[i] = row.value() / static_cast<double>(n - 1) - parts.theta_hat;
        g_sum += parts.h1_hat[i];
    }
    parts.linear = 2.0 * g_sum.value() / static_cast<double>(n);

    CompensatedSum deg;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            deg += hm[i * n + j] - parts.h1_hat[i] - parts.h1_hat[j] - parts.theta_hat;
        }
    }
    parts.degenerate = deg.value() / pairs;
    return parts;
}

double sample_variance(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 2) fail(ErrorKind::InsufficientData, "sample variance needs at least 2 observations");
    const double mean = compensated_mean(xs);
    CompensatedSum ss;
    for (double x : xs) {
        const double d = x - mean;
        ss += d * d;
    }
    return ss.value() / static_cast<double>(n - 1);
}

double degenerate_u_statistic(const Kernel& k, const Sample& s, const CenteringModel& centering) {
    const std::size_t n = s.size();
    if (n < 2) fail(ErrorKind::InsufficientData, "U-statistic needs at least 2 observations");
    const auto xs = s.values();
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = centering.h1(xs[i]) + 0.5 * centering.theta;
    return with_evaluator(k, [&](auto h) {
        CompensatedSum acc;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            double row = 0.0;
            for (std::size_t j = i + 1; j < n; ++j) row += h(xs[i], xs[j]) - g[i] - g[j];
            acc += row;
        }
        return acc.value() / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
    });
}

MonteCarloEstimate degenerate_second_moment(const Kernel& k, const ProcessSpec& process,
                                            std::size_t n, std::size_t reps, const RngStream& rng,
                                            const std::optional<CenteringModel>& centering) {
    if (n < 2) fail(ErrorKind::InsufficientData, "degenerate moment needs n >= 2");
    if (reps < 1) fail(ErrorKind::InsufficientReplicates, "degenerate moment needs reps >= 1");
    process.validate();

    std::vector<double> values(reps);
    parallel_for(reps, [&](std::size_t r) {
        RngStream stream = rng.child(r);
        const Sample s = simulate(process, n, stream);
        const double deg = centering ? degenerate_u_statistic(k, s, *centering)
                                     : hoeffding_decompose(k, s).degenerate;
        values[r] = static_cast<double>(n) * deg * deg;
    });

    MonteCarloEstimate est;
    est.reps = reps;
    est.mean = compensated_mean(values);
    if (reps > 1) {
        CompensatedSum ss;
        for (double v : values) ss += (v - est.mean) * (v - est.mean);
        est.std_error = std::sqrt(ss.value() / static_cast<double>(reps - 1) / static_cast<double>(reps));
    }
    return est;
}

}  // namespace ustatboot
