#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>

namespace ustatboot {

/// Runs body(i) for i in [0, count). Iterations must write only to their own
/// slots; results are then independent of the schedule. The first exception
/// thrown by any iteration is rethrown on the calling thread.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
    std::exception_ptr error;
    std::mutex error_mutex;
#if defined(USTATBOOT_USE_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace ustatboot
