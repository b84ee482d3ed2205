#ifndef ATTRACTORLAB_LAB_ENSEMBLE_HPP
#define ATTRACTORLAB_LAB_ENSEMBLE_HPP

#include <exception>
#include <vector>

namespace attractorlab {

/// Execution mode of ensemble sweeps.  Parallel runs the members on an
/// OpenMP pool; Serial is the reference path the tests compare against.
enum class ExecMode { Serial, Parallel };

/// Evaluate fn(i) for i in [0, n) into a slot-indexed vector, so the result
/// is independent of worker scheduling.  Exceptions from members are
/// captured and the first (by index) is rethrown after the sweep.
template <typename T, typename Fn>
std::vector<T> ensemble_map(int n, ExecMode mode, Fn&& fn) {
    std::vector<T> out(static_cast<std::size_t>(n));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
    if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) {
            try {
                out[static_cast<std::size_t>(i)] = fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    } else {
        for (int i = 0; i < n; ++i) {
            try {
                out[static_cast<std::size_t>(i)] = fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace attractorlab

#endif
