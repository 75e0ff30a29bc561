#pragma once

#include <cstddef>

namespace nexus {

// Execution policy for the batch kernels. Serial is the reference
// implementation; Parallel runs the same per-element code under OpenMP.
// Every kernel writes each output slot independently and performs
// reductions serially in sorted-key order, so both policies produce
// bit-identical results.
enum class Exec { Serial, Parallel };

template <typename Fn>
void for_each_index(std::size_t n, Exec exec, Fn&& fn) {
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            fn(static_cast<std::size_t>(i));
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
    }
}

}  // namespace nexus
