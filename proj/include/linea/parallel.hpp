#pragma once

#include <cstddef>
#include <cstdint>

namespace linea {

/// Caps the number of OpenMP workers used by every kernel. Values < 1 restore
/// the runtime default (hardware concurrency).
void set_thread_limit(int threads);

/// Current cap as seen by the OpenMP runtime.
int thread_limit();

/// Reads LINEA_THREADS and applies it; returns the limit in effect. Unset or
/// unparsable values leave the runtime default alone.
int apply_thread_limit_from_env();

/// Runs body(i) for i in [0, n) across OpenMP workers. Iterations must write
/// disjoint outputs; there is no reduction support here on purpose, callers
/// reduce per-index partials serially so results do not depend on scheduling.
template <typename Body>
void parallel_for(std::int64_t n, Body&& body)
{
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        body(i);
}

} // namespace linea
