#include "linea/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

#include <omp.h>

namespace linea {

namespace {
int g_default_threads = 0;
}

void set_thread_limit(int threads)
{
    if (g_default_threads == 0)
        g_default_threads = omp_get_max_threads();
    omp_set_num_threads(threads >= 1 ? threads : g_default_threads);
}

int thread_limit()
{
    return omp_get_max_threads();
}

int apply_thread_limit_from_env()
{
    const char* raw = std::getenv("LINEA_THREADS");
    if (raw == nullptr)
        return thread_limit();
    int value = 0;
    const char* end = raw + std::strlen(raw);
    auto [ptr, ec] = std::from_chars(raw, end, value);
    if (ec == std::errc() && ptr == end && value >= 1)
        set_thread_limit(value);
    return thread_limit();
}

} // namespace linea
