#ifndef TREELAT_PARALLEL_HPP
#define TREELAT_PARALLEL_HPP

#include <cstddef>
#include <optional>
#include <string_view>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace treelat::par {

// Parses a TREELAT_THREADS value. Anything but a positive decimal integer
// yields nullopt.
std::optional<int> parse_thread_cap(std::string_view text);

// Thread cap read once from TREELAT_THREADS; nullopt means the OpenMP default.
std::optional<int> thread_cap();

// Number of threads a parallel region will use.
int thread_count();

bool openmp_enabled();

// Runs body(k) for k in [0, n). The body must not throw; iterations must be
// independent. Output ordering is the caller's job (write to slot k).
template <typename Body>
void for_each_index(std::size_t n, Body &&body)
{
#if defined(_OPENMP)
   const int threads = thread_count();
   const auto count = static_cast<std::ptrdiff_t>(n);
   #pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads > 1 && count > 1)
   for (std::ptrdiff_t k = 0; k < count; ++k)
   {
      body(static_cast<std::size_t>(k));
   }
#else
   for (std::size_t k = 0; k < n; ++k)
   {
      body(k);
   }
#endif
}

} // namespace treelat::par

#endif // TREELAT_PARALLEL_HPP
