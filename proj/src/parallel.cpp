#include "treelat/parallel.hpp"

#include <charconv>
#include <cstdlib>

namespace treelat::par {

std::optional<int> parse_thread_cap(std::string_view text)
{
   if (text.empty()) return std::nullopt;
   int value = 0;
   auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
   if (ec != std::errc{} || end != text.data() + text.size() || value <= 0) return std::nullopt;
   return value;
}

std::optional<int> thread_cap()
{
   static const std::optional<int> cap = [] () -> std::optional<int> {
      const char *raw = std::getenv("TREELAT_THREADS");
      if (raw == nullptr) return std::nullopt;
      return parse_thread_cap(raw);
   }();
   return cap;
}

int thread_count()
{
#if defined(_OPENMP)
   if (auto cap = thread_cap()) return *cap;
   return omp_get_max_threads();
#else
   return 1;
#endif
}

bool openmp_enabled()
{
#if defined(_OPENMP)
   return true;
#else
   return false;
#endif
}

} // namespace treelat::par
