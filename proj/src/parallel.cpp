#include "charges/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace charges {

namespace {

int initial_cap() {
  int cap = 1;
#if defined(_OPENMP)
  cap = omp_get_max_threads();
#endif
  if (const char* env = std::getenv("CHARGES_THREADS")) {
    try {
      const int requested = std::stoi(env);
      if (requested > 0) cap = requested;
    } catch (...) {
      // unparsable value: keep the runtime default
    }
  }
  return cap;
}

std::atomic<int>& cap_storage() {
  static std::atomic<int> cap{initial_cap()};
  return cap;
}

}  // namespace

int thread_cap() { return cap_storage().load(); }

void set_thread_cap(int threads) { cap_storage().store(threads > 0 ? threads : 1); }

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 16;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace charges
