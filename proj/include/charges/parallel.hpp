#pragma once

// OpenMP kernels with serial twins. Parallel loops only write disjoint slots;
// every reduction is a fixed-order pairwise sum so results do not depend on
// the thread count.

#include <cstddef>
#include <exception>
#include <span>

namespace charges {

/// Threads used by parallel_for. Initialized from CHARGES_THREADS when set.
int thread_cap();
void set_thread_cap(int threads);

template <class Body>
void parallel_for(std::size_t n, Body&& body) {
#if defined(_OPENMP)
  // Exceptions may not leave the parallel region; the first one is rethrown.
  const long long count = static_cast<long long>(n);
  std::exception_ptr error;
#pragma omp parallel for schedule(static) num_threads(thread_cap())
  for (long long k = 0; k < count; ++k) {
    try {
      body(static_cast<std::size_t>(k));
    } catch (...) {
#pragma omp critical(charges_parallel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
#else
  for (std::size_t k = 0; k < n; ++k) body(k);
#endif
}

template <class Body>
void serial_for(std::size_t n, Body&& body) {
  for (std::size_t k = 0; k < n; ++k) body(k);
}

/// Pairwise summation; deterministic for a given input order.
double pairwise_sum(std::span<const double> values);

}  // namespace charges
