#include "putinar/threads.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace putinar {

void apply_thread_cap() {
#ifdef _OPENMP
  const char* cap = std::getenv("PUTINAR_KIT_THREADS");
  if (!cap) return;
  try {
    int n = std::stoi(cap);
    if (n >= 1) omp_set_num_threads(n);
  } catch (...) {
  }
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace putinar
