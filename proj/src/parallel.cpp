#include "pvlab/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace pvlab {

namespace {
int env_cap() {
  const char* raw = std::getenv("PVLAB_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  try {
    const int v = std::stoi(raw);
    return v > 0 ? v : 0;
  } catch (...) {
    return 0;
  }
}
}  // namespace

int worker_count() {
  const int cap = env_cap();
  const int available = omp_get_max_threads();
  return cap > 0 && cap < available ? cap : available;
}

ScopedThreads::ScopedThreads(int threads) : previous_(omp_get_max_threads()) {
  omp_set_num_threads(threads > 0 ? threads : 1);
}

ScopedThreads::~ScopedThreads() { omp_set_num_threads(previous_); }

void configure_threads_from_env() { omp_set_num_threads(worker_count()); }

}  // namespace pvlab
