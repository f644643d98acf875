#pragma once

namespace pvlab {

// Worker count honoring PVLAB_THREADS (a cap on the OpenMP default).
int worker_count();

// Pins the OpenMP team size for the lifetime of the object.
class ScopedThreads {
 public:
  explicit ScopedThreads(int threads);
  ~ScopedThreads();
  ScopedThreads(const ScopedThreads&) = delete;
  ScopedThreads& operator=(const ScopedThreads&) = delete;

 private:
  int previous_;
};

// Apply PVLAB_THREADS to the OpenMP runtime; called once by the CLI.
void configure_threads_from_env();

}  // namespace pvlab
