#pragma once

#include <omp.h>

#include <algorithm>
#include <cstdlib>

namespace mhds {

// MHD_SPECTRA_THREADS caps the OpenMP thread count for the process.
inline void apply_thread_cap_from_env() {
  if (const char* env = std::getenv("MHD_SPECTRA_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) omp_set_num_threads(std::min(cap, omp_get_max_threads()));
  }
}

}  // namespace mhds
