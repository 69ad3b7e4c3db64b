#include "twistperiod/parallel.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace twistperiod {

int configure_threads_from_env() {
  if (const char* env = std::getenv("TWISTPERIOD_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) omp_set_num_threads(n);
    } catch (const std::exception&) {
      // ignored: malformed values leave the OpenMP default in place
    }
  }
  return omp_get_max_threads();
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace twistperiod
