#include "ramcalc/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace ramcalc {

int worker_count() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("RAMCALC_THREADS")) {
    try {
      int cap = std::stoi(env);
      if (cap > 0 && cap < n) n = cap;
    } catch (const std::exception&) {
      // ignored: a malformed cap leaves the default in place
    }
  }
  return n < 1 ? 1 : n;
}

}  // namespace ramcalc
