#pragma once

namespace ramcalc {

/// Worker threads for parallel kernels: the OpenMP default, capped by the
/// RAMCALC_THREADS environment variable when it holds a positive integer.
int worker_count();

}  // namespace ramcalc
