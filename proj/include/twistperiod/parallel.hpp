#pragma once

namespace twistperiod {

// Selects between the OpenMP kernels and their serial reference versions.
// Both produce bit-identical results; the serial path exists for testing and
// benchmarking.
enum class Execution { serial, parallel };

/// Applies TWISTPERIOD_THREADS (if set to a positive integer) as the OpenMP
/// thread cap. Returns the cap in effect.
int configure_threads_from_env();

int max_threads();

}  // namespace twistperiod
