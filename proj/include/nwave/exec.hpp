#ifndef NWAVE_EXEC_HPP
#define NWAVE_EXEC_HPP

namespace nwave {

/// Serial keeps the plain reference loops; Parallel uses OpenMP.
enum class Exec { Serial, Parallel };

/// Threads used by Parallel kernels; 0 leaves the OpenMP default.
void set_threads(int n);
int max_threads();

}  // namespace nwave

#endif
