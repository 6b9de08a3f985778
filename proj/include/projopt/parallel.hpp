#pragma once

namespace projopt {

/// Execution policy for the dense kernels. `Serial` runs the plain reference
/// loops, `Parallel` the OpenMP versions, `Auto` picks by problem size.
/// Both variants compute every output element with the same inner-loop order,
/// so results are bit-identical across policies and thread counts.
enum class Exec { Serial, Parallel, Auto };

namespace kern {

/// Number of OpenMP threads the parallel kernels would use (1 without OpenMP).
int max_threads();

/// Auto policy threshold: flop counts below this stay serial.
inline constexpr double kAutoFlopCutoff = 1 << 18;

inline bool use_parallel(Exec exec, double flops) {
  if (exec == Exec::Serial) return false;
  if (exec == Exec::Parallel) return true;
  return flops >= kAutoFlopCutoff && max_threads() > 1;
}

}  // namespace kern
}  // namespace projopt
