#pragma once

#include <cstddef>
#include <vector>

#include "koenigs/expr.hpp"

namespace koenigs {

enum class StopReason { ReachedLimit, LeftDisc, Stagnated };

constexpr double kStagnationTol = 1e-15;   // |z_{k+1}-z_k| below this ...
constexpr int kStagnationRuns = 3;         // ... for this many consecutive steps
constexpr double kDiscEscapeTol = 1e-12;   // |z| > 1 + tol is an instability

/// Forward orbit z_0, z_1 = f(z_0), ... with the per-step derivative ledger
/// kept in (log-magnitude, argument) form so that products of thousands of
/// derivatives neither overflow nor underflow.
struct Orbit {
  Complex seed{};
  std::vector<Complex> points;        // z_0 .. z_N, all in the open disc
  std::vector<double> step_log_mag;   // log|f'(z_k)|, k = 0 .. N-1
  std::vector<double> step_arg;       // arg f'(z_k)
  StopReason stop = StopReason::ReachedLimit;
  bool zero_derivative = false;       // some f'(z_k) vanished exactly

  std::size_t steps() const { return step_log_mag.size(); }

  /// log|(f^n)'(z_0)| by the chain rule; -inf if a factor vanished.
  double log_mag_of_iterate_deriv(std::size_t n) const;
  double arg_of_iterate_deriv(std::size_t n) const;
};

/// Iterate until n_max steps, numerical stagnation, or the boundary is hit.
/// Throws Error(Instability) if the orbit leaves the closed disc by more
/// than kDiscEscapeTol.
Orbit iterate_map(const MapExpr& map, Complex z0, int n_max);

}  // namespace koenigs
