#pragma once

#include <array>
#include <vector>

#include "koenigs/expr.hpp"

namespace koenigs {

struct Extrapolated {
  Complex limit{};
  double err_estimate = 0;  // |last - previous| at the deepest level
  bool converged = false;
};

/// Iterated Richardson extrapolation for sequences v_k whose error decays
/// geometrically, error(k) ~ a*decay^k + b*decay^{2k} + ...  `levels`
/// elimination passes are applied; convergence requires the last two
/// deepest-level entries to agree within diverge_tol.
Extrapolated richardson(const std::vector<Complex>& values, double decay, int levels,
                        double diverge_tol);

/// Exact solve of v(n) = L + sum_j a_j n^{-p_j} on exponents.size()+1
/// nodes; returns L.
Complex algebraic_tail(const std::vector<double>& nodes, const std::vector<Complex>& values,
                       const std::vector<double>& exponents);

/// Exact 3-node solve of v(n) = L + a*n^{-p1} + b*n^{-p2}; returns L.
Complex algebraic_tail3(const std::array<double, 3>& nodes, const std::array<Complex, 3>& values,
                        double p1, double p2);

/// Exact 3-node solve of v(m) = L + a/m + b*m; returns L.
Complex mixed_tail3(const std::array<double, 3>& nodes, const std::array<Complex, 3>& values);

}  // namespace koenigs
