#pragma once

#include <vector>

#include "koenigs/expr.hpp"

namespace koenigs {

/// Deterministic low-discrepancy sample of the disc of the given radius
/// (Halton bases 2 and 3, area-uniform).  With include_origin the first
/// point is 0.
struct GridSpec {
  int count = 64;
  double radius = 0.9;
  bool include_origin = false;
};

std::vector<Complex> disc_grid(const GridSpec& spec);

}  // namespace koenigs
