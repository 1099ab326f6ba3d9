#include "koenigs/grid.hpp"

#include <cmath>

namespace koenigs {

namespace {

double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

}  // namespace

std::vector<Complex> disc_grid(const GridSpec& spec) {
  if (spec.count <= 0 || spec.radius <= 0.0 || spec.radius >= 1.0)
    throw Error(ErrorKind::Domain, "grid needs count > 0 and radius in (0,1)");
  std::vector<Complex> pts;
  pts.reserve(spec.count);
  int i = 1;
  if (spec.include_origin) pts.emplace_back(0.0, 0.0);
  while (static_cast<int>(pts.size()) < spec.count) {
    double r = spec.radius * std::sqrt(halton(i, 2));
    double t = 2.0 * M_PI * halton(i, 3);
    pts.emplace_back(r * std::cos(t), r * std::sin(t));
    ++i;
  }
  return pts;
}

}  // namespace koenigs
