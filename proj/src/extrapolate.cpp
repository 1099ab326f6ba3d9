#include "koenigs/extrapolate.hpp"

#include <cmath>

namespace koenigs {

Extrapolated richardson(const std::vector<Complex>& values, double decay, int levels,
                        double diverge_tol) {
  if (values.size() < static_cast<std::size_t>(levels + 2))
    throw Error(ErrorKind::Precondition, "not enough nodes for the requested depth");
  std::vector<Complex> row = values;
  double q = decay;
  for (int level = 0; level < levels; ++level) {
    std::vector<Complex> next(row.size() - 1);
    for (std::size_t k = 0; k + 1 < row.size(); ++k)
      next[k] = (row[k + 1] - q * row[k]) / (1.0 - q);
    row = std::move(next);
    q *= decay;
  }
  Extrapolated out;
  out.limit = row.back();
  out.err_estimate = std::abs(row.back() - row[row.size() - 2]);
  out.converged = out.err_estimate <= diverge_tol;
  return out;
}

Complex algebraic_tail(const std::vector<double>& nodes, const std::vector<Complex>& values,
                       const std::vector<double>& exponents) {
  const std::size_t dim = exponents.size() + 1;
  if (nodes.size() != dim || values.size() != dim)
    throw Error(ErrorKind::Precondition, "node count must be exponent count + 1");
  // Gaussian elimination with partial pivoting; the basis matrix is real,
  // the right-hand side complex.
  std::vector<std::vector<long double>> m(dim, std::vector<long double>(dim));
  std::vector<std::complex<long double>> rhs(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    m[i][0] = 1.0L;
    for (std::size_t j = 0; j + 1 < dim; ++j)
      m[i][j + 1] = std::pow(static_cast<long double>(nodes[i]),
                             static_cast<long double>(-exponents[j]));
    rhs[i] = {values[i].real(), values[i].imag()};
  }
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < dim; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (m[pivot][col] == 0.0L)
      throw Error(ErrorKind::Degenerate, "singular extrapolation system");
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (std::size_t r = col + 1; r < dim; ++r) {
      long double f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < dim; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<std::complex<long double>> x(dim);
  for (std::size_t ri = dim; ri-- > 0;) {
    std::complex<long double> acc = rhs[ri];
    for (std::size_t c = ri + 1; c < dim; ++c) acc -= m[ri][c] * x[c];
    x[ri] = acc / m[ri][ri];
  }
  return Complex(static_cast<double>(x[0].real()), static_cast<double>(x[0].imag()));
}

namespace {

// 3x3 complex-valued linear solve by Cramer's rule; basis values real.
Complex solve_first(const std::array<std::array<double, 3>, 3>& m,
                    const std::array<Complex, 3>& rhs) {
  auto det3 = [](const std::array<std::array<double, 3>, 3>& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  double d = det3(m);
  if (d == 0.0 || !std::isfinite(d))
    throw Error(ErrorKind::Degenerate, "singular extrapolation system");
  // Replace the first column by the (complex) right-hand side.
  Complex dx = rhs[0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               Complex(m[0][1]) * (rhs[1] * m[2][2] - m[1][2] * rhs[2]) +
               Complex(m[0][2]) * (rhs[1] * m[2][1] - m[1][1] * rhs[2]);
  return dx / d;
}

}  // namespace

Complex algebraic_tail3(const std::array<double, 3>& nodes, const std::array<Complex, 3>& values,
                        double p1, double p2) {
  std::array<std::array<double, 3>, 3> m{};
  for (int i = 0; i < 3; ++i)
    m[i] = {1.0, std::pow(nodes[i], -p1), std::pow(nodes[i], -p2)};
  return solve_first(m, values);
}

Complex mixed_tail3(const std::array<double, 3>& nodes, const std::array<Complex, 3>& values) {
  std::array<std::array<double, 3>, 3> m{};
  for (int i = 0; i < 3; ++i) m[i] = {1.0, 1.0 / nodes[i], nodes[i]};
  return solve_first(m, values);
}

}  // namespace koenigs
