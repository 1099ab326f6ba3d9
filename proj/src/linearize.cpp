#include "koenigs/linearize.hpp"

#include <algorithm>
#include <cmath>

#include "koenigs/extrapolate.hpp"
#include "koenigs/metric.hpp"
#include "koenigs/parser.hpp"

namespace koenigs {

namespace {

using LComplex = std::complex<long double>;

Complex iterate_value(const MapExpr& map, Complex z, int n) {
  for (int k = 0; k < n; ++k) z = eval(map, z);
  return z;
}

// Value and derivative of the n-th iterate at z (direct product; fine for
// the polynomially-decaying derivatives of zero-step maps).
ValueDeriv<double> iterate_with_deriv(const MapExpr& map, Complex z, int n) {
  Complex d = 1.0;
  for (int k = 0; k < n; ++k) {
    ValueDeriv<double> vd = eval_with_deriv<double>(map, z);
    d *= vd.deriv;
    z = vd.value;
  }
  return {z, d};
}

void require_zero_step(const MapExpr& map, const LinearizeConfig& cfg, const char* who) {
  DWReport dw = classify(map, cfg.dynamics);
  if (dw.type_label != MapTypeLabel::Parabolic)
    throw Error(ErrorKind::Precondition,
                std::string(who) + " must be parabolic (got " + to_string(dw.type_label) + ")");
  auto seeds = default_seeds();
  StepAnalysis st = analyze_step(map, seeds, cfg.dynamics.n_max, cfg.dynamics);
  if (st.decision == StepDecision::Positive)
    throw Error(ErrorKind::Precondition, std::string(who) + " has positive hyperbolic step");
  if (st.decision != StepDecision::Zero)
    throw Error(ErrorKind::Precondition,
                std::string(who) + ": hyperbolic step decision inconclusive");
}

}  // namespace

KoenigsApprox::KoenigsApprox(MapExpr map, int n) : map_(std::move(map)), n_(n) {
  if (n_ < 1) throw Error(ErrorKind::Precondition, "iteration depth must be positive");
  Complex w = 0.0;
  for (int k = 0; k < n_; ++k) w = eval(map_, w);
  w_n_ = w;
  Complex w_next = eval(map_, w);
  delta_ = w_next - w_n_;
  if (delta_ == Complex(0, 0))
    throw Error(ErrorKind::Degenerate, "stagnant base orbit: w_{n+1} = w_n");
}

Complex KoenigsApprox::operator()(Complex z) const {
  return (iterate_value(map_, z, n_) - w_n_) / delta_;
}

Complex KoenigsApprox::derivative(Complex z) const {
  return iterate_with_deriv(map_, z, n_).deriv / delta_;
}

void KoenigsApprox::compute_residual_stats(const GridSpec& grid) {
  auto pts = disc_grid(grid);
  double mx = 0, mean = 0;
  for (const Complex& z : pts) {
    // One extra step gives b_n(map(z)) from the same pass.
    Complex zn = iterate_value(map_, z, n_);
    Complex zn1 = eval(map_, zn);
    Complex bz = (zn - w_n_) / delta_;
    Complex bfz = (zn1 - w_n_) / delta_;
    double r = std::abs(bfz - bz - 1.0);
    mx = std::max(mx, r);
    mean += r;
  }
  mean /= static_cast<double>(pts.size());
  stats_ = {mx, mean};
}

KoenigsApprox koenigs_bp(const MapExpr& map, int n, const LinearizeConfig& cfg) {
  require_zero_step(map, cfg, "base map");
  KoenigsApprox approx(map, n);
  approx.compute_residual_stats(cfg.abel_grid);
  return approx;
}

double abel_residual(const std::function<Complex(Complex)>& h, const MapExpr& map, Complex z,
                     Complex c) {
  return std::abs(h(eval(map, z)) - h(z) - c);
}

double commute_residual(const MapExpr& phi, const MapExpr& psi, std::span<const Complex> grid) {
  double mx = 0;
  for (const Complex& z : grid) {
    try {
      Complex a = eval(phi, eval(psi, z));
      Complex b = eval(psi, eval(phi, z));
      mx = std::max(mx, std::abs(a - b));
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(e.what()) + " at z = " + format_complex_literal(z));
    }
  }
  return mx;
}

double check_power_relation(const MapExpr& phi, const MapExpr& psi, int m, int n,
                            std::span<const Complex> grid) {
  if (m < 0 || n < 0) throw Error(ErrorKind::Precondition, "iterate counts must be non-negative");
  double mx = 0;
  for (const Complex& z : grid) {
    try {
      Complex a = iterate_value(psi, z, n);
      Complex b = iterate_value(phi, z, m);
      mx = std::max(mx, std::abs(a - b));
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(e.what()) + " at z = " + format_complex_literal(z));
    }
  }
  return mx;
}

namespace {

MethodEstimate angular_slc(const MapExpr& phi, const MapExpr& psi, Complex tau,
                           const LinearizeConfig& cfg) {
  MethodEstimate est;
  est.attempted = true;
  LComplex tau_l(tau.real(), tau.imag());
  tau_l /= std::abs(tau_l);
  std::vector<Complex> values;
  for (int k = cfg.radial_k_min; k <= cfg.radial_k_max; ++k) {
    long double r = 1.0L - std::pow(0.5L, k);
    LComplex z = r * tau_l;
    LComplex num = eval_at<long double>(psi, z) - z;
    LComplex den = eval_at<long double>(phi, z) - z;
    if (den == LComplex(0, 0))
      throw Error(ErrorKind::Domain, "phi has a fixed point on the radial ladder");
    LComplex q = num / den;
    values.emplace_back(static_cast<double>(q.real()), static_cast<double>(q.imag()));
  }
  try {
    Extrapolated ex = richardson(values, 0.5, 2, cfg.angular_diverge);
    est.value = ex.limit;
    est.err = ex.err_estimate;
    est.converged = ex.converged;
  } catch (const Error&) {
    est.converged = false;
  }
  return est;
}

MethodEstimate koenigs_slc(const MapExpr& phi, const MapExpr& psi, const LinearizeConfig& cfg) {
  MethodEstimate est;
  est.attempted = true;
  auto grid = disc_grid(cfg.slc_grid);
  int n = cfg.slc_depth;
  if (n < 16) n = 16;
  std::array<int, 4> depths{n / 8, n / 4, n / 2, n};
  std::array<Complex, 4> means{};
  for (std::size_t j = 0; j < depths.size(); ++j) {
    KoenigsApprox b(phi, depths[j]);
    Complex acc = 0.0;
    for (const Complex& z : grid) acc += b(eval(psi, z)) - b(z);
    means[j] = acc / static_cast<double>(grid.size());
  }
  // The tail of the depth error is algebraic with exponents 1 and 3/2
  // (validated against the closed-form slit-map linearizer).
  try {
    Complex fit_hi = algebraic_tail3(
        {double(depths[1]), double(depths[2]), double(depths[3])},
        {means[1], means[2], means[3]}, 1.0, 1.5);
    Complex fit_lo = algebraic_tail3(
        {double(depths[0]), double(depths[1]), double(depths[2])},
        {means[0], means[1], means[2]}, 1.0, 1.5);
    est.value = fit_hi;
    est.err = std::abs(fit_hi - fit_lo);
    est.converged = std::isfinite(est.err) && est.err <= 1e-4;
  } catch (const Error&) {
    est.converged = false;
  }
  return est;
}

MethodEstimate hprime_slc(const MapExpr& phi, const MapExpr& psi, const LinearizeConfig& cfg) {
  MethodEstimate est;
  est.attempted = true;
  int m_top = cfg.hprime_orbit;
  int n = 128 * m_top;  // depth >> orbit index keeps the derivative error flat
  Orbit orbit = iterate_map(phi, Complex(0, 0), n + m_top + 2);
  if (static_cast<int>(orbit.steps()) < n + m_top + 1 || orbit.zero_derivative) {
    est.converged = false;
    return est;
  }
  // Prefix sums of the derivative ledger.
  std::vector<double> logp(orbit.steps() + 1, 0.0), argp(orbit.steps() + 1, 0.0);
  for (std::size_t k = 0; k < orbit.steps(); ++k) {
    logp[k + 1] = logp[k] + orbit.step_log_mag[k];
    argp[k + 1] = argp[k] + orbit.step_arg[k];
  }
  Complex delta = orbit.points[n + 1] - orbit.points[n];
  if (delta == Complex(0, 0)) {
    est.converged = false;
    return est;
  }
  auto p_at = [&](int m) {
    // b_n'(w_m) (psi(w_m) - w_m); (f^n)'(w_m) from the ledger.
    double lm = logp[m + n] - logp[m];
    double ar = argp[m + n] - argp[m];
    Complex iter_deriv = std::polar(std::exp(lm), ar);
    Complex w = orbit.points[m];
    return iter_deriv / delta * (eval(psi, w) - w);
  };
  try {
    // The orbit-index error has a c^2/m truncation term and an m/n term
    // from the finite-depth derivative; the three-node mixed fit removes
    // both, and the offset ladder estimates what is left.
    Complex hi = mixed_tail3({double(m_top / 4), double(m_top / 2), double(m_top)},
                             {p_at(m_top / 4), p_at(m_top / 2), p_at(m_top)});
    Complex lo = mixed_tail3({double(m_top / 8), double(m_top / 4), double(m_top / 2)},
                             {p_at(m_top / 8), p_at(m_top / 4), p_at(m_top / 2)});
    est.value = hi;
    est.err = std::abs(hi - lo);
    est.converged = std::isfinite(est.err) && est.err <= cfg.disagree_tol;
  } catch (const Error&) {
    est.converged = false;
  }
  return est;
}

}  // namespace

SLCResult slc_estimate(const MapExpr& phi, const MapExpr& psi, SlcMethod method,
                       const LinearizeConfig& cfg) {
  SLCResult out;
  auto grid = disc_grid(cfg.relation_grid);
  out.commute_residual = commute_residual(phi, psi, grid);

  if (is_identity_map(psi)) {
    out.identity_flag = true;
    out.c = 0.0;
    return out;
  }

  require_zero_step(phi, cfg, "phi");
  DWReport dw_phi = classify(phi, cfg.dynamics);
  DWReport dw_psi = classify(psi, cfg.dynamics);
  if (dw_psi.kind != DWKind::Boundary ||
      std::abs(dw_psi.location - dw_phi.location) > cfg.dw_match_tol)
    throw Error(ErrorKind::Precondition, "psi does not share the Denjoy-Wolff point of phi");

  if (method == SlcMethod::Angular || method == SlcMethod::All)
    out.angular = angular_slc(phi, psi, dw_phi.location, cfg);
  if (method == SlcMethod::Koenigs || method == SlcMethod::All)
    out.koenigs = koenigs_slc(phi, psi, cfg);
  if (method == SlcMethod::HPrime || method == SlcMethod::All)
    out.hprime = hprime_slc(phi, psi, cfg);

  std::vector<Complex> converged;
  for (const MethodEstimate* m : {&out.koenigs, &out.angular, &out.hprime})
    if (m->attempted && m->converged) converged.push_back(m->value);
  if (converged.empty()) throw Error(ErrorKind::Inconclusive, "every requested method failed");
  out.c = converged.front();
  double dis = 0;
  for (std::size_t i = 0; i < converged.size(); ++i)
    for (std::size_t j = i + 1; j < converged.size(); ++j)
      dis = std::max(dis, std::abs(converged[i] - converged[j]));
  out.cross_disagreement = dis;
  return out;
}

double check_koenigs_ratio(const MapExpr& phi, const MapExpr& psi, Complex c,
                           std::span<const Complex> grid, int n, const LinearizeConfig& cfg) {
  if (c == Complex(0, 0)) throw Error(ErrorKind::Domain, "ratio constant c must be non-zero");
  require_zero_step(phi, cfg, "phi");
  require_zero_step(psi, cfg, "psi");
  double commute = commute_residual(phi, psi, grid);
  if (commute > 1e-8)
    throw Error(ErrorKind::Precondition, "maps do not commute (residual " +
                                             std::to_string(commute) + ")");
  KoenigsApprox b_phi(phi, n), b_psi(psi, n);
  double mx = 0;
  for (const Complex& z : grid)
    mx = std::max(mx, std::abs(b_psi(z) - b_phi(z) / c));
  return mx;
}

RatioLimitResult ratio_limit_check(const MapExpr& phi, const MapExpr& psi, int n,
                                   const LinearizeConfig& cfg) {
  if (is_identity_map(psi)) return {0.0, true};
  require_zero_step(phi, cfg, "phi");
  auto grid = disc_grid(cfg.relation_grid);
  double commute = commute_residual(phi, psi, grid);
  if (commute > 1e-8)
    throw Error(ErrorKind::Precondition, "psi is not in the centralizer of phi (residual " +
                                             std::to_string(commute) + ")");
  DWReport dw = classify(phi, cfg.dynamics);
  Complex tau = dw.location;

  KoenigsApprox b_full(phi, n), b_half(phi, n / 2);
  auto quotient = [&](const KoenigsApprox& b, Complex z) {
    Complex pz = eval(psi, z);
    Complex num = b(pz) - b(z);
    Complex den = b.derivative(z) * (pz - z);
    if (den == Complex(0, 0)) throw Error(ErrorKind::Domain, "degenerate quotient");
    return num / den;
  };

  std::vector<Complex> radial;
  for (int k = cfg.radial_k_min; k <= 8; ++k) {
    Complex z = (1.0 - std::pow(0.5, k)) * tau;
    if (std::abs(b_full(z)) + 1.0 > n / 32.0) break;  // depth no longer resolves this radius
    Complex q_full = quotient(b_full, z);
    Complex q_half = quotient(b_half, z);
    radial.push_back(2.0 * q_full - q_half);  // first-order depth correction
  }
  if (radial.empty()) throw Error(ErrorKind::Inconclusive, "no usable radius for the quotient");
  Complex limit;
  if (radial.size() >= 4) {
    limit = richardson(radial, 0.25, 2, 1.0).limit;
  } else if (radial.size() == 3) {
    limit = richardson(radial, 0.25, 1, 1.0).limit;
  } else if (radial.size() == 2) {
    limit = (4.0 * radial[1] - radial[0]) / 3.0;
  } else {
    limit = radial.back();
  }
  return {std::abs(limit - 1.0), false};
}

}  // namespace koenigs
