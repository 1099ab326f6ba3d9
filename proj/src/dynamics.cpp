#include "koenigs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "koenigs/extrapolate.hpp"
#include "koenigs/metric.hpp"

namespace koenigs {

namespace {

using LComplex = std::complex<long double>;

constexpr double kIdentityTol = 1e-13;
constexpr double kAutomorphismTol = 1e-10;
constexpr double kInteriorRefineTol = 1e-13;

long double one_minus_norm(const Complex& z) {
  long double x = z.real(), y = z.imag();
  return 1.0L - (x * x + y * y);
}

std::vector<Complex> sample_points(int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> pts;
  pts.reserve(count);
  while (static_cast<int>(pts.size()) < count) {
    double r = 0.9 * std::sqrt(unit(rng));
    double t = 2.0 * M_PI * unit(rng);
    pts.emplace_back(r * std::cos(t), r * std::sin(t));
  }
  return pts;
}

// Newton iteration on phi(z) - z.  Returns the refined point or the start
// if the iteration fails to settle.
struct RootResult {
  Complex z{};
  double residual = 0;
  bool converged = false;
};

RootResult refine_fixed_point(const MapExpr& map, Complex start, int iters) {
  Complex z = start;
  bool ok = false;
  for (int i = 0; i < iters; ++i) {
    ValueDeriv<double> vd;
    try {
      vd = eval_with_deriv<double>(map, z);
    } catch (const Error&) {
      return {start, 0, false};
    }
    Complex f = vd.value - z;
    Complex fp = vd.deriv - 1.0;
    if (std::abs(f) < kInteriorRefineTol) {
      ok = true;
      break;
    }
    if (fp == Complex(0, 0)) break;
    Complex next = z - f / fp;
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
    if (std::abs(next - z) < 1e-16) {
      z = next;
      ok = true;
      break;
    }
    z = next;
  }
  double res = 0;
  try {
    res = std::abs(eval(map, z) - z);
  } catch (const Error&) {
    return {start, 0, false};
  }
  return {z, res, ok || res < 1e-10};
}

// Sharpen a boundary fixed-point estimate by a root solve of phi(z) - z.
// That zero is simple only in the hyperbolic regime; for parabolic maps it
// has multiplicity >= 2 and the function values are below rounding noise
// near the point, so the orbit-direction extrapolation is kept instead.
RootResult polish_boundary_point(const MapExpr& map, Complex start) {
  RootResult first = refine_fixed_point(map, start, 60);
  if (!first.converged) return {start, 0, false};
  Complex z = first.z;
  ValueDeriv<double> vd;
  try {
    vd = eval_with_deriv<double>(map, z);
  } catch (const Error&) {
    return {start, 0, false};
  }
  if (std::abs(vd.deriv - 1.0) < 1e-3) return {start, 0, false};  // multiple zero
  if (std::abs(std::abs(z) - 1.0) > 1e-6 || std::abs(z - start) > 0.05)
    return {start, 0, false};
  return {z / std::abs(z), std::abs(vd.value - z), true};
}

enum class SeedOutcome { Interior, Boundary, Rotation };

struct SeedEstimate {
  SeedOutcome outcome;
  Complex location;
  double residual;
  bool long_orbit = false;  // enough tail for a sharp direction extrapolation
};

// Extrapolate the angular coordinate of the orbit tail.  Tangential
// approach decays like 1/n (half-plane translations) or n^{-3/2}
// (slit-plane translations), so the model carries both exponents.
Complex boundary_direction(const Orbit& orbit) {
  const auto& pts = orbit.points;
  std::size_t n = pts.size() - 1;
  if (n < 32) return pts.back() / std::abs(pts.back());
  double t_last = std::arg(pts[n]);
  auto angle_at = [&](std::size_t k) {
    double t = std::arg(pts[k]);
    while (t - t_last > M_PI) t -= 2 * M_PI;
    while (t - t_last < -M_PI) t += 2 * M_PI;
    return t;
  };
  std::vector<double> nodes;
  std::vector<Complex> vals;
  for (std::size_t k : {n / 8, n / 4, n / 2, n}) {
    nodes.push_back(static_cast<double>(k));
    vals.emplace_back(angle_at(k), 0.0);
  }
  double theta;
  try {
    theta = algebraic_tail(nodes, vals, {1.0, 1.5, 2.0}).real();
  } catch (const Error&) {
    theta = t_last;
  }
  if (!std::isfinite(theta) || std::abs(theta - t_last) > 0.5) theta = t_last;
  return std::polar(1.0, theta);
}

SeedEstimate estimate_from_seed(const MapExpr& map, Complex seed, int n_max) {
  Orbit orbit = iterate_map(map, seed, n_max);
  const auto& pts = orbit.points;
  Complex z_end = pts.back();

  if (orbit.stop == StopReason::Stagnated && std::abs(z_end) < 0.99) {
    RootResult r = refine_fixed_point(map, z_end, 60);
    return {SeedOutcome::Interior, r.z, r.residual};
  }
  bool long_orbit = pts.size() >= 512;
  if (orbit.stop == StopReason::LeftDisc || std::abs(z_end) > 0.999) {
    Complex tau = boundary_direction(orbit);
    return {SeedOutcome::Boundary, tau, 0.0, long_orbit};
  }

  std::size_t n = pts.size() - 1;
  if (n >= 32) {
    // Boundary gap trend: parabolic approach can be as slow as n^{-1/2},
    // so compare the tail against an early window.
    double head_gap = 1.0;
    for (std::size_t k = std::max<std::size_t>(1, n / 16); k <= n / 8; ++k)
      head_gap = std::min(head_gap, 1.0 - std::abs(pts[k]));
    double tail_gap = 1.0;
    for (std::size_t k = n - n / 8; k <= n; ++k)
      tail_gap = std::min(tail_gap, 1.0 - std::abs(pts[k]));
    if (tail_gap < 0.6 * head_gap && tail_gap < 0.25) {
      Complex tau = boundary_direction(orbit);
      return {SeedOutcome::Boundary, tau, 0.0, long_orbit};
    }
  }

  // Slowly converging interior orbit?  A root solve from the endpoint
  // settles it when the tail is still drifting toward an interior point.
  RootResult r = refine_fixed_point(map, z_end, 80);
  if (r.converged && std::abs(r.z) < 0.999 && n >= 8) {
    double d_end = std::abs(pts[n] - r.z);
    double d_mid = std::abs(pts[n - n / 4] - r.z);
    if (d_end < 0.9 * d_mid || d_end < 1e-9)
      return {SeedOutcome::Interior, r.z, r.residual};
  }
  return {SeedOutcome::Rotation, Complex(0, 0), 0.0};
}

double tail_drift(std::span<const double> v) {
  std::size_t q = std::max<std::size_t>(2, v.size() / 4);
  auto tail = v.subspan(v.size() - q);
  double lo = *std::min_element(tail.begin(), tail.end());
  double hi = *std::max_element(tail.begin(), tail.end());
  double mid = 0.5 * (lo + hi);
  return mid > 0 ? (hi - lo) / mid : 0.0;
}

}  // namespace

const char* to_string(MapTypeLabel t) {
  switch (t) {
    case MapTypeLabel::Identity: return "identity";
    case MapTypeLabel::Elliptic: return "elliptic";
    case MapTypeLabel::EllipticAutomorphism: return "elliptic-automorphism";
    case MapTypeLabel::Hyperbolic: return "hyperbolic";
    case MapTypeLabel::Parabolic: return "parabolic";
  }
  return "?";
}

const char* to_string(StepDecision d) {
  switch (d) {
    case StepDecision::Zero: return "zero";
    case StepDecision::Positive: return "positive";
    case StepDecision::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<Complex> default_seeds() {
  return {Complex(0.0, 0.0), Complex(0.3, 0.2), Complex(-0.25, 0.35), Complex(0.4, -0.3),
          Complex(-0.45, -0.1)};
}

bool is_identity_map(const MapExpr& map) {
  for (const Complex& z : sample_points(16, 20240501u)) {
    try {
      if (std::abs(eval(map, z) - z) > kIdentityTol) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

bool is_automorphism(const MapExpr& map) {
  auto pts = sample_points(128, 77003917u);
  for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
    Complex z = pts[i], w = pts[i + 1];
    try {
      double before = dist_disc(z, w).pseudo;
      double after = dist_disc(eval(map, z), eval(map, w)).pseudo;
      if (std::abs(before - after) > kAutomorphismTol) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

DWReport estimate_dw(const MapExpr& map, std::span<const Complex> seeds, int n_max,
                     const DynamicsConfig& cfg) {
  if (seeds.empty()) throw Error(ErrorKind::Precondition, "at least one seed required");
  if (is_identity_map(map)) {
    return {Complex(0, 0), DWKind::Interior, 1.0, MapTypeLabel::Identity, 0.0, false};
  }

  std::vector<SeedEstimate> estimates;
  estimates.reserve(seeds.size());
  for (const Complex& s : seeds) estimates.push_back(estimate_from_seed(map, s, n_max));

  bool any_boundary = false, any_interior = false, any_rotation = false;
  for (const auto& e : estimates) {
    any_boundary |= e.outcome == SeedOutcome::Boundary;
    any_interior |= e.outcome == SeedOutcome::Interior;
    any_rotation |= e.outcome == SeedOutcome::Rotation;
  }
  if (any_boundary && (any_interior || any_rotation))
    throw Error(ErrorKind::Ambiguity, "seeds disagree on interior vs. boundary convergence");

  DWReport report;
  if (!any_boundary) {
    // Interior fixed point; "rotation" outcomes (bounded non-convergent
    // orbits) are the elliptic-automorphism case.
    bool automorphism = is_automorphism(map);
    if (any_rotation && !automorphism)
      throw Error(ErrorKind::Ambiguity, "non-convergent orbit on a non-automorphism");
    Complex p{};
    bool have_p = false;
    for (const auto& e : estimates) {
      if (e.outcome != SeedOutcome::Interior) continue;
      if (have_p && std::abs(e.location - p) > cfg.seed_agreement)
        throw Error(ErrorKind::Ambiguity, "interior fixed-point estimates disagree");
      if (!have_p) {
        p = e.location;
        have_p = true;
      }
    }
    if (!have_p) {
      for (Complex start : {Complex(0, 0), seeds.front(), Complex(0.1, 0.1)}) {
        RootResult r = refine_fixed_point(map, start, 80);
        if (r.converged && std::abs(r.z) < 1.0) {
          p = r.z;
          have_p = true;
          break;
        }
      }
    }
    if (!have_p) throw Error(ErrorKind::Ambiguity, "could not locate the interior fixed point");
    report.kind = DWKind::Interior;
    report.location = p;
    report.residual = std::abs(eval(map, p) - p);
    report.multiplier = std::abs(deriv(map, p));
    report.type_label =
        automorphism ? MapTypeLabel::EllipticAutomorphism : MapTypeLabel::Elliptic;
    return report;
  }

  // Boundary: polish each direction by a root solve (the corpus maps
  // continue analytically across the circle near the Denjoy-Wolff point),
  // then demand agreement.
  std::vector<Complex> taus;
  bool all_sharp = true;
  for (const auto& e : estimates) {
    RootResult polished = polish_boundary_point(map, e.location);
    if (polished.converged) {
      taus.push_back(polished.z);
    } else {
      taus.push_back(e.location);
      all_sharp = all_sharp && e.long_orbit;
    }
  }
  double agreement = all_sharp ? cfg.seed_agreement : 1e-3;
  for (const Complex& t : taus) {
    if (std::abs(t - taus.front()) > agreement)
      throw Error(ErrorKind::Ambiguity, "boundary direction estimates disagree");
  }
  Complex tau(0, 0);
  for (const Complex& t : taus) tau += t;
  tau /= std::abs(tau);

  report.kind = DWKind::Boundary;
  report.location = tau;
  double mult = estimate_multiplier(map, tau, cfg);
  report.multiplier = mult;
  if (mult > 1.0 + 1e-6)
    throw Error(ErrorKind::Ambiguity, "boundary multiplier exceeds 1 beyond tolerance");
  double gap = std::abs(mult - 1.0);
  if (gap <= cfg.mult_tol) {
    report.type_label = MapTypeLabel::Parabolic;
    report.borderline = gap > 1e-7;
  } else {
    report.type_label = MapTypeLabel::Hyperbolic;
  }
  return report;
}

double estimate_multiplier(const MapExpr& map, Complex tau, const DynamicsConfig& cfg) {
  if (std::abs(std::abs(tau) - 1.0) > 1e-6)
    throw Error(ErrorKind::Precondition, "tau must lie on the unit circle");
  LComplex tau_l(tau.real(), tau.imag());
  tau_l /= std::abs(tau_l);
  std::vector<Complex> values;
  for (int k = cfg.radial_k_min; k <= cfg.radial_k_max; ++k) {
    long double r = 1.0L - std::pow(0.5L, k);
    LComplex z = r * tau_l;
    ValueDeriv<long double> vd = eval_with_deriv<long double>(map, z);
    // Directional derivative of r -> conj(tau) phi(r tau); the unimodular
    // factors cancel, leaving phi'(r tau) itself.
    values.emplace_back(static_cast<double>(vd.deriv.real()),
                        static_cast<double>(vd.deriv.imag()));
  }
  Extrapolated ex = richardson(values, 0.5, 2, cfg.extrapolation_tol);
  if (!ex.converged)
    throw Error(ErrorKind::Inconclusive, "radial multiplier extrapolation did not settle");
  return ex.limit.real();
}

DWReport classify(const MapExpr& map, const DynamicsConfig& cfg) {
  auto seeds = default_seeds();
  return estimate_dw(map, seeds, cfg.n_max, cfg);
}

StepReport step_sequences(const MapExpr& map, Complex z0, int n_max) {
  Orbit orbit = iterate_map(map, z0, n_max);
  StepReport rep;
  rep.orbit_stop = orbit.stop;
  rep.zero_derivative_flag = orbit.zero_derivative;

  const auto& pts = orbit.points;
  std::size_t steps = orbit.steps();
  rep.distortion.reserve(steps + 1);
  rep.q_hyperbolic.reserve(steps);

  // The metric quantities carry rounding noise of order n*eps/(1-|z_n|^2);
  // the sequences are extended only while that noise is either below the
  // monotonicity slack or dominated by the measured decrement, i.e. while
  // the sequence values remain certifiable.
  constexpr double kEps = 2.2204460492503131e-16;
  constexpr double kNoiseBudget = 5e-13;
  auto decrement = [](const std::vector<double>& v) {
    if (v.size() < 2) return std::numeric_limits<double>::infinity();
    return v[v.size() - 2] - v.back();
  };

  long double log_base = std::log(one_minus_norm(pts[0]));
  long double log_acc = 0.0L;
  bool derivative_died = false;
  rep.distortion.push_back(1.0);
  for (std::size_t n = 1; n <= steps; ++n) {
    long double gap = one_minus_norm(pts[n]);
    double noise = 4.0 * kEps * static_cast<double>(n + 1) / static_cast<double>(gap);
    if (noise > kNoiseBudget && rep.distortion.size() >= 8) {
      double dq = decrement(rep.q_hyperbolic);
      double dd = derivative_died ? std::numeric_limits<double>::infinity()
                                  : decrement(rep.distortion);
      if (!(noise <= 0.1 * dq && noise <= 0.1 * dd)) break;
    }
    log_acc += orbit.step_log_mag[n - 1];
    if (std::isinf(static_cast<double>(log_acc))) {
      derivative_died = true;
      rep.distortion.push_back(0.0);
    } else {
      long double log_d = log_acc + log_base - std::log(gap);
      rep.distortion.push_back(static_cast<double>(std::exp(log_d)));
    }
    rep.q_hyperbolic.push_back(dist_disc(pts[n - 1], pts[n]).hyperbolic);
  }

  rep.distortion_tail = rep.distortion.back();
  rep.q_tail = rep.q_hyperbolic.empty() ? 0.0 : rep.q_hyperbolic.back();
  return rep;
}

StepDecision step_decide(const StepReport& report, const DynamicsConfig& cfg) {
  const auto& d = report.distortion;
  if (d.size() < 8) return StepDecision::Inconclusive;
  double last = d.back();
  double first = d.front();
  if (report.zero_derivative_flag || last == 0.0) return StepDecision::Zero;
  if (last < cfg.zero_final && first / last >= cfg.zero_decay) return StepDecision::Zero;
  std::size_t q = d.size() / 4;
  double floor_val = *std::min_element(d.end() - q, d.end());
  if (floor_val >= cfg.positive_floor && tail_drift(d) < cfg.positive_drift)
    return StepDecision::Positive;
  return StepDecision::Inconclusive;
}

StepDecision q_decide(const StepReport& report) {
  if (report.q_hyperbolic.empty()) return StepDecision::Inconclusive;
  return report.q_tail < 1e-3 ? StepDecision::Zero : StepDecision::Positive;
}

StepAnalysis analyze_step(const MapExpr& map, std::span<const Complex> seeds, int n_max,
                          const DynamicsConfig& cfg) {
  StepAnalysis out;
  out.automorphism = is_automorphism(map);
  for (const Complex& s : seeds) {
    StepReport rep = step_sequences(map, s, n_max);
    rep.decision = out.automorphism ? StepDecision::Positive : step_decide(rep, cfg);
    out.per_seed.push_back(std::move(rep));
  }
  out.decision = out.per_seed.front().decision;
  for (const auto& rep : out.per_seed)
    if (rep.decision != out.decision) out.seeds_agree = false;
  if (!out.seeds_agree) out.decision = StepDecision::Inconclusive;
  return out;
}

}  // namespace koenigs
