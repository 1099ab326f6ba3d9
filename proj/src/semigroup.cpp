#include "koenigs/semigroup.hpp"

#include <cmath>

namespace koenigs {

namespace {

constexpr double kDirectionTol = 1e-12;

MapExpr slit_map() {
  MapExpr z = expr_var();
  MapExpr one = expr_const(1.0);
  return expr_pow(expr_div(expr_add(one, z), expr_sub(one, z)), 2);
}

MapExpr slit_map_inverse() {
  MapExpr s = expr_sqrt(expr_var());
  MapExpr one = expr_const(1.0);
  return expr_div(expr_sub(s, one), expr_add(s, one));
}

}  // namespace

const char* to_string(FamilyBase b) {
  switch (b) {
    case FamilyBase::Slit: return "slit";
    case FamilyBase::CayleyRight: return "cayley_rh";
    case FamilyBase::CayleyUpper: return "cayley_h";
  }
  return "?";
}

SemigroupFamily::SemigroupFamily(FamilyBase base, double theta, Complex tau)
    : base_(base), theta_(theta), tau_(tau), direction_(std::polar(1.0, theta)) {
  switch (base_) {
    case FamilyBase::Slit:
      h_ = slit_map();
      h_inv_ = slit_map_inverse();
      domain_name_ = "plane slit along (-inf, 0]";
      break;
    case FamilyBase::CayleyRight:
      h_ = expr_cayley(tau_, HalfPlane::Right);
      h_inv_ = expr_cayley_inv(tau_, HalfPlane::Right);
      domain_name_ = "right half-plane";
      break;
    case FamilyBase::CayleyUpper:
      h_ = expr_cayley(tau_, HalfPlane::Upper);
      h_inv_ = expr_cayley_inv(tau_, HalfPlane::Upper);
      domain_name_ = "upper half-plane";
      break;
  }
}

MapExpr SemigroupFamily::map_at(double t) const {
  if (t < 0) throw Error(ErrorKind::Domain, "the family exists for t >= 0 only");
  return compose(h_inv_, expr_add(h_, expr_const(t * direction_)));
}

Complex SemigroupFamily::generator(Complex z) const {
  Complex hp = deriv(h_, z);
  if (hp == Complex(0, 0)) throw Error(ErrorKind::Domain, "h'(z) = 0");
  return direction_ / hp;
}

SemigroupFamily build_family(FamilyBase base, double theta, Complex tau) {
  Complex dir = std::polar(1.0, theta);
  switch (base) {
    case FamilyBase::Slit:
      // Omega + c lies in the slit plane iff c is real and non-negative.
      if (std::abs(dir.imag()) > kDirectionTol || dir.real() < 0)
        throw Error(ErrorKind::Domain,
                    "slit plane is not invariant under translation by e^{i theta}: "
                    "Omega + t e^{i theta} would meet the slit (-inf, 0]");
      break;
    case FamilyBase::CayleyRight:
      if (dir.real() < -kDirectionTol)
        throw Error(ErrorKind::Domain,
                    "right half-plane requires Re e^{i theta} >= 0 "
                    "(boundary-parallel or inward translation)");
      break;
    case FamilyBase::CayleyUpper:
      if (dir.imag() < -kDirectionTol)
        throw Error(ErrorKind::Domain,
                    "upper half-plane requires Im e^{i theta} >= 0 "
                    "(boundary-parallel or inward translation)");
      break;
  }
  return SemigroupFamily(base, theta, tau);
}

SemigroupFamily build_family(const std::string& base_name, double theta, Complex tau) {
  if (base_name == "slit") return build_family(FamilyBase::Slit, theta, tau);
  if (base_name == "cayley_rh") return build_family(FamilyBase::CayleyRight, theta, tau);
  if (base_name == "cayley_h") return build_family(FamilyBase::CayleyUpper, theta, tau);
  throw Error(ErrorKind::Domain, "unknown family base '" + base_name +
                                     "' (registered: slit, cayley_rh, cayley_h)");
}

GeneratorEstimate generator_estimate(const SemigroupFamily& family, Complex z, double delta) {
  if (delta < 1e-6 || delta > 1e-2)
    throw Error(ErrorKind::Precondition, "delta must lie in [1e-6, 1e-2]");
  auto one_sided = [&](double d) {
    Complex f0 = z;  // phi_0 = id
    Complex f1 = eval(family.map_at(d), z);
    Complex f2 = eval(family.map_at(2 * d), z);
    return (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * d);
  };
  GeneratorEstimate est;
  est.z = z;
  est.delta = delta;
  est.g = one_sided(delta);
  est.err = std::abs(est.g - one_sided(delta / 2));
  est.flagged = est.err > 1e-4;
  return est;
}

SemigroupStepReport zero_step_semigroup_check(const SemigroupFamily& family, Complex z,
                                              double t_max, const DynamicsConfig& cfg) {
  if (t_max < 2) throw Error(ErrorKind::Precondition, "t_max must be at least 2");
  DWReport dw = classify(family.map_at(1.0), cfg);
  if (dw.kind == DWKind::Interior)
    throw Error(ErrorKind::Precondition, "family is elliptic; the criterion needs non-elliptic");

  SemigroupStepReport rep;
  int j_max = static_cast<int>(std::ceil(std::log2(t_max)));
  for (int j = 0; j <= j_max; ++j) {
    double t = std::pow(2.0, j);
    Complex w = eval(family.map_at(t), z);
    double denom = 1.0 - std::norm(w);
    if (denom <= 0) throw Error(ErrorKind::Instability, "family iterate reached the boundary");
    rep.criterion.push_back(std::abs(family.generator(w)) / denom);
  }
  const auto& f = rep.criterion;
  double first = f.front(), last = f.back();
  if (last < cfg.zero_final && first / last >= cfg.zero_decay) {
    rep.decision = StepDecision::Zero;
  } else {
    double lo = *std::min_element(f.end() - std::max<std::size_t>(2, f.size() / 4), f.end());
    double hi = *std::max_element(f.end() - std::max<std::size_t>(2, f.size() / 4), f.end());
    double drift = (hi - lo) / std::max(1e-300, 0.5 * (hi + lo));
    if (lo >= cfg.positive_floor && drift < cfg.positive_drift)
      rep.decision = StepDecision::Positive;
  }
  return rep;
}

EmbedResult embed_search(const MapExpr& phi, const SemigroupFamily& family, double t_lo,
                         double t_hi, const GridSpec& grid) {
  if (!(t_lo < t_hi) || t_lo < 0)
    throw Error(ErrorKind::Precondition, "need 0 <= t_lo < t_hi");
  auto pts = disc_grid(grid);
  auto objective = [&](double t) {
    MapExpr ft = family.map_at(t);
    double mx = 0;
    for (const Complex& z : pts) mx = std::max(mx, std::abs(eval(phi, z) - eval(ft, z)));
    return mx;
  };
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = t_lo, b = t_hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = objective(c), fd = objective(d);
  while (b - a > 1e-10) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = objective(d);
    }
  }
  double t0 = 0.5 * (a + b);
  return {t0, objective(t0)};
}

}  // namespace koenigs
