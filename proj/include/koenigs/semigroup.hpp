#pragma once

#include <string>

#include "koenigs/dynamics.hpp"
#include "koenigs/grid.hpp"

namespace koenigs {

/// Registered closed-form conformal maps with symbolically known image
/// domains; translation families are only built over these so that the
/// inclusion Omega + t e^{i theta} in Omega is decidable.
enum class FamilyBase {
  Slit,          // ((1+z)/(1-z))^2: disc onto the plane slit along (-inf, 0]
  CayleyRight,   // (tau+z)/(tau-z): disc onto the right half-plane
  CayleyUpper    // i (tau+z)/(tau-z): disc onto the upper half-plane
};

const char* to_string(FamilyBase b);

/// t -> h^{-1} o (h + t e^{i theta}), a continuous one-parameter semigroup
/// of self-maps of the disc for every admissible direction.
class SemigroupFamily {
 public:
  SemigroupFamily(FamilyBase base, double theta, Complex tau);

  MapExpr map_at(double t) const;               // phi_t as an expression tree
  Complex generator(Complex z) const;           // closed form e^{i theta} / h'(z)
  const MapExpr& h() const { return h_; }
  const MapExpr& h_inverse() const { return h_inv_; }
  FamilyBase base() const { return base_; }
  double theta() const { return theta_; }
  const std::string& domain_name() const { return domain_name_; }

 private:
  FamilyBase base_;
  double theta_;
  Complex tau_;
  Complex direction_;
  MapExpr h_, h_inv_;
  std::string domain_name_;
};

/// Checked construction.  Admissible directions: slit plane only theta = 0;
/// half-planes their boundary-parallel and inward directions.  Throws
/// Error(Domain) naming the violated inclusion otherwise.
SemigroupFamily build_family(FamilyBase base, double theta, Complex tau = Complex(1, 0));

SemigroupFamily build_family(const std::string& base_name, double theta,
                             Complex tau = Complex(1, 0));

struct GeneratorEstimate {
  Complex z{};
  Complex g{};          // one-sided second-order difference quotient
  double delta = 0;     // step used
  double err = 0;       // |difference at delta - difference at delta/2|
  bool flagged = false; // err above 1e-4
};

/// d/dt phi_t(z) at t = 0 by the one-sided second-order difference
/// (-3 phi_0 + 4 phi_delta - phi_{2 delta}) / (2 delta); the family only
/// exists for t >= 0.
GeneratorEstimate generator_estimate(const SemigroupFamily& family, Complex z,
                                     double delta = 1e-5);

/// Zero-step criterion for the semigroup: F(t) = |G(phi_t(z))| / (1-|phi_t(z)|^2)
/// sampled at t = 2^j must be non-increasing; zero if it collapses, positive
/// if it stabilizes above the floor.
struct SemigroupStepReport {
  std::vector<double> criterion;  // F(2^j), j = 0 ...
  StepDecision decision = StepDecision::Inconclusive;
};

SemigroupStepReport zero_step_semigroup_check(const SemigroupFamily& family, Complex z,
                                              double t_max, const DynamicsConfig& cfg = {});

struct EmbedResult {
  double t0 = 0;
  double residual = 0;
};

/// Golden-section minimization of the max-grid distance |phi(z) - phi_t(z)|
/// over [t_lo, t_hi].  A large residual means "not embeddable here".
EmbedResult embed_search(const MapExpr& phi, const SemigroupFamily& family, double t_lo,
                         double t_hi, const GridSpec& grid = {64, 0.5, true});

}  // namespace koenigs
