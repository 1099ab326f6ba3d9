#pragma once

#include <functional>
#include <span>
#include <vector>

#include "koenigs/dynamics.hpp"
#include "koenigs/grid.hpp"

namespace koenigs {

struct AbelResidualStats {
  double max = 0;
  double mean = 0;
};

/// Normalized-iterate approximation of the Abel linearizer of a parabolic
/// zero-step map:  b_n(z) = (f^n(z) - w_n) / (w_{n+1} - w_n) with
/// w_n = f^n(0).  b_n(0) = 0 by construction; b_n converges to the
/// linearizer normalized to 0 at the origin.
class KoenigsApprox {
 public:
  KoenigsApprox(MapExpr map, int n);  // no precondition checks; see koenigs_bp

  Complex operator()(Complex z) const;   // b_n(z)
  Complex derivative(Complex z) const;   // b_n'(z)

  const MapExpr& map() const { return map_; }
  int depth() const { return n_; }
  Complex step_delta() const { return delta_; }  // w_{n+1} - w_n
  const AbelResidualStats& residual_stats() const { return stats_; }

  void compute_residual_stats(const GridSpec& grid);

 private:
  MapExpr map_;
  int n_;
  Complex w_n_{}, delta_{};
  AbelResidualStats stats_{};
};

struct LinearizeConfig {
  int bp_depth = 4096;           // default iteration depth for b_n
  GridSpec abel_grid{64, 0.9, false};      // Abel-residual reporting grid
  GridSpec relation_grid{64, 0.5, true};   // commutation / relation checks
  GridSpec slc_grid{32, 0.45, true};       // Koenigs-difference estimator grid
  int slc_depth = 65536;         // iteration depth for the SLC estimators
  int hprime_orbit = 2048;       // deepest orbit index used by the h' estimator
  int radial_k_min = 4;
  int radial_k_max = 14;
  double angular_diverge = 1e-3;  // extrapolant gap marking the method failed
  double disagree_tol = 1e-3;
  double dw_match_tol = 1e-6;
  DynamicsConfig dynamics{};
};

/// Checked constructor: requires a parabolic map of zero hyperbolic step
/// and a non-stagnant base orbit; fills the Abel residual statistics.
KoenigsApprox koenigs_bp(const MapExpr& map, int n, const LinearizeConfig& cfg = {});

/// |h(f(z)) - h(z) - c| for an arbitrary evaluator h.
double abel_residual(const std::function<Complex(Complex)>& h, const MapExpr& map, Complex z,
                     Complex c);

enum class SlcMethod { Angular, Koenigs, HPrime, All };

struct MethodEstimate {
  Complex value{};
  double err = 0;
  bool converged = false;
  bool attempted = false;
};

/// Simultaneous-linearization coefficient c with h_phi(psi(z)) = h_phi(z) + c,
/// estimated by independent routes:
///   angular  - radial limit of (psi(z)-z)/(phi(z)-z),
///   koenigs  - grid average of b_n(psi(z)) - b_n(z), depth-extrapolated,
///   hprime   - b_n'(w_m)(psi(w_m)-w_m) along the base orbit, extrapolated.
struct SLCResult {
  Complex c{};
  MethodEstimate angular, koenigs, hprime;
  double cross_disagreement = 0;
  double commute_residual = 0;
  bool identity_flag = false;  // psi is the identity; c = 0
};

SLCResult slc_estimate(const MapExpr& phi, const MapExpr& psi, SlcMethod method = SlcMethod::All,
                       const LinearizeConfig& cfg = {});

/// max over the grid of |phi(psi(z)) - psi(phi(z))|.
double commute_residual(const MapExpr& phi, const MapExpr& psi, std::span<const Complex> grid);

/// max over the grid of |psi^n(z) - phi^m(z)|.
double check_power_relation(const MapExpr& phi, const MapExpr& psi, int m, int n,
                            std::span<const Complex> grid);

/// max over the grid of |b^psi_n(z) - c^{-1} b^phi_n(z)| at matched depths.
double check_koenigs_ratio(const MapExpr& phi, const MapExpr& psi, Complex c,
                           std::span<const Complex> grid, int n, const LinearizeConfig& cfg = {});

/// Deviation from 1 of (b_n(psi(z)) - b_n(z)) / (b_n'(z) (psi(z) - z)) along
/// the radial sequence toward the common Denjoy-Wolff point.
struct RatioLimitResult {
  double deviation = 0;
  bool skipped_identity = false;
};

RatioLimitResult ratio_limit_check(const MapExpr& phi, const MapExpr& psi, int n,
                                   const LinearizeConfig& cfg = {});

}  // namespace koenigs
