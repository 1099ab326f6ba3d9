#pragma once

#include <span>
#include <vector>

#include "koenigs/orbit.hpp"

namespace koenigs {

enum class MapTypeLabel { Identity, Elliptic, EllipticAutomorphism, Hyperbolic, Parabolic };
enum class DWKind { Interior, Boundary };
enum class StepDecision { Zero, Positive, Inconclusive };

const char* to_string(MapTypeLabel t);
const char* to_string(StepDecision d);

struct DWReport {
  Complex location{};
  DWKind kind = DWKind::Interior;
  double multiplier = 0;  // phi'(tau): angular derivative on the boundary, |phi'| inside
  MapTypeLabel type_label = MapTypeLabel::Elliptic;
  double residual = 0;    // |phi(tau)-tau| inside, extrapolation error on the boundary
  bool borderline = false;  // |multiplier - 1| within mult_tol but not at rounding level
};

struct StepReport {
  std::vector<double> distortion;    // D_h f^n (z0), n = 0..N
  std::vector<double> q_hyperbolic;  // rho_D(z_n, z_{n+1}), n = 0..N-1
  StepDecision decision = StepDecision::Inconclusive;
  double distortion_tail = 0;
  double q_tail = 0;
  bool zero_derivative_flag = false;  // (f^n)'(z0) vanished; criterion holds trivially
  StopReason orbit_stop = StopReason::ReachedLimit;
};

struct DynamicsConfig {
  int n_max = 4096;
  double mult_tol = 1e-4;        // |multiplier-1| below this is parabolic
  double zero_final = 0.02;      // zero step: tail below this ...
  double zero_decay = 10.0;      // ... after at least this total decay
  double positive_floor = 0.1;   // positive step: tail above this ...
  double positive_drift = 0.01;  // ... with relative drift below this over the last quarter
  double seed_agreement = 1e-6;
  int radial_k_min = 4;          // radial ladder r_k = 1 - 2^{-k}
  int radial_k_max = 14;
  double extrapolation_tol = 1e-4;
};

std::vector<Complex> default_seeds();

bool is_identity_map(const MapExpr& map);

/// Schwarz-Pick equality on 64 sampled pairs within 1e-10 characterizes
/// disc automorphisms.
bool is_automorphism(const MapExpr& map);

/// Denjoy-Wolff point from orbit runs over the given seeds.  Boundary
/// locations come from the extrapolated orbit direction, polished by a
/// root solve of phi(z) - z when that converges to the same circle point.
DWReport estimate_dw(const MapExpr& map, std::span<const Complex> seeds, int n_max,
                     const DynamicsConfig& cfg = {});

/// Angular derivative at the boundary point tau: conj(tau)*phi'(r_k tau)
/// on r_k = 1 - 2^{-k}, Richardson-extrapolated (real parts).
/// Throws Error(Inconclusive) when the ladder does not settle.
double estimate_multiplier(const MapExpr& map, Complex tau, const DynamicsConfig& cfg = {});

DWReport classify(const MapExpr& map, const DynamicsConfig& cfg = {});

/// Hyperbolic distortion and hyperbolic step sequences along one orbit.
/// Requires a non-elliptic map (not checked here; classify first).
StepReport step_sequences(const MapExpr& map, Complex z0, int n_max);

/// Threshold decision on the distortion tail.  Automorphisms should be
/// decided positive directly by the caller (distortion is identically 1).
StepDecision step_decide(const StepReport& report, const DynamicsConfig& cfg = {});

/// The q-sequence alternative: zero iff the q tail is below 1e-3.
StepDecision q_decide(const StepReport& report);

/// Full per-map step analysis: automorphism shortcut, multi-seed agreement.
struct StepAnalysis {
  StepDecision decision = StepDecision::Inconclusive;
  bool automorphism = false;
  std::vector<StepReport> per_seed;
  bool seeds_agree = true;
};

StepAnalysis analyze_step(const MapExpr& map, std::span<const Complex> seeds, int n_max,
                          const DynamicsConfig& cfg = {});

}  // namespace koenigs
