#pragma once

#include <optional>
#include <utility>

#include "udwq/field/correlators.hpp"
#include "udwq/weyl/bilinear_table.hpp"

namespace udwq::protocol {

// Coupling-stripped building blocks of the encoding conditions:
//   W(f1,f1) = c^2 l2^2 w1,  W(f2,f2) = l2^2 w2,
//   E(f1,f2) = c l2^2 e,     H(f1,f2) = c l2^2 h.
struct ProtocolConditions {
  double e = 0.0;   // E(f1,f2)/(lambda1 lambda2)
  double w1 = 0.0;  // W(f1,f1)/lambda1^2
  double w2 = 0.0;  // W(f2,f2)/lambda2^2
  double h = 0.0;   // H(f1,f2)/(lambda1 lambda2)
  int branch = 0;   // n >= 0 in pi/4 + 2 pi n

  void validate() const {
    if (!(w1 > 0.0) || !(w2 > 0.0))
      throw PreconditionError("ProtocolConditions: w1, w2 must be > 0");
    if (!std::isfinite(e)) throw PreconditionError("ProtocolConditions: e not finite");
    if (branch < 0) throw PreconditionError("ProtocolConditions: branch must be >= 0");
  }
};

// Strips the couplings out of a unit-coupling Alice pair (f1, f2).
ProtocolConditions conditions_from_amplitudes(const field::ModeAmplitude& f1_unit,
                                              const field::ModeAmplitude& f2_unit,
                                              int branch = 0);

// Coupling ratio c = lambda1/lambda2 with c lambda2^2 e = pi/4 + 2 pi n > 0
// (the branch flips to pi/4 - 2 pi (n+1) when e < 0 so that c stays positive).
// e = 0 has no solution: equal-time same-profile Delta pairs commute.
double solve_fine_tuning(const ProtocolConditions& cond, double lambda2);

// E(f1,f2)^2 / W(f2,f2); +infinity sentinel when W(f2,f2) = 0.
double strong_coupling_margin(const weyl::BilinearTable& table);

struct BobSolveResult {
  field::SmearingSpec g1;
  field::SmearingSpec g2;
};

// Decoding condition Ef = Eg, solved as g_k = f_k per grid node with a Delta plus a
// DeltaPrime component at t_bob. Each node fixes two real unknowns by the
// 2x2 real system (G_delta = Re r, w G_prime = Im r with r the rotated,
// normalization-stripped target amplitude), singular only at w = 0, which
// grid construction excludes.
BobSolveResult bob_smearing_solve(const field::SpacetimeModel& model,
                                  const field::ModeAmplitude& f1,
                                  const field::ModeAmplitude& f2, double t_bob);

enum class CausalClass { Spacelike, LightconeOnly, TimelikeInterior, Overlapping };

struct CausalClassification {
  CausalClass cls;
  double margin;  // > 0 spacelike gap, < 0 interior depth, in-band distance else
};

struct SupportBall {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double radius = 0.0;
  double time = 0.0;
};

// Exact Minkowski classification of ball-shaped interaction supports.
CausalClassification causal_classify(const field::SpacetimeModel& model,
                                     const SupportBall& alice, const SupportBall& bob);

// Radial real-space samples of a solved decoding profile (inverse transform
// diagnostic): g(r) = (1/2 pi^2) int dk k^2 G(k) sinc(k r).
std::vector<std::complex<double>> radial_profile_samples(
    const field::TabulatedFourierProfile& profile, const std::vector<double>& radii);

// Truncates the solved smearing's spatial support to r <= fraction * r_full
// (a faulty, partial-coverage decoder) and transforms back to the grid.
field::SmearingSpec truncate_coverage(const field::SmearingSpec& solved,
                                      double fraction, double r_full,
                                      const field::KGrid& grid);

}  // namespace udwq::protocol
