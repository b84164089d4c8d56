#include "udwq/protocol/protocol.hpp"

#include <cmath>
#include <numbers>

namespace udwq::protocol {

namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

}  // namespace

ProtocolConditions conditions_from_amplitudes(const field::ModeAmplitude& f1_unit,
                                              const field::ModeAmplitude& f2_unit,
                                              int branch) {
  ProtocolConditions c;
  c.w1 = field::wightman(f1_unit, f1_unit).real();
  c.w2 = field::wightman(f2_unit, f2_unit).real();
  c.e = field::causal_propagator(f1_unit, f2_unit);
  c.h = field::hadamard(f1_unit, f2_unit);
  c.branch = branch;
  c.validate();
  return c;
}

double solve_fine_tuning(const ProtocolConditions& cond, double lambda2) {
  cond.validate();
  if (!(lambda2 > 0.0))
    throw PreconditionError("solve_fine_tuning: lambda2 must be > 0");
  if (cond.e == 0.0)
    throw PreconditionError(
        "solve_fine_tuning: e = 0 has no solution (the smeared operators "
        "commute); use a DeltaPrime component or a time offset");
  const double quarter = 0.25 * std::numbers::pi;
  const double target = cond.e > 0.0
                            ? quarter + 2.0 * std::numbers::pi * cond.branch
                            : quarter - 2.0 * std::numbers::pi * (cond.branch + 1);
  return target / (lambda2 * lambda2 * cond.e);
}

double strong_coupling_margin(const weyl::BilinearTable& table) {
  const double e12 = table.E(0, 1);
  const double w22 = table.w_diag(1);
  if (w22 == 0.0) return std::numeric_limits<double>::infinity();
  return e12 * e12 / w22;
}

BobSolveResult bob_smearing_solve(const field::SpacetimeModel& model,
                                  const field::ModeAmplitude& f1,
                                  const field::ModeAmplitude& f2, double t_bob) {
  if (!f1.grid || !f2.grid || !f1.grid->same_as(*f2.grid))
    throw ContractViolation("grid-match", 0.0, "bob_smearing_solve: grid mismatch");
  if ((f1.center - f2.center).norm() > 0.0)
    throw PreconditionError("bob_smearing_solve: f1, f2 must share a support center");

  const auto& grid = *f1.grid;

  auto solve_one = [&](const field::ModeAmplitude& f) {
    field::TabulatedFourierProfile delta_part, prime_part;
    // Radial amplitudes keep the center out of the values (the bilinear sinc
    // kernel uses it); line amplitudes carry the full phase, so the solved
    // tabulation is anchored at the origin.
    if (grid.kind() == field::KGrid::Kind::Radial3D) {
      delta_part.center = f.center;
      prime_part.center = f.center;
    }
    for (std::size_t i = 0; i < grid.nodes().size(); ++i) {
      const double k_mag = std::abs(grid.nodes()[i]);
      const double omega = model.dispersion(k_mag);
      if (omega == 0.0)
        throw ContractViolation("bob-solve-dispersion", k_mag,
                                "omega(k) = 0 at node " + std::to_string(i));
      // With r = f_k e^{-i w t_B} / (-i * mode_norm), the constraint g_k = f_k
      // for the Delta profile G_d plus DeltaPrime profile G_p reads
      // w G_p = Im r, G_d = Re r.
      const std::complex<double> r =
          f.values[static_cast<Eigen::Index>(i)] *
          std::exp(std::complex<double>(0.0, -omega * t_bob)) /
          (std::complex<double>(0.0, -1.0) * model.mode_normalization(k_mag));
      delta_part.k_nodes.push_back(grid.nodes()[i]);
      prime_part.k_nodes.push_back(grid.nodes()[i]);
      delta_part.values.push_back(r.real());
      prime_part.values.push_back(r.imag() / omega);
    }
    field::SmearingSpec g;
    g.coupling = 1.0;
    g.components.push_back({field::TemporalKind::Delta, t_bob, delta_part});
    g.components.push_back({field::TemporalKind::DeltaPrime, t_bob, prime_part});
    return g;
  };

  return {solve_one(f1), solve_one(f2)};
}

CausalClassification causal_classify(const field::SpacetimeModel& model,
                                     const SupportBall& alice, const SupportBall& bob) {
  // geometric classification is exact only in Minkowski
  if (model.spatial_dimension() != 1 && model.spatial_dimension() != 3)
    throw PreconditionError("causal_classify: unsupported model dimension");

  const double dt = std::abs(bob.time - alice.time);
  const double sep = (bob.center - alice.center).norm();
  const double d_min = std::max(0.0, sep - (alice.radius + bob.radius));
  const double d_max = sep + alice.radius + bob.radius;

  if (dt == 0.0 && d_min == 0.0)
    return {CausalClass::Overlapping, sep - (alice.radius + bob.radius)};
  if (dt < d_min) return {CausalClass::Spacelike, d_min - dt};
  if (dt > d_max) return {CausalClass::TimelikeInterior, d_max - dt};
  return {CausalClass::LightconeOnly, std::min(dt - d_min, d_max - dt)};
}

std::vector<std::complex<double>> radial_profile_samples(
    const field::TabulatedFourierProfile& profile, const std::vector<double>& radii) {
  std::vector<std::complex<double>> out;
  out.reserve(radii.size());
  const auto& ks = profile.k_nodes;
  // trapezoid over the tabulated nodes
  for (double r : radii) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
      const double dk = ks[i + 1] - ks[i];
      const std::complex<double> a =
          ks[i] * ks[i] * profile.values[i] * sinc(ks[i] * r);
      const std::complex<double> b =
          ks[i + 1] * ks[i + 1] * profile.values[i + 1] * sinc(ks[i + 1] * r);
      acc += 0.5 * dk * (a + b);
    }
    out.push_back(acc / (2.0 * std::numbers::pi * std::numbers::pi));
  }
  return out;
}

field::SmearingSpec truncate_coverage(const field::SmearingSpec& solved,
                                      double fraction, double r_full,
                                      const field::KGrid& grid) {
  if (!(fraction > 0.0) || fraction > 1.0)
    throw PreconditionError("truncate_coverage: fraction must be in (0, 1]");
  if (grid.kind() != field::KGrid::Kind::Radial3D)
    throw PreconditionError("truncate_coverage: the spherical-shell transform "
                            "needs the 3+1 radial backend");
  field::SmearingSpec out;
  out.coupling = solved.coupling;

  const double r_cut = fraction * r_full;
  static constexpr int kRadialNodes = 1536;
  std::vector<double> r_nodes, r_weights;
  field::gauss_legendre(kRadialNodes, 0.0, r_cut, r_nodes, r_weights);

  for (const auto& comp : solved.components) {
    const auto* tab = std::get_if<field::TabulatedFourierProfile>(&comp.profile);
    if (!tab)
      throw PreconditionError("truncate_coverage: expects tabulated solved profiles");
    const auto g_real = radial_profile_samples(*tab, r_nodes);

    field::TabulatedFourierProfile truncated;
    truncated.center = tab->center;
    for (double k : grid.nodes()) {
      const double k_mag = std::abs(k);
      std::complex<double> acc = 0.0;
      for (int i = 0; i < kRadialNodes; ++i)
        acc += r_weights[i] * 4.0 * std::numbers::pi * r_nodes[i] * r_nodes[i] *
               g_real[static_cast<std::size_t>(i)] * sinc(k_mag * r_nodes[i]);
      truncated.k_nodes.push_back(k);
      truncated.values.push_back(acc);
    }
    out.components.push_back({comp.kind, comp.time, truncated});
  }
  return out;
}

}  // namespace udwq::protocol
