// Shared builders for the unit and acceptance suites.
#pragma once

#include <Eigen/Dense>
#include <memory>

#include "udwq/channel/states.hpp"
#include "udwq/field/correlators.hpp"
#include "udwq/fock/fock_oracle.hpp"
#include "udwq/protocol/protocol.hpp"
#include "udwq/support/rng.hpp"
#include "udwq/weyl/bilinear_table.hpp"

namespace builders {

// Valid-by-construction quasifree table: the Gram data of random one-particle
// vectors (equivalently a random discrete-mode model).
inline udwq::fock::DiscreteModeModel random_model(udwq::Rng& rng, int modes,
                                                  double scale) {
  udwq::fock::DiscreteModeModel m;
  m.alpha.resize(4, modes);
  for (int b = 0; b < 4; ++b)
    for (int k = 0; k < modes; ++k) m.alpha(b, k) = scale * rng.complex_gaussian();
  return m;
}

inline udwq::weyl::BilinearTable random_table(udwq::Rng& rng, int modes = 3,
                                              double scale = 0.5) {
  return udwq::fock::oracle_bilinears(random_model(rng, modes, scale));
}

// Ideal-protocol model (g rows duplicate f rows).
inline udwq::fock::DiscreteModeModel random_ideal_model(udwq::Rng& rng, int modes,
                                                        double scale) {
  auto m = random_model(rng, modes, scale);
  m.alpha.row(2) = m.alpha.row(0);
  m.alpha.row(3) = m.alpha.row(1);
  return m;
}

// Spacelike model: Bob's vectors live in the symplectic complement of
// span_R{f1, f2} (cross commutators vanish exactly, cross Hadamard does not).
inline udwq::fock::DiscreteModeModel random_spacelike_model(udwq::Rng& rng,
                                                            double scale = 0.5) {
  udwq::fock::DiscreteModeModel m = random_model(rng, 2, scale);
  Eigen::Matrix<double, 2, 4> constraint;
  for (int r = 0; r < 2; ++r)
    for (int mm = 0; mm < 2; ++mm) {
      constraint(r, 2 * mm) = -m.alpha(r, mm).imag();
      constraint(r, 2 * mm + 1) = m.alpha(r, mm).real();
    }
  Eigen::FullPivLU<Eigen::Matrix<double, 2, 4>> lu(constraint);
  const Eigen::MatrixXd kernel = lu.kernel();
  for (int r = 0; r < 2; ++r) {
    const Eigen::Vector4d v = kernel.col(0) * rng.uniform(-1.0, 1.0) +
                              kernel.col(1) * rng.uniform(-1.0, 1.0);
    m.alpha(2 + r, 0) = {v[0], v[1]};
    m.alpha(2 + r, 1) = {v[2], v[3]};
  }
  return m;
}

inline udwq::channel::Matrix4cd random_density4(udwq::Rng& rng) {
  Eigen::Matrix4cd g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = rng.complex_gaussian();
  Eigen::Matrix4cd rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

inline udwq::channel::Matrix2cd random_qubit(udwq::Rng& rng) {
  Eigen::Matrix2cd g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = rng.complex_gaussian();
  Eigen::Matrix2cd rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

// Standard Minkowski 3+1 massless Gaussian setup at the fine-tuned point.
struct IdealScenario {
  std::shared_ptr<udwq::field::Minkowski3p1> model;
  std::shared_ptr<const udwq::field::KGrid> grid;
  udwq::field::SmearingSpec f1, f2;
  udwq::weyl::BilinearTable table;
  double lambda1, lambda2, ratio;
};

inline IdealScenario fine_tuned_scenario(double lambda2_sq_w2, int points = 2048,
                                         double cutoff = 12.0, int branch = 0) {
  using namespace udwq;
  IdealScenario sc;
  sc.model = std::make_shared<field::Minkowski3p1>(0.0);
  sc.grid = std::make_shared<const field::KGrid>(field::KGrid::radial_3d(cutoff, points));
  field::GaussianProfile gauss;
  field::SmearingSpec f1u(1.0, field::TemporalKind::Delta, 0.0, gauss);
  field::SmearingSpec f2u(1.0, field::TemporalKind::DeltaPrime, 0.0, gauss);
  const auto a1 = field::mode_amplitude(*sc.model, f1u, sc.grid);
  const auto a2 = field::mode_amplitude(*sc.model, f2u, sc.grid);
  auto cond = udwq::protocol::conditions_from_amplitudes(a1, a2, branch);
  sc.lambda2 = std::sqrt(lambda2_sq_w2 / cond.w2);
  sc.ratio = udwq::protocol::solve_fine_tuning(cond, sc.lambda2);
  sc.lambda1 = sc.ratio * sc.lambda2;
  sc.f1 = field::SmearingSpec(sc.lambda1, field::TemporalKind::Delta, 0.0, gauss);
  sc.f2 = field::SmearingSpec(sc.lambda2, field::TemporalKind::DeltaPrime, 0.0, gauss);
  sc.table = field::build_bilinear_table(*sc.model, {sc.f1, sc.f2, sc.f1, sc.f2}, sc.grid);
  return sc;
}

}  // namespace builders
