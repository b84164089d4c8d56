#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string>

#include "udwq/support/errors.hpp"

namespace udwq::weyl {

// Smeared two-point data over the ordered basis {f1, f2, g1, g2}: the
// antisymmetric causal propagator E and the symmetric Hadamard function H.
// The Wightman function is derived, W_ij = (H_ij + i E_ij) / 2, so the
// H-vs-mu normalization has a single source of truth. This table is the only
// interface between the field backend and the channel algebra.
struct BilinearTable {
  static constexpr std::array<const char*, 4> kLabels = {"f1", "f2", "g1", "g2"};

  Eigen::Matrix4d E = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d H = Eigen::Matrix4d::Zero();

  std::complex<double> wightman(int i, int j) const {
    return {0.5 * H(i, j), 0.5 * E(i, j)};
  }
  double w_diag(int i) const { return 0.5 * H(i, i); }

  // E(h1, h2) for coefficient vectors over the basis.
  double e_form(const Eigen::Vector4d& a, const Eigen::Vector4d& b) const {
    return a.dot(E * b);
  }
  double h_form(const Eigen::Vector4d& a, const Eigen::Vector4d& b) const {
    return a.dot(H * b);
  }

  // Checks: exact antisymmetry/symmetry, and positivity of the complex Gram
  // matrix W_ij (which implies the quasifree uncertainty bound
  // E_ij^2 + H_ij^2 <= H_ii * H_jj).
  void validate(double psd_tol = 1e-10) const;

  // Table with the Bob block duplicated from the Alice block (g_i = f_i).
  static BilinearTable duplicate_alice_block(const Eigen::Matrix2d& e_alice,
                                             const Eigen::Matrix2d& h_alice);
};

}  // namespace udwq::weyl
