#pragma once

#include <Eigen/Dense>
#include <complex>

#include "udwq/support/errors.hpp"

namespace udwq::channel {

using Matrix2cd = Eigen::Matrix2cd;
using Matrix4cd = Eigen::Matrix4cd;

// Qubit basis convention: index 0 = |+_z>, index 1 = |-_z>.
// Two-qubit index convention: index = 2*(first qubit) + (second qubit), i.e.
// the first qubit is the most significant. rho_EB orders (B, E) — the basis
// {|+z +z>, |+z -z>, |-z +z>, |-z -z>}_BE — and rho_EA orders (E, A).

inline Matrix2cd pauli_x() {
  Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}
inline Matrix2cd pauli_y() {
  Matrix2cd m;
  m << std::complex<double>(0, 0), std::complex<double>(0, -1),
      std::complex<double>(0, 1), std::complex<double>(0, 0);
  return m;
}
inline Matrix2cd pauli_z() {
  Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

// Projector onto the +/- eigenstate of sigma_z or sigma_x.
inline Matrix2cd projector_z(int sign) {
  return 0.5 * (Matrix2cd::Identity() + double(sign) * pauli_z());
}
inline Matrix2cd projector_x(int sign) {
  return 0.5 * (Matrix2cd::Identity() + double(sign) * pauli_x());
}

inline Eigen::Vector2cd ket_plus_y() {
  return Eigen::Vector2cd(std::complex<double>(1, 0) / std::sqrt(2.0),
                          std::complex<double>(0, 1) / std::sqrt(2.0));
}
inline Matrix2cd plus_y_state() {
  const auto k = ket_plus_y();
  return k * k.adjoint();
}

// |psi_EA> = (|-z +z> + |+z -z>)/sqrt(2), E first.
inline Eigen::Vector4cd bell_ket_EA() {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  v[1] = 1.0 / std::sqrt(2.0);  // |+z>_E |-z>_A
  v[2] = 1.0 / std::sqrt(2.0);  // |-z>_E |+z>_A
  return v;
}
inline Matrix4cd bell_state_EA() {
  const auto k = bell_ket_EA();
  return k * k.adjoint();
}

// rho_A = 1/2 (I + r.sigma)
Matrix2cd bloch_state(const Eigen::Vector3d& r);

// Canonical purification |psi_EA> = sum_i sqrt(p_i) (sigma_x |v_i>*)_E |v_i>_A.
// For the maximally mixed input this reproduces bell_ket_EA().
Eigen::Vector4cd purify_EA(const Matrix2cd& rho_A);

Matrix4cd kron2(const Matrix2cd& first, const Matrix2cd& second);

// Partial traces of a two-qubit matrix in the (first, second) convention.
Matrix2cd trace_out_first(const Matrix4cd& rho);
Matrix2cd trace_out_second(const Matrix4cd& rho);

// Partial transpose on the second (least significant) qubit.
Matrix4cd partial_transpose_second(const Matrix4cd& rho);

void validate_density_matrix(const Eigen::MatrixXcd& rho, double herm_tol = 1e-12,
                             double trace_tol = 1e-12, double psd_tol = 1e-10);

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace udwq::channel
