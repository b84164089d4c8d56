#include "udwq/channel/states.hpp"

#include <Eigen/Eigenvalues>

namespace udwq::channel {

Matrix2cd bloch_state(const Eigen::Vector3d& r) {
  if (r.norm() > 1.0 + 1e-12)
    throw PreconditionError("bloch_state: |r| must be <= 1");
  return 0.5 * (Matrix2cd::Identity() + r.x() * pauli_x() + r.y() * pauli_y() +
                r.z() * pauli_z());
}

Eigen::Vector4cd purify_EA(const Matrix2cd& rho_A) {
  validate_density_matrix(rho_A);
  Eigen::SelfAdjointEigenSolver<Matrix2cd> es(rho_A);
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  const Matrix2cd sx = pauli_x();
  for (int i = 0; i < 2; ++i) {
    const double p = std::max(0.0, es.eigenvalues()[i]);
    if (p < 1e-15) continue;
    const Eigen::Vector2cd v = es.eigenvectors().col(i);
    const Eigen::Vector2cd e_part = sx * v.conjugate();
    for (int e = 0; e < 2; ++e)
      for (int a = 0; a < 2; ++a) psi[2 * e + a] += std::sqrt(p) * e_part[e] * v[a];
  }
  return psi;
}

Matrix4cd kron2(const Matrix2cd& first, const Matrix2cd& second) {
  Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = first(i, j) * second;
  return out;
}

Matrix2cd trace_out_first(const Matrix4cd& rho) {
  Matrix2cd out = Matrix2cd::Zero();
  for (int s = 0; s < 2; ++s)
    for (int sp = 0; sp < 2; ++sp)
      for (int f = 0; f < 2; ++f) out(s, sp) += rho(2 * f + s, 2 * f + sp);
  return out;
}

Matrix2cd trace_out_second(const Matrix4cd& rho) {
  Matrix2cd out = Matrix2cd::Zero();
  for (int f = 0; f < 2; ++f)
    for (int fp = 0; fp < 2; ++fp)
      for (int s = 0; s < 2; ++s) out(f, fp) += rho(2 * f + s, 2 * fp + s);
  return out;
}

Matrix4cd partial_transpose_second(const Matrix4cd& rho) {
  Matrix4cd out;
  for (int f = 0; f < 2; ++f)
    for (int fp = 0; fp < 2; ++fp)
      for (int s = 0; s < 2; ++s)
        for (int sp = 0; sp < 2; ++sp)
          out(2 * f + s, 2 * fp + sp) = rho(2 * f + sp, 2 * fp + s);
  return out;
}

void validate_density_matrix(const Eigen::MatrixXcd& rho, double herm_tol,
                             double trace_tol, double psd_tol) {
  const double herm_dev = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > herm_tol)
    throw ContractViolation("density-hermiticity", herm_dev, "rho != rho^dagger");
  const double trace_dev = std::abs(rho.trace() - std::complex<double>(1.0, 0.0));
  if (trace_dev > trace_tol)
    throw ContractViolation("density-trace", trace_dev, "tr(rho) != 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  const double min_ev = es.eigenvalues().minCoeff();
  if (min_ev < -psd_tol)
    throw ContractViolation("density-psd", min_ev, "rho has a negative eigenvalue");
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd d = a - b;
  d = 0.5 * (d + d.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace udwq::channel
