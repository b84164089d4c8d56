#include "udwq/weyl/bilinear_table.hpp"

#include <Eigen/Eigenvalues>

namespace udwq::weyl {

void BilinearTable::validate(double psd_tol) const {
  if ((E + E.transpose()).cwiseAbs().maxCoeff() != 0.0)
    throw ContractViolation("bilinear-antisymmetry",
                            (E + E.transpose()).cwiseAbs().maxCoeff(),
                            "E must be exactly antisymmetric");
  if ((H - H.transpose()).cwiseAbs().maxCoeff() != 0.0)
    throw ContractViolation("bilinear-symmetry",
                            (H - H.transpose()).cwiseAbs().maxCoeff(),
                            "H must be exactly symmetric");

  Eigen::Matrix4cd gram;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gram(i, j) = wightman(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(gram, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, gram.cwiseAbs().maxCoeff());
  const double min_ev = es.eigenvalues().minCoeff();
  if (min_ev < -psd_tol * scale)
    throw ContractViolation("wightman-gram-psd", min_ev,
                            "complex Gram matrix W_ij must be PSD: table is not "
                            "realizable by a quasifree state");

  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double lhs = E(i, j) * E(i, j) + H(i, j) * H(i, j);
      const double rhs = H(i, i) * H(j, j);
      if (lhs > rhs + psd_tol * std::max(1.0, rhs))
        throw ContractViolation("uncertainty-bound", lhs - rhs,
                                "E_ij^2 + H_ij^2 <= H_ii H_jj failed at (" +
                                    std::string(kLabels[i]) + "," + kLabels[j] + ")");
    }
}

BilinearTable BilinearTable::duplicate_alice_block(const Eigen::Matrix2d& e_alice,
                                                   const Eigen::Matrix2d& h_alice) {
  BilinearTable t;
  for (int bi = 0; bi < 2; ++bi)
    for (int bj = 0; bj < 2; ++bj) {
      t.E.block<2, 2>(2 * bi, 2 * bj) = e_alice;
      t.H.block<2, 2>(2 * bi, 2 * bj) = h_alice;
    }
  return t;
}

}  // namespace udwq::weyl
