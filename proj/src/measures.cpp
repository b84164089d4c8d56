#include "udwq/channel/measures.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace udwq::channel {

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  validate_density_matrix(rho);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = std::max(0.0, es.eigenvalues()[i]);
    if (l > 0.0) s -= l * std::log2(l);
  }
  return s;
}

double coherent_information(const Matrix4cd& rho_EB) {
  const Matrix2cd rho_B = trace_out_second(rho_EB);  // E is the second factor
  return von_neumann_entropy(rho_B) - von_neumann_entropy(rho_EB);
}

double negativity(const Matrix4cd& rho_EB) {
  validate_density_matrix(rho_EB);
  const Matrix4cd pt = partial_transpose_second(rho_EB);
  Eigen::SelfAdjointEigenSolver<Matrix4cd> es(pt, Eigen::EigenvaluesOnly);
  return 0.5 * (es.eigenvalues().cwiseAbs().sum() - 1.0);
}

std::vector<Eigen::Vector3d> default_bloch_grid() {
  std::vector<Eigen::Vector3d> pts;
  pts.emplace_back(0, 0, 0);  // maximally mixed
  for (int axis = 0; axis < 3; ++axis)
    for (int s : {1, -1}) {
      Eigen::Vector3d v = Eigen::Vector3d::Zero();
      v[axis] = s;
      pts.push_back(v);
    }
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      for (int sa : {1, -1})
        for (int sb : {1, -1}) {
          Eigen::Vector3d v = Eigen::Vector3d::Zero();
          v[a] = sa / std::sqrt(2.0);
          v[b] = sb / std::sqrt(2.0);
          pts.push_back(v);
        }
  for (int sx : {1, -1})
    for (int sy : {1, -1})
      for (int sz : {1, -1})
        pts.push_back(Eigen::Vector3d(sx, sy, sz) / std::sqrt(3.0));
  return pts;
}

ChannelCoherentInfo channel_coherent_information(
    const ChannelMap& channel, const std::vector<Eigen::Vector3d>& bloch_grid) {
  ChannelCoherentInfo out;
  out.maximum = -2.0;
  for (const auto& r : bloch_grid) {
    const Matrix2cd rho_A = bloch_state(r);
    const Eigen::Vector4cd psi = purify_EA(rho_A);
    const Matrix4cd rho_EB = channel(psi * psi.adjoint());
    const double ic = coherent_information(rho_EB);
    out.per_point.push_back(ic);
    if (ic > out.maximum) {
      out.maximum = ic;
      out.argmax = r;
    }
  }
  return out;
}

double classical_signaling(const ChannelMap& channel,
                           const std::vector<Matrix2cd>& inputs) {
  if (inputs.size() < 2)
    throw PreconditionError("classical_signaling: need at least 2 inputs");
  std::vector<Matrix2cd> bob_outputs;
  bob_outputs.reserve(inputs.size());
  for (const auto& rho_A : inputs) {
    const Eigen::Vector4cd psi = purify_EA(rho_A);
    bob_outputs.push_back(trace_out_second(channel(psi * psi.adjoint())));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < bob_outputs.size(); ++i)
    for (std::size_t j = i + 1; j < bob_outputs.size(); ++j)
      worst = std::max(worst, trace_distance(bob_outputs[i], bob_outputs[j]));
  return worst;
}

}  // namespace udwq::channel
