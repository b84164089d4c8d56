#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "udwq/channel/states.hpp"

namespace udwq::channel {

// S(rho) = -sum_i l_i log2 l_i with 0 log 0 = 0; eigenvalues are PSD-checked
// against tolerance and then clipped at zero.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

// I_c = S(Tr_E rho_EB) - S(rho_EB); in [-1, 1] for qubit channels.
double coherent_information(const Matrix4cd& rho_EB);

// N = (||rho^{Gamma_E}||_1 - 1)/2, partial transpose over the E factor.
double negativity(const Matrix4cd& rho_EB);

// A channel realization: rho_EA (E first) -> rho_EB (B first).
using ChannelMap = std::function<Matrix4cd(const Matrix4cd& rho_EA)>;

// 26-point Bloch-sphere grid (axis poles, edge midpoints, face centers) plus
// the maximally mixed point at the origin.
std::vector<Eigen::Vector3d> default_bloch_grid();

struct ChannelCoherentInfo {
  double maximum = 0.0;
  Eigen::Vector3d argmax = Eigen::Vector3d::Zero();
  std::vector<double> per_point;
};

// Maximizes I_c over canonical purifications of the grid of Alice inputs.
// The grid maximum is reported without any claim of global optimality.
ChannelCoherentInfo channel_coherent_information(
    const ChannelMap& channel, const std::vector<Eigen::Vector3d>& bloch_grid);

inline ChannelCoherentInfo channel_coherent_information(const ChannelMap& channel) {
  return channel_coherent_information(channel, default_bloch_grid());
}

// Max over input pairs of the trace distance between Bob-marginal outputs;
// zero certifies no classical signaling on the tested input set.
double classical_signaling(const ChannelMap& channel,
                           const std::vector<Matrix2cd>& inputs);

}  // namespace udwq::channel
