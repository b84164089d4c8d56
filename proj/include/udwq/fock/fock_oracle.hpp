#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "udwq/channel/states.hpp"
#include "udwq/weyl/bilinear_table.hpp"

namespace udwq::fock {

// Finite quasifree theory for the brute-force oracle: M modes (1-4 for the
// dense simulation; bilinear tables accept any M, e.g. a whole quadrature
// grid folded into modes) with
// per-mode complex amplitudes for each basis smearing {f1, f2, g1, g2},
//   phi(b) = sum_m  alpha[b][m]* a_m + alpha[b][m] a_m^dag.
// A continuum comparison matches this finite table exactly; the oracle never
// approximates a continuum integral with few modes.
struct DiscreteModeModel {
  Eigen::Matrix<std::complex<double>, 4, Eigen::Dynamic> alpha;  // 4 x M

  int mode_count() const { return static_cast<int>(alpha.cols()); }
  void validate() const;
  void require_simulable() const;  // dense simulation handles 1-4 modes

  // Worst reachable coherent displacement per mode across the 8-factor
  // protocol: max_m sum_b |alpha[b][m]|.
  double max_accumulated_amplitude() const;
};

struct TruncatedFock {
  int n_max = 60;
  int levels() const { return n_max + 1; }
};

// Soft truncation rule N >= 4 max|alpha|^2 + 20 (per-entry amplitude);
// the hard bound N >= 2 A^2 + 10 with A the worst accumulated amplitude
// throws on construction.
bool truncation_adequate(const DiscreteModeModel& model, const TruncatedFock& trunc);
void require_truncation_sane(const DiscreteModeModel& model, const TruncatedFock& trunc);

// E from the exact commutator sums, H from vacuum anticommutator expectations
// evaluated with dense truncated operators; valid quasifree by construction.
weyl::BilinearTable oracle_bilinears(const DiscreteModeModel& model);

// Single-mode displacement D(beta) = exp(beta a^dag - beta* a) truncated to
// `levels`: closed-form coherent-state matrix elements (associated Laguerre).
Eigen::MatrixXcd displacement_matrix(std::complex<double> beta, int levels);
// Dense-exponential cross-check path (eigendecomposition of the generator).
Eigen::MatrixXcd displacement_matrix_expm(std::complex<double> beta, int levels);

// exp(i s phi(b)) as a tensor product of per-mode displacements D(i s alpha).
struct FockOperator {
  std::vector<Eigen::MatrixXcd> mode_factors;
  int levels = 0;
  Eigen::MatrixXcd to_dense() const;  // kron of the factors (small M only)
};

FockOperator displacement_operator(const DiscreteModeModel& model, int basis_index,
                                   int sign, const TruncatedFock& trunc);

// P_+ (x) D + P_- (x) D^dag in the eigenbasis of the chosen Pauli axis.
struct ControlledUnitary {
  char axis = 'z';  // 'x' or 'z'
  FockOperator displacement;
  Eigen::MatrixXcd to_dense() const;  // (2*F) x (2*F), qubit most significant
};

ControlledUnitary controlled_unitary(char axis, FockOperator d);

// phi(b) as a dense operator on the composite truncated space (test sizes).
Eigen::MatrixXcd phi_dense(const DiscreteModeModel& model, int basis_index,
                           int levels);

enum class GateOrdering { BobAfterAlice, AliceAfterBob, Custom };

struct Gate {
  char actor;         // 'A' or 'B'
  char axis;          // 'x' or 'z'
  int field_sign;     // exp(i * field_sign * sigma_axis * phi(b))
  int basis_index;    // row of alpha
};

std::vector<Gate> ideal_gate_sequence();

// Full protocol on qubit_E (x) qubit_A (x) qubit_B (x) Fock with dense state
// vectors (the environment qubit is carried in the state, never acted on).
// Returns rho_EB in the channel's (B, E) basis.
channel::Matrix4cd simulate_protocol(const DiscreteModeModel& model,
                                     const channel::Matrix4cd& rho_EA,
                                     const channel::Matrix2cd& bob_initial,
                                     const TruncatedFock& trunc,
                                     GateOrdering ordering = GateOrdering::BobAfterAlice,
                                     const std::vector<Gate>& custom = {});

}  // namespace udwq::fock
