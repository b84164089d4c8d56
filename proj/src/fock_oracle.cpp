#include "udwq/fock/fock_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "udwq/support/errors.hpp"

namespace udwq::fock {

namespace {

// kron with `a` most significant
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXcd lowering_matrix(int levels) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(levels, levels);
  for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

}  // namespace

void DiscreteModeModel::validate() const {
  if (mode_count() < 1)
    throw PreconditionError("DiscreteModeModel: needs at least one mode");
  if (!alpha.allFinite())
    throw PreconditionError("DiscreteModeModel: amplitudes must be finite");
}

void DiscreteModeModel::require_simulable() const {
  validate();
  if (mode_count() > 4)
    throw PreconditionError("DiscreteModeModel: dense simulation supports 1-4 modes");
}

double DiscreteModeModel::max_accumulated_amplitude() const {
  double worst = 0.0;
  for (int m = 0; m < mode_count(); ++m) {
    double acc = 0.0;
    for (int b = 0; b < 4; ++b) acc += std::abs(alpha(b, m));
    worst = std::max(worst, acc);
  }
  return worst;
}

bool truncation_adequate(const DiscreteModeModel& model, const TruncatedFock& trunc) {
  const double a = model.alpha.cwiseAbs().maxCoeff();
  return trunc.n_max >= 4.0 * a * a + 20.0;
}

void require_truncation_sane(const DiscreteModeModel& model, const TruncatedFock& trunc) {
  const double a = model.max_accumulated_amplitude();
  if (trunc.n_max < 2.0 * a * a + 10.0)
    throw ContractViolation("fock-truncation", double(trunc.n_max),
                            "truncation below the hard bound 2 A^2 + 10 for "
                            "accumulated amplitude A = " + std::to_string(a));
}

weyl::BilinearTable oracle_bilinears(const DiscreteModeModel& model) {
  model.validate();
  weyl::BilinearTable t;

  // E from the exact commutator sums.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      std::complex<double> s = 0.0;
      for (int m = 0; m < model.mode_count(); ++m)
        s += std::conj(model.alpha(i, m)) * model.alpha(j, m);
      t.E(i, j) = 2.0 * s.imag();
    }

  // H from vacuum anticommutator expectations with dense truncated operators
  // (levels = 4 is exact for quadratic vacuum moments). Beyond 4 modes the
  // dense route is out of reach and the exact sesquilinear sum is used; the
  // two routes are asserted equal in the test suite.
  if (model.mode_count() <= 4) {
    const int levels = 4;
    std::array<Eigen::MatrixXcd, 4> phi;
    for (int b = 0; b < 4; ++b) phi[b] = phi_dense(model, b, levels);
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        const std::complex<double> h = (phi[i] * phi[j] + phi[j] * phi[i])(0, 0);
        t.H(i, j) = h.real();
        t.H(j, i) = t.H(i, j);
      }
  } else {
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        std::complex<double> s = 0.0;
        for (int m = 0; m < model.mode_count(); ++m)
          s += std::conj(model.alpha(i, m)) * model.alpha(j, m);
        t.H(i, j) = 2.0 * s.real();
        t.H(j, i) = t.H(i, j);
      }
  }
  return t;
}

Eigen::MatrixXcd displacement_matrix(std::complex<double> beta, int levels) {
  Eigen::MatrixXcd d(levels, levels);
  const double b2 = std::norm(beta);
  std::vector<double> lgam(2 * levels + 1, 0.0);
  for (int n = 1; n <= 2 * levels; ++n) lgam[n] = std::lgamma(double(n) + 1.0);

  for (int m = 0; m < levels; ++m)
    for (int n = 0; n < levels; ++n) {
      const int lo = std::min(m, n), hi = std::max(m, n);
      const int k = hi - lo;
      // associated Laguerre L_lo^(k)(b2) by upward recurrence
      double l_prev = 1.0, l_curr = 1.0 + k - b2;
      if (lo == 0)
        l_curr = l_prev;
      else
        for (int j = 1; j < lo; ++j) {
          const double l_next =
              ((2.0 * j + 1.0 + k - b2) * l_curr - (j + k) * l_prev) / (j + 1.0);
          l_prev = l_curr;
          l_curr = l_next;
        }
      const double mag = std::exp(0.5 * (lgam[lo] - lgam[hi]) - 0.5 * b2);
      const std::complex<double> base = m >= n ? beta : -std::conj(beta);
      std::complex<double> pref = 1.0;
      for (int j = 0; j < k; ++j) pref *= base;
      d(m, n) = pref * mag * l_curr;
    }
  return d;
}

Eigen::MatrixXcd displacement_matrix_expm(std::complex<double> beta, int levels) {
  const Eigen::MatrixXcd a = lowering_matrix(levels);
  const Eigen::MatrixXcd gen = beta * a.adjoint() - std::conj(beta) * a;
  // gen is anti-Hermitian: exp(gen) = V exp(-i diag) V^dag with i*gen Hermitian
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      (std::complex<double>(0, 1) * gen).eval());
  Eigen::VectorXcd phases(levels);
  for (int i = 0; i < levels; ++i)
    phases[i] = std::polar(1.0, -es.eigenvalues()[i]);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd FockOperator::to_dense() const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (const auto& f : mode_factors) out = kron(out, f);
  return out;
}

FockOperator displacement_operator(const DiscreteModeModel& model, int basis_index,
                                   int sign, const TruncatedFock& trunc) {
  model.require_simulable();
  require_truncation_sane(model, trunc);
  FockOperator op;
  op.levels = trunc.levels();
  const std::complex<double> i_unit(0.0, 1.0);
  for (int m = 0; m < model.mode_count(); ++m)
    op.mode_factors.push_back(displacement_matrix(
        i_unit * double(sign) * model.alpha(basis_index, m), trunc.levels()));
  return op;
}

ControlledUnitary controlled_unitary(char axis, FockOperator d) {
  if (axis != 'x' && axis != 'z')
    throw PreconditionError("controlled_unitary: axis must be 'x' or 'z'");
  return ControlledUnitary{axis, std::move(d)};
}

Eigen::MatrixXcd ControlledUnitary::to_dense() const {
  const Eigen::MatrixXcd d = displacement.to_dense();
  const Eigen::Index f = d.rows();
  Eigen::MatrixXcd plus = Eigen::MatrixXcd::Zero(2, 2),
                   minus = Eigen::MatrixXcd::Zero(2, 2);
  if (axis == 'z') {
    plus(0, 0) = 1.0;
    minus(1, 1) = 1.0;
  } else {
    plus << 0.5, 0.5, 0.5, 0.5;
    minus << 0.5, -0.5, -0.5, 0.5;
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * f, 2 * f);
  out += kron(plus, d);
  out += kron(minus, d.adjoint());
  return out;
}

Eigen::MatrixXcd phi_dense(const DiscreteModeModel& model, int basis_index,
                           int levels) {
  const int m_count = model.mode_count();
  Eigen::Index dim = 1;
  for (int m = 0; m < m_count; ++m) dim *= levels;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  const Eigen::MatrixXcd a = lowering_matrix(levels);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(levels, levels);
  for (int m = 0; m < m_count; ++m) {
    const std::complex<double> al = model.alpha(basis_index, m);
    Eigen::MatrixXcd term = std::conj(al) * a + al * a.adjoint();
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(1, 1);
    for (int j = 0; j < m_count; ++j) full = kron(full, j == m ? term : eye);
    out += full;
  }
  return out;
}

std::vector<Gate> ideal_gate_sequence() {
  // U = U_B U_A with U_A = e^{i sx phi(f2)} e^{i sz phi(f1)} and
  // U_B = e^{-i sz phi(g1)} e^{-i sx phi(g2)}; rightmost factor acts first.
  return {{'A', 'z', +1, 0}, {'A', 'x', +1, 1}, {'B', 'x', -1, 3}, {'B', 'z', -1, 2}};
}

namespace {

// Applies the per-mode matrix to mode `m` of the fock part, for every qubit
// block whose index satisfies `use_plus` selecting D vs D^dag.
void apply_mode_matrix(Eigen::VectorXcd& amp, const Eigen::MatrixXcd& d, int mode,
                       int levels, int n_modes, int qubit_block, Eigen::Index fdim) {
  Eigen::Index post = 1;
  for (int j = mode + 1; j < n_modes; ++j) post *= levels;
  const Eigen::Index pre = fdim / (post * levels);
  const Eigen::Index base_q = qubit_block * fdim;
  Eigen::VectorXcd scratch(levels);
  for (Eigen::Index o = 0; o < pre; ++o)
    for (Eigen::Index p = 0; p < post; ++p) {
      const Eigen::Index base = base_q + o * levels * post + p;
      for (int j = 0; j < levels; ++j) scratch[j] = amp[base + j * post];
      for (int i = 0; i < levels; ++i) {
        std::complex<double> acc = 0.0;
        for (int j = 0; j < levels; ++j) acc += d(i, j) * scratch[j];
        amp[base + i * post] = acc;
      }
    }
}

void apply_gate(Eigen::VectorXcd& amp, const Gate& gate, const DiscreteModeModel& model,
                const TruncatedFock& trunc, Eigen::Index fdim) {
  const int qubit_pos = gate.actor == 'A' ? 1 : 2;  // layout (E, A, B)
  const int stride_bits = 2 - qubit_pos;            // B varies fastest of the qubits

  // Hadamard conjugation maps the x-basis gate onto a z-type application.
  if (gate.axis == 'x') {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int q = 0; q < 8; ++q) {
      if ((q >> stride_bits) & 1) continue;  // visit each (q0,q1) pair once
      const int q0 = q, q1 = q | (1 << stride_bits);
      for (Eigen::Index f = 0; f < fdim; ++f) {
        const std::complex<double> a0 = amp[q0 * fdim + f], a1 = amp[q1 * fdim + f];
        amp[q0 * fdim + f] = inv_sqrt2 * (a0 + a1);
        amp[q1 * fdim + f] = inv_sqrt2 * (a0 - a1);
      }
    }
  }

  const FockOperator d_plus = displacement_operator(model, gate.basis_index,
                                                    gate.field_sign, trunc);
  for (int q = 0; q < 8; ++q) {
    const bool eigen_minus = (q >> stride_bits) & 1;
    for (int m = 0; m < model.mode_count(); ++m) {
      const Eigen::MatrixXcd& dm = d_plus.mode_factors[m];
      if (eigen_minus)
        apply_mode_matrix(amp, dm.adjoint(), m, trunc.levels(), model.mode_count(), q,
                          fdim);
      else
        apply_mode_matrix(amp, dm, m, trunc.levels(), model.mode_count(), q, fdim);
    }
  }

  if (gate.axis == 'x') {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int q = 0; q < 8; ++q) {
      if ((q >> stride_bits) & 1) continue;
      const int q0 = q, q1 = q | (1 << stride_bits);
      for (Eigen::Index f = 0; f < fdim; ++f) {
        const std::complex<double> a0 = amp[q0 * fdim + f], a1 = amp[q1 * fdim + f];
        amp[q0 * fdim + f] = inv_sqrt2 * (a0 + a1);
        amp[q1 * fdim + f] = inv_sqrt2 * (a0 - a1);
      }
    }
  }
}

}  // namespace

channel::Matrix4cd simulate_protocol(const DiscreteModeModel& model,
                                     const channel::Matrix4cd& rho_EA,
                                     const channel::Matrix2cd& bob_initial,
                                     const TruncatedFock& trunc, GateOrdering ordering,
                                     const std::vector<Gate>& custom) {
  model.require_simulable();
  require_truncation_sane(model, trunc);
  channel::validate_density_matrix(rho_EA);
  channel::validate_density_matrix(bob_initial);

  Eigen::Index fdim = 1;
  for (int m = 0; m < model.mode_count(); ++m) fdim *= trunc.levels();
  if (8 * fdim > (Eigen::Index(1) << 26))
    throw ConfigError("simulate_protocol: composite dimension " +
                      std::to_string(8 * fdim) + " exceeds the memory bound");

  std::vector<Gate> gates;
  switch (ordering) {
    case GateOrdering::BobAfterAlice:
      gates = ideal_gate_sequence();
      break;
    case GateOrdering::AliceAfterBob: {
      const auto g = ideal_gate_sequence();
      gates = {g[2], g[3], g[0], g[1]};
      break;
    }
    case GateOrdering::Custom:
      gates = custom;
      break;
  }

  // Rank decompositions of the mixed inputs; evolve pure states only.
  Eigen::SelfAdjointEigenSolver<channel::Matrix4cd> es_ea(rho_EA);
  Eigen::SelfAdjointEigenSolver<channel::Matrix2cd> es_b(bob_initial);

  channel::Matrix4cd rho_EB = channel::Matrix4cd::Zero();
  for (int ie = 0; ie < 4; ++ie) {
    const double p = es_ea.eigenvalues()[ie];
    if (p < 1e-15) continue;
    for (int ib = 0; ib < 2; ++ib) {
      const double q = es_b.eigenvalues()[ib];
      if (q < 1e-15) continue;

      Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(8 * fdim);
      for (int e = 0; e < 2; ++e)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            amp[((e * 2 + a) * 2 + b) * fdim + 0] =
                es_ea.eigenvectors()(2 * e + a, ie) * es_b.eigenvectors()(b, ib);

      for (const auto& gate : gates) apply_gate(amp, gate, model, trunc, fdim);

      // rho_EB[(b,e),(b',e')] += p q sum_{a,f} amp[(e,a,b,f)] amp*[(e',a,b',f)]
      for (int b = 0; b < 2; ++b)
        for (int bp = 0; bp < 2; ++bp)
          for (int e = 0; e < 2; ++e)
            for (int ep = 0; ep < 2; ++ep) {
              std::complex<double> acc = 0.0;
              for (int a = 0; a < 2; ++a) {
                const Eigen::Index r0 = ((e * 2 + a) * 2 + b) * fdim;
                const Eigen::Index r1 = ((ep * 2 + a) * 2 + bp) * fdim;
                for (Eigen::Index f = 0; f < fdim; ++f)
                  acc += amp[r0 + f] * std::conj(amp[r1 + f]);
              }
              rho_EB(2 * b + e, 2 * bp + ep) += p * q * acc;
            }
    }
  }

  rho_EB = 0.5 * (rho_EB + rho_EB.adjoint()).eval();
  rho_EB /= rho_EB.trace().real();
  return rho_EB;
}

}  // namespace udwq::fock
