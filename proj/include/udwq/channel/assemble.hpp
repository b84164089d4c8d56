#pragma once

#include <optional>
#include <string>

#include "udwq/channel/states.hpp"
#include "udwq/weyl/bilinear_table.hpp"

namespace udwq::channel {

struct ProtocolSpec {
  weyl::BilinearTable table;
  Matrix4cd rho_EA = bell_state_EA();     // (E, A) ordering
  Matrix2cd bob_initial = plus_y_state();

  void validate() const {
    table.validate();
    validate_density_matrix(rho_EA);
    validate_density_matrix(bob_initial);
  }
};

// Exact post-protocol joint state: the 2^8-term sum over x_i, z_i of
//   omega(O-hat) * Tr_A[P_{x4} P_{z4} rho_EA P_{-z1} P_{-x1}]
//              (x) P_{-z3} P_{-x3} rho_B P_{x2} P_{z2}
// with omega(O-hat) the quasifree expectation of the protocol's 8-factor
// Weyl word. Output is in the (B, E) basis, Hermitized and trace-normalized;
// a PSD violation beyond tolerance throws with the most negative eigenvalue.
Matrix4cd assemble_rho_EB(const ProtocolSpec& spec);

// Printed general-case entries (P±, X, A, B, C) assembled verbatim; intended
// solely for discrepancy analysis against assemble_rho_EB. The complex-valued
// W(f1,f2), W(f2,f1) arguments of the printed A, B entries are evaluated as
// (H12 ± iE12)/2.
Matrix4cd closed_form_rho_EB(const weyl::BilinearTable& table);

// Fine-tuned closed form (P~±, C~), valid when E(f1,f2) = pi/4 mod 2pi within
// `tolerance`; Bell input and |+_y> Bob are assumed.
Matrix4cd fine_tuned_rho_EB(const weyl::BilinearTable& table, double tolerance = 1e-9);

// Closed product form rho_E (x) sigma_B for tables with all E(f_i, g_j) = 0
// (spacelike separation, or timelike interior under strong Huygens). Requires
// bob_initial = |+_y><+_y|, the state the X entry is derived for.
Matrix4cd spacelike_rho_EB(const ProtocolSpec& spec, double cross_tol = 1e-10);

// Element-wise audit of the printed entries against the general sum, plus the
// numerically determined corrections (P± with the W(f2,f2) exponent, A and B
// with a cosh(2 H12) argument). Used by the committed discrepancy report.
struct ClosedFormAudit {
  Matrix4cd general;          // assemble_rho_EB ground truth
  Matrix4cd printed;          // closed_form_rho_EB
  Matrix4cd corrected;        // determined-correct entry forms
  double max_dev_printed = 0.0;
  double max_dev_corrected = 0.0;
  double dev_P = 0.0, dev_X = 0.0, dev_A = 0.0, dev_B = 0.0, dev_C = 0.0;
  double dev_P_corrected = 0.0;
};

ClosedFormAudit audit_closed_form(const weyl::BilinearTable& table);

std::string format_audit_report(const ClosedFormAudit& ideal_case,
                                const ClosedFormAudit& fine_tuned_case);

}  // namespace udwq::channel
