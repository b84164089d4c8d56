#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

#include "udwq/weyl/bilinear_table.hpp"

namespace udwq::weyl {

// Ordered product of Weyl generators W(E(sum_a c_a b_a)) over the table basis,
// with an accumulated unit-modulus phase. The empty word with phase 1 is the
// identity. Protocol words carry integer coefficients (exactly representable);
// real coefficients run through the same path for oracle tests.
struct WeylWord {
  std::vector<Eigen::Vector4d> factors;
  std::complex<double> phase = {1.0, 0.0};

  static WeylWord identity() { return {}; }
};

// Appends a factor; reduction is deferred to reduce().
WeylWord compose(WeylWord word, const Eigen::Vector4d& factor);

struct ReducedWord {
  Eigen::Vector4d total = Eigen::Vector4d::Zero();
  std::complex<double> phase = {1.0, 0.0};
};

// Left-to-right folding of W(Ef)W(Eg) = e^{-(i/2)E(f,g)} W(E(f+g)). The phase
// is assembled as exp(i*theta) of an accumulated real angle, so its modulus
// is 1 by construction.
ReducedWord reduce(const WeylWord& word, const BilinearTable& table);

// omega(word) = phase(reduce) * exp(-1/4 sum_ij H_ij c_i c_j) with c the total
// coefficient vector; only H enters the Gaussian factor since E(h,h) = 0.
std::complex<double> quasifree_expectation(const WeylWord& word,
                                           const BilinearTable& table);

using SignVector = std::array<int, 4>;  // entries in {+1, -1}

enum class OmegaMode { SameSmearing, General };

// The protocol's 8-factor word
//   W(z1 Ef1) W(x1 Ef2) W(x2 Eg2) W(z2 Eg1) W(z3 Eg1) W(x3 Eg2) W(x4 Ef2) W(z4 Ef1);
// SameSmearing maps the g factors onto the f slots.
WeylWord protocol_word(const SignVector& x, const SignVector& z, OmegaMode mode);

// Direct evaluation of the explicit exponential formula for omega(O-hat) in
// terms of the table entries, independent of reduce(); exists purely as a
// cross-check of quasifree_expectation.
std::complex<double> omega_O_closed_form(const SignVector& x, const SignVector& z,
                                         const BilinearTable& table, OmegaMode mode);

}  // namespace udwq::weyl
