#include "udwq/weyl/weyl_word.hpp"

#include <cmath>

namespace udwq::weyl {

WeylWord compose(WeylWord word, const Eigen::Vector4d& factor) {
  word.factors.push_back(factor);
  return word;
}

ReducedWord reduce(const WeylWord& word, const BilinearTable& table) {
  ReducedWord out;
  out.phase = word.phase;
  if (word.factors.empty()) return out;

  out.total = word.factors.front();
  double theta = 0.0;
  for (std::size_t i = 1; i < word.factors.size(); ++i) {
    theta += -0.5 * table.e_form(out.total, word.factors[i]);
    out.total += word.factors[i];
  }
  out.phase *= std::polar(1.0, theta);
  return out;
}

std::complex<double> quasifree_expectation(const WeylWord& word,
                                           const BilinearTable& table) {
  const ReducedWord r = reduce(word, table);
  const double w_total = 0.25 * table.h_form(r.total, r.total);
  return r.phase * std::exp(-w_total);
}

WeylWord protocol_word(const SignVector& x, const SignVector& z, OmegaMode mode) {
  const int f1 = 0, f2 = 1;
  const int g1 = mode == OmegaMode::SameSmearing ? 0 : 2;
  const int g2 = mode == OmegaMode::SameSmearing ? 1 : 3;
  auto unit = [](int slot, int sign) {
    Eigen::Vector4d v = Eigen::Vector4d::Zero();
    v[slot] = sign;
    return v;
  };
  WeylWord w;
  w.factors = {unit(f1, z[0]), unit(f2, x[0]), unit(g2, x[1]), unit(g1, z[1]),
               unit(g1, z[2]), unit(g2, x[2]), unit(f2, x[3]), unit(f1, z[3])};
  return w;
}

std::complex<double> omega_O_closed_form(const SignVector& x, const SignVector& z,
                                         const BilinearTable& table, OmegaMode mode) {
  for (int i = 0; i < 4; ++i)
    if ((x[i] != 1 && x[i] != -1) || (z[i] != 1 && z[i] != -1))
      throw PreconditionError("omega_O_closed_form: signs must be +1 or -1");

  const double z1 = z[0], z2 = z[1], z3 = z[2], z4 = z[3];
  const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];

  if (mode == OmegaMode::SameSmearing) {
    const double E12 = table.E(0, 1);
    const double W11 = table.w_diag(0), W22 = table.w_diag(1);
    const double H12 = table.H(0, 1);
    const double zs = z1 + z2 + z3 + z4;
    const double xs = x1 + x2 + x3 + x4;
    const double gauss = -0.5 * zs * zs * W11 - 0.5 * xs * xs * W22 - 0.5 * xs * zs * H12;
    const double theta = -0.5 * (x1 + x2) * (z1 - z2 - z3 - z4) * E12 +
                         -0.5 * (x3 + x4) * (z1 + z2 + z3 - z4) * E12;
    return std::polar(std::exp(gauss), theta);
  }

  const double zf = z1 + z4, xf = x1 + x4, zg = z2 + z3, xg = x2 + x3;
  const double theta = -0.5 * ((z1 - z4) * (x1 + x4) * table.E(0, 1) +
                               (z2 + z3) * (x3 - x2) * table.E(2, 3) +
                               (z2 + z3) * (z1 - z4) * table.E(0, 2) +
                               (z1 - z4) * (x2 + x3) * table.E(0, 3) +
                               (z2 + z3) * (x1 - x4) * table.E(1, 2) +
                               (x2 + x3) * (x1 - x4) * table.E(1, 3));
  const double gauss =
      -0.5 * (zf * zf * table.w_diag(0) + xf * xf * table.w_diag(1) +
              zg * zg * table.w_diag(2) + xg * xg * table.w_diag(3)) -
      0.5 * (xf * zf * table.H(0, 1) + zg * zf * table.H(0, 2) + xg * zf * table.H(0, 3) +
             zg * xf * table.H(1, 2) + xg * xf * table.H(1, 3) + xg * zg * table.H(2, 3));
  return std::polar(std::exp(gauss), theta);
}

}  // namespace udwq::weyl
