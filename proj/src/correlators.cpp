#include "udwq/field/correlators.hpp"

#include <cmath>

namespace udwq::field {

namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

void check_same_grid(const ModeAmplitude& f, const ModeAmplitude& g) {
  if (!f.grid || !g.grid || !f.grid->same_as(*g.grid))
    throw ContractViolation("grid-match", 0.0,
                            "bilinears require amplitudes on the same grid");
}

}  // namespace

ModeAmplitude mode_amplitude(const SpacetimeModel& model, const SmearingSpec& smearing,
                             std::shared_ptr<const KGrid> grid) {
  smearing.validate();
  const int dim = model.spatial_dimension();
  if ((dim == 3) != (grid->kind() == KGrid::Kind::Radial3D))
    throw PreconditionError("mode_amplitude: grid kind does not match model dimension");

  ModeAmplitude amp;
  amp.grid = grid;
  amp.center = smearing.center();
  const auto& nodes = grid->nodes();
  amp.values.setZero(static_cast<Eigen::Index>(nodes.size()));

  const std::complex<double> minus_i(0.0, -1.0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double k_mag = std::abs(nodes[i]);
    const double omega = model.dispersion(k_mag);
    std::complex<double> v = 0.0;
    for (const auto& comp : smearing.components) {
      // u_k*(t0,.) carries e^{+i w t0}; DeltaPrime is d/dt0 of Delta.
      std::complex<double> temporal = std::exp(std::complex<double>(0.0, omega * comp.time));
      if (comp.kind == TemporalKind::DeltaPrime)
        temporal *= std::complex<double>(0.0, omega);
      // signed node on the line (tabulated 1D data need not be even in k)
      std::complex<double> spatial = radial_fourier(comp.profile, nodes[i], dim);
      if (grid->kind() == KGrid::Kind::Cartesian1D)
        spatial *= std::exp(std::complex<double>(0.0, -nodes[i] * amp.center[0]));
      v += minus_i * smearing.coupling * spatial * temporal * model.mode_normalization(k_mag);
    }
    amp.values[static_cast<Eigen::Index>(i)] = v;
  }
  if (grid->kind() == KGrid::Kind::Cartesian1D) amp.center.setZero();
  return amp;
}

std::complex<double> wightman(const ModeAmplitude& f, const ModeAmplitude& g) {
  check_same_grid(f, g);
  const auto& w = f.grid->weights();
  const auto& k = f.grid->nodes();
  // The complex product is formed first and scaled by a single real factor:
  // conj(f)*g and conj(g)*f then have exactly opposite imaginary parts node
  // by node, so W(g,f) = conj(W(f,g)) and E(f,f) = 0 hold bitwise.
  std::complex<double> acc = 0.0;
  if (f.grid->kind() == KGrid::Kind::Radial3D) {
    const double d = (f.center - g.center).norm();
    for (std::size_t i = 0; i < k.size(); ++i) {
      const auto idx = static_cast<Eigen::Index>(i);
      const double scale = w[i] * sinc(k[i] * d);
      acc += scale * (std::conj(f.values[idx]) * g.values[idx]);
    }
  } else {
    for (std::size_t i = 0; i < k.size(); ++i) {
      const auto idx = static_cast<Eigen::Index>(i);
      acc += w[i] * (std::conj(f.values[idx]) * g.values[idx]);
    }
  }
  return acc;
}

double causal_propagator(const ModeAmplitude& f, const ModeAmplitude& g) {
  return 2.0 * wightman(f, g).imag();
}

double hadamard(const ModeAmplitude& f, const ModeAmplitude& g) {
  return 2.0 * wightman(f, g).real();
}

weyl::BilinearTable build_bilinear_table(const std::array<ModeAmplitude, 4>& amps) {
  weyl::BilinearTable t;
  for (int i = 0; i < 4; ++i) {
    t.E(i, i) = 0.0;
    t.H(i, i) = 2.0 * wightman(amps[i], amps[i]).real();
    for (int j = i + 1; j < 4; ++j) {
      const std::complex<double> wij = wightman(amps[i], amps[j]);
      t.E(i, j) = 2.0 * wij.imag();
      t.E(j, i) = -t.E(i, j);
      t.H(i, j) = 2.0 * wij.real();
      t.H(j, i) = t.H(i, j);
    }
  }
  t.validate();
  return t;
}

weyl::BilinearTable build_bilinear_table(const SpacetimeModel& model,
                                         const std::array<SmearingSpec, 4>& smearings,
                                         std::shared_ptr<const KGrid> grid) {
  std::array<ModeAmplitude, 4> amps;
  for (int i = 0; i < 4; ++i) amps[i] = mode_amplitude(model, smearings[i], grid);
  return build_bilinear_table(amps);
}

}  // namespace udwq::field
