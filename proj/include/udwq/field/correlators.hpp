#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <memory>

#include "udwq/field/grid.hpp"
#include "udwq/field/smearing.hpp"
#include "udwq/field/spacetime_model.hpp"
#include "udwq/weyl/bilinear_table.hpp"

namespace udwq::field {

// Discretized momentum-space amplitude f_k of a delta-coupled smearing,
//   f_k = -i * integral dV f(x) u_k*(x).
// On a Radial3D grid `values` holds the radial factor with the center phase
// e^{-i k.c} kept analytic (the bilinears integrate it as a sinc kernel);
// on a Cartesian1D grid `values` is the full amplitude per signed-k node.
struct ModeAmplitude {
  std::shared_ptr<const KGrid> grid;
  Eigen::VectorXcd values;
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
};

ModeAmplitude mode_amplitude(const SpacetimeModel& model, const SmearingSpec& smearing,
                             std::shared_ptr<const KGrid> grid);

// W(f,g) = <KEf, KEg> = integral d^n k  f_k* g_k   (complex)
std::complex<double> wightman(const ModeAmplitude& f, const ModeAmplitude& g);

// E(f,g) = 2 Im W(f,g)   (antisymmetric causal propagator)
double causal_propagator(const ModeAmplitude& f, const ModeAmplitude& g);

// H(f,g) = 2 Re W(f,g)   (symmetric Hadamard function)
double hadamard(const ModeAmplitude& f, const ModeAmplitude& g);

// Batch evaluation over the ordered basis {f1, f2, g1, g2}.
weyl::BilinearTable build_bilinear_table(const SpacetimeModel& model,
                                         const std::array<SmearingSpec, 4>& smearings,
                                         std::shared_ptr<const KGrid> grid);

weyl::BilinearTable build_bilinear_table(const std::array<ModeAmplitude, 4>& amps);

}  // namespace udwq::field
