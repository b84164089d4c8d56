#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <variant>
#include <vector>

#include "udwq/support/errors.hpp"

namespace udwq::field {

// Spatial smearing profiles, normalized to unit integral so that the
// zero-frequency Fourier component is 1. All shipped profiles are radially
// symmetric about their center; the transform factorizes as
//   F~(k) = e^{-i k.c} * F0(|k|)
// with F0 the radial factor returned by radial_fourier().

struct GaussianProfile {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double width = 1.0;  // sigma
};

struct CompactBumpProfile {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double radius = 1.0;
};

// Radial Fourier data on explicit |k| nodes (e.g. Bob's solved decoding
// profiles). Evaluation off a node interpolates linearly; outside the
// tabulated range it throws.
struct TabulatedFourierProfile {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  std::vector<double> k_nodes;                 // ascending
  std::vector<std::complex<double>> values;    // F0(k) at k_nodes
};

using SpatialProfile =
    std::variant<GaussianProfile, CompactBumpProfile, TabulatedFourierProfile>;

void validate(const SpatialProfile& profile);

Eigen::Vector3d profile_center(const SpatialProfile& profile);

// Radial factor F0(|k|) of the unit-normalized profile (center phase removed).
// dim is the spatial dimension (1 or 3); the bump transform is quadrature.
std::complex<double> radial_fourier(const SpatialProfile& profile, double k_mag,
                                    int dim);

// Full transform F~(k) = integral d^n x F(x) e^{-i k.x}; k may have fewer
// components than 3 (missing ones are zero).
std::complex<double> spatial_profile_fourier(const SpatialProfile& profile,
                                             const Eigen::VectorXd& k, int dim);

// Real-space value of the profile at radius r from its center (diagnostics
// and the brute-force transform oracle). Not defined for tabulated profiles.
double profile_real_space(const SpatialProfile& profile, double r, int dim);

}  // namespace udwq::field
