#pragma once

#include <cmath>
#include <memory>

#include "udwq/support/errors.hpp"

namespace udwq::field {

// Mode model for a free scalar field on a static foliation. The shipped
// backends are Minkowski 1+1 and 3+1 with plane-wave modes
//   u_k(t,x) = e^{i(k.x - w(k) t)} / sqrt(2 w(k) (2 pi)^n),
// delta-normalized in the Klein-Gordon product. Curvature couplings are
// carried as metadata and fixed to zero here; other geometries plug in
// through this interface.
class SpacetimeModel {
 public:
  virtual ~SpacetimeModel() = default;

  virtual int spatial_dimension() const = 0;
  virtual double mass() const = 0;

  // w(k) = sqrt(k^2 + m^2); strictly positive away from k=0 when m=0.
  double dispersion(double k_mag) const {
    const double m = mass();
    return std::sqrt(k_mag * k_mag + m * m);
  }

  // 1 / sqrt(2 w (2 pi)^n)
  double mode_normalization(double k_mag) const {
    const double n = spatial_dimension();
    return 1.0 / std::sqrt(2.0 * dispersion(k_mag) * std::pow(2.0 * std::numbers::pi, n));
  }

  double nonminimal_coupling_xi() const { return 0.0; }
  double ricci_scalar() const { return 0.0; }
};

class Minkowski3p1 final : public SpacetimeModel {
 public:
  explicit Minkowski3p1(double mass = 0.0) : mass_(mass) {
    if (mass < 0.0) throw PreconditionError("Minkowski3p1: mass must be >= 0");
  }
  int spatial_dimension() const override { return 3; }
  double mass() const override { return mass_; }

 private:
  double mass_;
};

// The massless 1+1 Wightman function is infrared-divergent; this backend
// requires m > 0.
class Minkowski1p1 final : public SpacetimeModel {
 public:
  explicit Minkowski1p1(double mass) : mass_(mass) {
    if (!(mass > 0.0))
      throw PreconditionError(
          "Minkowski1p1: massless 1+1 field is infrared-divergent, need m > 0");
  }
  int spatial_dimension() const override { return 1; }
  double mass() const override { return mass_; }

 private:
  double mass_;
};

}  // namespace udwq::field
