#pragma once

#include <cmath>
#include <vector>

#include "udwq/field/profile.hpp"

namespace udwq::field {

// Temporal part of a delta-coupled smearing at coordinate time t0.
//
// Delta       : f(t,x) = lambda * delta(t - t0) * F(x)
// DeltaPrime  : the conjugate-momentum coupling pi(F) = phi(-delta' . F);
//               with the convention  integral delta'(t-t0) h(t) dt = -h'(t0)
//               its mode amplitude is d/dt0 of the Delta amplitude, i.e. a
//               relative factor i*w(k).
enum class TemporalKind { Delta, DeltaPrime };

struct SmearingComponent {
  TemporalKind kind = TemporalKind::Delta;
  double time = 0.0;
  SpatialProfile profile;
};

// Coupling strength plus one or more temporal/spatial components. Simple
// smearings have a single component; Bob's solved decoding smearings carry a
// Delta plus a DeltaPrime component at his slice time. All components of one
// smearing must share a spatial center.
struct SmearingSpec {
  double coupling = 0.0;
  std::vector<SmearingComponent> components;

  SmearingSpec() = default;
  SmearingSpec(double lambda, TemporalKind kind, double t0, SpatialProfile profile)
      : coupling(lambda) {
    components.push_back({kind, t0, std::move(profile)});
  }

  void validate() const {
    if (!std::isfinite(coupling))
      throw PreconditionError("SmearingSpec: coupling must be finite");
    if (components.empty())
      throw PreconditionError("SmearingSpec: needs at least one component");
    const Eigen::Vector3d c0 = field::profile_center(components.front().profile);
    for (const auto& comp : components) {
      field::validate(comp.profile);
      if ((field::profile_center(comp.profile) - c0).norm() > 0.0)
        throw PreconditionError("SmearingSpec: components must share a center");
    }
  }

  Eigen::Vector3d center() const {
    return field::profile_center(components.front().profile);
  }
};

}  // namespace udwq::field
