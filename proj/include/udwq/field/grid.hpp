#pragma once

#include <cstddef>
#include <vector>

#include "udwq/support/errors.hpp"

namespace udwq::field {

// Momentum-space quadrature grid.
//
// Radial3D: Gauss-Legendre nodes on (0, cutoff) for the radial |k| integral
// of a 3-dimensional momentum integral; the node weights already contain the
// measure factor 4*pi*k^2. The angular integral is done analytically by the
// correlators (sinc kernel), which is exact for radially symmetric profiles.
// Gauss-Legendre nodes never touch k = 0, so the massless radial integrand
// needs no special casing.
//
// Cartesian1D: Gauss-Legendre nodes on (-cutoff, cutoff), symmetric under
// k -> -k by construction (needed so equal-time commutators of real profiles
// cancel to machine precision).
class KGrid {
 public:
  enum class Kind { Radial3D, Cartesian1D };

  static KGrid radial_3d(double cutoff, int points);
  static KGrid cartesian_1d(double cutoff, int points);

  Kind kind() const { return kind_; }
  double cutoff() const { return cutoff_; }
  int points() const { return static_cast<int>(nodes_.size()); }

  const std::vector<double>& nodes() const { return nodes_; }
  // d^n k measure weights (GL weight times 4*pi*k^2 for Radial3D).
  const std::vector<double>& weights() const { return weights_; }

  bool same_as(const KGrid& other) const {
    return kind_ == other.kind_ && cutoff_ == other.cutoff_ &&
           nodes_.size() == other.nodes_.size();
  }

 private:
  KGrid(Kind kind, double cutoff) : kind_(kind), cutoff_(cutoff) {}

  Kind kind_;
  double cutoff_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

// Gauss-Legendre nodes/weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace udwq::field
