#include "udwq/field/grid.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace udwq::field {

namespace {

struct CanonicalRule {
  std::vector<double> nodes;  // on [-1, 1]
  std::vector<double> weights;
};

// Newton iteration on P_n is O(n^2); the canonical rule is cached per order.
const CanonicalRule& canonical_gauss_legendre(int n) {
  static std::map<int, CanonicalRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  CanonicalRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev estimate of the i-th root of P_n, then Newton
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  const CanonicalRule& rule = canonical_gauss_legendre(n);
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const double xm = 0.5 * (b + a);
  const double xl = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    nodes[i] = xm + xl * rule.nodes[i];
    weights[i] = xl * rule.weights[i];
  }
}

KGrid KGrid::radial_3d(double cutoff, int points) {
  if (!(cutoff > 0.0)) throw PreconditionError("KGrid: cutoff must be > 0");
  if (points < 16) throw PreconditionError("KGrid: need at least 16 points per axis");
  KGrid g(Kind::Radial3D, cutoff);
  gauss_legendre(points, 0.0, cutoff, g.nodes_, g.weights_);
  for (int i = 0; i < points; ++i)
    g.weights_[i] *= 4.0 * std::numbers::pi * g.nodes_[i] * g.nodes_[i];
  return g;
}

KGrid KGrid::cartesian_1d(double cutoff, int points) {
  if (!(cutoff > 0.0)) throw PreconditionError("KGrid: cutoff must be > 0");
  if (points < 16) throw PreconditionError("KGrid: need at least 16 points per axis");
  KGrid g(Kind::Cartesian1D, cutoff);
  gauss_legendre(points, -cutoff, cutoff, g.nodes_, g.weights_);
  return g;
}

}  // namespace udwq::field
