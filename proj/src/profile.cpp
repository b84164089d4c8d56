#include "udwq/field/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "udwq/field/grid.hpp"

namespace udwq::field {

namespace {

double bump_shape(double r, double radius) {
  const double u = r / radius;
  if (u >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

// integral of the bump over R^dim, for unit normalization
double bump_norm(double radius, int dim) {
  static constexpr int kInner = 512;
  std::vector<double> x, w;
  gauss_legendre(kInner, 0.0, radius, x, w);
  double s = 0.0;
  for (int i = 0; i < kInner; ++i) {
    const double shape = bump_shape(x[i], radius);
    s += w[i] * shape * (dim == 3 ? 4.0 * std::numbers::pi * x[i] * x[i] : 2.0);
  }
  return s;
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

double bump_radial_fourier(double k, double radius, int dim) {
  static constexpr int kInner = 512;
  std::vector<double> x, w;
  gauss_legendre(kInner, 0.0, radius, x, w);
  double s = 0.0;
  for (int i = 0; i < kInner; ++i) {
    const double shape = bump_shape(x[i], radius);
    if (dim == 3)
      s += w[i] * 4.0 * std::numbers::pi * x[i] * x[i] * shape * sinc(k * x[i]);
    else
      s += w[i] * 2.0 * shape * std::cos(k * x[i]);
  }
  return s / bump_norm(radius, dim);
}

}  // namespace

void validate(const SpatialProfile& profile) {
  std::visit(
      [](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GaussianProfile>) {
          if (!(p.width > 0.0))
            throw PreconditionError("GaussianProfile: width must be > 0");
        } else if constexpr (std::is_same_v<T, CompactBumpProfile>) {
          if (!(p.radius > 0.0))
            throw PreconditionError("CompactBumpProfile: radius must be > 0");
        } else {
          if (p.k_nodes.size() != p.values.size() || p.k_nodes.empty())
            throw PreconditionError("TabulatedFourierProfile: node/value size mismatch");
          if (!std::is_sorted(p.k_nodes.begin(), p.k_nodes.end()))
            throw PreconditionError("TabulatedFourierProfile: nodes must ascend");
        }
      },
      profile);
}

Eigen::Vector3d profile_center(const SpatialProfile& profile) {
  return std::visit([](const auto& p) { return p.center; }, profile);
}

std::complex<double> radial_fourier(const SpatialProfile& profile, double k_mag,
                                    int dim) {
  return std::visit(
      [&](const auto& p) -> std::complex<double> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GaussianProfile>) {
          return std::exp(-0.5 * p.width * p.width * k_mag * k_mag);
        } else if constexpr (std::is_same_v<T, CompactBumpProfile>) {
          return bump_radial_fourier(k_mag, p.radius, dim);
        } else {
          const auto& ks = p.k_nodes;
          if (k_mag < ks.front() - 1e-12 || k_mag > ks.back() + 1e-12)
            throw std::out_of_range("TabulatedFourierProfile: k outside tabulated range");
          auto it = std::lower_bound(ks.begin(), ks.end(), k_mag);
          if (it == ks.end()) return p.values.back();
          const std::size_t hi = static_cast<std::size_t>(it - ks.begin());
          if (hi == 0 || *it == k_mag) return p.values[hi];
          const double t = (k_mag - ks[hi - 1]) / (ks[hi] - ks[hi - 1]);
          return (1.0 - t) * p.values[hi - 1] + t * p.values[hi];
        }
      },
      profile);
}

std::complex<double> spatial_profile_fourier(const SpatialProfile& profile,
                                             const Eigen::VectorXd& k, int dim) {
  Eigen::Vector3d kv = Eigen::Vector3d::Zero();
  for (int i = 0; i < k.size() && i < 3; ++i) kv[i] = k[i];
  const Eigen::Vector3d c = profile_center(profile);
  const std::complex<double> phase = std::exp(std::complex<double>(0.0, -kv.dot(c)));
  return phase * radial_fourier(profile, kv.norm(), dim);
}

double profile_real_space(const SpatialProfile& profile, double r, int dim) {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GaussianProfile>) {
          const double s2 = p.width * p.width;
          return std::exp(-0.5 * r * r / s2) /
                 std::pow(2.0 * std::numbers::pi * s2, 0.5 * dim);
        } else if constexpr (std::is_same_v<T, CompactBumpProfile>) {
          return bump_shape(r, p.radius) / bump_norm(p.radius, dim);
        } else {
          throw PreconditionError("tabulated profile has no closed real-space form");
        }
      },
      profile);
}

}  // namespace udwq::field
