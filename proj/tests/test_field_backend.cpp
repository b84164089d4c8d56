#include <doctest.h>

#include <numbers>

#include "support/builders.hpp"
#include "udwq/field/correlators.hpp"

using namespace udwq;
using std::numbers::pi;

namespace {

std::shared_ptr<const field::KGrid> radial_grid(double cutoff = 12.0, int points = 1024) {
  return std::make_shared<const field::KGrid>(field::KGrid::radial_3d(cutoff, points));
}

std::shared_ptr<const field::KGrid> line_grid(double cutoff = 12.0, int points = 1024) {
  return std::make_shared<const field::KGrid>(field::KGrid::cartesian_1d(cutoff, points));
}

}  // namespace

TEST_CASE("gaussian profile fourier transform") {
  field::GaussianProfile g{Eigen::Vector3d::Zero(), 1.3};
  Eigen::VectorXd k0 = Eigen::VectorXd::Zero(3);
  CHECK(field::spatial_profile_fourier(g, k0, 3).real() == doctest::Approx(1.0));

  Rng rng(3);
  for (int i = 0; i < 8; ++i) {
    Eigen::VectorXd k(3);
    for (int j = 0; j < 3; ++j) k[j] = rng.uniform(-4.0, 4.0);
    const double expect = std::exp(-0.5 * 1.3 * 1.3 * k.squaredNorm());
    CHECK(std::abs(field::spatial_profile_fourier(g, k, 3)) ==
          doctest::Approx(expect).epsilon(1e-12));
  }

  // off-center profile picks up the translation phase
  field::GaussianProfile gc{Eigen::Vector3d(0.7, -0.2, 0.1), 1.0};
  Eigen::VectorXd k(3);
  k << 0.5, 1.0, -0.3;
  const std::complex<double> expect =
      std::exp(std::complex<double>(0.0, -(k[0] * 0.7 - k[1] * 0.2 + k[2] * 0.1))) *
      std::exp(-0.5 * k.squaredNorm());
  CHECK(std::abs(field::spatial_profile_fourier(gc, k, 3) - expect) < 1e-12);
}

TEST_CASE("compact bump fourier matches real-space quadrature") {
  field::CompactBumpProfile bump{Eigen::Vector3d::Zero(), 2.0};

  // independent oracle: dense trapezoid over the real-space profile
  auto oracle_3d = [&](double kmag) {
    const int n = 20000;
    const double h = bump.radius / n;
    double acc = 0.0;
    for (int i = 1; i < n; ++i) {
      const double r = i * h;
      const double s = kmag * r;
      const double sinc = s < 1e-8 ? 1.0 : std::sin(s) / s;
      acc += 4.0 * pi * r * r * field::profile_real_space(bump, r, 3) * sinc * h;
    }
    return acc;
  };

  for (double kmag : {0.0, 0.4, 1.1, 2.7}) {
    const double got = field::radial_fourier(bump, kmag, 3).real();
    CHECK(got == doctest::Approx(oracle_3d(kmag)).epsilon(1e-8));
  }
  CHECK(field::radial_fourier(bump, 0.0, 3).real() == doctest::Approx(1.0).epsilon(1e-10));

  // line version against its own real-space oracle
  auto oracle_1d = [&](double k) {
    const int n = 20000;
    const double h = bump.radius / n;
    double acc = h * field::profile_real_space(bump, 0.0, 1);  // x = 0 endpoint
    for (int i = 1; i < n; ++i) {
      const double x = i * h;
      acc += 2.0 * field::profile_real_space(bump, x, 1) * std::cos(k * x) * h;
    }
    return acc;
  };
  for (double k : {0.3, 1.7}) {
    CHECK(field::radial_fourier(bump, k, 1).real() ==
          doctest::Approx(oracle_1d(k)).epsilon(1e-8));
  }
}

TEST_CASE("tabulated profile interpolates and rejects out-of-range") {
  field::TabulatedFourierProfile tab;
  tab.k_nodes = {0.0, 1.0, 2.0};
  tab.values = {{1.0, 0.0}, {0.5, 0.1}, {0.25, 0.0}};
  CHECK(field::radial_fourier(tab, 0.5, 3) == std::complex<double>(0.75, 0.05));
  CHECK(field::radial_fourier(tab, 1.0, 3) == std::complex<double>(0.5, 0.1));
  CHECK_THROWS_AS((void)field::radial_fourier(tab, 2.5, 3), std::out_of_range);
}

TEST_CASE("mode amplitude: zero coupling, closed form, delta-prime factor") {
  field::Minkowski3p1 model(0.0);
  auto grid = radial_grid();
  field::GaussianProfile gauss;

  field::SmearingSpec zero(0.0, field::TemporalKind::Delta, 0.0, gauss);
  CHECK(field::mode_amplitude(model, zero, grid).values.cwiseAbs().maxCoeff() == 0.0);

  // |f_k| = lambda e^{-sigma^2 k^2/2} / sqrt(2 k (2 pi)^3) for the massless
  // 3+1 Gaussian Delta smearing
  const double lambda = 0.8;
  field::SmearingSpec f(lambda, field::TemporalKind::Delta, 0.0, gauss);
  const auto amp = field::mode_amplitude(model, f, grid);
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto i = static_cast<Eigen::Index>(
        rng.next_u64() % static_cast<std::uint64_t>(grid->points()));
    const double k = grid->nodes()[static_cast<std::size_t>(i)];
    const double expect =
        lambda * std::exp(-0.5 * k * k) / std::sqrt(2.0 * k * std::pow(2.0 * pi, 3));
    CHECK(std::abs(amp.values[i]) == doctest::Approx(expect).epsilon(1e-12));
  }

  // DeltaPrime amplitude = d/dt0 of the Delta amplitude = i w(k) * Delta
  const double t0 = 0.37, h = 1e-5;
  field::SmearingSpec fp(lambda, field::TemporalKind::DeltaPrime, t0, gauss);
  field::SmearingSpec f_plus(lambda, field::TemporalKind::Delta, t0 + h, gauss);
  field::SmearingSpec f_minus(lambda, field::TemporalKind::Delta, t0 - h, gauss);
  const auto ap = field::mode_amplitude(model, fp, grid);
  const auto aplus = field::mode_amplitude(model, f_plus, grid);
  const auto aminus = field::mode_amplitude(model, f_minus, grid);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < ap.values.size(); ++i) {
    const std::complex<double> fd = (aplus.values[i] - aminus.values[i]) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - ap.values[i]) / std::abs(ap.values[i]));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("wightman sesquilinearity and positivity") {
  field::Minkowski3p1 model(0.0);
  auto grid = radial_grid();
  field::GaussianProfile ga{Eigen::Vector3d::Zero(), 1.0};
  field::GaussianProfile gb{Eigen::Vector3d(1.5, 0.0, 0.0), 0.8};
  const auto f = field::mode_amplitude(
      model, field::SmearingSpec(0.9, field::TemporalKind::Delta, 0.0, ga), grid);
  const auto g = field::mode_amplitude(
      model, field::SmearingSpec(1.1, field::TemporalKind::DeltaPrime, 0.4, gb), grid);

  const auto wff = field::wightman(f, f);
  CHECK(wff.real() > 0.0);
  CHECK(wff.imag() == 0.0);
  CHECK(std::abs(field::wightman(f, g) - std::conj(field::wightman(g, f))) < 1e-16);

  auto other = radial_grid(12.0, 512);
  const auto h = field::mode_amplitude(
      model, field::SmearingSpec(1.0, field::TemporalKind::Delta, 0.0, ga), other);
  CHECK_THROWS_AS((void)field::wightman(f, h), ContractViolation);
}

TEST_CASE("bilinears match the discrete-mode oracle on a matched grid") {
  // 1+1: fold the full grid into discrete modes, alpha = f_k sqrt(weight)
  field::Minkowski1p1 model(1.0);
  auto grid = line_grid(8.0, 64);
  field::GaussianProfile ga{Eigen::Vector3d::Zero(), 1.0};
  field::GaussianProfile gb{Eigen::Vector3d(0.6, 0.0, 0.0), 1.2};
  std::array<field::SmearingSpec, 4> specs = {
      field::SmearingSpec(0.7, field::TemporalKind::Delta, 0.0, ga),
      field::SmearingSpec(0.4, field::TemporalKind::DeltaPrime, 0.0, ga),
      field::SmearingSpec(0.5, field::TemporalKind::Delta, 0.3, gb),
      field::SmearingSpec(0.3, field::TemporalKind::DeltaPrime, 0.3, gb)};

  std::array<field::ModeAmplitude, 4> amps;
  for (int b = 0; b < 4; ++b) amps[b] = field::mode_amplitude(model, specs[b], grid);

  fock::DiscreteModeModel dm;
  dm.alpha.resize(4, grid->points());
  for (int b = 0; b < 4; ++b)
    for (int m = 0; m < grid->points(); ++m)
      dm.alpha(b, m) = amps[b].values[m] * std::sqrt(grid->weights()[m]);

  const auto via_field = field::build_bilinear_table(amps);
  const auto via_oracle = fock::oracle_bilinears(dm);
  CHECK((via_field.E - via_oracle.E).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((via_field.H - via_oracle.H).cwiseAbs().maxCoeff() < 1e-12);

  // 3+1 concentric pair (sinc kernel = 1): same construction
  field::Minkowski3p1 model3(0.0);
  auto grid3 = radial_grid(12.0, 64);
  std::array<field::SmearingSpec, 4> specs3 = {
      field::SmearingSpec(0.7, field::TemporalKind::Delta, 0.0, ga),
      field::SmearingSpec(0.4, field::TemporalKind::DeltaPrime, 0.0, ga),
      field::SmearingSpec(0.5, field::TemporalKind::Delta, 0.5, ga),
      field::SmearingSpec(0.3, field::TemporalKind::DeltaPrime, 0.5, ga)};
  std::array<field::ModeAmplitude, 4> amps3;
  for (int b = 0; b < 4; ++b) amps3[b] = field::mode_amplitude(model3, specs3[b], grid3);
  fock::DiscreteModeModel dm3;
  dm3.alpha.resize(4, grid3->points());
  for (int b = 0; b < 4; ++b)
    for (int m = 0; m < grid3->points(); ++m)
      dm3.alpha(b, m) = amps3[b].values[m] * std::sqrt(grid3->weights()[m]);
  const auto via_field3 = field::build_bilinear_table(amps3);
  const auto via_oracle3 = fock::oracle_bilinears(dm3);
  CHECK((via_field3.E - via_oracle3.E).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((via_field3.H - via_oracle3.H).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("separated-center wightman against an independent quadrature oracle") {
  field::Minkowski3p1 model(0.0);
  auto grid = radial_grid(12.0, 2048);
  field::GaussianProfile ga{Eigen::Vector3d::Zero(), 1.0};
  field::GaussianProfile gb{Eigen::Vector3d(0.0, 2.0, 0.0), 1.0};
  const auto f = field::mode_amplitude(
      model, field::SmearingSpec(1.0, field::TemporalKind::Delta, 0.0, ga), grid);
  const auto g = field::mode_amplitude(
      model, field::SmearingSpec(1.0, field::TemporalKind::Delta, 0.7, gb), grid);

  // Simpson rule in k with the angular sinc kernel written out
  const int n = 40000;  // even
  const double h = 12.0 / n;
  auto integrand = [&](double k) -> std::complex<double> {
    if (k == 0.0) return 0.0;
    const double sinc = std::sin(2.0 * k) / (2.0 * k);
    return 4.0 * pi * k * k * std::exp(-k * k) / (2.0 * k * std::pow(2.0 * pi, 3)) *
           sinc * std::exp(std::complex<double>(0.0, k * 0.7));
  };
  std::complex<double> acc = 0.0;
  for (int i = 0; i < n; i += 2)
    acc += h / 3.0 *
           (integrand(i * h) + 4.0 * integrand((i + 1) * h) + integrand((i + 2) * h));
  const auto got = field::wightman(f, g);
  CHECK(std::abs(got - acc) < 1e-8 * std::abs(acc));
}

TEST_CASE("causal propagator antisymmetry and spacelike vanishing") {
  field::Minkowski3p1 model(0.0);
  auto grid = radial_grid(12.0, 2048);
  field::GaussianProfile ga{Eigen::Vector3d::Zero(), 1.0};
  field::GaussianProfile gfar{Eigen::Vector3d(20.0, 0.0, 0.0), 1.0};

  const auto f = field::mode_amplitude(
      model, field::SmearingSpec(1.0, field::TemporalKind::Delta, 0.0, ga), grid);
  const auto fp = field::mode_amplitude(
      model, field::SmearingSpec(1.0, field::TemporalKind::DeltaPrime, 0.0, ga), grid);
  const auto far_d = field::mode_amplitude(
      model, field::SmearingSpec(1.0, field::TemporalKind::Delta, 0.0, gfar), grid);
  const auto far_p = field::mode_amplitude(
      model, field::SmearingSpec(1.0, field::TemporalKind::DeltaPrime, 0.0, gfar), grid);

  CHECK(field::causal_propagator(f, f) == 0.0);
  CHECK(field::causal_propagator(f, fp) + field::causal_propagator(fp, f) == 0.0);

  const double scale = field::causal_propagator(f, fp);
  CHECK(scale > 0.0);
  // equal-time, 20 sigma apart: all cross pairs causally disconnected
  CHECK(std::abs(field::causal_propagator(f, far_d)) < 1e-10 * scale);
  CHECK(std::abs(field::causal_propagator(f, far_p)) < 1e-10 * scale);
  CHECK(std::abs(field::causal_propagator(fp, far_p)) < 1e-10 * scale);

  // compactly supported profiles, disjoint supports; the bump transform
  // decays sub-exponentially so its quadrature needs a larger cutoff than
  // the Gaussian default (the convergence study puts Lambda = 60 at ~7e-12)
  auto bump_grid = radial_grid(60.0, 2048);
  field::CompactBumpProfile near{Eigen::Vector3d::Zero(), 1.0};
  field::CompactBumpProfile away{Eigen::Vector3d(3.0, 0.0, 0.0), 1.0};
  const auto bn = field::mode_amplitude(
      model, field::SmearingSpec(1.0, field::TemporalKind::Delta, 0.0, near), bump_grid);
  const auto bp = field::mode_amplitude(
      model, field::SmearingSpec(1.0, field::TemporalKind::DeltaPrime, 0.0, near),
      bump_grid);
  const auto bf = field::mode_amplitude(
      model, field::SmearingSpec(1.0, field::TemporalKind::DeltaPrime, 0.0, away),
      bump_grid);
  const double bump_scale = std::abs(field::causal_propagator(bn, bp));
  CHECK(std::abs(field::causal_propagator(bn, bf)) < 1e-10 * bump_scale);
}

TEST_CASE("hadamard symmetry, diagonal, uncertainty bound") {
  field::Minkowski3p1 model(0.0);
  auto grid = radial_grid();
  field::GaussianProfile ga{Eigen::Vector3d::Zero(), 1.0};
  field::GaussianProfile gb{Eigen::Vector3d(0.8, 0.0, 0.0), 1.1};
  const auto f = field::mode_amplitude(
      model, field::SmearingSpec(0.9, field::TemporalKind::Delta, 0.0, ga), grid);
  const auto g = field::mode_amplitude(
      model, field::SmearingSpec(0.7, field::TemporalKind::DeltaPrime, 0.3, gb), grid);

  CHECK(field::hadamard(f, g) == field::hadamard(g, f));
  CHECK(field::hadamard(f, f) == doctest::Approx(2.0 * field::wightman(f, f).real()));

  // quasifree positivity: E^2 + H^2 <= H(f,f) H(g,g)
  const double e = field::causal_propagator(f, g);
  const double h12 = field::hadamard(f, g);
  CHECK(e * e + h12 * h12 <=
        field::hadamard(f, f) * field::hadamard(g, g) * (1.0 + 1e-12));
}

TEST_CASE("bilinear table construction and invariants") {
  field::Minkowski3p1 model(0.0);
  auto grid = radial_grid();
  field::GaussianProfile ga;

  std::array<field::SmearingSpec, 4> zero = {
      field::SmearingSpec(0.0, field::TemporalKind::Delta, 0.0, ga),
      field::SmearingSpec(0.0, field::TemporalKind::DeltaPrime, 0.0, ga),
      field::SmearingSpec(0.0, field::TemporalKind::Delta, 0.0, ga),
      field::SmearingSpec(0.0, field::TemporalKind::DeltaPrime, 0.0, ga)};
  const auto zt = field::build_bilinear_table(model, zero, grid);
  CHECK(zt.E.cwiseAbs().maxCoeff() == 0.0);
  CHECK(zt.H.cwiseAbs().maxCoeff() == 0.0);

  field::SmearingSpec f1(0.8, field::TemporalKind::Delta, 0.0, ga);
  field::SmearingSpec f2(0.5, field::TemporalKind::DeltaPrime, 0.0, ga);
  const auto t = field::build_bilinear_table(model, {f1, f2, f1, f2}, grid);
  // duplicated blocks are bit-identical
  CHECK((t.E.block<2, 2>(0, 0) - t.E.block<2, 2>(2, 2)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((t.E.block<2, 2>(0, 0) - t.E.block<2, 2>(0, 2)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((t.H.block<2, 2>(0, 0) - t.H.block<2, 2>(2, 0)).cwiseAbs().maxCoeff() == 0.0);
  CHECK_NOTHROW(t.validate());

  weyl::BilinearTable bad = t;
  bad.E(0, 1) = 10.0;  // way beyond the uncertainty bound
  bad.E(1, 0) = -10.0;
  CHECK_THROWS_AS(bad.validate(), ContractViolation);
}

TEST_CASE("grid symmetry keeps equal-time commutators real on the line") {
  field::Minkowski1p1 model(0.7);
  auto grid = line_grid(10.0, 512);
  field::GaussianProfile ga{Eigen::Vector3d::Zero(), 1.0};
  field::GaussianProfile gb{Eigen::Vector3d(1.1, 0.0, 0.0), 0.9};
  const auto f = field::mode_amplitude(
      model, field::SmearingSpec(1.0, field::TemporalKind::Delta, 0.0, ga), grid);
  const auto g = field::mode_amplitude(
      model, field::SmearingSpec(1.0, field::TemporalKind::Delta, 0.0, gb), grid);
  // equal-time Delta pairs of real profiles commute; the symmetric grid must
  // cancel the imaginary parts pairwise
  const auto w = field::wightman(f, g);
  CHECK(std::abs(w.imag()) < 1e-12 * std::abs(w.real()));
}

TEST_CASE("massless 1+1 backend is rejected") {
  CHECK_THROWS_AS(field::Minkowski1p1(0.0), PreconditionError);
}

TEST_CASE("mode normalization reproduces the smeared equal-time CCR") {
  // [phi(F), pi(G)] = i integral F G d^n x: for unit Gaussians a distance d
  // apart the overlap is (4 pi)^{-3/2} e^{-d^2/4}; this pins the
  // 1/sqrt(2 w (2 pi)^n) mode normalization (delta-normalized KG modes)
  field::Minkowski3p1 model(0.0);
  auto grid = radial_grid(12.0, 2048);
  for (double d : {0.0, 1.0, 2.5}) {
    field::GaussianProfile ga{Eigen::Vector3d::Zero(), 1.0};
    field::GaussianProfile gb{Eigen::Vector3d(d, 0.0, 0.0), 1.0};
    const auto f = field::mode_amplitude(
        model, field::SmearingSpec(1.0, field::TemporalKind::Delta, 0.0, ga), grid);
    const auto p = field::mode_amplitude(
        model, field::SmearingSpec(1.0, field::TemporalKind::DeltaPrime, 0.0, gb), grid);
    const double expect =
        std::exp(-0.25 * d * d) / std::pow(4.0 * std::numbers::pi, 1.5);
    CHECK(field::causal_propagator(f, p) == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("1+1 amplitudes carry the conjugation symmetry of real profiles") {
  // f_{-k} = -e^{2 i w t0} f_k^* for Delta smearings of real profiles
  field::Minkowski1p1 model(0.8);
  auto grid = line_grid(10.0, 256);
  field::GaussianProfile ga{Eigen::Vector3d(0.4, 0.0, 0.0), 1.0};
  const double t0 = 0.6;
  const auto f = field::mode_amplitude(
      model, field::SmearingSpec(1.0, field::TemporalKind::Delta, t0, ga), grid);
  const int n = grid->points();
  for (int i = 0; i < n; ++i) {
    const int j = n - 1 - i;  // the symmetric grid pairs k <-> -k exactly
    const double omega = model.dispersion(std::abs(grid->nodes()[i]));
    const std::complex<double> expected =
        -std::exp(std::complex<double>(0.0, 2.0 * omega * t0)) * std::conj(f.values[i]);
    CHECK(std::abs(f.values[j] - expected) < 1e-14);
  }
}

TEST_CASE("grid-doubling convergence at shipped defaults") {
  auto table_at = [](int points, double cutoff) {
    field::Minkowski3p1 model(0.0);
    auto grid = std::make_shared<const field::KGrid>(
        field::KGrid::radial_3d(cutoff, points));
    field::GaussianProfile ga;
    field::SmearingSpec f1(0.8, field::TemporalKind::Delta, 0.0, ga);
    field::SmearingSpec f2(0.5, field::TemporalKind::DeltaPrime, 0.0, ga);
    field::GaussianProfile gb{Eigen::Vector3d(2.5, 0.0, 0.0), 1.0};
    field::SmearingSpec g1(0.8, field::TemporalKind::Delta, 1.2, gb);
    field::SmearingSpec g2(0.5, field::TemporalKind::DeltaPrime, 1.2, gb);
    return field::build_bilinear_table(model, {f1, f2, g1, g2}, grid);
  };
  const auto base = table_at(2048, 12.0);
  const auto fine = table_at(4096, 24.0);
  const double scale = std::max(base.H.cwiseAbs().maxCoeff(), 1e-300);
  CHECK((base.E - fine.E).cwiseAbs().maxCoeff() < 1e-6 * scale);
  CHECK((base.H - fine.H).cwiseAbs().maxCoeff() < 1e-6 * scale);
}
