#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mpmsdem/constitutive.hpp"

using namespace mpmsdem;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

// Full constitutive tensor of the isotropic law, contracted directly; the
// independent route for checking the optimized update.
void oracle_increment(const double sigma[3][3], const double rate[3][3], double K, double G,
                      double dt, double out[3][3]) {
  auto kron = [](int i, int j) { return i == j ? 1.0 : 0.0; };
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double d = 0.0;
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
          const double c = K * kron(i, j) * kron(k, l) +
                           G * (kron(i, k) * kron(j, l) + kron(i, l) * kron(j, k) -
                                (2.0 / 3.0) * kron(i, j) * kron(k, l));
          d += c * rate[k][l];
        }
      }
      out[i][j] = sigma[i][j] + dt * d;
    }
  }
}

StressState random_state(std::mt19937& rng, double mean_scale) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  StressState s;
  const double sm = mean_scale * (u(rng) > 0 ? 1.0 : -1.0) * (1.0 + 0.5 * std::abs(u(rng)));
  const double a = 0.4 * sm * u(rng);
  const double b = 0.4 * sm * u(rng);
  s.sigma << sm + b, a, a, sm - b;
  s.sigma_zz = sm + 0.4 * sm * u(rng);
  return s;
}

}  // namespace

TEST_CASE("dp_coefficients") {
  const auto [q0, k0] = dp_coefficients(0.0, 1.0);
  CHECK(q0 == 0.0);
  CHECK(k0 == doctest::Approx(1.0).epsilon(1e-14));

  const auto [q35, k35] = dp_coefficients(35.0 * kDeg, 0.0);
  CHECK(q35 == doctest::Approx(0.5444972).epsilon(1e-6));
  CHECK(k35 == 0.0);

  // cohesionless: zero intercept at any friction angle
  for (double phi : {5.0, 20.0, 44.0}) {
    CHECK(dp_coefficients(phi * kDeg, 0.0).k == 0.0);
  }
}

TEST_CASE("elastic increment: zero rates leave stress unchanged") {
  StressState s;
  s.sigma << 3.0, 1.0, 1.0, -2.0;
  s.sigma_zz = 0.5;
  const StressState out =
      elastic_stress_increment(s, Mat2::Zero(), Mat2::Zero(), 1e-3, {1e6, 5e5});
  CHECK((out.sigma - s.sigma).norm() == 0.0);
  CHECK(out.sigma_zz == s.sigma_zz);
}

TEST_CASE("elastic increment against the direct tensor contraction") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const ElasticParams p{2.0e6, 0.9e6};
  for (int trial = 0; trial < 50; ++trial) {
    StressState s = random_state(rng, 100.0);
    Mat2 rate;
    const double exx = u(rng), eyy = u(rng), exy = u(rng);
    rate << exx, exy, exy, eyy;
    const double dt = 1e-4;

    const StressState out = elastic_stress_increment(s, rate, Mat2::Zero(), dt, p);

    const double sig3[3][3] = {{s.sigma(0, 0), s.sigma(0, 1), 0},
                               {s.sigma(1, 0), s.sigma(1, 1), 0},
                               {0, 0, s.sigma_zz}};
    const double rate3[3][3] = {{exx, exy, 0}, {exy, eyy, 0}, {0, 0, 0}};
    double expect[3][3];
    oracle_increment(sig3, rate3, p.bulk_modulus, p.shear_modulus, dt, expect);

    CHECK(out.sigma(0, 0) == doctest::Approx(expect[0][0]).epsilon(1e-12));
    CHECK(out.sigma(1, 1) == doctest::Approx(expect[1][1]).epsilon(1e-12));
    CHECK(out.sigma(0, 1) == doctest::Approx(expect[0][1]).epsilon(1e-12));
    CHECK(out.sigma_zz == doctest::Approx(expect[2][2]).epsilon(1e-12));
    CHECK(std::abs(out.sigma(0, 1) - out.sigma(1, 0)) < 1e-12 * out.norm3());
  }

  SUBCASE("pure volumetric strain in plane strain") {
    StressState zero;
    Mat2 rate = 0.01 * Mat2::Identity();
    const StressState out = elastic_stress_increment(zero, rate, Mat2::Zero(), 1.0, p);
    // (K - 2G/3) tr + 2G diag, with tr = 0.02 over the 3D embedding
    const double lame = p.bulk_modulus - 2.0 * p.shear_modulus / 3.0;
    CHECK(out.sigma(0, 0) == doctest::Approx(lame * 0.02 + 2 * p.shear_modulus * 0.01));
    CHECK(out.sigma_zz == doctest::Approx(lame * 0.02));
  }
}

TEST_CASE("elastic increment is linear in strain rate and dt when spin free") {
  const ElasticParams p{1.5e6, 0.6e6};
  StressState s;
  s.sigma << 10.0, 2.0, 2.0, -4.0;
  s.sigma_zz = 3.0;
  Mat2 rate;
  rate << 0.3, -0.1, -0.1, 0.2;
  const StressState one = elastic_stress_increment(s, rate, Mat2::Zero(), 1e-3, p);
  const StressState twice_rate = elastic_stress_increment(s, 2.0 * rate, Mat2::Zero(), 1e-3, p);
  const StressState twice_dt = elastic_stress_increment(s, rate, Mat2::Zero(), 2e-3, p);
  CHECK((twice_rate.sigma - s.sigma - 2.0 * (one.sigma - s.sigma)).norm() < 1e-9);
  CHECK((twice_dt.sigma - s.sigma - 2.0 * (one.sigma - s.sigma)).norm() < 1e-9);
}

TEST_CASE("pure spin: invariants drift below 1e-6 |sigma| for |spin| dt = 1e-3") {
  std::mt19937 rng(5);
  const ElasticParams p{1e6, 5e5};
  const double w = 1.0, dt = 1e-3;  // |psi_dot| dt = 1e-3
  Mat2 spin;
  spin << 0.0, w, -w, 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const StressState s = random_state(rng, 50.0);
    const StressState out = elastic_stress_increment(s, Mat2::Zero(), spin, dt, p);
    // Exact rotation preserves the invariants, so compare against the inputs.
    CHECK(std::abs(out.i1() - s.i1()) < 1e-6 * s.norm3());
    CHECK(std::abs(out.tau() - s.tau()) < 1e-6 * s.norm3());
  }

  SUBCASE("one small-angle step tracks the exact rotation to O(dt^2)") {
    const StressState s = random_state(rng, 50.0);
    const StressState out = elastic_stress_increment(s, Mat2::Zero(), spin, dt, p);
    const double theta = -w * dt;  // spin(0,1) = +w corresponds to clockwise rotation
    Mat2 rot;
    rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    const Mat2 exact = rot * s.sigma * rot.transpose();
    CHECK((out.sigma - exact).norm() < 2.0 * dt * dt * w * w * s.norm3());
  }
}

TEST_CASE("return map leaves interior states untouched") {
  DruckerPragerParams dp;
  dp.friction_angle = 30.0 * kDeg;
  dp.cohesion = 10.0;
  dp.tensile_strength = 5.0;
  const ElasticParams e{1e6, 5e5};

  StressState s;
  s.sigma << -20.0, 1.0, 1.0, -22.0;
  s.sigma_zz = -21.0;
  const ReturnMapResult r = dp_return_map(s, dp, e);
  CHECK(r.yielded == YieldMode::None);
  CHECK((r.stress.sigma - s.sigma).norm() == 0.0);
  CHECK(r.stress.sigma_zz == s.sigma_zz);
}

TEST_CASE("hydrostatic tension returns to the cap with deviator intact") {
  DruckerPragerParams dp;
  dp.friction_angle = 30.0 * kDeg;
  dp.cohesion = 20.0;
  dp.tensile_strength = 5.0;
  const ElasticParams e{1e6, 5e5};

  StressState s;
  s.sigma << 12.0, 0.0, 0.0, 12.0;
  s.sigma_zz = 12.0;  // sigma_m = 12 > 5, tau = 0
  const ReturnMapResult r = dp_return_map(s, dp, e);
  CHECK(r.yielded == YieldMode::Tensile);
  CHECK(r.stress.mean_stress() == doctest::Approx(5.0).epsilon(1e-13));
  CHECK(r.stress.tau() == doctest::Approx(0.0));
  CHECK(r.stress.sigma(0, 1) == 0.0);
}

TEST_CASE("shear return with zero dilation: radial scaling oracle") {
  DruckerPragerParams dp;
  dp.friction_angle = 35.0 * kDeg;
  dp.cohesion = 50.0;
  dp.tensile_strength = 100.0;
  dp.dilation_angle = 0.0;
  const ElasticParams e{1e6, 5e5};
  const auto [q, k] = dp_coefficients(dp.friction_angle, dp.cohesion);

  const double sm = -30.0, tau_trial = 80.0;
  StressState s;
  s.sigma << sm, tau_trial, tau_trial, sm;  // deviator is pure xy shear
  s.sigma_zz = sm;
  REQUIRE(s.tau() == doctest::Approx(tau_trial));
  REQUIRE(tau_trial + q * sm - k > 0);

  const ReturnMapResult r = dp_return_map(s, dp, e);
  CHECK(r.yielded == YieldMode::Shear);
  const double tau_expect = k - q * sm;
  CHECK(r.stress.mean_stress() == doctest::Approx(sm).epsilon(1e-13));
  CHECK(r.stress.tau() == doctest::Approx(tau_expect).epsilon(1e-12));
  // radial: the deviator keeps its direction
  const StressState expect{Mat2{{sm, tau_expect}, {tau_expect, sm}}, sm, Mat2::Zero()};
  CHECK((r.stress.sigma - expect.sigma).norm() < 1e-10);
}

TEST_CASE("nonassociated shear return reduces mean stress by K q_psi lambda") {
  DruckerPragerParams dp;
  dp.friction_angle = 35.0 * kDeg;
  dp.dilation_angle = 25.0 * kDeg;
  dp.cohesion = 0.0;
  dp.tensile_strength = 0.0;
  const ElasticParams e{2e6, 1e6};
  const auto [q, k] = dp_coefficients(dp.friction_angle, dp.cohesion);
  const double q_psi = dp_coefficients(dp.dilation_angle, 0.0).q;

  const double sm = -50.0, tau_trial = 60.0;
  StressState s;
  s.sigma << sm, tau_trial, tau_trial, sm;
  s.sigma_zz = sm;
  const double f = tau_trial + q * sm - k;
  REQUIRE(f > 0);
  const double lambda = f / (e.shear_modulus + q * q_psi * e.bulk_modulus);

  const ReturnMapResult r = dp_return_map(s, dp, e);
  CHECK(r.yielded == YieldMode::Shear);
  CHECK(r.stress.tau() == doctest::Approx(tau_trial - e.shear_modulus * lambda).epsilon(1e-12));
  CHECK(r.stress.mean_stress() ==
        doctest::Approx(sm - e.bulk_modulus * q_psi * lambda).epsilon(1e-12));
}

TEST_CASE("friction angle zero reduces to the pressure-independent cylinder") {
  DruckerPragerParams dp;
  dp.friction_angle = 0.0;
  dp.cohesion = 25.0;
  dp.tensile_strength = 1e9;
  const ElasticParams e{1e6, 5e5};

  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-200.0, 200.0);
  for (int i = 0; i < 100; ++i) {
    StressState s = random_state(rng, u(rng));
    const ReturnMapResult r = dp_return_map(s, dp, e);
    CHECK(r.stress.tau() <= 25.0 * (1.0 + 1e-12));
    if (s.tau() > 25.0) {
      CHECK(r.yielded == YieldMode::Shear);
      CHECK(r.stress.tau() == doctest::Approx(25.0).epsilon(1e-12));
      CHECK(r.stress.mean_stress() == doctest::Approx(s.mean_stress()).epsilon(1e-12));
    }
  }
}

TEST_CASE("return map: idempotent and never outside either surface") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DruckerPragerParams dp;
  dp.friction_angle = 35.0 * kDeg;
  dp.dilation_angle = 25.0 * kDeg;
  dp.cohesion = 5.0;
  dp.tensile_strength = 2.0;
  const ElasticParams e{2e6, 1e6};
  const auto [q, k] = dp_coefficients(dp.friction_angle, dp.cohesion);

  for (int i = 0; i < 500; ++i) {
    StressState s;
    const double scale = 120.0;
    s.sigma << scale * u(rng), scale * u(rng), 0.0, scale * u(rng);
    s.sigma(1, 0) = s.sigma(0, 1);
    s.sigma_zz = scale * u(rng);

    const ReturnMapResult once = dp_return_map(s, dp, e);
    const double tol = 1e-9 * std::max({k, dp.tensile_strength, s.norm3()});
    CHECK(once.stress.tau() + q * once.stress.mean_stress() - k <= tol);
    CHECK(once.stress.mean_stress() - dp.tensile_strength <= tol);

    const ReturnMapResult twice = dp_return_map(once.stress, dp, e);
    const double scale_ref = std::max(1.0, once.stress.norm3());
    CHECK((twice.stress.sigma - once.stress.sigma).norm() < 1e-12 * scale_ref);
    CHECK(std::abs(twice.stress.sigma_zz - once.stress.sigma_zz) < 1e-12 * scale_ref);
  }
}

TEST_CASE("corner projection: shear past the tensile cap lands on the intersection") {
  DruckerPragerParams dp;
  dp.friction_angle = 30.0 * kDeg;
  dp.cohesion = 10.0;
  dp.tensile_strength = 4.0;
  const ElasticParams e{1e6, 5e5};
  const auto [q, k] = dp_coefficients(dp.friction_angle, dp.cohesion);
  const double tau_corner = k - q * dp.tensile_strength;
  REQUIRE(tau_corner > 0);

  StressState s;  // tensile violation plus a large deviator
  const double sm = 9.0, t = 40.0;
  s.sigma << sm, t, t, sm;
  s.sigma_zz = sm;
  const ReturnMapResult r = dp_return_map(s, dp, e);
  CHECK(r.yielded == YieldMode::Tensile);
  CHECK(r.stress.mean_stress() == doctest::Approx(dp.tensile_strength).epsilon(1e-12));
  CHECK(r.stress.tau() == doctest::Approx(tau_corner).epsilon(1e-12));
}
