#include "mpmsdem/constitutive.hpp"

#include <algorithm>
#include <cmath>

namespace mpmsdem {

DpCoefficients dp_coefficients(double friction_angle, double cohesion) {
  const double t = std::tan(friction_angle);
  const double denom = std::sqrt(9.0 + 12.0 * t * t);
  return {3.0 * t / denom, 3.0 * cohesion / denom};
}

double StressState::j2() const {
  const double sm = mean_stress();
  const double sxx = sigma(0, 0) - sm;
  const double syy = sigma(1, 1) - sm;
  const double szz = sigma_zz - sm;
  const double sxy = sigma(0, 1);
  return 0.5 * (sxx * sxx + syy * syy + szz * szz) + sxy * sxy;
}

double StressState::tau() const { return std::sqrt(std::max(j2(), 0.0)); }

double StressState::norm3() const {
  return std::sqrt(sigma(0, 0) * sigma(0, 0) + sigma(1, 1) * sigma(1, 1) +
                   sigma_zz * sigma_zz + 2.0 * sigma(0, 1) * sigma(0, 1));
}

StressState elastic_stress_increment(const StressState& s, const Mat2& strain_rate,
                                     const Mat2& spin_rate, double dt, const ElasticParams& p) {
  const double K = p.bulk_modulus;
  const double G = p.shear_modulus;
  const double trace = strain_rate(0, 0) + strain_rate(1, 1);  // eps_zz = 0 in plane strain

  // C : eps_dot = (K - 2G/3) tr(eps_dot) I + 2G eps_dot, on the 3D embedding.
  const double lame = K - 2.0 * G / 3.0;
  Mat2 rate = lame * trace * Mat2::Identity() + 2.0 * G * strain_rate;
  const double rate_zz = lame * trace;

  // Jaumann spin terms W*sigma - sigma*W; the out-of-plane row is untouched.
  rate += spin_rate * s.sigma - s.sigma * spin_rate;

  StressState out = s;
  out.sigma += dt * rate;
  out.sigma_zz += dt * rate_zz;
  out.sigma = 0.5 * (out.sigma + out.sigma.transpose().eval());
  out.strain += dt * strain_rate;
  return out;
}

ReturnMapResult dp_return_map(const StressState& trial, const DruckerPragerParams& p,
                              const ElasticParams& e) {
  const auto [q_phi, k_phi] = dp_coefficients(p.friction_angle, p.cohesion);
  const double q_psi = dp_coefficients(p.dilation_angle, 0.0).q;
  const double sigma_t = p.tensile_strength;

  const double sm = trial.mean_stress();
  const double tau = trial.tau();

  // Deviatoric part of the 3D embedding.
  Mat2 dev = trial.sigma - sm * Mat2::Identity();
  double dev_zz = trial.sigma_zz - sm;

  const double f_t = sm - sigma_t;
  const double f_s = tau + q_phi * sm - k_phi;

  StressState out = trial;
  auto assemble = [&](double mean, double scale) {
    out.sigma = scale * dev + mean * Mat2::Identity();
    out.sigma_zz = scale * dev_zz + mean;
  };

  // Ties at f = 0 count as not yielded.
  if (f_t > 0.0) {
    // Hydrostatic return to the cap, then the corner if shear is still violated.
    const double tau_corner = std::max(0.0, k_phi - q_phi * sigma_t);
    if (tau > tau_corner) {
      assemble(sigma_t, tau > 0.0 ? tau_corner / tau : 0.0);
    } else {
      assemble(sigma_t, 1.0);
    }
    return {out, YieldMode::Tensile};
  }

  if (f_s > 0.0) {
    const double G = e.shear_modulus;
    const double K = e.bulk_modulus;
    const double lambda = f_s / (G + q_phi * q_psi * K);
    double tau_new = tau - G * lambda;
    double sm_new = sm - K * q_psi * lambda;
    if (tau_new < 0.0) {
      // Past the apex of the cone: hydrostatic point on the shear surface.
      tau_new = 0.0;
      sm_new = q_phi > 0.0 ? std::min(sm, k_phi / q_phi) : sm;
    }
    sm_new = std::min(sm_new, sigma_t);
    assemble(sm_new, tau > 0.0 ? tau_new / tau : 0.0);
    return {out, YieldMode::Shear};
  }

  return {out, YieldMode::None};
}

}  // namespace mpmsdem
