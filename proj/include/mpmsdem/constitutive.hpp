#pragma once

#include "mpmsdem/types.hpp"

namespace mpmsdem {

struct ElasticParams {
  double bulk_modulus = 0.0;   // K
  double shear_modulus = 0.0;  // G
};

struct DruckerPragerParams {
  double friction_angle = 0.0;    // phi, radians
  double cohesion = 0.0;          // c
  double tensile_strength = 0.0;  // sigma^t (cap on mean stress)
  double dilation_angle = 0.0;    // psi, radians
};

// (q_phi, k_phi) from friction angle and cohesion.
struct DpCoefficients {
  double q;
  double k;
};
DpCoefficients dp_coefficients(double friction_angle, double cohesion);

// Plane-strain stress state: in-plane Cauchy stress plus the out-of-plane
// normal component, so I1 and J2 are true 3D invariants. The accumulated
// in-plane strain tensor rides along for output.
struct StressState {
  Mat2 sigma = Mat2::Zero();
  double sigma_zz = 0.0;
  Mat2 strain = Mat2::Zero();

  double i1() const { return sigma(0, 0) + sigma(1, 1) + sigma_zz; }
  double mean_stress() const { return i1() / 3.0; }
  double j2() const;
  double tau() const;        // sqrt(J2)
  double norm3() const;      // Frobenius norm of the 3D embedding
};

// Hypoelastic increment: sigma += dt * (C : strain_rate + Jaumann spin terms),
// with the full 3D elastic law restricted to plane strain (eps_zz = 0).
// strain_rate must be symmetric and spin_rate antisymmetric.
StressState elastic_stress_increment(const StressState& s, const Mat2& strain_rate,
                                     const Mat2& spin_rate, double dt, const ElasticParams& p);

enum class YieldMode { None, Shear, Tensile };

struct ReturnMapResult {
  StressState stress;
  YieldMode yielded;
};

// Return mapping onto the Drucker-Prager shear surface f^s = tau + q*sigma_m - k
// and the tensile cap f^t = sigma_m - sigma^t. Shear return is radial in the
// deviatoric plane with a non-associated volumetric term from the dilation
// angle; states past the cap corner project onto the surface intersection.
ReturnMapResult dp_return_map(const StressState& trial, const DruckerPragerParams& p,
                              const ElasticParams& e);

}  // namespace mpmsdem
