#pragma once

#include <span>

namespace mpmsdem {

// Power-law fit Q = C (D0 - kc*d)^p by least squares in log space, with the
// cutoff coefficient kc found by a nested 1D search. Throws FitDegenerate on
// fewer than four distinct openings or nonpositive inputs.
struct BeverlooFit {
  double coefficient;  // C
  double kc;
  double exponent;     // p
  double residual;     // sum of squared log residuals
};

BeverlooFit beverloo_fit(std::span<const double> neck_diameter, std::span<const double> rate,
                         double char_size);

}  // namespace mpmsdem
