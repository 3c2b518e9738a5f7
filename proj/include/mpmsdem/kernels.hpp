#pragma once

namespace mpmsdem {

// 1D GIMP weight for a particle with constant characteristic function of
// half-width lp on a linear grid of spacing L. dx is the particle-to-node
// offset x_p - x_I. Support is |dx| < L + lp; C1 in dx. Branch boundaries
// follow the left-open/right-closed convention of the piecewise definition.
double gimp_weight(double dx, double L, double lp);

// Exact derivative of gimp_weight with respect to x_p. Odd in dx.
double gimp_weight_gradient(double dx, double L, double lp);

// 1D spline weight with support |dx| < 2L. The half-width argument carried by
// grid configs is ignored for this kernel; kept as the two-branch polynomial.
double bspline_weight(double dx, double L);
double bspline_weight_gradient(double dx, double L);

}  // namespace mpmsdem
