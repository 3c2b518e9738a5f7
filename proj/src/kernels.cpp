#include "mpmsdem/kernels.hpp"

#include <cmath>

namespace mpmsdem {

double gimp_weight(double dx, double L, double lp) {
  if (dx <= -(L + lp)) return 0.0;
  if (dx <= -L + lp) {
    const double t = L + lp + dx;
    return t * t / (4.0 * L * lp);
  }
  if (dx <= -lp) return 1.0 + dx / L;
  if (dx <= lp) return 1.0 - (dx * dx + lp * lp) / (2.0 * L * lp);
  if (dx <= L - lp) return 1.0 - dx / L;
  if (dx <= L + lp) {
    const double t = L + lp - dx;
    return t * t / (4.0 * L * lp);
  }
  return 0.0;
}

double gimp_weight_gradient(double dx, double L, double lp) {
  if (dx <= -(L + lp)) return 0.0;
  if (dx <= -L + lp) return (L + lp + dx) / (2.0 * L * lp);
  if (dx <= -lp) return 1.0 / L;
  if (dx <= lp) return -dx / (L * lp);
  if (dx <= L - lp) return -1.0 / L;
  if (dx <= L + lp) return -(L + lp - dx) / (2.0 * L * lp);
  return 0.0;
}

double bspline_weight(double dx, double L) {
  const double t = std::abs(dx) / L;
  if (t < 1.0) return 0.5 * t * t * t - t * t + 2.0 / 3.0;
  if (t < 2.0) {
    const double u = 2.0 - t;
    return u * u * u / 6.0;
  }
  return 0.0;
}

double bspline_weight_gradient(double dx, double L) {
  const double t = std::abs(dx) / L;
  const double sign = dx < 0.0 ? -1.0 : 1.0;
  if (t < 1.0) return sign * (1.5 * t * t - 2.0 * t) / L;
  if (t < 2.0) {
    const double u = 2.0 - t;
    return sign * (-0.5 * u * u) / L;
  }
  return 0.0;
}

}  // namespace mpmsdem
