#include "mpmsdem/beverloo.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "mpmsdem/errors.hpp"

namespace mpmsdem {

namespace {

struct LogFit {
  double slope;
  double intercept;
  double ssr;
};

// Least squares of log(Q) against log(D0 - kc*d).
LogFit fit_at(std::span<const double> d0, std::span<const double> q, double offset) {
  const size_t n = d0.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double x = std::log(d0[i] - offset);
    const double y = std::log(q[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  LogFit f;
  f.slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  f.intercept = (sy - f.slope * sx) / static_cast<double>(n);
  f.ssr = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double r = std::log(q[i]) - (f.intercept + f.slope * std::log(d0[i] - offset));
    f.ssr += r * r;
  }
  return f;
}

}  // namespace

BeverlooFit beverloo_fit(std::span<const double> neck_diameter, std::span<const double> rate,
                         double char_size) {
  if (neck_diameter.size() != rate.size())
    throw FitDegenerate("neck diameters and rates differ in length");
  std::set<double> distinct(neck_diameter.begin(), neck_diameter.end());
  if (distinct.size() < 4)
    throw FitDegenerate("need at least 4 distinct neck diameters, got " +
                        std::to_string(distinct.size()));
  for (size_t i = 0; i < rate.size(); ++i) {
    if (!(rate[i] > 0.0)) throw FitDegenerate("all rates must be positive");
    if (!(neck_diameter[i] > 0.0)) throw FitDegenerate("all neck diameters must be positive");
  }
  if (char_size < 0.0) throw FitDegenerate("characteristic size must be nonnegative");

  const double d0_min = *std::min_element(neck_diameter.begin(), neck_diameter.end());

  if (char_size == 0.0) {
    const LogFit f = fit_at(neck_diameter, rate, 0.0);
    return {std::exp(f.intercept), 0.0, f.slope, f.ssr};
  }

  // Offsets kc*d must keep every D0 - kc*d positive.
  const double kc_max = (d0_min * (1.0 - 1e-9)) / char_size;
  auto ssr_of = [&](double kc) { return fit_at(neck_diameter, rate, kc * char_size).ssr; };

  const int coarse = 400;
  double best_kc = 0.0, best_ssr = ssr_of(0.0);
  for (int i = 1; i <= coarse; ++i) {
    const double kc = kc_max * i / (coarse + 1);
    const double ssr = ssr_of(kc);
    if (ssr < best_ssr) {
      best_ssr = ssr;
      best_kc = kc;
    }
  }

  double lo = std::max(0.0, best_kc - kc_max / (coarse + 1));
  double hi = std::min(kc_max, best_kc + kc_max / (coarse + 1));
  const double gold = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = hi - gold * (hi - lo), b = lo + gold * (hi - lo);
  double fa = ssr_of(a), fb = ssr_of(b);
  while (hi - lo > 1e-12 * kc_max) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - gold * (hi - lo);
      fa = ssr_of(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + gold * (hi - lo);
      fb = ssr_of(b);
    }
  }
  const double kc = 0.5 * (lo + hi);
  const LogFit f = fit_at(neck_diameter, rate, kc * char_size);
  return {std::exp(f.intercept), kc, f.slope, f.ssr};
}

}  // namespace mpmsdem
