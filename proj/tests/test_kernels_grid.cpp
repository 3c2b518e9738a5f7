#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mpmsdem/errors.hpp"
#include "mpmsdem/grid.hpp"
#include "mpmsdem/kernels.hpp"

using namespace mpmsdem;

namespace {

// Central finite difference of a 1D weight function.
template <typename F>
double fd(F f, double x, double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

bool near_gimp_branch_boundary(double dx, double L, double lp, double margin) {
  for (double b : {-(L + lp), -L + lp, -lp, lp, L - lp, L + lp}) {
    if (std::abs(dx - b) < margin) return true;
  }
  return false;
}

bool near_bspline_branch_boundary(double dx, double L, double margin) {
  for (double b : {-2.0 * L, -L, 0.0, L, 2.0 * L}) {
    if (std::abs(dx - b) < margin) return true;
  }
  return false;
}

GridConfig test_grid(KernelKind kernel, int nx = 12, int ny = 12, double L = 1.0) {
  GridConfig cfg;
  cfg.origin = Vec2(0, 0);
  cfg.spacing = L;
  cfg.node_counts = Vec2i(nx, ny);
  cfg.kernel = kernel;
  return cfg;
}

}  // namespace

TEST_CASE("gimp weight matches the piecewise values") {
  CHECK(gimp_weight(0.0, 1.0, 0.5) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(gimp_weight(1.5, 1.0, 0.5) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(gimp_weight(1.0, 1.0, 0.5) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(gimp_weight(-1.0, 1.0, 0.5) == doctest::Approx(0.125).epsilon(1e-14));
  // support boundary and beyond
  CHECK(gimp_weight(-1.5, 1.0, 0.5) == 0.0);
  CHECK(gimp_weight(2.0, 1.0, 0.5) == 0.0);
}

TEST_CASE("gimp weight is even, gradient odd") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const double dx = u(rng);
    CHECK(gimp_weight(dx, 1.0, 0.5) == doctest::Approx(gimp_weight(-dx, 1.0, 0.5)).epsilon(1e-14));
    CHECK(gimp_weight_gradient(dx, 1.0, 0.5) ==
          doctest::Approx(-gimp_weight_gradient(-dx, 1.0, 0.5)).epsilon(1e-14));
  }
}

TEST_CASE("gimp gradient: exact values and finite-difference oracle") {
  CHECK(gimp_weight_gradient(0.0, 1.0, 0.5) == 0.0);
  CHECK(gimp_weight_gradient(0.25, 1.0, 0.5) == doctest::Approx(-0.5).epsilon(1e-14));

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.8, 1.8);
  std::uniform_real_distribution<double> ulp(0.15, 1.0);
  int checked = 0;
  while (checked < 1000) {
    const double lp = ulp(rng);
    const double dx = u(rng);
    if (near_gimp_branch_boundary(dx, 1.0, lp, 5e-6)) continue;
    const double g = gimp_weight_gradient(dx, 1.0, lp);
    const double g_fd = fd([&](double x) { return gimp_weight(x, 1.0, lp); }, dx);
    CHECK(std::abs(g - g_fd) < 1e-6);
    ++checked;
  }
}

TEST_CASE("spline weight matches the two-branch polynomial") {
  CHECK(bspline_weight(0.0, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(bspline_weight(1.0, 1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(bspline_weight(0.5, 1.0) ==
        doctest::Approx(0.5 * 0.125 - 0.25 + 2.0 / 3.0).epsilon(1e-14));
  CHECK(bspline_weight(2.0, 1.0) == 0.0);
  CHECK(bspline_weight(-2.5, 1.0) == 0.0);
}

TEST_CASE("spline gradient against finite differences") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(-2.2, 2.2);
  int checked = 0;
  while (checked < 1000) {
    const double dx = u(rng);
    if (near_bspline_branch_boundary(dx, 1.0, 5e-6)) continue;
    const double g = bspline_weight_gradient(dx, 1.0);
    const double g_fd = fd([&](double x) { return bspline_weight(x, 1.0); }, dx);
    CHECK(std::abs(g - g_fd) < 1e-6);
    ++checked;
  }
}

TEST_CASE("stencil at a node center: 1D slices") {
  SUBCASE("spline kernel gives (1/6, 2/3, 1/6) on the three nearest nodes") {
    const GridConfig cfg = test_grid(KernelKind::BSplineA4);
    Stencil st;
    stencil_weights(Vec2(5.0, 5.0), cfg, st);
    double w4 = -1, w5 = -1, w6 = -1;
    for (int k = 0; k < st.count; ++k) {
      if (st.entry[k].node == cfg.node_index(4, 5)) w4 = st.entry[k].w;
      if (st.entry[k].node == cfg.node_index(5, 5)) w5 = st.entry[k].w;
      if (st.entry[k].node == cfg.node_index(6, 5)) w6 = st.entry[k].w;
    }
    // 1D slice through the row y = 5: divide out the y factor 2/3.
    CHECK(w4 / (2.0 / 3.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    CHECK(w5 / (2.0 / 3.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(w6 / (2.0 / 3.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  }
  SUBCASE("GIMP with lp = L/2 gives (1/8, 3/4, 1/8), the spline-at-knot values") {
    const GridConfig cfg = test_grid(KernelKind::Gimp);
    Stencil st;
    stencil_weights(Vec2(5.0, 5.0), cfg, st);
    double w4 = -1, w5 = -1, w6 = -1;
    for (int k = 0; k < st.count; ++k) {
      if (st.entry[k].node == cfg.node_index(4, 5)) w4 = st.entry[k].w;
      if (st.entry[k].node == cfg.node_index(5, 5)) w5 = st.entry[k].w;
      if (st.entry[k].node == cfg.node_index(6, 5)) w6 = st.entry[k].w;
    }
    CHECK(w4 / 0.75 == doctest::Approx(0.125).epsilon(1e-13));
    CHECK(w5 / 0.75 == doctest::Approx(0.75).epsilon(1e-13));
    CHECK(w6 / 0.75 == doctest::Approx(0.125).epsilon(1e-13));
  }
}

TEST_CASE("partition of unity and zero gradient sum at 1000 interior points") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(1.0, 9.0);
  for (KernelKind kernel : {KernelKind::Gimp, KernelKind::BSplineA4}) {
    const GridConfig cfg = test_grid(kernel);
    Stencil st;
    for (int i = 0; i < 1000; ++i) {
      const Vec2 x(u(rng), u(rng));
      stencil_weights(x, cfg, st);
      double sum = 0.0;
      Vec2 gsum = Vec2::Zero();
      for (int k = 0; k < st.count; ++k) {
        sum += st.entry[k].w;
        gsum += st.entry[k].grad;
      }
      CHECK(std::abs(sum - 1.0) < 1e-12);
      CHECK(gsum.norm() < 1e-10);
    }
  }
}

TEST_CASE("stencil gradients match finite differences of the weights") {
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> u(2.0, 8.0);
  const double h = 1e-6;
  for (KernelKind kernel : {KernelKind::Gimp, KernelKind::BSplineA4}) {
    const GridConfig cfg = test_grid(kernel);
    Stencil st, stp, stm;
    int checked = 0;
    while (checked < 200) {
      const Vec2 x(u(rng), u(rng));
      // keep clear of branch boundaries in both axes
      bool skip = false;
      for (double c : {x.x(), x.y()}) {
        const double frac = c - std::floor(c);
        for (double b : {0.0, 0.25, 0.5, 0.75, 1.0}) {
          if (std::abs(frac - b) < 5e-6) skip = true;
        }
      }
      if (skip) continue;
      stencil_weights(x, cfg, st);
      stencil_weights(x + Vec2(h, 0), cfg, stp);
      stencil_weights(x - Vec2(h, 0), cfg, stm);
      for (int k = 0; k < st.count; ++k) {
        REQUIRE(stp.entry[k].node == st.entry[k].node);
        const double gx_fd = (stp.entry[k].w - stm.entry[k].w) / (2.0 * h);
        CHECK(std::abs(st.entry[k].grad.x() - gx_fd) < 1e-6);
      }
      stencil_weights(x + Vec2(0, h), cfg, stp);
      stencil_weights(x - Vec2(0, h), cfg, stm);
      for (int k = 0; k < st.count; ++k) {
        const double gy_fd = (stp.entry[k].w - stm.entry[k].w) / (2.0 * h);
        CHECK(std::abs(st.entry[k].grad.y() - gy_fd) < 1e-6);
      }
      ++checked;
    }
  }
}

TEST_CASE("points without full stencil room are rejected") {
  const GridConfig cfg = test_grid(KernelKind::Gimp);
  Stencil st;
  CHECK_THROWS_AS(stencil_weights(Vec2(0.5, 5.0), cfg, st), PointOutOfDomain);
  CHECK_THROWS_AS(stencil_weights(Vec2(5.0, 10.5), cfg, st), PointOutOfDomain);
  CHECK_NOTHROW(stencil_weights(Vec2(5.0, 5.0), cfg, st));
}

TEST_CASE("clear_grid zeroes every field and is idempotent") {
  Grid grid(test_grid(KernelKind::Gimp, 6, 6));
  for (size_t i = 0; i < grid.nodes.size(); ++i) {
    grid.nodes[i].mass = 1.0 + static_cast<double>(i);
    grid.nodes[i].momentum = Vec2(1, 2);
    grid.nodes[i].f_int = Vec2(3, 4);
    grid.nodes[i].f_ext = Vec2(5, 6);
    grid.nodes[i].f_cont = Vec2(7, 8);
    grid.nodes[i].velocity = Vec2(9, 10);
  }
  grid.clear();
  CHECK(grid.total_mass() == 0.0);
  CHECK(grid.total_momentum().norm() == 0.0);
  for (const GridNode& n : grid.nodes) {
    CHECK(n.mass == 0.0);
    CHECK(n.f_int.norm() == 0.0);
    CHECK(n.f_ext.norm() == 0.0);
    CHECK(n.f_cont.norm() == 0.0);
    CHECK(n.velocity.norm() == 0.0);
  }
  const std::vector<GridNode> once = grid.nodes;
  grid.clear();
  for (size_t i = 0; i < grid.nodes.size(); ++i) {
    CHECK(grid.nodes[i].mass == once[i].mass);
  }
}

TEST_CASE("grid config validation") {
  GridConfig cfg = test_grid(KernelKind::Gimp);
  CHECK_NOTHROW(cfg.validate());
  cfg.node_counts = Vec2i(3, 12);
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = test_grid(KernelKind::Gimp);
  cfg.gimp_half_width = 1.5;  // > L
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = test_grid(KernelKind::Gimp);
  cfg.spacing = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}
