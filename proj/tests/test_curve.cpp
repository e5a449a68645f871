#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "doctest.h"
#include "hypoly/curve.hpp"
#include "hypoly/errors.hpp"
#include "hypoly/poly.hpp"

using namespace hypoly;

namespace {

// curve with each row given by a coefficient function of t
CurveSamples curve_of(int degree, std::vector<double> grid,
                      const std::function<void(double, double*)>& fill) {
  std::vector<double> coeffs(grid.size() * static_cast<std::size_t>(degree));
  for (std::size_t m = 0; m < grid.size(); ++m)
    fill(grid[m], coeffs.data() + m * static_cast<std::size_t>(degree));
  return make_curve(degree, std::move(grid), std::move(coeffs));
}

// curve from pointwise root functions
CurveSamples curve_from_roots(std::vector<double> grid,
                              const std::vector<std::function<double(double)>>& roots) {
  const int n = static_cast<int>(roots.size());
  return curve_of(n, std::move(grid), [&roots, n](double t, double* a) {
    std::vector<double> r(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) r[i] = roots[i](t);
    const MonicPoly p = from_roots(r);
    for (int k = 0; k < n; ++k) a[k] = p.a[k];
  });
}

}  // namespace

TEST_CASE("uniform_grid endpoints and spacing") {
  const std::vector<double> g = uniform_grid(-1.0, 1.0, 10);
  REQUIRE(g.size() == 11);
  CHECK(g.front() == -1.0);
  CHECK(g.back() == 1.0);
  CHECK(g[5] == 0.0);
  const CurveSamples c = curve_of(1, g, [](double t, double* a) { a[0] = t; });
  CHECK(c.uniform());
  CHECK(c.spacing() == doctest::Approx(0.2));
  CHECK(c.index_of(0.0) == 5);
  CHECK_THROWS_AS((void)c.index_of(0.31), error);
}

TEST_CASE("make_curve validates") {
  CHECK_THROWS_AS((void)make_curve(2, {0.0, 0.0, 1.0}, std::vector<double>(6, 0.0)), error);
  CHECK_THROWS_AS((void)make_curve(2, {0.0, 1.0}, std::vector<double>(3, 0.0)), error);
}

TEST_CASE("center_curve shifts pointwise") {
  const std::vector<double> g = uniform_grid(-1.0, 1.0, 16);

  // roots {t, t}: a = (2t, t^2) -> y^2, shift t
  const CurveSamples c1 = curve_of(2, g, [](double t, double* a) {
    a[0] = 2.0 * t;
    a[1] = t * t;
  });
  const CurveSamples z1 = center_curve(c1);
  CHECK(z1.centered);
  for (std::size_t m = 0; m < z1.points(); ++m) {
    CHECK(z1.coeff(m, 1) == 0.0);
    CHECK(std::abs(z1.coeff(m, 2)) <= 1e-15);
    CHECK(z1.shift[m] == doctest::Approx(g[m]));
  }

  // centering a centered curve is a no-op with zero shift
  const CurveSamples z2 = center_curve(z1);
  for (std::size_t m = 0; m < z2.points(); ++m) {
    CHECK(z2.coeff(m, 2) == z1.coeff(m, 2));
    CHECK(z2.shift[m] == z1.shift[m]);
  }

  // roots {t, t+1}: shift t + 0.5, centered y^2 - 0.25
  const CurveSamples c3 = curve_from_roots(g, {[](double t) { return t; },
                                               [](double t) { return t + 1.0; }});
  const CurveSamples z3 = center_curve(c3);
  for (std::size_t m = 0; m < z3.points(); ++m) {
    CHECK(z3.shift[m] == doctest::Approx(g[m] + 0.5));
    CHECK(z3.coeff(m, 2) == doctest::Approx(-0.25));
  }
}

TEST_CASE("uncenter_rows adds the shift back") {
  const std::vector<double> g = uniform_grid(0.0, 1.0, 8);
  const CurveSamples c = curve_of(2, g, [](double t, double* a) {
    a[0] = 2.0 * t;
    a[1] = t * t - 1.0;
  });
  const CurveSamples z = center_curve(c);
  std::vector<double> rows(2 * g.size(), 0.0);
  uncenter_rows(z, rows);
  for (std::size_t m = 0; m < g.size(); ++m) {
    CHECK(rows[m] == doctest::Approx(g[m]));
    CHECK(rows[g.size() + m] == doctest::Approx(g[m]));
  }
}

TEST_CASE("estimate_vanishing_order") {
  const std::vector<double> g = uniform_grid(-1.0, 1.0, 200);

  const CurveSamples c1 = curve_of(2, g, [](double t, double* a) {
    a[0] = 0.0;
    a[1] = -3.0 * t * t;
  });
  const VanishingOrder o1 = estimate_vanishing_order(c1, 2, 0.0, 8);
  CHECK(o1.order == 2);
  for (double v : o1.cofactor) CHECK(v == doctest::Approx(-3.0).epsilon(1e-10));

  const CurveSamples c2 = curve_of(2, g, [](double t, double* a) {
    a[0] = 0.0;
    a[1] = t * t * (1.0 + t);
  });
  const VanishingOrder o2 = estimate_vanishing_order(c2, 2, 0.0, 8);
  CHECK(o2.order == 2);
  for (std::size_t i = 0; i < o2.ts.size(); ++i)
    CHECK(o2.cofactor[i] == doctest::Approx(1.0 + o2.ts[i]).epsilon(1e-10));

  // a_2 = -t^4: the estimate is capped at k = 2, cofactor -t^2
  const CurveSamples c3 = curve_of(2, g, [](double t, double* a) {
    a[0] = 0.0;
    a[1] = -std::pow(t, 4);
  });
  const VanishingOrder o3 = estimate_vanishing_order(c3, 2, 0.0, 8);
  CHECK(o3.order == 2);
  for (std::size_t i = 0; i < o3.ts.size(); ++i)
    CHECK(o3.cofactor[i] == doctest::Approx(-o3.ts[i] * o3.ts[i]).epsilon(1e-10));
}

TEST_CASE("multiplicity_test") {
  const std::vector<double> g = uniform_grid(-1.0, 1.0, 200);

  // roots {t, t, -2t}: a = (0, -3t^2, -2t^3), total collision of order >= 2
  const CurveSamples c1 = curve_of(3, g, [](double t, double* a) {
    a[0] = 0.0;
    a[1] = -3.0 * t * t;
    a[2] = -2.0 * t * t * t;
  });
  CHECK(multiplicity_test(c1, 0.0));

  // roots {t, -t+1}: centered a_2 = -(t - 0.5)^2 does not vanish at 0
  const CurveSamples c2 = center_curve(
      curve_from_roots(g, {[](double t) { return t; }, [](double t) { return 1.0 - t; }}));
  CHECK_FALSE(multiplicity_test(c2, 0.0));

  // identically zero polynomial curve x^n
  const CurveSamples c3 = curve_of(3, g, [](double, double* a) { a[0] = a[1] = a[2] = 0.0; });
  CHECK(multiplicity_test(c3, 0.0));
}

TEST_CASE("rescale_curve divides a_k by (t - t0)^k") {
  const std::vector<double> g = uniform_grid(-1.0, 1.0, 200);

  // x^2 - t^2 -> z^2 - 1
  const CurveSamples c1 = curve_of(2, g, [](double t, double* a) {
    a[0] = 0.0;
    a[1] = -t * t;
  });
  const CurveSamples r1 = rescale_curve(c1, 0.0);
  for (std::size_t m = 0; m < r1.points(); ++m) {
    CHECK(std::abs(r1.coeff(m, 1)) <= 1e-12);
    CHECK(r1.coeff(m, 2) == doctest::Approx(-1.0).epsilon(1e-10));
  }

  // roots {t, t, -2t} -> z^3 - 3z + 2, constant in t
  const CurveSamples c2 = curve_of(3, g, [](double t, double* a) {
    a[0] = 0.0;
    a[1] = -3.0 * t * t;
    a[2] = -2.0 * t * t * t;
  });
  const CurveSamples r2 = rescale_curve(c2, 0.0);
  for (std::size_t m = 0; m < r2.points(); ++m) {
    CHECK(r2.coeff(m, 2) == doctest::Approx(-3.0).epsilon(1e-10));
    CHECK(r2.coeff(m, 3) == doctest::Approx(-2.0).epsilon(1e-10));
  }

  // x^2 - t^4 -> z^2 - t^2: still degenerate at 0 after one rescale
  const CurveSamples c3 = curve_of(2, g, [](double t, double* a) {
    a[0] = 0.0;
    a[1] = -std::pow(t, 4);
  });
  const CurveSamples r3 = rescale_curve(c3, 0.0);
  for (std::size_t m = 0; m < r3.points(); ++m)
    CHECK(r3.coeff(m, 2) == doctest::Approx(-g[m] * g[m]).epsilon(1e-9));

  // order too low: centered roots {t - 0.5, 0.5 - t}
  const CurveSamples bad = center_curve(
      curve_from_roots(g, {[](double t) { return t; }, [](double t) { return 1.0 - t; }}));
  CHECK_THROWS_AS((void)rescale_curve(bad, 0.0), error);
}

TEST_CASE("rescaling identity on random points") {
  const std::vector<double> g = uniform_grid(-1.0, 1.0, 400);
  const CurveSamples c = curve_of(3, g, [](double t, double* a) {
    a[0] = 0.0;
    a[1] = -3.0 * t * t;
    a[2] = -2.0 * t * t * t;
  });
  const CurveSamples r = rescale_curve(c, 0.0);
  const std::size_t m0 = c.index_of(0.0);
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> dz(-2.0, 2.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t m = rng() % g.size();
    if (m == m0) continue;
    const double t = g[m], z = dz(rng);
    const double lhs = eval(c.poly_at(m), t * z);
    const double rhs = std::pow(t, 3) * eval(r.poly_at(m), z);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("cluster_roots groups by gap") {
  RootList r1;
  r1.values = {0.0, 1e-9, 5.0};
  const std::vector<Cluster> c1 = cluster_roots(r1, 1e-3);
  REQUIRE(c1.size() == 2);
  CHECK(c1[0].size() == 2);
  CHECK(c1[1].size() == 1);
  CHECK(c1[1].center == doctest::Approx(5.0));

  RootList r2;
  r2.values = {2.0, 2.0, 2.0, 2.0};
  CHECK(cluster_roots(r2, 0.5).size() == 1);

  RootList r3;
  r3.values = {-2.0, 1.0, 1.0};
  const std::vector<Cluster> c3 = cluster_roots(r3, 0.5);
  REQUIRE(c3.size() == 2);
  CHECK(c3[0].size() == 1);
  CHECK(c3[0].center == doctest::Approx(-2.0));
  CHECK(c3[1].size() == 2);
  CHECK(c3[1].center == doctest::Approx(1.0));
}

TEST_CASE("split_curve factors by clusters on an admissible window") {
  // (x^2 - t^2)(x - 5): clusters {+-t} vs {5}; each root must stay closer to
  // its own cluster than to the other, so the window is |t| < 2.5
  const std::vector<double> g = uniform_grid(-4.0, 4.0, 800);
  const CurveSamples c = curve_of(3, g, [](double t, double* a) {
    // (x^2 - t^2)(x - 5) = x^3 - 5x^2 - t^2 x + 5 t^2
    a[0] = 5.0;
    a[1] = -t * t;
    a[2] = -5.0 * t * t;
  });
  const ClusterSplit s = split_curve(c, 0.0, 1.0);
  REQUIRE(s.clusters.size() == 2);
  CHECK(s.factors[0].degree == 2);
  CHECK(s.factors[1].degree == 1);
  const double t_lo = g[s.window_begin];
  const double t_hi = g[s.window_end - 1];
  CHECK(t_hi < 2.5);
  CHECK(t_hi >= 2.5 - 3.0 * 0.01);
  CHECK(t_lo > -2.5);
  CHECK(t_lo <= -2.5 + 3.0 * 0.01);
  for (std::size_t m = 0; m < s.factors[0].points(); ++m) {
    const double t = s.factors[0].grid[m];
    CHECK(std::abs(s.factors[0].coeff(m, 1)) <= 1e-9);
    CHECK(s.factors[0].coeff(m, 2) == doctest::Approx(-t * t).epsilon(1e-8));
    CHECK(s.factors[1].coeff(m, 1) == doctest::Approx(5.0).epsilon(1e-9));
  }

  // all roots in one cluster
  const CurveSamples one = curve_of(2, g, [](double t, double* a) {
    a[0] = 0.0;
    a[1] = -t * t;
  });
  CHECK_THROWS_AS((void)split_curve(one, 0.0, 10.0), error);

  // roots {t-1, t+1}: two singleton linear factors on the whole grid
  const CurveSamples lin = curve_from_roots(g, {[](double t) { return t - 1.0; },
                                                [](double t) { return t + 1.0; }});
  const ClusterSplit s2 = split_curve(lin, 0.0, 0.5);
  REQUIRE(s2.factors.size() == 2);
  for (std::size_t m = 0; m < s2.factors[0].points(); ++m) {
    const double t = s2.factors[0].grid[m];
    CHECK(s2.factors[0].coeff(m, 1) == doctest::Approx(t - 1.0).epsilon(1e-9));
    CHECK(s2.factors[1].coeff(m, 1) == doctest::Approx(t + 1.0).epsilon(1e-9));
  }
}

TEST_CASE("split_product_row reconstructs the input") {
  const std::vector<double> g = uniform_grid(-4.0, 4.0, 400);
  const CurveSamples c = curve_of(3, g, [](double t, double* a) {
    a[0] = 5.0;
    a[1] = -t * t;
    a[2] = -5.0 * t * t;
  });
  const ClusterSplit s = split_curve(c, 0.0, 1.0);
  for (std::size_t off = 0; off < s.window_end - s.window_begin; ++off) {
    const std::vector<double> row = split_product_row(s, off);
    const auto orig = c.row(s.window_begin + off);
    for (int k = 0; k < 3; ++k) {
      const double scale = std::max(1.0, std::abs(orig[k]));
      CHECK(std::abs(row[k] - orig[k]) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("multiplicity lemma on random collapsing root curves") {
  std::mt19937_64 rng(36);
  std::uniform_real_distribution<double> dc(-1.0, 1.0);
  const std::vector<double> g = uniform_grid(-1.0, 1.0, 200);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    std::vector<std::function<double(double)>> fs;
    for (int i = 0; i < n; ++i) {
      const double c1 = dc(rng), c2 = dc(rng), c3 = dc(rng);
      fs.push_back([c1, c2, c3](double t) { return t * (c1 + t * (c2 + t * c3)); });
    }
    const CurveSamples c = center_curve(curve_from_roots(g, fs));
    CHECK(multiplicity_test(c, 0.0));
    for (int k = 2; k <= n; ++k)
      CHECK(estimate_vanishing_order(c, k, 0.0, 8).order >= k);
  }
}
