#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "doctest.h"
#include "hypoly/curve.hpp"
#include "hypoly/errors.hpp"
#include "hypoly/families.hpp"
#include "hypoly/kernels.hpp"
#include "hypoly/track.hpp"

using namespace hypoly;

namespace {

CurveSamples curve_of(int degree, std::vector<double> grid,
                      const std::function<void(double, double*)>& fill) {
  std::vector<double> coeffs(grid.size() * static_cast<std::size_t>(degree));
  for (std::size_t m = 0; m < grid.size(); ++m)
    fill(grid[m], coeffs.data() + m * static_cast<std::size_t>(degree));
  return make_curve(degree, std::move(grid), std::move(coeffs));
}

// max |row - f(t)| over the grid for the best row-to-function bijection;
// n <= 3 here, so brute-force over permutations
double best_row_error(const LabeledTracks& tr,
                      std::vector<std::function<double(double)>> fs) {
  const int n = tr.degree;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  double best = 1e300;
  do {
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (std::size_t m = 0; m < tr.points(); ++m)
        worst = std::max(worst, std::abs(tr.value(i, m) - fs[perm[i]](tr.grid[m])));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// every column is a permutation of the ascending solver roots
void check_multiset(const CurveSamples& c, const LabeledTracks& tr, double tol) {
  const std::vector<RootList> roots = solve_curve_roots(c, 1e-9);
  for (std::size_t m = 0; m < c.points(); ++m) {
    std::vector<double> col(tr.degree);
    for (int i = 0; i < tr.degree; ++i) col[i] = tr.value(i, m);
    std::sort(col.begin(), col.end());
    for (int i = 0; i < tr.degree; ++i)
      CHECK(std::abs(col[i] - roots[m].values[i]) <= tol);
  }
}

// perm table actually maps rows onto the ascending roots
void check_perm_consistency(const CurveSamples& c, const LabeledTracks& tr) {
  const std::vector<RootList> roots = solve_curve_roots(c, 1e-9);
  const double scale = std::max(1.0, c.coeff_scale());
  for (std::size_t m = 0; m < c.points(); ++m) {
    std::vector<bool> used(tr.degree, false);
    for (int i = 0; i < tr.degree; ++i) {
      const int p = tr.perm_of(i, m);
      REQUIRE(p >= 0);
      REQUIRE(p < tr.degree);
      CHECK_FALSE(used[p]);
      used[p] = true;
      CHECK(std::abs(tr.value(i, m) - roots[m].values[p]) <= 1e-7 * scale);
    }
  }
}

}  // namespace

TEST_CASE("ordered_tracks sorts every column") {
  const std::vector<double> g = uniform_grid(-1.0, 1.0, 200);
  const CurveSamples sym2 = make_family("sym2", g);
  const LabeledTracks tr = ordered_tracks(sym2);
  CHECK(tr.method == "ordered");
  for (std::size_t m = 0; m < g.size(); ++m) {
    CHECK(std::abs(tr.value(0, m) + std::abs(g[m])) <= 1e-12);
    CHECK(std::abs(tr.value(1, m) - std::abs(g[m])) <= 1e-12);
  }

  // constant roots {1, 2}: constant rows, identity permutation
  const CurveSamples cst = curve_of(2, g, [](double, double* a) {
    a[0] = 3.0;
    a[1] = 2.0;
  });
  const LabeledTracks tc = ordered_tracks(cst);
  for (std::size_t m = 0; m < g.size(); ++m) {
    CHECK(tc.value(0, m) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tc.value(1, m) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(tc.perm_of(0, m) == 0);
    CHECK(tc.perm_of(1, m) == 1);
  }

  // roots {t, t, -2t}: the ordered rows swap branches at 0
  const CurveSamples triple = make_family("triple", g);
  const LabeledTracks tt = ordered_tracks(triple);
  for (std::size_t m = 0; m < g.size(); ++m) {
    const double t = g[m];
    const double lo = std::min(t, -2.0 * t);
    CHECK(std::abs(tt.value(0, m) - lo) <= 1e-10);
  }
}

TEST_CASE("assignment_tracks crosses collisions smoothly") {
  const std::vector<double> g = uniform_grid(-1.0, 1.0, 2000);
  const CurveSamples sym2 = center_curve(make_family("sym2", g));

  for (int order = 1; order <= 2; ++order) {
    const LabeledTracks tr = assignment_tracks(sym2, order);
    const double err = best_row_error(tr, {[](double t) { return t; },
                                           [](double t) { return -t; }});
    CHECK(err <= 1e-9);
  }

  // avoided crossing: rows +-sqrt(t^2 + 0.01)
  const CurveSamples av = center_curve(make_family("avoided:0.1", g));
  const LabeledTracks ta = assignment_tracks(av, 1);
  const double err = best_row_error(ta, {[](double t) { return std::sqrt(t * t + 0.01); },
                                         [](double t) { return -std::sqrt(t * t + 0.01); }});
  CHECK(err <= 1e-9);

  // constant roots: identity permutation at every order
  const CurveSamples cst = curve_of(2, g, [](double, double* a) {
    a[0] = 3.0;
    a[1] = 2.0;
  });
  for (int order = 0; order <= 2; ++order) {
    const LabeledTracks tc = assignment_tracks(cst, order);
    for (std::size_t m = 0; m < g.size(); ++m) {
      CHECK(tc.perm_of(0, m) == 0);
      CHECK(tc.perm_of(1, m) == 1);
    }
  }
}

TEST_CASE("assignment order >= 1 finds the smooth labeling of sym2") {
  const std::vector<double> g = uniform_grid(-1.0, 1.0, 200);
  const CurveSamples sym2 = center_curve(make_family("sym2", g));
  const double h = 2.0 / 200;
  const LabeledTracks tr = assignment_tracks(sym2, 1);
  for (int i = 0; i < 2; ++i) {
    double tv = 0.0;
    double prev = (tr.value(i, 1) - tr.value(i, 0)) / h;
    for (std::size_t m = 1; m + 1 < g.size(); ++m) {
      const double d = (tr.value(i, m + 1) - tr.value(i, m)) / h;
      tv += std::abs(d - prev);
      prev = d;
    }
    CHECK(tv <= 1e-9);
  }
}

TEST_CASE("detect_degeneracy_sets") {
  const std::vector<double> g = uniform_grid(-1.0, 1.0, 200);

  const CurveSamples sym2 = center_curve(make_family("sym2", g));
  const DegeneracySets s1 = detect_degeneracy_sets(sym2, default_eps_e(sym2), 1e-6);
  REQUIRE(s1.E.size() == 1);
  CHECK(g[s1.E[0]] == 0.0);
  CHECK(s1.Eprime.empty());
  CHECK(s1.F.empty());  // derivative labels -1, 1 differ
  CHECK(s1.Fprime.empty());

  // constant x^3: everything degenerate everywhere
  const CurveSamples zero = center_curve(
      curve_of(3, g, [](double, double* a) { a[0] = a[1] = a[2] = 0.0; }));
  const DegeneracySets s2 = detect_degeneracy_sets(zero, 1e-12, 1e-6);
  CHECK(s2.E.size() == g.size());
  CHECK(s2.Eprime.size() == g.size());
  CHECK(s2.F.size() == g.size());
  CHECK(s2.Fprime.size() == g.size());

  const CurveSamples triple = center_curve(make_family("triple", g));
  const DegeneracySets s3 = detect_degeneracy_sets(triple, default_eps_e(triple), 1e-6);
  REQUIRE(s3.E.size() == 1);
  CHECK(g[s3.E[0]] == 0.0);
  CHECK(s3.F.empty());  // labels {1, 1, -2} not all equal
}

TEST_CASE("derivative_labels_at_degeneracy") {
  const std::vector<double> g = uniform_grid(-1.0, 1.0, 200);

  const RootList l1 = derivative_labels_at_degeneracy(center_curve(make_family("sym2", g)), 0.0);
  REQUIRE(l1.count() == 2);
  CHECK(l1.values[0] == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(l1.values[1] == doctest::Approx(1.0).epsilon(1e-8));

  const RootList l2 =
      derivative_labels_at_degeneracy(center_curve(make_family("triple", g)), 0.0);
  REQUIRE(l2.count() == 3);
  CHECK(l2.values[0] == doctest::Approx(-2.0).epsilon(1e-8));
  CHECK(l2.values[1] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(l2.values[2] == doctest::Approx(1.0).epsilon(1e-8));

  // x^2 - 4t^2: labels {-2, 2}
  const CurveSamples wide = curve_of(2, g, [](double t, double* a) {
    a[0] = 0.0;
    a[1] = -4.0 * t * t;
  });
  const RootList l3 = derivative_labels_at_degeneracy(center_curve(wide), 0.0);
  CHECK(l3.values[0] == doctest::Approx(-2.0).epsilon(1e-8));
  CHECK(l3.values[1] == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("proof_tracks recovers smooth labelings") {
  const std::vector<double> g = uniform_grid(-1.0, 1.0, 2000);
  const double h = 2.0 / 2000;

  // x^2 - t^2 -> rows +-t, second divided differences at noise level
  const CurveSamples sym2 = make_family("sym2", g);
  const LabeledTracks t1 = proof_tracks(sym2);
  CHECK(t1.method == "proof");
  CHECK(best_row_error(t1, {[](double t) { return t; }, [](double t) { return -t; }}) <= 1e-9);
  for (int i = 0; i < 2; ++i)
    for (std::size_t m = 0; m + 2 < g.size(); ++m) {
      const double dd2 =
          (t1.value(i, m + 2) - 2.0 * t1.value(i, m + 1) + t1.value(i, m)) / (h * h);
      CHECK(std::abs(dd2) <= 1e-6);
    }

  // roots {t, t, -2t} -> rows {t, t, -2t} up to order; one-sided discrete
  // derivatives at 0 match the labels {1, 1, -2}
  const CurveSamples triple = make_family("triple", g);
  const LabeledTracks t2 = proof_tracks(triple);
  CHECK(best_row_error(t2, {[](double t) { return t; }, [](double t) { return t; },
                            [](double t) { return -2.0 * t; }}) <= 1e-9);
  const std::size_t m0 = triple.index_of(0.0);
  std::vector<double> d_right, d_left;
  for (int i = 0; i < 3; ++i) {
    d_right.push_back((t2.value(i, m0 + 1) - t2.value(i, m0)) / h);
    d_left.push_back((t2.value(i, m0) - t2.value(i, m0 - 1)) / h);
  }
  std::sort(d_right.begin(), d_right.end());
  std::sort(d_left.begin(), d_left.end());
  const std::vector<double> want = {-2.0, 1.0, 1.0};
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(d_right[i] - want[i]) <= 1e-3);
    CHECK(std::abs(d_left[i] - want[i]) <= 1e-3);
  }

  // constant x^3: all rows identically zero
  const CurveSamples zero = curve_of(3, g, [](double, double* a) { a[0] = a[1] = a[2] = 0.0; });
  const LabeledTracks t3 = proof_tracks(zero);
  for (int i = 0; i < 3; ++i)
    for (std::size_t m = 0; m < g.size(); ++m) CHECK(t3.value(i, m) == 0.0);

  // x^2 - t^4 -> rows +-t^2 via a second rescale
  const CurveSamples quart = curve_of(2, g, [](double t, double* a) {
    a[0] = 0.0;
    a[1] = -std::pow(t, 4);
  });
  const LabeledTracks t4 = proof_tracks(quart);
  CHECK(best_row_error(t4, {[](double t) { return t * t; },
                            [](double t) { return -t * t; }}) <= 1e-8);

  // shifted family: proof_tracks centers internally and un-shifts
  const CurveSamples sh = make_family("shifted", g);
  const LabeledTracks t5 = proof_tracks(sh);
  CHECK(best_row_error(t5, {[](double) { return 0.0; },
                            [](double t) { return 2.0 * t; }}) <= 1e-9);
}

TEST_CASE("proof_tracks multiset and permutation consistency") {
  const std::vector<double> g = uniform_grid(-1.0, 1.0, 400);
  for (const char* name : {"sym2", "triple", "avoided:0.1", "shifted"}) {
    const CurveSamples c = make_family(name, g);
    const LabeledTracks tr = proof_tracks(c);
    check_multiset(c, tr, 1e-9);
    check_perm_consistency(c, tr);
  }
  const CurveSamples r = make_family("randsym:4:7", g);
  const LabeledTracks tr = proof_tracks(r);
  check_multiset(r, tr, 1e-9 * std::max(1.0, r.coeff_scale()));
  check_perm_consistency(r, tr);
}

TEST_CASE("shift equivariance of tracking") {
  const std::vector<double> g = uniform_grid(-1.0, 1.0, 300);
  const CurveSamples raw = make_family("randsym:3:5", g);
  const CurveSamples centered = center_curve(raw);

  LabeledTracks via_center = proof_tracks(centered);
  std::vector<double> vals = via_center.values;
  uncenter_rows(centered, vals);

  const LabeledTracks direct = proof_tracks(raw);
  // rows may permute; compare sorted columns
  for (std::size_t m = 0; m < g.size(); ++m) {
    std::vector<double> a(3), b(3);
    for (int i = 0; i < 3; ++i) {
      a[i] = vals[static_cast<std::size_t>(i) * g.size() + m];
      b[i] = direct.value(i, m);
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (int i = 0; i < 3; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-9);
  }
}

TEST_CASE("ordered tracker first differences shrink with h") {
  auto max_first_diff = [](std::size_t M) {
    const std::vector<double> g = uniform_grid(-1.0, 1.0, M);
    const CurveSamples c = make_family("triple", g);
    const LabeledTracks tr = ordered_tracks(c);
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      for (std::size_t m = 0; m + 1 < g.size(); ++m)
        worst = std::max(worst, std::abs(tr.value(i, m + 1) - tr.value(i, m)));
    return worst;
  };
  const double d1 = max_first_diff(100);
  const double d2 = max_first_diff(200);
  const double d3 = max_first_diff(400);
  CHECK(d2 < d1);
  CHECK(d3 < d2);
}

TEST_CASE("hungarian matches brute force on random costs") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    std::vector<double> cost(static_cast<std::size_t>(n) * n);
    for (double& c : cost) c = d(rng);

    const std::vector<int> got = detail::hungarian(cost, n);
    double got_cost = 0.0;
    std::vector<bool> used(n, false);
    for (int i = 0; i < n; ++i) {
      REQUIRE(got[i] >= 0);
      REQUIRE(got[i] < n);
      CHECK_FALSE(used[got[i]]);
      used[got[i]] = true;
      got_cost += cost[static_cast<std::size_t>(i) * n + got[i]];
    }

    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    double best = 1e300;
    do {
      double c = 0.0;
      for (int i = 0; i < n; ++i) c += cost[static_cast<std::size_t>(i) * n + perm[i]];
      best = std::min(best, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(got_cost == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("canonicalize_assignment prefers the identity on ties") {
  // two equal-cost matchings; the canonical one is the identity
  std::vector<double> cost = {1.0, 1.0, 1.0, 1.0};
  std::vector<int> perm = {1, 0};
  detail::canonicalize_assignment(cost, 2, perm, 1e-12);
  CHECK(perm[0] == 0);
  CHECK(perm[1] == 1);
}

TEST_CASE("permutation invariance of the input root order") {
  // e_k is symmetric, so any input order gives the same curve up to the
  // roundoff of accumulating the products in a different order
  const std::vector<double> g = uniform_grid(-1.0, 1.0, 50);
  auto build = [&g](bool swapped) {
    std::vector<double> coeffs(g.size() * 3);
    for (std::size_t m = 0; m < g.size(); ++m) {
      const double t = g[m];
      std::vector<double> r = {t, 2.0 * t + 1.0, -t};
      if (swapped) std::swap(r[0], r[2]);
      const MonicPoly p = from_roots(r);
      for (int k = 0; k < 3; ++k) coeffs[m * 3 + k] = p.a[k];
    }
    return make_curve(3, g, std::move(coeffs));
  };
  const CurveSamples a = build(false), b = build(true);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    const double scale = std::max(1.0, std::abs(a.coeffs[i]));
    CHECK(std::abs(a.coeffs[i] - b.coeffs[i]) <= 1e-13 * scale);
  }
}

TEST_CASE("default_eps_e scales with h^2 and the a2 magnitude") {
  const std::vector<double> g = uniform_grid(-1.0, 1.0, 200);
  const CurveSamples sym2 = center_curve(make_family("sym2", g));
  const double h = 2.0 / 200;
  CHECK(default_eps_e(sym2) == doctest::Approx(0.5 * h * h * 1.0).epsilon(1e-9));
}
