#include "hypoly/track.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

namespace hypoly {

namespace detail {

std::vector<int> hungarian(const std::vector<double>& cost, int n) {
  if (n < 1 || n > 64) throw error(errc::bad_input, "assignment size must be in [1, 64]");
  const double inf = std::numeric_limits<double>::infinity();
  // Shortest augmenting paths with dual potentials (rows/cols 1-based).
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

void canonicalize_assignment(const std::vector<double>& cost, int n,
                             std::vector<int>& perm, double tie_tol) {
  // Every applied swap makes the permutation word lexicographically smaller,
  // so the loop terminates.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (perm[j] >= perm[i]) continue;
        const double delta = cost[i * n + perm[j]] + cost[j * n + perm[i]] -
                             cost[i * n + perm[i]] - cost[j * n + perm[j]];
        if (delta <= tie_tol) {
          std::swap(perm[i], perm[j]);
          changed = true;
        }
      }
  }
}

}  // namespace detail

namespace {

// ---- assignment sweep ------------------------------------------------------

// Left-to-right matching of order-K predictions against each column's
// ascending roots.  values is filled k x cols row-major; perms (optional)
// records the chosen ascending-root index per row and column.
void assignment_sweep(const std::vector<RootList>& roots, int order,
                      std::vector<double>& values, std::vector<int>* perms) {
  const std::size_t cols = roots.size();
  const int n = roots.empty() ? 0 : roots[0].count();
  values.assign(static_cast<std::size_t>(n) * cols, 0.0);
  if (perms) perms->assign(static_cast<std::size_t>(n) * cols, 0);

  auto y = [&](int i, std::size_t m) -> double& { return values[i * cols + m]; };

  for (int i = 0; i < n; ++i) {
    y(i, 0) = roots[0].values[i];
    if (perms) (*perms)[i * cols + 0] = i;
  }

  std::vector<double> pred(n), cost(static_cast<std::size_t>(n) * n);
  for (std::size_t m = 1; m < cols; ++m) {
    double scale = 1.0;
    for (int i = 0; i < n; ++i) {
      double p = y(i, m - 1);
      if (order >= 1 && m >= 2) p = 2.0 * y(i, m - 1) - y(i, m - 2);
      if (order >= 2 && m >= 3)
        p = 3.0 * y(i, m - 1) - 3.0 * y(i, m - 2) + y(i, m - 3);
      pred[i] = p;
      scale = std::max(scale, std::abs(p));
    }
    for (double r : roots[m].values) scale = std::max(scale, std::abs(r));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) cost[i * n + j] = std::abs(pred[i] - roots[m].values[j]);
    std::vector<int> perm = detail::hungarian(cost, n);
    detail::canonicalize_assignment(cost, n, perm, 1e-12 * scale);
    for (int i = 0; i < n; ++i) {
      y(i, m) = roots[m].values[perm[i]];
      if (perms) (*perms)[i * cols + m] = perm[i];
    }
  }
}

// ---- proof tracker ---------------------------------------------------------

CurveSamples slice_curve(const CurveSamples& c, std::size_t lo, std::size_t hi) {
  CurveSamples s;
  s.degree = c.degree;
  s.grid.assign(c.grid.begin() + static_cast<std::ptrdiff_t>(lo),
                c.grid.begin() + static_cast<std::ptrdiff_t>(hi));
  s.coeffs.assign(c.coeffs.begin() + static_cast<std::ptrdiff_t>(lo * c.degree),
                  c.coeffs.begin() + static_cast<std::ptrdiff_t>(hi * c.degree));
  if (c.centered) {
    s.centered = true;
    s.shift.assign(c.shift.begin() + static_cast<std::ptrdiff_t>(lo),
                   c.shift.begin() + static_cast<std::ptrdiff_t>(hi));
  }
  return s;
}

// A locally tracked stretch: the table may extend one column past the owned
// range on either side, giving junctions a shared column on which both
// neighbors know their rows.
struct Piece {
  std::size_t own_lo = 0, own_hi = 0;  // owned grid columns [own_lo, own_hi)
  std::size_t tab_lo = 0;              // first grid column of the table
  std::size_t cols = 0;
  std::vector<double> tab;             // rows x cols, row-major

  int rows() const { return static_cast<int>(tab.size() / cols); }
  double at(int r, std::size_t g) const { return tab[r * cols + (g - tab_lo)]; }
};

struct JunctionKeys {
  std::vector<double> v, d1, d2;
  bool has1 = false, has2 = false;
};

// Keys of every table row at shared column j: the value there plus one-sided
// divided differences taken into the piece's own territory (dir = -1 for the
// left/backward side, +1 for the right/forward side).
JunctionKeys keys_at(const Piece& p, std::size_t j, int dir, double h) {
  const int n = p.rows();
  JunctionKeys k;
  k.v.resize(n);
  k.d1.assign(n, 0.0);
  k.d2.assign(n, 0.0);
  const std::ptrdiff_t local = static_cast<std::ptrdiff_t>(j - p.tab_lo);
  const std::ptrdiff_t last = static_cast<std::ptrdiff_t>(p.cols) - 1;
  k.has1 = (dir < 0) ? local >= 1 : local + 1 <= last;
  k.has2 = (dir < 0) ? local >= 2 : local + 2 <= last;
  for (int r = 0; r < n; ++r) {
    const double y0 = p.at(r, j);
    k.v[r] = y0;
    if (k.has1) {
      const double y1 = p.at(r, j + dir);
      k.d1[r] = dir * (y1 - y0) / h;
      if (k.has2) {
        const double y2 = p.at(r, j + 2 * dir);
        k.d2[r] = (y2 - 2.0 * y1 + y0) / (h * h);
      }
    }
  }
  return k;
}

// Junction permutation: lexicographic mismatch of (value, first, second
// divided difference), realized as a tiered cost with weights 1, 1e-3, 1e-6
// on scale-normalized terms.  ambiguous is set when a cost-tied 2-swap would
// join genuinely different rows.
std::vector<int> junction_match(const JunctionKeys& L, const JunctionKeys& R,
                                bool& ambiguous) {
  const int n = static_cast<int>(L.v.size());
  const bool use1 = L.has1 && R.has1;
  const bool use2 = L.has2 && R.has2;
  double sv = 1.0, s1 = 1.0, s2 = 1.0;
  for (int r = 0; r < n; ++r) {
    sv = std::max({sv, std::abs(L.v[r]), std::abs(R.v[r])});
    s1 = std::max({s1, std::abs(L.d1[r]), std::abs(R.d1[r])});
    s2 = std::max({s2, std::abs(L.d2[r]), std::abs(R.d2[r])});
  }
  std::vector<double> cost(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double w = std::abs(L.v[i] - R.v[j]) / sv;
      if (use1) w += 1e-3 * std::abs(L.d1[i] - R.d1[j]) / s1;
      if (use2) w += 1e-6 * std::abs(L.d2[i] - R.d2[j]) / s2;
      cost[i * n + j] = w;
    }
  std::vector<int> perm = detail::hungarian(cost, n);
  detail::canonicalize_assignment(cost, n, perm, 1e-9);

  ambiguous = false;
  for (int i = 0; i < n && !ambiguous; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double delta = cost[i * n + perm[j]] + cost[j * n + perm[i]] -
                           cost[i * n + perm[i]] - cost[j * n + perm[j]];
      if (std::abs(delta) > 1e-9) continue;
      double diff = std::abs(R.v[perm[i]] - R.v[perm[j]]) / sv;
      if (use1) diff += std::abs(R.d1[perm[i]] - R.d1[perm[j]]) / s1;
      if (use2) diff += std::abs(R.d2[perm[i]] - R.d2[perm[j]]) / s2;
      if (diff > 1e-6) {
        ambiguous = true;
        break;
      }
    }
  return perm;
}

double curve_eps_e(const CurveSamples& c, const TrackOptions& opt, int depth) {
  if (opt.eps_E > 0.0 && depth == 0) return opt.eps_E;
  return default_eps_e(c);
}

struct ProofTracker {
  const TrackOptions& opt;
  double h;
  std::vector<std::string>& warnings;

  std::vector<double> track_any(const CurveSamples& c, int depth);
  std::vector<double> track_centered(const CurveSamples& c, int depth);
  std::vector<double> track_free(const CurveSamples& c, std::size_t a, std::size_t b,
                                 int depth);
  std::vector<double> assignment_local(const CurveSamples& c, std::size_t a,
                                       std::size_t b);
  Piece run_piece(const CurveSamples& c, std::size_t first, std::size_t last,
                  const std::vector<std::size_t>& members, int depth);
  std::vector<double> assemble(const CurveSamples& c, std::vector<Piece>& pieces,
                               std::size_t lo, std::size_t hi);
};

std::vector<double> ProofTracker::assignment_local(const CurveSamples& c,
                                                   std::size_t a, std::size_t b) {
  std::vector<RootList> roots(b - a);
  for (std::size_t m = a; m < b; ++m)
    roots[m - a] = roots_hyperbolic(c.poly_at(m), opt.tol);
  std::vector<double> tab;
  assignment_sweep(roots, 2, tab, nullptr);
  return tab;
}

std::vector<double> ProofTracker::assemble(const CurveSamples& c,
                                           std::vector<Piece>& pieces, std::size_t lo,
                                           std::size_t hi) {
  const int n = pieces.front().rows();
  const std::size_t width = hi - lo;
  std::vector<double> out(static_cast<std::size_t>(n) * width, 0.0);
  std::vector<int> map(n);
  std::iota(map.begin(), map.end(), 0);

  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const Piece& cur = pieces[k];
    if (k > 0) {
      const Piece& prev = pieces[k - 1];
      // Shared column: the current piece's first owned column when the
      // previous table reaches it, otherwise the previous piece's last owned
      // column (which the current table then covers as its pad).
      const bool prev_covers =
          cur.own_lo >= prev.tab_lo && cur.own_lo < prev.tab_lo + prev.cols;
      const std::size_t j = prev_covers ? cur.own_lo : cur.own_lo - 1;
      JunctionKeys left = keys_at(prev, j, -1, h);
      JunctionKeys right = keys_at(cur, j, +1, h);
      // Reindex the left keys by the running global-row map.
      JunctionKeys gl;
      gl.has1 = left.has1;
      gl.has2 = left.has2;
      gl.v.resize(n);
      gl.d1.resize(n);
      gl.d2.resize(n);
      for (int i = 0; i < n; ++i) {
        gl.v[i] = left.v[map[i]];
        gl.d1[i] = left.d1[map[i]];
        gl.d2[i] = left.d2[map[i]];
      }
      bool ambiguous = false;
      std::vector<int> sigma = junction_match(gl, right, ambiguous);
      if (ambiguous)
        warnings.push_back("GluingAmbiguous at t=" + std::to_string(c.grid[j]) +
                           ": junction permutations tie within tolerance; kept the "
                           "canonical order-2 resolution");
      map = sigma;
    }
    for (int i = 0; i < n; ++i)
      for (std::size_t m = cur.own_lo; m < cur.own_hi; ++m)
        out[i * width + (m - lo)] = cur.at(map[i], m);
  }
  return out;
}

std::vector<double> ProofTracker::track_any(const CurveSamples& c, int depth) {
  if (c.degree == 1) {
    std::vector<double> tab(c.points());
    for (std::size_t m = 0; m < c.points(); ++m) tab[m] = c.coeff(m, 1);
    return tab;
  }
  const CurveSamples cc = center_curve(c);
  std::vector<double> tab = track_centered(cc, depth);
  const std::size_t pts = c.points();
  for (std::size_t i = 0; i < tab.size() / pts; ++i)
    for (std::size_t m = 0; m < pts; ++m) tab[i * pts + m] += cc.shift[m];
  return tab;
}

Piece ProofTracker::run_piece(const CurveSamples& c, std::size_t first,
                              std::size_t last,
                              const std::vector<std::size_t>& members, int depth) {
  const std::size_t pts = c.points();
  Piece p;
  p.own_lo = first;
  p.own_hi = last + 1;
  p.tab_lo = first > 0 ? first - 1 : 0;
  const std::size_t pad_hi = std::min(pts, last + 2);
  p.cols = pad_hi - p.tab_lo;

  // The terminal test must cover the padded slice, not just the run members:
  // an isolated exact collision has a_2 == 0 at its members while the curve
  // still moves across the slice and needs the rescale to split it.
  double a2max = 0.0;
  for (std::size_t m = p.tab_lo; m < pad_hi; ++m)
    a2max = std::max(a2max, std::abs(c.coeff(m, 2)));
  const double s = c.coeff_scale();

  try {
    if (a2max <= 1e-24 * s * s) {
      // Nothing left to resolve: the roots all sit on the single common root
      // (zero after centering); take them in ascending order per column.
      const int n = c.degree;
      p.tab.assign(static_cast<std::size_t>(n) * p.cols, 0.0);
      for (std::size_t m = p.tab_lo; m < pad_hi; ++m) {
        const RootList r = roots_hyperbolic(c.poly_at(m), opt.tol);
        for (int i = 0; i < n; ++i) p.tab[i * p.cols + (m - p.tab_lo)] = r.values[i];
      }
      return p;
    }
    if (depth + 1 > opt.max_depth)
      throw error(errc::no_convergence, "rescale recursion depth cap reached");

    // Rescale at the run's central collision and track the z-curve locally;
    // x = (t - t0) z turns the tracked rows back into root tracks.  The
    // z-roots at the anchor are the admissible one-sided derivatives, so the
    // left and right branches join with matching first divided differences.
    const std::size_t anchor = members[members.size() / 2];
    const double t0 = c.grid[anchor];
    const CurveSamples p1 = rescale_curve(c, t0);
    const CurveSamples sub = slice_curve(p1, p.tab_lo, pad_hi);
    const std::vector<double> z = track_centered(sub, depth + 1);
    const int n = c.degree;
    p.tab.assign(static_cast<std::size_t>(n) * p.cols, 0.0);
    for (int i = 0; i < n; ++i)
      for (std::size_t m = p.tab_lo; m < pad_hi; ++m)
        p.tab[i * p.cols + (m - p.tab_lo)] =
            (c.grid[m] - t0) * z[i * p.cols + (m - p.tab_lo)];
    return p;
  } catch (const error&) {
    p.tab = assignment_local(c, p.tab_lo, pad_hi);
    return p;
  }
}

std::vector<double> ProofTracker::track_free(const CurveSamples& c, std::size_t a,
                                             std::size_t b, int depth) {
  const int n = c.degree;
  if (b == a) return {};
  if (n == 1) {
    std::vector<double> tab(b - a);
    for (std::size_t m = a; m < b; ++m) tab[m - a] = c.coeff(m, 1);
    return tab;
  }
  if (b - a <= 3) return assignment_local(c, a, b);

  try {
    const std::size_t anchor = (a + b - 1) / 2;
    const RootList r0 = roots_hyperbolic(c.poly_at(anchor), opt.tol);

    double gap = 0.0;
    if (opt.gap > 0.0 && depth == 0) {
      gap = opt.gap;
    } else {
      // A quarter of the smallest distance between distinct roots at the
      // anchor; repeated roots stay in one cluster.
      double scale = std::max(
          {1.0, std::abs(r0.values.front()), std::abs(r0.values.back())});
      double mind = std::numeric_limits<double>::infinity();
      for (int i = 1; i < n; ++i) {
        const double d = r0.values[i] - r0.values[i - 1];
        if (d > 1e-9 * scale) mind = std::min(mind, d);
      }
      if (!std::isfinite(mind))
        throw error(errc::clusters_collide, "no distinct root pair at the anchor");
      gap = 0.25 * mind;
    }

    const ClusterSplit sp = split_curve(slice_curve(c, a, b), c.grid[anchor], gap, opt.tol);
    const std::size_t wb = a + sp.window_begin;
    const std::size_t we = a + sp.window_end;

    Piece wp;
    wp.own_lo = wb;
    wp.own_hi = we;
    wp.tab_lo = wb;
    wp.cols = we - wb;
    wp.tab.reserve(static_cast<std::size_t>(n) * wp.cols);
    for (const CurveSamples& f : sp.factors) {
      const std::vector<double> ft = track_any(f, depth);
      wp.tab.insert(wp.tab.end(), ft.begin(), ft.end());
    }

    std::vector<Piece> pieces;
    if (wb > a) {
      Piece tl;
      tl.own_lo = a;
      tl.own_hi = wb;
      tl.tab_lo = a;
      tl.cols = wb + 1 - a;
      tl.tab = track_free(c, a, wb + 1, depth);
      pieces.push_back(std::move(tl));
    }
    pieces.push_back(std::move(wp));
    if (we < b) {
      Piece tr;
      tr.own_lo = we;
      tr.own_hi = b;
      tr.tab_lo = we - 1;
      tr.cols = b - (we - 1);
      tr.tab = track_free(c, we - 1, b, depth);
      pieces.push_back(std::move(tr));
    }
    return assemble(c, pieces, a, b);
  } catch (const error&) {
    return assignment_local(c, a, b);
  }
}

std::vector<double> ProofTracker::track_centered(const CurveSamples& c, int depth) {
  const int n = c.degree;
  const std::size_t pts = c.points();
  if (n == 1) {
    std::vector<double> tab(pts);
    for (std::size_t m = 0; m < pts; ++m) tab[m] = c.coeff(m, 1);
    return tab;
  }

  const double eps_E = curve_eps_e(c, opt, depth);
  std::vector<std::size_t> E;
  for (std::size_t m = 0; m < pts; ++m)
    if (std::abs(c.coeff(m, 2)) <= eps_E) E.push_back(m);

  if (E.empty()) return track_free(c, 0, pts, depth);

  // Group E into runs: indices within w steps belong to the same degeneracy
  // event; free stretches in between are at least w columns wide.
  std::vector<Piece> pieces;
  std::size_t prev_end = 0;
  std::size_t ri = 0;
  while (ri < E.size()) {
    std::size_t rj = ri;
    while (rj + 1 < E.size() &&
           E[rj + 1] - E[rj] <= static_cast<std::size_t>(opt.w))
      ++rj;
    const std::size_t first = E[ri], last = E[rj];
    const std::vector<std::size_t> members(E.begin() + static_cast<std::ptrdiff_t>(ri),
                                           E.begin() + static_cast<std::ptrdiff_t>(rj + 1));
    if (first > prev_end) {
      Piece fp;
      fp.own_lo = prev_end;
      fp.own_hi = first;
      fp.tab_lo = prev_end;
      fp.cols = first - prev_end;
      fp.tab = track_free(c, prev_end, first, depth);
      pieces.push_back(std::move(fp));
    }
    pieces.push_back(run_piece(c, first, last, members, depth));
    prev_end = last + 1;
    ri = rj + 1;
  }
  if (prev_end < pts) {
    Piece fp;
    fp.own_lo = prev_end;
    fp.own_hi = pts;
    fp.tab_lo = prev_end;
    fp.cols = pts - prev_end;
    fp.tab = track_free(c, prev_end, pts, depth);
    pieces.push_back(std::move(fp));
  }
  return assemble(c, pieces, 0, pts);
}

}  // namespace

// ---- public trackers -------------------------------------------------------

LabeledTracks ordered_tracks(const CurveSamples& c, double tol, Exec exec) {
  c.validate();
  const std::vector<RootList> roots = solve_curve_roots(c, tol, exec);
  LabeledTracks t;
  t.grid = c.grid;
  t.degree = c.degree;
  t.method = "ordered";
  const std::size_t pts = c.points();
  t.values.resize(static_cast<std::size_t>(c.degree) * pts);
  t.perm.resize(t.values.size());
  for (int i = 0; i < c.degree; ++i)
    for (std::size_t m = 0; m < pts; ++m) {
      t.values[i * pts + m] = roots[m].values[i];
      t.perm[i * pts + m] = i;
    }
  return t;
}

LabeledTracks assignment_tracks(const CurveSamples& c, int order, double tol,
                                Exec exec) {
  c.validate();
  if (order < 0 || order > 2)
    throw error(errc::bad_input, "prediction order must be 0, 1 or 2");
  if (c.degree > 64) throw error(errc::bad_input, "assignment tracker capped at n=64");
  c.spacing();  // uniform grid required for extrapolation
  const std::vector<RootList> roots = solve_curve_roots(c, tol, exec);
  LabeledTracks t;
  t.grid = c.grid;
  t.degree = c.degree;
  t.method = "assignment:" + std::to_string(order);
  assignment_sweep(roots, order, t.values, &t.perm);
  return t;
}

DegeneracySets detect_degeneracy_sets(const CurveSamples& c, double eps_E,
                                      double eps_F, int w) {
  c.validate();
  if (!c.centered) throw error(errc::not_centered, "curve must be centered first");
  c.spacing();
  DegeneracySets ds;
  ds.eps_E = eps_E;
  ds.eps_F = eps_F;
  ds.w = w;
  if (c.degree < 2) return ds;

  const std::size_t pts = c.points();
  for (std::size_t m = 0; m < pts; ++m)
    if (std::abs(c.coeff(m, 2)) <= eps_E) ds.E.push_back(m);

  auto near_another = [w](const std::vector<std::size_t>& set, std::size_t idx) {
    for (std::size_t other : set) {
      if (other == idx) continue;
      const std::size_t d = other > idx ? other - idx : idx - other;
      if (d <= static_cast<std::size_t>(w)) return true;
    }
    return false;
  };
  for (std::size_t m : ds.E)
    if (near_another(ds.E, m)) ds.Eprime.push_back(m);

  for (std::size_t m : ds.E) {
    // Quick exit: when the neighboring cofactors are all numeric zero the
    // derivative labels are all zero and trivially coincide.
    double zscale = 0.0;
    bool have_neighbor = false;
    for (std::ptrdiff_t d = -3; d <= 3; ++d) {
      if (d == 0) continue;
      const std::ptrdiff_t mm = static_cast<std::ptrdiff_t>(m) + d;
      if (mm < 0 || mm >= static_cast<std::ptrdiff_t>(pts)) continue;
      have_neighbor = true;
      const double dt = c.grid[static_cast<std::size_t>(mm)] - c.grid[m];
      for (int k = 1; k <= c.degree; ++k) {
        const double co = c.coeff(static_cast<std::size_t>(mm), k) / std::pow(dt, k);
        zscale = std::max(zscale, std::pow(std::abs(co), 1.0 / k));
      }
    }
    bool in_F = false;
    if (have_neighbor && 2.0 * zscale <= eps_F) {
      in_F = true;
    } else {
      try {
        const RootList lab = derivative_labels_at_degeneracy(c, c.grid[m]);
        in_F = lab.values.back() - lab.values.front() <= eps_F;
      } catch (const error&) {
        in_F = false;  // no clean labels: treat as not derivative-degenerate
      }
    }
    if (in_F) ds.F.push_back(m);
  }

  // The containment chain E' <= F <= E, enforced at grid scale: persistent
  // collision forces coincident derivative labels even when the local label
  // estimate is too noisy to show it.
  for (std::size_t m : ds.Eprime)
    if (!std::binary_search(ds.F.begin(), ds.F.end(), m)) ds.F.push_back(m);
  std::sort(ds.F.begin(), ds.F.end());

  for (std::size_t m : ds.F)
    if (near_another(ds.F, m)) ds.Fprime.push_back(m);
  return ds;
}

RootList derivative_labels_at_degeneracy(const CurveSamples& c, double t0, double tol) {
  const CurveSamples p1 = rescale_curve(c, t0);
  return roots_hyperbolic(p1.poly_at(p1.index_of(t0)), tol);
}

double default_eps_e(const CurveSamples& c) {
  if (c.degree < 2) return 0.0;
  const double h = c.spacing();
  double s2 = 1.0;
  for (std::size_t m = 0; m < c.points(); ++m)
    s2 = std::max(s2, std::abs(c.coeff(m, 2)));
  return 0.5 * h * h * s2;
}

LabeledTracks proof_tracks(const CurveSamples& c, const TrackOptions& opt) {
  c.validate();
  if (c.degree > 64) throw error(errc::bad_input, "proof tracker capped at n=64");
  const double h = c.spacing();

  LabeledTracks t;
  t.grid = c.grid;
  t.degree = c.degree;
  t.method = "proof";

  const CurveSamples work = c.centered ? c : center_curve(c);
  TrackOptions eff = opt;
  if (eff.eps_F <= 0.0) eff.eps_F = 1e-6 * std::max(1.0, work.coeff_scale());
  ProofTracker tracker{eff, h, t.warnings};
  std::vector<double> table = tracker.track_centered(work, 0);

  const std::size_t pts = c.points();
  const int n = c.degree;
  if (!c.centered)
    for (int i = 0; i < n; ++i)
      for (std::size_t m = 0; m < pts; ++m) table[i * pts + m] += work.shift[m];

  // Snap every column onto the ascending root list: rank the tracked values
  // and give each row the root of its rank.  Multiset consistency becomes
  // exact and the per-point permutations fall out of the ranking.
  const std::vector<RootList> roots = solve_curve_roots(c, eff.tol, eff.exec);
  t.values.assign(static_cast<std::size_t>(n) * pts, 0.0);
  t.perm.assign(t.values.size(), 0);
  std::vector<int> order(n);
  for (std::size_t m = 0; m < pts; ++m) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      return table[x * pts + m] < table[y * pts + m];
    });
    for (int rank = 0; rank < n; ++rank) {
      const int row = order[rank];
      t.values[row * pts + m] = roots[m].values[rank];
      t.perm[row * pts + m] = rank;
    }
  }
  return t;
}

}  // namespace hypoly
