#include "hypoly/curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace hypoly {

namespace {

// Least-squares line through (x_i, y_i); returns {slope, rms residual}.
struct LineFit {
  double slope = 0.0;
  double rms = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  const double b = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.slope * x[i] + b);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

// Polynomial extrapolation to t0 through up to three samples (Lagrange);
// the samples are the cofactor values nearest the anchor on one side.
double extrapolate_to(double t0, const std::vector<double>& ts,
                      const std::vector<double>& ys) {
  const std::size_t m = ts.size();
  double r = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double li = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      li *= (t0 - ts[j]) / (ts[i] - ts[j]);
    }
    r += li * ys[i];
  }
  return r;
}

constexpr double kCoeffFloor = 1e-14;  // |a_k| below this is numeric zero

}  // namespace

bool CurveSamples::uniform(double rel_tol) const {
  if (points() < 2) return true;
  const double h = (grid.back() - grid.front()) / static_cast<double>(points() - 1);
  for (std::size_t m = 1; m < points(); ++m)
    if (std::abs((grid[m] - grid[m - 1]) - h) > rel_tol * std::abs(h)) return false;
  return true;
}

double CurveSamples::spacing() const {
  if (points() < 2 || !uniform())
    throw error(errc::non_uniform_grid, "uniform grid required");
  return (grid.back() - grid.front()) / static_cast<double>(points() - 1);
}

std::size_t CurveSamples::index_of(double t0) const {
  const auto it = std::lower_bound(grid.begin(), grid.end(), t0);
  std::size_t m = static_cast<std::size_t>(it - grid.begin());
  if (m == points() || (m > 0 && t0 - grid[m - 1] < grid[m] - t0)) --m;
  const double span = grid.back() - grid.front();
  const double tol = 1e-9 * std::max(span, 1.0);
  if (std::abs(grid[m] - t0) > tol)
    throw error(errc::bad_input, "t0 is not a grid point");
  return m;
}

double CurveSamples::coeff_scale() const {
  double r = 1.0;
  for (std::size_t m = 0; m < points(); ++m)
    for (int k = 1; k <= degree; ++k)
      r = std::max(r, std::pow(std::abs(coeff(m, k)), 1.0 / k));
  return r;
}

void CurveSamples::validate() const {
  if (degree < 1) throw error(errc::bad_input, "degree must be >= 1");
  if (grid.empty()) throw error(errc::bad_input, "empty grid");
  if (coeffs.size() != points() * static_cast<std::size_t>(degree))
    throw error(errc::bad_input, "coefficient array size mismatch");
  for (std::size_t m = 1; m < points(); ++m)
    if (!(grid[m] > grid[m - 1]))
      throw error(errc::bad_input, "grid not strictly increasing");
  if (centered && shift.size() != points())
    throw error(errc::bad_input, "shift array size mismatch");
}

CurveSamples make_curve(int degree, std::vector<double> grid, std::vector<double> coeffs) {
  CurveSamples c;
  c.degree = degree;
  c.grid = std::move(grid);
  c.coeffs = std::move(coeffs);
  c.validate();
  return c;
}

std::vector<double> uniform_grid(double t_min, double t_max, std::size_t M) {
  if (!(t_min < t_max)) throw error(errc::bad_input, "t_min must be < t_max");
  if (M < 1) throw error(errc::bad_input, "grid needs at least two points");
  std::vector<double> g(M + 1);
  for (std::size_t m = 0; m <= M; ++m)
    g[m] = t_min + (t_max - t_min) * (static_cast<double>(m) / static_cast<double>(M));
  g.back() = t_max;
  return g;
}

CurveSamples center_curve(const CurveSamples& c) {
  c.validate();
  CurveSamples out = c;
  out.shift.assign(c.points(), 0.0);
  for (std::size_t m = 0; m < c.points(); ++m) {
    Centered cm = center(c.poly_at(m));
    std::copy(cm.poly.a.begin(), cm.poly.a.end(),
              out.coeffs.begin() + static_cast<std::ptrdiff_t>(m) * c.degree);
    out.shift[m] = cm.shift + (c.centered ? c.shift[m] : 0.0);
  }
  out.centered = true;
  return out;
}

void uncenter_rows(const CurveSamples& c, std::vector<double>& rows) {
  if (!c.centered) return;
  const std::size_t pts = c.points();
  if (rows.size() % pts != 0) throw error(errc::bad_input, "row table size mismatch");
  for (std::size_t i = 0; i < rows.size() / pts; ++i)
    for (std::size_t m = 0; m < pts; ++m) rows[i * pts + m] += c.shift[m];
}

namespace {

// Shared core of the vanishing-order estimate.  Collects the window samples
// of a_k around grid index i0 (excluding the anchor) and reads the order off
// the log-log growth of |a_k| against |t - t0|.  A least-squares fit of the
// whole window is wrecked whenever the cofactor crosses zero inside it (the
// dip near the crossing drags the line), so the order comes from the median
// of the slopes between consecutive same-side samples instead; the handful
// of pairs adjacent to a crossing land in the tails and drop out.  All
// samples below the numeric-zero floor means a_k vanishes identically as far
// as the data can tell, which counts as the capped order k.
VanishingOrder vanishing_order_at(const CurveSamples& c, int k, std::size_t i0,
                                  int left, int right) {
  const double t0 = c.grid[i0];
  VanishingOrder vo;
  vo.anchor = t0;

  std::vector<double> ts, as;
  const std::size_t lo = i0 - static_cast<std::size_t>(left);
  const std::size_t hi = i0 + static_cast<std::size_t>(right);
  for (std::size_t m = lo; m <= hi; ++m) {
    if (m == i0) continue;
    ts.push_back(c.grid[m]);
    as.push_back(c.coeff(m, k));
  }

  std::vector<double> slopes, lx, ly;
  for (int side = 0; side < 2; ++side) {
    std::vector<std::pair<double, double>> pts;  // (log |t - t0|, log |a_k|)
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double d = ts[i] - t0;
      if (side == 0 ? d >= 0.0 : d <= 0.0) continue;
      if (std::abs(as[i]) < kCoeffFloor) continue;
      pts.emplace_back(std::log(std::abs(d)), std::log(std::abs(as[i])));
    }
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      lx.push_back(pts[i].first);
      ly.push_back(pts[i].second);
      if (i > 0)
        slopes.push_back((pts[i].second - pts[i - 1].second) /
                         (pts[i].first - pts[i - 1].first));
    }
  }
  if (slopes.empty() && lx.size() >= 2)
    slopes.push_back(fit_line(lx, ly).slope);  // lone usable sample per side

  if (slopes.empty()) {
    vo.order = k;  // numerically the zero function near t0
    vo.confidence = 0.0;
  } else {
    std::nth_element(slopes.begin(), slopes.begin() + slopes.size() / 2,
                     slopes.end());
    const double med = slopes[slopes.size() / 2];
    vo.order = std::clamp(static_cast<int>(std::lround(med)), 0, k);
    vo.confidence = fit_line(lx, ly).rms;
  }

  vo.ts = ts;
  vo.cofactor.resize(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i)
    vo.cofactor[i] = as[i] / std::pow(ts[i] - t0, vo.order);
  return vo;
}

// Centered means a_1 == 0.  The flag set by center_curve is sufficient but
// not necessary: curves built with a_1 identically zero qualify as-is.
void require_centered(const CurveSamples& c) {
  if (c.centered) return;
  double worst = 0.0;
  for (std::size_t m = 0; m < c.points(); ++m)
    worst = std::max(worst, std::abs(c.coeff(m, 1)));
  if (worst <= 1e-12 * std::max(1.0, c.coeff_scale())) return;
  throw error(errc::not_centered, "curve must be centered first");
}

}  // namespace

VanishingOrder estimate_vanishing_order(const CurveSamples& c, int k, double t0,
                                        int window) {
  require_centered(c);
  if (k < 1 || k > c.degree) throw error(errc::bad_input, "coefficient index out of range");
  if (window < 4)
    throw error(errc::insufficient_window, "window must cover >= 4 points per side");
  const std::size_t i0 = c.index_of(t0);
  if (i0 < static_cast<std::size_t>(window) ||
      i0 + static_cast<std::size_t>(window) >= c.points())
    throw error(errc::insufficient_window, "anchor too close to the grid boundary");
  return vanishing_order_at(c, k, i0, window, window);
}

bool multiplicity_test(const CurveSamples& c, double t0) {
  require_centered(c);
  if (c.degree < 2) return true;  // single root: nothing to collide
  const std::size_t i0 = c.index_of(t0);

  const int left = static_cast<int>(std::min<std::size_t>(i0, 8));
  const int right = static_cast<int>(std::min<std::size_t>(c.points() - 1 - i0, 8));
  if (left + right < 3)
    throw error(errc::insufficient_window, "too few grid points around the anchor");

  const VanishingOrder o2 = vanishing_order_at(c, 2, i0, left, right);
  if (o2.order < 2) return false;

  // a_2 = O((t-t0)^2) forces a_k = O((t-t0)^k) for hyperbolic smooth data.
  for (int k = 3; k <= c.degree; ++k) {
    const VanishingOrder ok = vanishing_order_at(c, k, i0, left, right);
    if (ok.order < k)
      throw error(errc::lemma_violation,
                  "a_" + std::to_string(k) + " vanishes only to order " +
                      std::to_string(ok.order) + " at t0 = " + std::to_string(t0));
  }
  return true;
}

CurveSamples rescale_curve(const CurveSamples& c, double t0) {
  require_centered(c);
  const std::size_t i0 = c.index_of(t0);
  if (!multiplicity_test(c, t0))
    throw error(errc::order_too_low, "a_2 does not vanish to order 2 at the anchor");

  CurveSamples out;
  out.degree = c.degree;
  out.grid = c.grid;
  out.coeffs.assign(c.coeffs.size(), 0.0);
  out.shift.assign(c.points(), 0.0);
  out.centered = true;

  for (std::size_t m = 0; m < c.points(); ++m) {
    if (m == i0) continue;
    const double dt = c.grid[m] - t0;
    double dtk = 1.0;
    for (int k = 1; k <= c.degree; ++k) {
      dtk *= dt;
      out.coeffs[m * c.degree + (k - 1)] = c.coeff(m, k) / dtk;
    }
  }

  // Fill the anchor row by quadratic extrapolation of the cofactor samples
  // from each side; both sides must agree on the value a_{k,k}(t0).
  for (int k = 1; k <= c.degree; ++k) {
    std::vector<double> lt, lv, rt, rv;
    for (std::size_t d = 1; d <= 3 && d <= i0; ++d) {
      lt.push_back(out.grid[i0 - d]);
      lv.push_back(out.coeff(i0 - d, k));
    }
    for (std::size_t d = 1; d <= 3 && i0 + d < c.points(); ++d) {
      rt.push_back(out.grid[i0 + d]);
      rv.push_back(out.coeff(i0 + d, k));
    }
    double value = 0.0;
    if (!lt.empty() && !rt.empty()) {
      const double from_left = extrapolate_to(t0, lt, lv);
      const double from_right = extrapolate_to(t0, rt, rv);
      double scale = 1.0;
      for (double v : lv) scale = std::max(scale, std::abs(v));
      for (double v : rv) scale = std::max(scale, std::abs(v));
      if (std::abs(from_left - from_right) > 1e-6 * scale)
        throw error(errc::order_too_low,
                    "one-sided cofactor limits disagree for a_" + std::to_string(k) +
                        " at t0 = " + std::to_string(t0));
      value = 0.5 * (from_left + from_right);
    } else if (!lt.empty()) {
      value = extrapolate_to(t0, lt, lv);
    } else if (!rt.empty()) {
      value = extrapolate_to(t0, rt, rv);
    }
    out.coeffs[i0 * c.degree + (k - 1)] = value;
  }
  out.coeffs[i0 * c.degree + 0] = 0.0;  // a_1 stays exactly zero
  return out;
}

std::vector<Cluster> cluster_roots(const RootList& r, double gap) {
  if (gap <= 0.0) throw error(errc::bad_input, "gap must be positive");
  std::vector<Cluster> out;
  const int n = r.count();
  int begin = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || r.values[i] - r.values[i - 1] >= gap) {
      double mean = 0.0;
      for (int j = begin; j < i; ++j) mean += r.values[j];
      mean /= (i - begin);
      out.push_back({begin, i, mean});
      begin = i;
    }
  }
  return out;
}

namespace {

// Mean of each consecutive block (the anchor's cluster sizes) of an
// ascending root list.
std::vector<double> block_centers(const std::vector<double>& roots,
                                  const std::vector<Cluster>& anchor) {
  std::vector<double> centers(anchor.size());
  int pos = 0;
  for (std::size_t i = 0; i < anchor.size(); ++i) {
    double mean = 0.0;
    for (int j = 0; j < anchor[i].size(); ++j) mean += roots[pos + j];
    centers[i] = mean / anchor[i].size();
    pos += anchor[i].size();
  }
  return centers;
}

// Window guard: ascending roots at a grid point, split into consecutive
// blocks of the anchor's cluster sizes, (a) keep adjacent blocks separated
// by more than gap/2 and (b) keep every root strictly closer to its own
// cluster's center, tracked from the neighboring accepted point, than to the
// adjacent clusters' centers.  (b) ends the window where a root becomes
// equidistant between clusters and its membership loses meaning.
bool blocks_admissible(const std::vector<double>& roots,
                       const std::vector<Cluster>& anchor,
                       const std::vector<double>& prev_centers, double gap) {
  int pos = 0;
  double prev_last = 0.0;
  for (std::size_t i = 0; i < anchor.size(); ++i) {
    const int sz = anchor[i].size();
    if (i > 0 && roots[pos] - prev_last <= 0.5 * gap) return false;
    for (int j = 0; j < sz; ++j) {
      const double own = std::abs(roots[pos + j] - prev_centers[i]);
      if (i > 0 && own >= std::abs(roots[pos + j] - prev_centers[i - 1])) return false;
      if (i + 1 < anchor.size() && own >= std::abs(roots[pos + j] - prev_centers[i + 1]))
        return false;
    }
    prev_last = roots[pos + sz - 1];
    pos += sz;
  }
  return true;
}

}  // namespace

ClusterSplit split_curve(const CurveSamples& c, double t0, double gap, double tol) {
  const std::size_t i0 = c.index_of(t0);
  const RootList r0 = roots_hyperbolic(c.poly_at(i0), tol);
  ClusterSplit s;
  s.anchor = c.grid[i0];
  s.clusters = cluster_roots(r0, gap);
  if (s.clusters.size() < 2)
    throw error(errc::clusters_collide, "roots form a single cluster at the anchor");

  // Maximal window around i0 on which the blocks stay admissible.
  std::vector<std::vector<double>> roots_at(c.points());
  roots_at[i0] = r0.values;
  std::size_t wb = i0, we = i0 + 1;
  std::vector<double> centers = block_centers(r0.values, s.clusters);
  while (wb > 0) {
    std::vector<double> r = roots_hyperbolic(c.poly_at(wb - 1), tol).values;
    if (!blocks_admissible(r, s.clusters, centers, gap)) break;
    centers = block_centers(r, s.clusters);
    roots_at[wb - 1] = std::move(r);
    --wb;
  }
  centers = block_centers(r0.values, s.clusters);
  while (we < c.points()) {
    std::vector<double> r = roots_hyperbolic(c.poly_at(we), tol).values;
    if (!blocks_admissible(r, s.clusters, centers, gap)) break;
    centers = block_centers(r, s.clusters);
    roots_at[we] = std::move(r);
    ++we;
  }
  s.window_begin = wb;
  s.window_end = we;

  const std::vector<double> wgrid(c.grid.begin() + static_cast<std::ptrdiff_t>(wb),
                                  c.grid.begin() + static_cast<std::ptrdiff_t>(we));
  for (const Cluster& cl : s.clusters) {
    CurveSamples f;
    f.degree = cl.size();
    f.grid = wgrid;
    f.coeffs.reserve(wgrid.size() * static_cast<std::size_t>(cl.size()));
    for (std::size_t m = wb; m < we; ++m) {
      const std::span<const double> block(roots_at[m].data() + cl.begin,
                                          static_cast<std::size_t>(cl.size()));
      const MonicPoly fp = from_roots(block);
      f.coeffs.insert(f.coeffs.end(), fp.a.begin(), fp.a.end());
    }
    s.factors.push_back(std::move(f));
  }
  return s;
}

std::vector<double> split_product_row(const ClusterSplit& s, std::size_t window_offset) {
  std::vector<double> prod{1.0};  // power basis, highest degree first
  for (const CurveSamples& f : s.factors) {
    const std::vector<double> fp = to_power(f.poly_at(window_offset));
    std::vector<double> next(prod.size() + fp.size() - 1, 0.0);
    for (std::size_t i = 0; i < prod.size(); ++i)
      for (std::size_t j = 0; j < fp.size(); ++j) next[i + j] += prod[i] * fp[j];
    prod = std::move(next);
  }
  return from_power(prod).a;
}

}  // namespace hypoly
