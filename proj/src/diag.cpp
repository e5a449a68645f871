#include "hypoly/diag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypoly/errors.hpp"

namespace hypoly {

namespace {

double uniform_spacing(const std::vector<double>& grid) {
  if (grid.size() < 2) throw error(errc::bad_input, "grid too short");
  const double h = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  for (std::size_t m = 1; m < grid.size(); ++m)
    if (std::abs((grid[m] - grid[m - 1]) - h) > 1e-9 * std::abs(h))
      throw error(errc::non_uniform_grid, "uniform grid required");
  return h;
}

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
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
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

std::vector<double> SymMatrixCurve::dense_at(std::size_t m) const {
  std::vector<double> a(static_cast<std::size_t>(dim) * dim, 0.0);
  const double* tri = entries.data() + m * tri_size();
  std::size_t idx = 0;
  for (int j = 0; j < dim; ++j)
    for (int i = j; i < dim; ++i, ++idx) {
      a[static_cast<std::size_t>(i) * dim + j] = tri[idx];
      a[static_cast<std::size_t>(j) * dim + i] = tri[idx];
    }
  return a;
}

double SymMatrixCurve::norm() const {
  double best = 0.0;
  for (std::size_t m = 0; m < points(); ++m) {
    const std::vector<double> a = dense_at(m);
    double s = 0.0;
    for (double v : a) s += v * v;
    best = std::max(best, std::sqrt(s));
  }
  return best;
}

std::vector<std::vector<double>> divided_differences(const LabeledTracks& t, int k) {
  if (k < 1 || k > 3) throw error(errc::bad_input, "order must be 1, 2 or 3");
  if (t.points() < static_cast<std::size_t>(k) + 1)
    throw error(errc::bad_input, "grid too short for the requested order");
  const double h = uniform_spacing(t.grid);
  const double hk = std::pow(h, k);
  const std::size_t pts = t.points();
  const std::size_t len = pts - static_cast<std::size_t>(k);

  // Binomial weights of the forward difference of order k.
  static const double binom[4][4] = {
      {1, 0, 0, 0}, {-1, 1, 0, 0}, {1, -2, 1, 0}, {-1, 3, -3, 1}};

  std::vector<std::vector<double>> out(t.degree, std::vector<double>(len));
  for (int i = 0; i < t.degree; ++i)
    for (std::size_t m = 0; m < len; ++m) {
      double s = 0.0;
      for (int j = 0; j <= k; ++j) s += binom[k][j] * t.value(i, m + j);
      out[i][m] = s / hk;
    }
  return out;
}

RegularityReport regularity_report(const LabeledTracks& t, double jump_thresh) {
  RegularityReport rep;
  rep.jump_thresh = jump_thresh;
  rep.method = t.method;
  rep.row_sup.assign(t.degree, {0.0, 0.0, 0.0});

  std::vector<std::vector<double>> dd1;
  for (int k = 1; k <= 3; ++k) {
    if (t.points() < static_cast<std::size_t>(k) + 1) break;
    const auto dd = divided_differences(t, k);
    for (int i = 0; i < t.degree; ++i)
      for (double v : dd[i]) {
        rep.sup[k - 1] = std::max(rep.sup[k - 1], std::abs(v));
        rep.row_sup[i][k - 1] = std::max(rep.row_sup[i][k - 1], std::abs(v));
      }
    if (k == 1) dd1 = dd;
  }

  // Jumps: adjacent order-1 divided differences that differ by more than the
  // threshold, grouped by grid location.  The gap between dd1[m-1] (interval
  // ending at t_m) and dd1[m] (interval starting at t_m) sits at t_m.
  if (!dd1.empty()) {
    const std::size_t len = dd1[0].size();
    for (std::size_t m = 1; m < len; ++m) {
      JumpRecord rec;
      rec.index = m;
      rec.t = t.grid[m];
      for (int i = 0; i < t.degree; ++i) {
        const double g = std::abs(dd1[i][m] - dd1[i][m - 1]);
        if (g > jump_thresh) {
          rec.rows.push_back(i);
          rec.magnitude = std::max(rec.magnitude, g);
        }
      }
      if (!rec.rows.empty()) rep.jumps.push_back(std::move(rec));
    }
  }
  return rep;
}

RefinementSweep refinement_sweep(const std::function<LabeledTracks(int)>& generate,
                                 int levels) {
  if (levels < 2) throw error(errc::bad_input, "refinement needs at least 2 levels");
  RefinementSweep sw;
  for (int level = 0; level < levels; ++level) {
    const LabeledTracks t = generate(level);
    const double h = uniform_spacing(t.grid);
    sw.h.push_back(h);
    const RegularityReport rep = regularity_report(t, std::numeric_limits<double>::infinity());
    for (int k = 0; k < 3; ++k) sw.sup[k].push_back(rep.sup[k]);

    double gap = 0.0;
    if (t.points() >= 3) {
      const auto dd1 = divided_differences(t, 1);
      for (int i = 0; i < t.degree; ++i)
        for (std::size_t m = 1; m < dd1[i].size(); ++m)
          gap = std::max(gap, std::abs(dd1[i][m] - dd1[i][m - 1]));
    }
    sw.max_dd1_gap.push_back(gap);
  }

  for (int k = 0; k < 3; ++k) {
    std::vector<double> lx, ly;
    for (int level = 0; level < levels; ++level)
      if (sw.sup[k][level] > 0.0) {
        lx.push_back(std::log(sw.h[level]));
        ly.push_back(std::log(sw.sup[k][level]));
      }
    sw.slope[k] = fit_slope(lx, ly);
  }
  return sw;
}

CurveSamples charpoly_curve(const SymMatrixCurve& m, Exec exec) {
  if (m.dim < 1 || m.dim > 64) throw error(errc::bad_input, "dimension must be in [1, 64]");
  const auto rows = charpoly_rows(m, exec);
  CurveSamples c;
  c.degree = m.dim;
  c.grid = m.grid;
  c.coeffs.reserve(m.points() * static_cast<std::size_t>(m.dim));
  for (const auto& r : rows) c.coeffs.insert(c.coeffs.end(), r.begin(), r.end());
  c.validate();
  return c;
}

LabeledTracks eig_oracle(const SymMatrixCurve& m, Exec exec) {
  if (m.dim < 1 || m.dim > 64) throw error(errc::bad_input, "dimension must be in [1, 64]");
  const auto rows = jacobi_rows(m, exec);
  LabeledTracks t;
  t.grid = m.grid;
  t.degree = m.dim;
  t.method = "jacobi";
  const std::size_t pts = m.points();
  t.values.resize(static_cast<std::size_t>(m.dim) * pts);
  t.perm.resize(t.values.size());
  for (int i = 0; i < m.dim; ++i)
    for (std::size_t mm = 0; mm < pts; ++mm) {
      t.values[i * pts + mm] = rows[mm][i];
      t.perm[i * pts + mm] = i;
    }
  return t;
}

}  // namespace hypoly
