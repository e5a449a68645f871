#include "hypoly/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace hypoly {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kMinScaleArg = 1e-13;

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

int variations(const std::vector<int>& signs) {
  int v = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

// rem(num, den) in the power basis (highest first), den non-constant.
std::vector<double> poly_rem(std::vector<double> num, const std::vector<double>& den) {
  const int dn = static_cast<int>(num.size()) - 1;
  const int dd = static_cast<int>(den.size()) - 1;
  for (int k = 0; k + dd <= dn; ++k) {
    const double q = num[k] / den[0];
    num[k] = 0.0;
    for (int j = 1; j <= dd; ++j) num[k + j] -= q * den[j];
  }
  // strip the (now zero) leading part
  return std::vector<double>(num.end() - dd, num.end());
}

// Drop leading coefficients below tol and rescale to unit max-norm.
// Returns an empty vector when everything truncates away.
std::vector<double> truncate_normalize(std::vector<double> v, double tol) {
  double norm = 0.0;
  for (double c : v) norm = std::max(norm, std::abs(c));
  if (norm <= tol) return {};
  std::size_t lead = 0;
  while (lead < v.size() && std::abs(v[lead]) <= tol) ++lead;
  v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lead));
  for (double& c : v) c /= norm;
  return v;
}

// In-place Taylor shift of power-basis coefficients: c <- coeffs of P(x + s).
void taylor_shift(std::vector<double>& c, double s) {
  const int n = static_cast<int>(c.size()) - 1;
  for (int k = 0; k < n; ++k)
    for (int j = 1; j <= n - k; ++j) c[j] += s * c[j - 1];
}

double cauchy_bound(std::span<const double> power) {
  double m = 0.0;
  for (std::size_t j = 1; j < power.size(); ++j) m = std::max(m, std::abs(power[j]));
  return 1.0 + m;
}

// Bisection on [lo, hi] with f(lo), f(hi) of strictly opposite signs.
double bisect_root(std::span<const double> power, double lo, double hi, int slo) {
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at ulp resolution
    const double fm = detail::eval_power(power, mid);
    if (fm == 0.0) return mid;
    if (sign_of(fm) == slo)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

namespace detail {

double coeff_scale(const MonicPoly& p) {
  double r = 1.0;
  for (int k = 1; k <= p.degree(); ++k)
    r = std::max(r, std::pow(std::abs(p.a[k - 1]), 1.0 / k));
  return r;
}

double eval_scale(std::span<const double> power, double x) {
  double s = 0.0;
  const double ax = std::abs(x);
  for (double c : power) s = s * ax + std::abs(c);
  return s;
}

double eval_power(std::span<const double> power, double x) {
  double r = 0.0;
  for (double c : power) r = r * x + c;
  return r;
}

}  // namespace detail

double eval(const MonicPoly& p, double x) {
  double r = 1.0, sign = 1.0;
  for (int k = 1; k <= p.degree(); ++k) {
    sign = -sign;
    r = r * x + sign * p.a[k - 1];
  }
  return r;
}

MonicPoly from_roots(std::span<const double> roots) {
  const int n = static_cast<int>(roots.size());
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  int used = 0;
  for (double r : roots) {
    ++used;
    for (int k = used; k >= 1; --k) e[k] += r * e[k - 1];
  }
  return MonicPoly(std::vector<double>(e.begin() + 1, e.end()));
}

MonicPoly from_roots(const RootList& r) {
  return from_roots(std::span<const double>(r.values));
}

std::vector<double> to_power(const MonicPoly& p) {
  std::vector<double> c(p.degree() + 1);
  c[0] = 1.0;
  double sign = 1.0;
  for (int k = 1; k <= p.degree(); ++k) {
    sign = -sign;
    c[k] = sign * p.a[k - 1];
  }
  return c;
}

MonicPoly from_power(std::span<const double> c) {
  if (c.empty() || c[0] == 0.0) throw error(errc::bad_input, "zero leading coefficient");
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<double> a(n);
  double sign = 1.0;
  for (int k = 1; k <= n; ++k) {
    sign = -sign;
    a[k - 1] = sign * c[k] / c[0];
  }
  return MonicPoly(std::move(a));
}

MonicPoly derivative_monic(const MonicPoly& p) {
  const int n = p.degree();
  if (n < 1) throw error(errc::bad_input, "degree must be >= 1");
  std::vector<double> c = to_power(p);
  std::vector<double> d(n);
  for (int j = 0; j < n; ++j) d[j] = c[j] * static_cast<double>(n - j) / n;
  return from_power(d);
}

Centered center(const MonicPoly& p) {
  const int n = p.degree();
  const double shift = p.a.empty() ? 0.0 : p.a[0] / n;
  std::vector<double> c = to_power(p);
  taylor_shift(c, shift);
  MonicPoly q = from_power(c);
  q.a[0] = 0.0;  // exactly zero by construction; drop the roundoff residue
  return Centered{std::move(q), shift};
}

double tilde_delta2(const MonicPoly& p, double tol) {
  const int n = p.degree();
  if (n < 2) throw error(errc::bad_input, "tilde_delta2 needs degree >= 2");
  const double scale = detail::coeff_scale(p);
  if (std::abs(p.a[0]) > tol * scale)
    throw error(errc::not_centered, "a_1 != 0 beyond tolerance");
  return -2.0 * n * p.a[1];
}

int SturmChain::sign_variations_at_neg_inf() const {
  std::vector<int> signs;
  for (const auto& q : seq) {
    const int d = static_cast<int>(q.size()) - 1;
    signs.push_back(sign_of(q[0]) * ((d % 2) ? -1 : 1));
  }
  return variations(signs);
}

int SturmChain::sign_variations_at_pos_inf() const {
  std::vector<int> signs;
  for (const auto& q : seq) signs.push_back(sign_of(q[0]));
  return variations(signs);
}

int SturmChain::distinct_real_roots() const {
  return sign_variations_at_neg_inf() - sign_variations_at_pos_inf();
}

int SturmChain::gcd_degree() const {
  if (seq.empty()) return 0;
  return static_cast<int>(seq.back().size()) - 1;
}

SturmChain build_sturm(const MonicPoly& p, double trunc_tol) {
  SturmChain chain;
  chain.trunc_tol = trunc_tol;
  std::vector<double> s0 = to_power(p);
  chain.seq.push_back(s0);
  if (p.degree() == 0) return chain;

  const int n = p.degree();
  std::vector<double> s1(n);
  for (int j = 0; j < n; ++j) s1[j] = s0[j] * static_cast<double>(n - j);
  {
    double norm = 0.0;
    for (double c : s1) norm = std::max(norm, std::abs(c));
    for (double& c : s1) c /= norm;
  }
  chain.seq.push_back(s1);

  while (chain.seq.back().size() > 1) {
    const auto& prev = chain.seq[chain.seq.size() - 2];
    const auto& cur = chain.seq.back();
    std::vector<double> r = poly_rem(prev, cur);
    for (double& c : r) c = -c;
    double in_norm = 0.0;
    for (double c : prev) in_norm = std::max(in_norm, std::abs(c));
    r = truncate_normalize(std::move(r), trunc_tol * in_norm);
    if (r.empty()) break;
    chain.seq.push_back(std::move(r));
  }
  return chain;
}

bool is_hyperbolic(const MonicPoly& p, double tol) {
  const int n = p.degree();
  if (n < 1) throw error(errc::bad_input, "degree must be >= 1");
  if (n == 1) return true;

  // Make the implied root magnitude O(1) so fixed tolerances apply.
  const double r = detail::coeff_scale(p);
  MonicPoly q = scale_substitute(p, r);
  q = center(q).poly;

  // Sign obstruction: a centered real-rooted polynomial has a_2 <= 0.
  if (q.a[1] > tol) return false;

  SturmChain chain = build_sturm(q);
  const int distinct = chain.distinct_real_roots();
  const int squarefree_degree = n - chain.gcd_degree();
  return distinct == squarefree_degree;
}

RootList roots_hyperbolic(const MonicPoly& p, double tol) {
  const int n = p.degree();
  if (n < 1) throw error(errc::bad_input, "degree must be >= 1");
  RootList out;
  if (n == 1) {
    out.values.push_back(p.a[0]);
    return out;
  }

  const RootList crit = roots_hyperbolic(derivative_monic(p), tol);
  const std::vector<double> c = to_power(p);

  // A critical point counts as a root of p when |P| cannot be distinguished
  // from evaluation roundoff there; its multiplicity is one more than its
  // multiplicity in the derivative.
  const double promote_eps = 256.0 * n * kEps;

  struct Node {
    double x;
    int deriv_mult;
    double value;
    bool is_root;
  };
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < crit.values.size();) {
    std::size_t j = i;
    while (j < crit.values.size() && crit.values[j] == crit.values[i]) ++j;
    const double x = crit.values[i];
    const double v = detail::eval_power(c, x);
    const bool root = std::abs(v) <= promote_eps * detail::eval_scale(c, x);
    nodes.push_back({x, static_cast<int>(j - i), v, root});
    i = j;
  }

  std::vector<double> roots;
  const double bound = cauchy_bound(c);

  double lo = -bound;
  double flo = detail::eval_power(c, lo);
  if (flo == 0.0) flo = (n % 2) ? -1.0 : 1.0;  // leading term dominates
  for (std::size_t i = 0; i <= nodes.size(); ++i) {
    const double hi = (i < nodes.size()) ? nodes[i].x : bound;
    double fhi = (i < nodes.size()) ? nodes[i].value : detail::eval_power(c, hi);
    const bool hi_root = (i < nodes.size()) ? nodes[i].is_root : false;
    const bool lo_root = (i > 0) ? nodes[i - 1].is_root : false;
    if (!lo_root && !hi_root && sign_of(flo) * sign_of(fhi) < 0)
      roots.push_back(bisect_root(c, lo, hi, sign_of(flo)));
    if (i < nodes.size() && nodes[i].is_root)
      roots.insert(roots.end(), nodes[i].deriv_mult + 1, nodes[i].x);
    lo = hi;
    flo = fhi;
  }

  if (static_cast<int>(roots.size()) < n) {
    // Rescue pass.  A root cluster at the origin can make eval_scale collapse
    // to the size of P itself (all low coefficients ~ 0), so the relative
    // promotion test above never fires no matter how close the critical point
    // is to the root.  The deficit must hide at unpromoted critical points:
    // promote them smallest |P| first and let the residual gate below reject
    // anything that was not actually a root.
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (!nodes[i].is_root) cand.push_back(i);
    std::sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(nodes[a].value) < std::abs(nodes[b].value);
    });
    for (std::size_t idx : cand) {
      const int add = nodes[idx].deriv_mult + 1;
      if (static_cast<int>(roots.size()) + add > n) continue;
      roots.insert(roots.end(), add, nodes[idx].x);
      if (static_cast<int>(roots.size()) == n) break;
    }
  }
  if (static_cast<int>(roots.size()) != n)
    throw error(errc::not_hyperbolic, "root count mismatch: found " +
                                          std::to_string(roots.size()) + " of " +
                                          std::to_string(n));
  std::sort(roots.begin(), roots.end());
  for (double x : roots) {
    const double res = std::abs(detail::eval_power(c, x));
    if (res > tol * std::max(1.0, detail::eval_scale(c, x)))
      throw error(errc::not_hyperbolic, "residual above tolerance at root");
  }
  out.values = std::move(roots);
  return out;
}

MonicPoly scale_substitute(const MonicPoly& p, double s) {
  if (std::abs(s) < kMinScaleArg) throw error(errc::zero_scale, "scale too close to zero");
  std::vector<double> a(p.a.size());
  double sk = 1.0;
  for (int k = 1; k <= p.degree(); ++k) {
    sk *= s;
    a[k - 1] = p.a[k - 1] / sk;
  }
  return MonicPoly(std::move(a));
}

}  // namespace hypoly
