#ifndef HYPOLY_CURVE_HPP
#define HYPOLY_CURVE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "hypoly/poly.hpp"

namespace hypoly {

/// One-parameter curve of monic degree-n polynomials sampled on a strictly
/// increasing grid t_0 < ... < t_M; row m holds (a_1(t_m),...,a_n(t_m)).
/// When the curve has been centered, `shift` records a_1(t_m)/n per point so
/// tracks can be un-shifted later.
struct CurveSamples {
  int degree = 0;
  std::vector<double> grid;
  std::vector<double> coeffs;   // (M+1) x degree, row-major
  std::vector<double> shift;    // filled iff centered
  bool centered = false;

  std::size_t points() const { return grid.size(); }

  std::span<const double> row(std::size_t m) const {
    return std::span<const double>(coeffs).subspan(m * degree, degree);
  }
  double coeff(std::size_t m, int k) const {  // a_k(t_m), k is 1-based
    return coeffs[m * degree + (k - 1)];
  }
  MonicPoly poly_at(std::size_t m) const {
    auto r = row(m);
    return MonicPoly(std::vector<double>(r.begin(), r.end()));
  }

  bool uniform(double rel_tol = 1e-9) const;
  /// Uniform spacing h; throws NonUniformGrid otherwise.
  double spacing() const;
  /// Index of the grid point equal to t0 (within one part in 1e-9 of the
  /// spacing); throws BadInput when t0 is off-grid.
  std::size_t index_of(double t0) const;

  /// max over the grid of the per-point coefficient scale max|a_k|^(1/k),
  /// clamped to at least 1.
  double coeff_scale() const;

  void validate() const;  // grid monotone, sizes consistent
};

CurveSamples make_curve(int degree, std::vector<double> grid, std::vector<double> coeffs);

/// Uniform grid with M+1 points on [t_min, t_max].
std::vector<double> uniform_grid(double t_min, double t_max, std::size_t M);

/// Pointwise Tschirnhaus shift: every row gets a_1 = 0 and the shift curve
/// a_1(t_m)/n is recorded.  Centering an already centered curve is a no-op
/// with zero shift added.
CurveSamples center_curve(const CurveSamples& c);

/// Add the recorded shift back onto a value table (used after tracking).
/// rows is n x points, row-major.
void uncenter_rows(const CurveSamples& c, std::vector<double>& rows);

/// Estimated vanishing order of a_k at an on-grid anchor t0: the least j
/// such that |a_k(t)| / |t - t0|^j stays bounded over the window, via a
/// log-log regression slope rounded to the nearest integer and capped at k.
struct VanishingOrder {
  double anchor = 0.0;
  int order = 0;
  std::vector<double> ts;        // window grid points (t != t0)
  std::vector<double> cofactor;  // a_k(t) / (t - t0)^order over ts
  double confidence = 0.0;       // RMS residual of the log-log fit
};

VanishingOrder estimate_vanishing_order(const CurveSamples& c, int k, double t0,
                                        int window);

/// True iff a_2 vanishes to order >= 2 at t0 (c centered).  When true, every
/// a_k is checked to vanish to order >= k as the multiplicity lemma
/// guarantees for smooth hyperbolic input; a failure there throws
/// LemmaViolation (non-hyperbolic or too-rough data).
bool multiplicity_test(const CurveSamples& c, double t0);

/// The rescaled curve: coefficients a_{k,k}(t) = a_k(t) / (t - t0)^k, with
/// the t = t0 row filled by one-sided quadratic extrapolation of the
/// cofactor samples (averaged when both sides exist).  Satisfies
/// P(t)((t-t0) z) = (t-t0)^n P1(t)(z) at every grid point t != t0.
/// Throws OrderTooLow when a_2 does not vanish to order >= 2, or when the
/// two one-sided extrapolations disagree beyond 1e-6 at coefficient scale.
CurveSamples rescale_curve(const CurveSamples& c, double t0);

struct Cluster {
  int begin = 0;       // first root index (ascending positions)
  int end = 0;         // one past last
  double center = 0.0; // mean of the member roots

  int size() const { return end - begin; }
};

/// Groups consecutive sorted roots whose successive differences are < gap.
std::vector<Cluster> cluster_roots(const RootList& r, double gap);

/// Factorization of the curve near t0 into one factor per root cluster.
struct ClusterSplit {
  double anchor = 0.0;
  std::vector<Cluster> clusters;        // at the anchor, ascending
  std::vector<CurveSamples> factors;    // degree n_i, on the subwindow grid
  std::size_t window_begin = 0;         // grid index range [begin, end)
  std::size_t window_end = 0;
};

/// Splits the curve at an on-grid anchor whose roots form >= 2 clusters
/// under gap.  Sweeping outward from t0, each grid point's ascending roots
/// are partitioned into consecutive blocks of the cluster sizes; the window
/// extends while consecutive blocks stay separated by more than gap/2.  Each
/// factor's coefficients are the elementary symmetric functions of its
/// block.  Throws ClustersCollide when the roots form a single cluster.
ClusterSplit split_curve(const CurveSamples& c, double t0, double gap,
                         double tol = 1e-9);

/// Pointwise product of the split factors, for reconstruction checks.
std::vector<double> split_product_row(const ClusterSplit& s, std::size_t window_offset);

}  // namespace hypoly

#endif
