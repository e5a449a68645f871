#ifndef HYPOLY_TRACK_HPP
#define HYPOLY_TRACK_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "hypoly/curve.hpp"
#include "hypoly/kernels.hpp"

namespace hypoly {

/// n root trajectories over the grid.  Row i is the trajectory of label i;
/// every column is a permutation of that point's ascending root list:
/// value(i, m) == roots(m)[perm(i, m)].
struct LabeledTracks {
  std::vector<double> grid;
  int degree = 0;
  std::vector<double> values;  // degree x points, row-major by row
  std::vector<int> perm;       // degree x points, row-major by row
  std::string method;
  std::vector<std::string> warnings;  // e.g. GluingAmbiguous junction notes

  std::size_t points() const { return grid.size(); }
  double value(int row, std::size_t m) const { return values[row * points() + m]; }
  double& value(int row, std::size_t m) { return values[row * points() + m]; }
  int perm_of(int row, std::size_t m) const { return perm[row * points() + m]; }
};

/// Labeling by ascending order: row i holds the i-th smallest root at every
/// grid point.  Continuous, but generally kinked at collisions.
LabeledTracks ordered_tracks(const CurveSamples& c, double tol = 1e-9,
                             Exec exec = default_exec);

/// Left-to-right sweep matching each new column to per-track predictions by
/// a min-cost perfect assignment (Hungarian).  order selects the predictor:
/// 0 holds the previous value, 1 extrapolates linearly through the last two
/// points, 2 quadratically through the last three.  Cost ties are broken
/// toward the permutation word closest to identity.
LabeledTracks assignment_tracks(const CurveSamples& c, int order, double tol = 1e-9,
                                Exec exec = default_exec);

/// Grid-scale degeneracy sets of a centered curve:
///   E       total root collisions (|a_2| <= eps_E),
///   Eprime  E-indices with another E-index within w grid steps,
///   F       E-indices whose derivative labels (roots of the rescaled curve
///           at the anchor) all coincide within eps_F,
///   Fprime  F-indices with another F-index within w steps.
/// The chain Eprime <= F <= E is enforced.
struct DegeneracySets {
  std::vector<std::size_t> E, Eprime, F, Fprime;
  double eps_E = 0.0, eps_F = 0.0;
  int w = 3;
};

DegeneracySets detect_degeneracy_sets(const CurveSamples& c, double eps_E,
                                      double eps_F, int w = 3);

/// Roots of the rescaled curve at the anchor: the admissible one-sided
/// derivative values of any differentiable root parametrization through the
/// total collision at t0.  Requires t0 in E; propagates OrderTooLow.
RootList derivative_labels_at_degeneracy(const CurveSamples& c, double t0,
                                         double tol = 1e-9);

struct TrackOptions {
  double tol = 1e-9;
  double eps_E = 0.0;   // 0: auto, h^2 * a_2 scale / 2
  double eps_F = 0.0;   // 0: auto, 1e-6 * max(1, label scale)
  int w = 3;
  double gap = 0.0;     // 0: auto, quarter of the minimal distinct-root gap
  int max_depth = 8;    // rescale recursion cap
  Exec exec = default_exec;
};

/// Proof-structured tracker: detects the degeneracy sets; on every maximal
/// E-free stretch splits the curve by root clusters and recurses per factor;
/// at isolated E-points routes tracks through the collision along the
/// derivative labels; across runs of persistent total degeneracy rescales
/// and recurses, or carries the common root when nothing remains to resolve;
/// junction permutations minimize the lexicographic mismatch of (value,
/// first, second divided difference).  Ambiguous junctions are reported in
/// warnings and resolved by local order-2 assignment.
LabeledTracks proof_tracks(const CurveSamples& c, const TrackOptions& opt = {});

/// Default eps_E for a uniform grid: half of h^2 times the a_2 scale, the
/// generic size of a_2 one grid step away from a clean quadratic collision.
double default_eps_e(const CurveSamples& c);

namespace detail {

/// Min-cost perfect assignment (Jonker-Volgenant style shortest augmenting
/// paths, O(n^3)).  Returns row -> column.  n <= 64 enforced.
std::vector<int> hungarian(const std::vector<double>& cost, int n);

/// Canonicalize an optimal assignment: among equal-cost 2-swaps prefer the
/// lexicographically smaller permutation word.
void canonicalize_assignment(const std::vector<double>& cost, int n,
                             std::vector<int>& perm, double tie_tol);

}  // namespace detail

}  // namespace hypoly

#endif
