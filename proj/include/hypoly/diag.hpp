#ifndef HYPOLY_DIAG_HPP
#define HYPOLY_DIAG_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hypoly/curve.hpp"
#include "hypoly/kernels.hpp"
#include "hypoly/track.hpp"

namespace hypoly {

/// Sampled curve of real symmetric d x d matrices; per grid point the
/// d(d+1)/2 lower-triangle entries in column-major order
/// (m11, m21, ..., md1, m22, m32, ...).
struct SymMatrixCurve {
  int dim = 0;
  std::vector<double> grid;
  std::vector<double> entries;  // (M+1) x d(d+1)/2, row-major

  std::size_t points() const { return grid.size(); }
  std::size_t tri_size() const { return static_cast<std::size_t>(dim) * (dim + 1) / 2; }
  /// Dense symmetric matrix at grid point m, row-major d x d.
  std::vector<double> dense_at(std::size_t m) const;
  /// max Frobenius norm over the grid.
  double norm() const;
};

/// Forward divided differences of order k (1..3), scaled by h^k: one vector
/// per track row, each of length points - k.
std::vector<std::vector<double>> divided_differences(const LabeledTracks& t, int k);

struct JumpRecord {
  std::size_t index = 0;   // grid index of the gap location
  double t = 0.0;
  double magnitude = 0.0;  // max |DD1_m - DD1_{m-1}| over rows at this location
  std::vector<int> rows;   // rows exceeding the threshold here
};

/// Discrete regularity probe of a set of labeled tracks.
struct RegularityReport {
  std::array<double, 3> sup{};                     // s_k = max_m |D^k y|/h^k, k=1..3
  std::vector<std::array<double, 3>> row_sup;      // per track row
  std::vector<JumpRecord> jumps;                   // grouped by grid location
  double jump_thresh = 0.0;
  std::string method;
};

RegularityReport regularity_report(const LabeledTracks& t, double jump_thresh);

/// Dyadic refinement sweep: generate(level) must produce tracks of the same
/// family with spacing h0 / 2^level, level = 0..levels-1.  Fits the exponent
/// of s_k against h by least squares on the log-log points and records the
/// max adjacent gap of order-1 divided differences per level (the discrete
/// modulus of continuity of the first derivative).
struct RefinementSweep {
  std::vector<double> h;
  std::array<std::vector<double>, 3> sup;
  std::array<double, 3> slope{};
  std::vector<double> max_dd1_gap;
};

RefinementSweep refinement_sweep(const std::function<LabeledTracks(int)>& generate,
                                 int levels = 4);

/// Coefficient curve of the characteristic polynomials det(xI - A(t)), in
/// the same sign convention as CurveSamples (a_k = e_k of the eigenvalues).
CurveSamples charpoly_curve(const SymMatrixCurve& m, Exec exec = default_exec);

/// Ascending eigenvalue tracks by cyclic Jacobi rotations, as an
/// order-labeled LabeledTracks for column-wise comparison against the
/// polynomial root solver.  Algorithmically independent of that solver.
LabeledTracks eig_oracle(const SymMatrixCurve& m, Exec exec = default_exec);

}  // namespace hypoly

#endif
