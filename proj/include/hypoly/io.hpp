#ifndef HYPOLY_IO_HPP
#define HYPOLY_IO_HPP

#include <string>

#include "hypoly/curve.hpp"
#include "hypoly/diag.hpp"
#include "hypoly/track.hpp"

namespace hypoly {

/// Shortest decimal form that round-trips the double exactly (17 significant
/// digits); used for every CSV field so write + read is bit-exact.
std::string format_full(double v);

/// Tracks CSV: header "t,y1,...,yn", one row per grid point.
void write_tracks_csv(const std::string& path, const LabeledTracks& t);

/// Re-reads a tracks CSV.  Permutations are not stored in the file, so the
/// result carries an identity labeling and method "file".
LabeledTracks read_tracks_csv(const std::string& path);

/// An input curve in either representation, inferred from the CSV header:
/// "t,a1,...,an" is a coefficient curve, "t,m11,m21,..." a symmetric matrix
/// curve given by its lower triangle in column-major order.
struct InputCurve {
  bool is_matrix = false;
  CurveSamples curve;     // valid iff !is_matrix
  SymMatrixCurve matrix;  // valid iff is_matrix
};

InputCurve read_input_csv(const std::string& path);

void write_curve_csv(const std::string& path, const CurveSamples& c);
void write_matrix_csv(const std::string& path, const SymMatrixCurve& m);

}  // namespace hypoly

#endif
