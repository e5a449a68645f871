#ifndef HYPOLY_FAMILIES_HPP
#define HYPOLY_FAMILIES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hypoly/curve.hpp"
#include "hypoly/diag.hpp"

namespace hypoly {

/// One line per builtin family with its definition.
std::string list_families();

/// Builtin coefficient-curve families, selected by "name" or "name:params":
///   sym2            x^2 - t^2, roots {-t, t}
///   triple          roots {t, t, -2t}, coefficients (0, -3t^2, -2t^3)
///   avoided:EPS     x^2 - (t^2 + EPS^2), an avoided crossing of width EPS
///   randsym:D:SEED  charpoly of a random trigonometric symmetric D x D
///                   matrix curve (deterministic in SEED)
///   nonreal         x^2 + 1, no real roots (rejection tests)
///   shifted         sym2 shifted by t: roots {0, 2t}, a_1(t) = 2t
/// Throws BadInput for unknown names or malformed parameters.
CurveSamples make_family(const std::string& spec, std::vector<double> grid);

/// The random symmetric matrix curve behind randsym:D:SEED: every lower
/// triangle entry is a degree-2 trigonometric polynomial with coefficients
/// drawn uniformly from [-1, 1) by a seeded mt19937_64.
SymMatrixCurve randsym_matrix_curve(int dim, std::uint64_t seed,
                                    std::vector<double> grid);

}  // namespace hypoly

#endif
