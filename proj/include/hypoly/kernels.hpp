#ifndef HYPOLY_KERNELS_HPP
#define HYPOLY_KERNELS_HPP

#include <cstddef>
#include <exception>
#include <vector>

#include "hypoly/poly.hpp"

namespace hypoly {

struct CurveSamples;
struct SymMatrixCurve;

/// Execution policy for the per-grid-point kernels.  Every kernel is a pure
/// map over grid points with preallocated output slots, so both policies
/// produce bitwise-identical results; `serial` is the reference the tests
/// compare against.
enum class Exec { serial, parallel };

#ifdef HYPOLY_HAVE_OPENMP
inline constexpr Exec default_exec = Exec::parallel;
#else
inline constexpr Exec default_exec = Exec::serial;
#endif

/// Roots at every grid point, ascending with multiplicity.
/// Throws NotHyperbolic naming the first failing grid point.
std::vector<RootList> solve_curve_roots(const CurveSamples& c, double tol,
                                        Exec exec = default_exec);

/// Index of the first grid point failing is_hyperbolic, or -1 if none.
long first_non_hyperbolic(const CurveSamples& c, double tol, Exec exec = default_exec);

/// Characteristic-polynomial coefficients a_k = e_k(eigenvalues) per grid
/// point by the Faddeev-LeVerrier trace recursion; no eigendecomposition.
std::vector<std::vector<double>> charpoly_rows(const SymMatrixCurve& m,
                                               Exec exec = default_exec);

/// Ascending eigenvalues per grid point by cyclic Jacobi rotations.
/// Throws NoConvergence after 100 sweeps.
std::vector<std::vector<double>> jacobi_rows(const SymMatrixCurve& m,
                                             Exec exec = default_exec);

namespace detail {

/// Map body(i) over i in [0, count), serial or OpenMP-parallel.  body must
/// only write to its own slots and must not throw (use for_each_indexed for
/// throwing bodies).
template <class F>
void parallel_map(std::size_t count, Exec exec, F&& body) {
  const long len = static_cast<long>(count);
#ifdef HYPOLY_HAVE_OPENMP
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < len; ++i) body(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)exec;
#endif
  for (long i = 0; i < len; ++i) body(static_cast<std::size_t>(i));
}

/// Like parallel_map but captures the first exception (lowest index wins)
/// and rethrows it after the loop completes.  Exceptions must not unwind out
/// of an OpenMP region.
template <class F>
void for_each_indexed(std::size_t count, Exec exec, F&& body) {
  std::exception_ptr first_error;
  std::size_t first_index = count;
  parallel_map(count, exec, [&](std::size_t i) {
    try {
      body(i);
    } catch (...) {
#ifdef HYPOLY_HAVE_OPENMP
#pragma omp critical(hypoly_for_each_indexed)
#endif
      {
        if (i < first_index) {
          first_index = i;
          first_error = std::current_exception();
        }
      }
    }
  });
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail

}  // namespace hypoly

#endif
