#include "hypoly/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hypoly/curve.hpp"
#include "hypoly/diag.hpp"
#include "hypoly/errors.hpp"

namespace hypoly {

std::vector<RootList> solve_curve_roots(const CurveSamples& c, double tol, Exec exec) {
  std::vector<RootList> out(c.points());
  detail::for_each_indexed(c.points(), exec, [&](std::size_t m) {
    try {
      out[m] = roots_hyperbolic(c.poly_at(m), tol);
    } catch (const error& e) {
      throw error(e.code(), std::string(e.what()) + " at t=" + std::to_string(c.grid[m]) +
                                " (grid index " + std::to_string(m) + ")");
    }
  });
  return out;
}

long first_non_hyperbolic(const CurveSamples& c, double tol, Exec exec) {
  std::vector<char> ok(c.points(), 1);
  detail::parallel_map(c.points(), exec, [&](std::size_t m) {
    ok[m] = is_hyperbolic(c.poly_at(m), tol) ? 1 : 0;
  });
  for (std::size_t m = 0; m < ok.size(); ++m)
    if (!ok[m]) return static_cast<long>(m);
  return -1;
}

namespace {

// det(xI - A) coefficients c_1..c_d of x^{d-1}..x^0 via the trace recursion
// M_1 = I, c_k = -tr(A M_k)/k, M_{k+1} = A M_k + c_k I.
void faddeev_leverrier(const std::vector<double>& A, int d, double* a_out) {
  std::vector<double> M(d * d, 0.0), AM(d * d, 0.0);
  for (int i = 0; i < d; ++i) M[i * d + i] = 1.0;
  double sign = 1.0;
  for (int k = 1; k <= d; ++k) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int l = 0; l < d; ++l) s += A[i * d + l] * M[l * d + j];
        AM[i * d + j] = s;
      }
    double trace = 0.0;
    for (int i = 0; i < d; ++i) trace += AM[i * d + i];
    const double ck = -trace / k;
    sign = -sign;
    a_out[k - 1] = sign * ck;  // a_k = (-1)^k c_k = e_k(eigenvalues)
    M = AM;
    for (int i = 0; i < d; ++i) M[i * d + i] += ck;
  }
}

// Cyclic Jacobi on a dense symmetric matrix; eigenvalues only.
// Throws NoConvergence after 100 sweeps.
void jacobi_eigenvalues(std::vector<double> A, int d, double* lam_out) {
  auto off = [&]() {
    double s = 0.0;
    for (int p = 0; p < d; ++p)
      for (int q = p + 1; q < d; ++q) s += A[p * d + q] * A[p * d + q];
    return s;
  };
  double frob2 = 0.0;
  for (double v : A) frob2 += v * v;
  const double stop = 1e-28 * frob2;

  int sweep = 0;
  while (off() > stop) {
    if (++sweep > 100) throw error(errc::no_convergence, "Jacobi sweeps exhausted");
    for (int p = 0; p < d; ++p)
      for (int q = p + 1; q < d; ++q) {
        const double apq = A[p * d + q];
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (A[q * d + q] - A[p * d + p]) / (2.0 * apq);
        const double t =
            (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double co = 1.0 / std::sqrt(t * t + 1.0);
        const double si = t * co;
        const double tau = si / (1.0 + co);
        A[p * d + p] -= t * apq;
        A[q * d + q] += t * apq;
        A[p * d + q] = A[q * d + p] = 0.0;
        for (int r = 0; r < d; ++r) {
          if (r == p || r == q) continue;
          const double arp = A[r * d + p], arq = A[r * d + q];
          A[r * d + p] = A[p * d + r] = arp - si * (arq + tau * arp);
          A[r * d + q] = A[q * d + r] = arq + si * (arp - tau * arq);
        }
      }
  }
  for (int i = 0; i < d; ++i) lam_out[i] = A[i * d + i];
  std::sort(lam_out, lam_out + d);
}

}  // namespace

std::vector<std::vector<double>> charpoly_rows(const SymMatrixCurve& m, Exec exec) {
  const int d = m.dim;
  std::vector<std::vector<double>> out(m.points(), std::vector<double>(d));
  detail::parallel_map(m.points(), exec, [&](std::size_t i) {
    faddeev_leverrier(m.dense_at(i), d, out[i].data());
  });
  return out;
}

std::vector<std::vector<double>> jacobi_rows(const SymMatrixCurve& m, Exec exec) {
  const int d = m.dim;
  std::vector<std::vector<double>> out(m.points(), std::vector<double>(d));
  detail::for_each_indexed(m.points(), exec, [&](std::size_t i) {
    jacobi_eigenvalues(m.dense_at(i), d, out[i].data());
  });
  return out;
}

}  // namespace hypoly
