#ifndef HYPOLY_POLY_HPP
#define HYPOLY_POLY_HPP

#include <span>
#include <vector>

#include "hypoly/errors.hpp"

namespace hypoly {

/// Monic real polynomial of degree n >= 1, stored as (a_1,...,a_n) with
///
///   P(x) = x^n - a_1 x^(n-1) + a_2 x^(n-2) - ... + (-1)^n a_n,
///
/// so that a_k is the k-th elementary symmetric function of the roots.
/// The leading coefficient is implicitly 1 and never stored.
struct MonicPoly {
  std::vector<double> a;

  MonicPoly() = default;
  explicit MonicPoly(std::vector<double> coeffs) : a(std::move(coeffs)) {}

  int degree() const { return static_cast<int>(a.size()); }

  /// x^n
  static MonicPoly power(int n) { return MonicPoly(std::vector<double>(n, 0.0)); }
};

/// Real roots of one polynomial, ascending, repeated with multiplicity.
struct RootList {
  std::vector<double> values;

  int count() const { return static_cast<int>(values.size()); }
};

/// Sturm sequence of P: s0 = P, s1 = P', s_{k+1} = -rem(s_{k-1}, s_k),
/// stopping when a remainder truncates to zero.  Polynomials are stored in
/// the plain power basis with explicit leading coefficients, highest degree
/// first, each normalized to unit max-norm (positive factor, so signs are
/// preserved).  The sign-variation difference V(-inf) - V(+inf) equals the
/// number of distinct real roots of P.
struct SturmChain {
  std::vector<std::vector<double>> seq;
  double trunc_tol = 0.0;

  int sign_variations_at_neg_inf() const;
  int sign_variations_at_pos_inf() const;
  int distinct_real_roots() const;
  /// Degree of the last chain element (proportional to gcd(P, P')).
  int gcd_degree() const;
};

/// P(x) by Horner in the stored sign convention.
double eval(const MonicPoly& p, double x);

/// Monic polynomial with exactly the given roots: a_k = e_k(roots).
MonicPoly from_roots(std::span<const double> roots);
MonicPoly from_roots(const RootList& r);

/// Power-basis coefficients, highest degree first; c[0] = 1, c[k] = (-1)^k a_k.
std::vector<double> to_power(const MonicPoly& p);
/// Inverse of to_power; c[0] must be nonzero (the vector is normalized by it).
MonicPoly from_power(std::span<const double> c);

/// P'(x)/n, the monic derivative; degree drops by one.
MonicPoly derivative_monic(const MonicPoly& p);

struct Centered {
  MonicPoly poly;   // q(y) = P(y + shift), with a_1 exactly zero
  double shift;     // a_1 / n
};

/// Tschirnhaus shift x -> y + a_1/n, removing the degree-(n-1) term.
/// Roots of the result are the roots of p minus shift.
Centered center(const MonicPoly& p);

/// -2 n a_2 for a centered polynomial; nonnegative iff a_2 <= 0, which every
/// centered hyperbolic polynomial satisfies.  Throws NotCentered when |a_1|
/// exceeds tol at the polynomial's coefficient scale.
double tilde_delta2(const MonicPoly& p, double tol = 1e-9);

SturmChain build_sturm(const MonicPoly& p, double trunc_tol = 1e-12);

/// True iff p has n real roots counted with multiplicity.  Sturm count of
/// distinct real roots against the degree of the numerically square-free
/// part, with an early exit on the centered a_2 sign obstruction.
bool is_hyperbolic(const MonicPoly& p, double tol);

/// All n real roots, ascending, with multiplicity.  Recursively solves the
/// (monic) derivative, then isolates one root of p per interlacing interval
/// by bisection; critical points where |P| sits at evaluation noise are
/// promoted to multiple roots.  Throws NotHyperbolic when the count or the
/// residuals do not work out (tol bounds the accepted relative residual).
RootList roots_hyperbolic(const MonicPoly& p, double tol);

/// Monic q with q(z) = s^{-n} P(s z), i.e. a_k -> a_k / s^k; roots divide
/// by s.  Throws ZeroScale when |s| is below 1e-13.
MonicPoly scale_substitute(const MonicPoly& p, double s);

namespace detail {

/// max(1, max_k |a_k|^(1/k)): the natural magnitude of the roots implied by
/// the coefficients; used to make tolerances scale-free.
double coeff_scale(const MonicPoly& p);

/// Evaluation magnitude sum |c_0 x^n| + |c_1 x^(n-1)| + ... ; the attainable
/// residual of Horner at x is a small multiple of eps times this.
double eval_scale(std::span<const double> power, double x);

/// P(x) for power-basis coefficients, highest degree first.
double eval_power(std::span<const double> power, double x);

}  // namespace detail

}  // namespace hypoly

#endif
