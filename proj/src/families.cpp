#include "hypoly/families.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <sstream>

#include "hypoly/errors.hpp"

namespace hypoly {

namespace {

// Uniform double in [0, 1) from the top 53 bits, then mapped to [-1, 1).
// Spelled out so the stream is pinned independently of library internals.
double unit_signed(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

CurveSamples pointwise(int degree, std::vector<double> grid,
                       const std::function<void(double, double*)>& fill) {
  std::vector<double> coeffs(grid.size() * static_cast<std::size_t>(degree));
  for (std::size_t m = 0; m < grid.size(); ++m)
    fill(grid[m], coeffs.data() + m * static_cast<std::size_t>(degree));
  return make_curve(degree, std::move(grid), std::move(coeffs));
}

std::vector<std::string> split_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = spec.find(':', pos);
    parts.push_back(spec.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return parts;
}

double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw error(errc::bad_input, std::string("cannot parse ") + what + " '" + s + "'");
  }
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw error(errc::bad_input, std::string("cannot parse ") + what + " '" + s + "'");
  }
}

void expect_arity(const std::vector<std::string>& parts, std::size_t n) {
  if (parts.size() != n)
    throw error(errc::bad_input, "family '" + parts[0] + "' takes " +
                                     std::to_string(n - 1) + " parameter(s)");
}

}  // namespace

std::string list_families() {
  std::ostringstream out;
  out << "sym2            x^2 - t^2; roots {-t, t}\n"
      << "triple          roots {t, t, -2t}; coefficients (0, -3t^2, -2t^3)\n"
      << "avoided:EPS     x^2 - (t^2 + EPS^2); roots -+sqrt(t^2 + EPS^2)\n"
      << "randsym:D:SEED  charpoly of a random trigonometric symmetric DxD"
         " matrix curve; deterministic in SEED\n"
      << "nonreal         x^2 + 1; no real roots, rejected as non-hyperbolic\n"
      << "shifted         sym2 shifted by t: roots {0, 2t}, a_1(t) = 2t\n";
  return out.str();
}

CurveSamples make_family(const std::string& spec, std::vector<double> grid) {
  const auto parts = split_spec(spec);
  const std::string& name = parts[0];

  if (name == "sym2") {
    expect_arity(parts, 1);
    return pointwise(2, std::move(grid), [](double t, double* a) {
      a[0] = 0.0;
      a[1] = -t * t;
    });
  }
  if (name == "triple") {
    expect_arity(parts, 1);
    return pointwise(3, std::move(grid), [](double t, double* a) {
      a[0] = 0.0;
      a[1] = -3.0 * t * t;
      a[2] = -2.0 * t * t * t;
    });
  }
  if (name == "avoided") {
    expect_arity(parts, 2);
    const double eps = parse_double(parts[1], "avoided width");
    if (!(eps > 0.0)) throw error(errc::bad_input, "avoided width must be positive");
    return pointwise(2, std::move(grid), [eps](double t, double* a) {
      a[0] = 0.0;
      a[1] = -(t * t + eps * eps);
    });
  }
  if (name == "randsym") {
    expect_arity(parts, 3);
    const std::uint64_t dim = parse_u64(parts[1], "randsym dimension");
    const std::uint64_t seed = parse_u64(parts[2], "randsym seed");
    if (dim < 1 || dim > 64)
      throw error(errc::bad_input, "randsym dimension must be in [1, 64]");
    return charpoly_curve(
        randsym_matrix_curve(static_cast<int>(dim), seed, std::move(grid)));
  }
  if (name == "nonreal") {
    expect_arity(parts, 1);
    return pointwise(2, std::move(grid), [](double, double* a) {
      a[0] = 0.0;
      a[1] = 1.0;
    });
  }
  if (name == "shifted") {
    expect_arity(parts, 1);
    return pointwise(2, std::move(grid), [](double t, double* a) {
      a[0] = 2.0 * t;
      a[1] = 0.0;
    });
  }
  throw error(errc::bad_input, "unknown family '" + name + "'");
}

SymMatrixCurve randsym_matrix_curve(int dim, std::uint64_t seed,
                                    std::vector<double> grid) {
  if (dim < 1 || dim > 64) throw error(errc::bad_input, "dimension must be in [1, 64]");
  std::mt19937_64 rng(seed);

  // Per lower-triangle entry, drawn in storage order: a degree-2 trig
  // polynomial e(t) = c0/2 + sum_q (c_q cos(qt) + s_q sin(qt)) / (q + 1).
  const std::size_t tri = static_cast<std::size_t>(dim) * (dim + 1) / 2;
  std::vector<std::array<double, 5>> coeff(tri);
  for (auto& c : coeff)
    for (double& v : c) v = unit_signed(rng);

  SymMatrixCurve out;
  out.dim = dim;
  out.grid = std::move(grid);
  out.entries.resize(out.points() * tri);
  for (std::size_t m = 0; m < out.points(); ++m) {
    const double t = out.grid[m];
    for (std::size_t e = 0; e < tri; ++e) {
      const auto& c = coeff[e];
      out.entries[m * tri + e] = 0.5 * c[0] +
                                 (c[1] * std::cos(t) + c[2] * std::sin(t)) / 2.0 +
                                 (c[3] * std::cos(2.0 * t) + c[4] * std::sin(2.0 * t)) / 3.0;
    }
  }
  return out;
}

}  // namespace hypoly
