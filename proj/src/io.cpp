#include "hypoly/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "hypoly/errors.hpp"

namespace hypoly {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = line.find(',', pos);
    std::string f = line.substr(pos, next - pos);
    while (!f.empty() && (f.back() == '\r' || f.back() == ' ')) f.pop_back();
    while (!f.empty() && f.front() == ' ') f.erase(f.begin());
    out.push_back(std::move(f));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

double parse_field(const std::string& s, const std::string& path, std::size_t lineno) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw error(errc::bad_input, path + ":" + std::to_string(lineno) +
                                     ": cannot parse number '" + s + "'");
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw error(errc::bad_input, "cannot open '" + path + "' for writing");
  return f;
}

// Header + numeric body of a CSV file: tokens, then rows of doubles, all of
// the header's width.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Table read_table(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw error(errc::bad_input, "cannot open '" + path + "'");
  Table t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto fields = split_fields(line);
    if (t.header.empty()) {
      t.header = std::move(fields);
      continue;
    }
    if (fields.size() != t.header.size())
      throw error(errc::bad_input, path + ":" + std::to_string(lineno) + ": expected " +
                                       std::to_string(t.header.size()) + " fields, got " +
                                       std::to_string(fields.size()));
    std::vector<double> row(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i)
      row[i] = parse_field(fields[i], path, lineno);
    t.rows.push_back(std::move(row));
  }
  if (t.header.size() < 2)
    throw error(errc::bad_input, path + ": header needs a t column and data columns");
  if (t.header[0] != "t")
    throw error(errc::bad_input, path + ": first column must be 't'");
  if (t.rows.size() < 2)
    throw error(errc::bad_input, path + ": needs at least two grid points");
  return t;
}

std::string matrix_token(int i, int j) {
  return "m" + std::to_string(i) + std::to_string(j);
}

}  // namespace

std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_tracks_csv(const std::string& path, const LabeledTracks& t) {
  auto f = open_out(path);
  f << "t";
  for (int i = 1; i <= t.degree; ++i) f << ",y" << i;
  f << '\n';
  for (std::size_t m = 0; m < t.points(); ++m) {
    f << format_full(t.grid[m]);
    for (int i = 0; i < t.degree; ++i) f << ',' << format_full(t.value(i, m));
    f << '\n';
  }
  if (!f) throw error(errc::bad_input, "write to '" + path + "' failed");
}

LabeledTracks read_tracks_csv(const std::string& path) {
  const Table t = read_table(path);
  const int n = static_cast<int>(t.header.size()) - 1;
  for (int i = 1; i <= n; ++i)
    if (t.header[static_cast<std::size_t>(i)] != "y" + std::to_string(i))
      throw error(errc::bad_input, path + ": expected tracks header t,y1,...,y" +
                                       std::to_string(n));
  LabeledTracks out;
  out.degree = n;
  out.method = "file";
  const std::size_t points = t.rows.size();
  out.grid.resize(points);
  out.values.resize(static_cast<std::size_t>(n) * points);
  out.perm.resize(static_cast<std::size_t>(n) * points);
  for (std::size_t m = 0; m < points; ++m) {
    out.grid[m] = t.rows[m][0];
    for (int i = 0; i < n; ++i) {
      out.value(i, m) = t.rows[m][static_cast<std::size_t>(i) + 1];
      out.perm[static_cast<std::size_t>(i) * points + m] = i;
    }
  }
  return out;
}

InputCurve read_input_csv(const std::string& path) {
  const Table t = read_table(path);
  const std::size_t cols = t.header.size() - 1;
  InputCurve in;

  std::vector<double> grid(t.rows.size());
  for (std::size_t m = 0; m < t.rows.size(); ++m) grid[m] = t.rows[m][0];

  if (!t.header[1].empty() && t.header[1][0] == 'a') {
    for (std::size_t k = 1; k <= cols; ++k)
      if (t.header[k] != "a" + std::to_string(k))
        throw error(errc::bad_input,
                    path + ": expected coefficient header t,a1,...,a" + std::to_string(cols));
    std::vector<double> coeffs(t.rows.size() * cols);
    for (std::size_t m = 0; m < t.rows.size(); ++m)
      for (std::size_t k = 0; k < cols; ++k) coeffs[m * cols + k] = t.rows[m][k + 1];
    in.is_matrix = false;
    in.curve = make_curve(static_cast<int>(cols), std::move(grid), std::move(coeffs));
    return in;
  }

  if (!t.header[1].empty() && t.header[1][0] == 'm') {
    // d(d+1)/2 = cols for some integer d
    int dim = 0;
    while (static_cast<std::size_t>(dim) * (dim + 1) / 2 < cols) ++dim;
    if (static_cast<std::size_t>(dim) * (dim + 1) / 2 != cols || dim > 64)
      throw error(errc::bad_input,
                  path + ": matrix header must hold a d(d+1)/2 lower triangle, d <= 64");
    std::size_t idx = 1;
    for (int j = 1; j <= dim; ++j)
      for (int i = j; i <= dim; ++i, ++idx)
        if (t.header[idx] != matrix_token(i, j))
          throw error(errc::bad_input, path + ": expected matrix header token '" +
                                           matrix_token(i, j) + "', got '" + t.header[idx] +
                                           "' (lower triangle, column-major)");
    SymMatrixCurve m;
    m.dim = dim;
    m.grid = std::move(grid);
    m.entries.resize(t.rows.size() * cols);
    for (std::size_t r = 0; r < t.rows.size(); ++r)
      for (std::size_t k = 0; k < cols; ++k) m.entries[r * cols + k] = t.rows[r][k + 1];
    for (std::size_t r = 1; r < m.grid.size(); ++r)
      if (!(m.grid[r] > m.grid[r - 1]))
        throw error(errc::bad_input, path + ": grid must be strictly increasing");
    in.is_matrix = true;
    in.matrix = std::move(m);
    return in;
  }

  throw error(errc::bad_input,
              path + ": cannot infer mode from header (want t,a1,... or t,m11,m21,...)");
}

void write_curve_csv(const std::string& path, const CurveSamples& c) {
  auto f = open_out(path);
  f << "t";
  for (int k = 1; k <= c.degree; ++k) f << ",a" << k;
  f << '\n';
  for (std::size_t m = 0; m < c.points(); ++m) {
    f << format_full(c.grid[m]);
    for (int k = 1; k <= c.degree; ++k) f << ',' << format_full(c.coeff(m, k));
    f << '\n';
  }
  if (!f) throw error(errc::bad_input, "write to '" + path + "' failed");
}

void write_matrix_csv(const std::string& path, const SymMatrixCurve& m) {
  auto f = open_out(path);
  f << "t";
  for (int j = 1; j <= m.dim; ++j)
    for (int i = j; i <= m.dim; ++i) f << ',' << matrix_token(i, j);
  f << '\n';
  const std::size_t tri = m.tri_size();
  for (std::size_t r = 0; r < m.points(); ++r) {
    f << format_full(m.grid[r]);
    for (std::size_t k = 0; k < tri; ++k) f << ',' << format_full(m.entries[r * tri + k]);
    f << '\n';
  }
  if (!f) throw error(errc::bad_input, "write to '" + path + "' failed");
}

}  // namespace hypoly
