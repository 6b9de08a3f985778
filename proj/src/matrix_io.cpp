#include "projopt/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "projopt/errors.hpp"

namespace projopt {

namespace {

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

SymMatrix parse_dense_matrix(const std::string& text, double sym_tol) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  int n = 0;
  bool have_n = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    std::istringstream hdr(line);
    std::string tail;
    if (!(hdr >> n) || (hdr >> tail))
      throw ParseError("expected a single dimension on the first line",
                       line_no);
    have_n = true;
    break;
  }
  if (!have_n) throw ParseError("missing dimension line", 1);
  if (n < 1) throw ParseError("dimension must be positive", line_no);

  std::vector<double> full;
  full.reserve(static_cast<std::size_t>(n) * n);
  int rows = 0;
  while (rows < n && std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    std::istringstream rs(line);
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      if (!(rs >> v))
        throw ParseError("row has fewer than " + std::to_string(n) +
                             " values",
                         line_no);
      if (!std::isfinite(v)) throw ParseError("non-finite entry", line_no);
      full.push_back(v);
    }
    std::string tail;
    if (rs >> tail)
      throw ParseError("row has more than " + std::to_string(n) + " values",
                       line_no);
    ++rows;
  }
  if (rows < n)
    throw ParseError("expected " + std::to_string(n) + " rows, found " +
                         std::to_string(rows),
                     line_no + 1);

  double scale = 0.0;
  for (double v : full) scale = std::max(scale, std::abs(v));
  try {
    return SymMatrix::from_dense(n, full, sym_tol * std::max(1.0, scale));
  } catch (const ValidationError&) {
    throw ValidationError("matrix is not symmetric within tolerance " +
                          format_value(sym_tol));
  }
}

SymMatrix parse_matrix_market(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  if (!std::getline(in, line)) throw ParseError("empty input", 1);
  ++line_no;
  {
    std::istringstream hs(line);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket")
      throw ParseError("missing %%MatrixMarket banner", line_no);
    if (lower(object) != "matrix" || lower(format) != "coordinate")
      throw ParseError("only \"matrix coordinate\" inputs are supported",
                       line_no);
    const std::string f = lower(field);
    if (f != "real" && f != "integer")
      throw ParseError("only real or integer fields are supported", line_no);
    if (lower(symmetry) != "symmetric")
      throw ParseError("only symmetric inputs are supported", line_no);
  }

  long rows = 0, cols = 0, nnz = 0;
  bool size_found = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line) || line[0] == '%') continue;
    std::istringstream ss(line);
    std::string tail;
    if (!(ss >> rows >> cols >> nnz) || (ss >> tail))
      throw ParseError("expected size line \"rows cols nnz\"", line_no);
    size_found = true;
    break;
  }
  if (!size_found) throw ParseError("missing size line", line_no + 1);
  if (rows != cols) throw ParseError("matrix must be square", line_no);
  if (rows < 1) throw ParseError("dimension must be positive", line_no);
  if (nnz < 0) throw ParseError("entry count must be nonnegative", line_no);

  SymMatrix m(static_cast<int>(rows));
  std::unordered_set<std::int64_t> seen;
  seen.reserve(static_cast<std::size_t>(nnz));
  long read = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line) || line[0] == '%') continue;
    if (read == nnz)
      throw ParseError("unexpected content after " + std::to_string(nnz) +
                           " entries",
                       line_no);
    std::istringstream es(line);
    long i = 0, j = 0;
    double v = 0.0;
    std::string tail;
    if (!(es >> i >> j >> v) || (es >> tail))
      throw ParseError("expected entry \"i j value\"", line_no);
    if (i < 1 || i > rows || j < 1 || j > rows)
      throw ParseError("index out of range", line_no);
    if (!std::isfinite(v)) throw ParseError("non-finite entry", line_no);
    const long a = std::min(i, j) - 1, b = std::max(i, j) - 1;
    if (!seen.insert(a * rows + b).second)
      throw ParseError("duplicate entry (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")",
                       line_no);
    m.set(static_cast<int>(a), static_cast<int>(b), v);
    ++read;
  }
  if (read != nnz)
    throw ParseError("expected " + std::to_string(nnz) + " entries, found " +
                         std::to_string(read),
                     line_no + 1);
  return m;
}

SymMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open matrix file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.rfind("%%MatrixMarket", 0) == 0) return parse_matrix_market(text);
  return parse_dense_matrix(text);
}

void write_dense_matrix(std::ostream& out, const SymMatrix& a) {
  out << a.n() << "\n";
  for (int i = 0; i < a.n(); ++i) {
    for (int j = 0; j < a.n(); ++j) {
      if (j) out << ' ';
      out << format_value(a(i, j));
    }
    out << "\n";
  }
}

void write_dense_matrix_file(const std::string& path, const SymMatrix& a) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write matrix file: " + path);
  write_dense_matrix(out, a);
  if (!out) throw IoError("short write to " + path);
}

void write_trace_csv(std::ostream& out, const IterateTrace& trace) {
  out << "k,f,step_norm,eta,fw_gap\n";
  for (const IterateRecord& r : trace.records)
    out << r.k << ',' << format_value(r.f) << ',' << format_value(r.step_norm)
        << ',' << format_value(r.eta) << ',' << format_value(r.fw_gap) << "\n";
}

void write_trace_csv_file(const std::string& path, const IterateTrace& trace) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write trace file: " + path);
  write_trace_csv(out, trace);
  if (!out) throw IoError("short write to " + path);
}

}  // namespace projopt
