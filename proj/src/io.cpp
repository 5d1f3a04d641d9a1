#include "l0newt/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace l0newt::io {

namespace {
std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return in;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}
}  // namespace

Vector read_vector(std::istream& in) {
  long long n = -1;
  if (!(in >> n) || n < 0) throw InvalidInput("vector file: missing or invalid length");
  Vector v(n);
  for (long long i = 0; i < n; ++i) {
    if (!(in >> v[i])) {
      throw InvalidInput("vector file: expected " + std::to_string(n) + " entries, got " +
                         std::to_string(i));
    }
  }
  double extra;
  if (in >> extra) throw InvalidInput("vector file: trailing data after " + std::to_string(n) +
                                      " entries");
  require_finite(v, "vector file");
  return v;
}

Vector read_vector_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_vector(in);
}

void write_vector(std::ostream& out, const Vector& v) {
  out << v.size() << '\n' << std::setprecision(17);
  for (Index i = 0; i < v.size(); ++i) out << v[i] << '\n';
}

Matrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("matrix market: empty input");
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || lower(object) != "matrix") {
    throw InvalidInput("matrix market: bad banner '" + line + "'");
  }
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (field != "real" && field != "integer" && field != "double") {
    throw InvalidInput("matrix market: unsupported field '" + field + "'");
  }
  if (symmetry != "general" && symmetry != "symmetric") {
    throw InvalidInput("matrix market: unsupported symmetry '" + symmetry + "'");
  }
  const bool sym = symmetry == "symmetric";

  do {
    if (!std::getline(in, line)) throw InvalidInput("matrix market: missing size line");
  } while (line.empty() || line[0] == '%');
  std::istringstream size_line(line);
  long long rows = 0, cols = 0, nnz = 0;

  if (format == "coordinate") {
    if (!(size_line >> rows >> cols >> nnz)) throw InvalidInput("matrix market: bad size line");
    Matrix A = Matrix::Zero(rows, cols);
    for (long long k = 0; k < nnz; ++k) {
      long long i, j;
      double v;
      if (!(in >> i >> j >> v)) throw InvalidInput("matrix market: truncated entries");
      if (i < 1 || i > rows || j < 1 || j > cols) {
        throw InvalidInput("matrix market: entry index out of range");
      }
      A(i - 1, j - 1) = v;
      if (sym) A(j - 1, i - 1) = v;
    }
    if (!A.allFinite()) throw InvalidInput("matrix market: non-finite entry");
    return A;
  }
  if (format == "array") {
    if (!(size_line >> rows >> cols)) throw InvalidInput("matrix market: bad size line");
    Matrix A = Matrix::Zero(rows, cols);
    for (long long j = 0; j < cols; ++j) {
      for (long long i = sym ? j : 0; i < rows; ++i) {
        double v;
        if (!(in >> v)) throw InvalidInput("matrix market: truncated entries");
        A(i, j) = v;
        if (sym) A(j, i) = v;
      }
    }
    if (!A.allFinite()) throw InvalidInput("matrix market: non-finite entry");
    return A;
  }
  throw InvalidInput("matrix market: unsupported format '" + format + "'");
}

Matrix read_matrix_market_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const Matrix& A) {
  out << "%%MatrixMarket matrix array real general\n" << A.rows() << ' ' << A.cols() << '\n'
      << std::setprecision(17);
  for (Index j = 0; j < A.cols(); ++j) {
    for (Index i = 0; i < A.rows(); ++i) out << A(i, j) << '\n';
  }
}

}  // namespace l0newt::io
