#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

#include "rimc/errors.hpp"
#include "rimc/sparse_matrix.hpp"

namespace rimc {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

enum class Field { real, complex, integer };

struct Header {
  Field field;
  bool symmetric;
};

Header parse_header(const std::string& line) {
  std::istringstream in(line);
  std::string banner, object, format, field, symmetry;
  if (!(in >> banner >> object >> format >> field >> symmetry)) {
    throw ParseError("Matrix Market header is incomplete: '" + line + "'");
  }
  if (lower(banner) != "%%matrixmarket") throw ParseError("missing %%MatrixMarket banner");
  if (lower(object) != "matrix") throw ParseError("unsupported object '" + object + "'");

  format = lower(format);
  if (format == "array") throw UnsupportedFormat("dense array format is not supported");
  if (format != "coordinate") throw ParseError("unknown format '" + format + "'");

  Header h{};
  field = lower(field);
  if (field == "real" || field == "double") {
    h.field = Field::real;
  } else if (field == "complex") {
    h.field = Field::complex;
  } else if (field == "integer") {
    h.field = Field::integer;
  } else if (field == "pattern") {
    throw UnsupportedFormat("pattern matrices carry no values");
  } else {
    throw ParseError("unknown field '" + field + "'");
  }

  symmetry = lower(symmetry);
  if (symmetry == "general") {
    h.symmetric = false;
  } else if (symmetry == "symmetric") {
    h.symmetric = true;
  } else if (symmetry == "hermitian" || symmetry == "skew-symmetric") {
    throw UnsupportedFormat("symmetry '" + symmetry + "' is not supported");
  } else {
    throw ParseError("unknown symmetry '" + symmetry + "'");
  }
  return h;
}

bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '%') continue;
    return true;
  }
  return false;
}

}  // namespace

SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty Matrix Market stream");
  const Header header = parse_header(line);

  if (!next_data_line(in, line)) throw ParseError("missing size line");
  long long nrows = 0, ncols = 0, nnz = 0;
  {
    std::istringstream size_line(line);
    if (!(size_line >> nrows >> ncols >> nnz) || nrows < 0 || ncols < 0 || nnz < 0) {
      throw ParseError("malformed size line: '" + line + "'");
    }
  }
  if (header.symmetric && nrows != ncols) throw ParseError("symmetric matrix must be square");

  std::vector<SparseMatrix::Triplet> entries;
  entries.reserve(static_cast<std::size_t>(header.symmetric ? 2 * nnz : nnz));
  for (long long k = 0; k < nnz; ++k) {
    if (!next_data_line(in, line)) {
      throw ParseError("expected " + std::to_string(nnz) + " entries, found " + std::to_string(k));
    }
    std::istringstream entry(line);
    long long i = 0, j = 0;
    double re = 0.0, im = 0.0;
    bool ok = static_cast<bool>(entry >> i >> j);
    if (ok) {
      if (header.field == Field::integer) {
        long long v = 0;
        ok = static_cast<bool>(entry >> v);
        re = static_cast<double>(v);
      } else {
        ok = static_cast<bool>(entry >> re);
        if (ok && header.field == Field::complex) ok = static_cast<bool>(entry >> im);
      }
    }
    if (!ok) throw ParseError("malformed entry line: '" + line + "'");
    if (i < 1 || i > nrows || j < 1 || j > ncols) {
      throw ParseError("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                       ") outside declared bounds");
    }
    entries.push_back({static_cast<Index>(i - 1), static_cast<Index>(j - 1), Complex(re, im)});
    if (header.symmetric && i != j) {
      entries.push_back({static_cast<Index>(j - 1), static_cast<Index>(i - 1), Complex(re, im)});
    }
  }
  return SparseMatrix::from_triplets(static_cast<Index>(nrows), static_cast<Index>(ncols),
                                     entries);
}

SparseMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const SparseMatrix& m) {
  out << "%%MatrixMarket matrix coordinate complex general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonzeros() << '\n';
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (const auto& t : m.triplets()) {
    out << t.row + 1 << ' ' << t.col + 1 << ' ' << t.value.real() << ' ' << t.value.imag() << '\n';
  }
  out.precision(old_precision);
}

void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& m) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  write_matrix_market(out, m);
}

}  // namespace rimc
