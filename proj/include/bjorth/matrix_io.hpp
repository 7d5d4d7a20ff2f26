#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "bjorth/errors.hpp"
#include "bjorth/matrix.hpp"

namespace bjorth {

// Text format for matrices: a header line "m n" followed by m lines of n
// whitespace-separated complex tokens.  Tokens are `a+bi`, `a-bi`, `a`, or
// `bi` with decimal mantissas and optional exponents.  Values are written
// with 17 significant digits so that write/parse round-trips exactly.

// Parses one complex token.  Throws ParseError on anything outside the
// grammar or on non-finite values.
inline cd parse_complex(const std::string& tok) {
  if (tok.empty()) throw ParseError("parse_complex: empty token");
  const auto fail = [&]() -> cd {
    throw ParseError("parse_complex: malformed token '" + tok + "'");
  };
  if (tok.back() != 'i') {
    char* end = nullptr;
    const double re = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || !std::isfinite(re)) return fail();
    return cd(re, 0.0);
  }
  const std::string body = tok.substr(0, tok.size() - 1);
  if (body.empty()) return fail();  // bare "i" is outside the grammar
  char* end = nullptr;
  const double first = std::strtod(body.c_str(), &end);
  if (end == body.c_str()) return fail();
  if (end == body.c_str() + body.size()) {
    if (!std::isfinite(first)) return fail();
    return cd(0.0, first);  // pure imaginary "bi"
  }
  if (*end != '+' && *end != '-') return fail();
  char* end2 = nullptr;
  const double im = std::strtod(end, &end2);
  if (end2 != body.c_str() + body.size()) return fail();
  if (!std::isfinite(first) || !std::isfinite(im)) return fail();
  return cd(first, im);
}

// Formats one complex value in the token grammar with 17 significant digits.
inline std::string format_complex(cd v) {
  char buf[64];
  if (v.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", v.real());
    return buf;
  }
  if (v.real() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17gi", v.imag());
    return buf;
  }
  std::string out;
  std::snprintf(buf, sizeof buf, "%.17g", v.real());
  out = buf;
  std::snprintf(buf, sizeof buf, "%+.17gi", v.imag());
  out += buf;
  return out;
}

inline Matrix parse_matrix(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("parse_matrix: missing header line");
  std::istringstream hs(line);
  long long m = 0, n = 0;
  if (!(hs >> m >> n) || m <= 0 || n <= 0) {
    throw ParseError("parse_matrix: header must be two positive integers 'm n'");
  }
  std::string extra;
  if (hs >> extra) throw ParseError("parse_matrix: trailing content after header");
  if (m > 4096 || n > 4096) throw ParseError("parse_matrix: dimensions too large");

  Matrix out(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
  for (long long i = 0; i < m; ++i) {
    if (!std::getline(in, line)) {
      throw ParseError("parse_matrix: missing row " + std::to_string(i + 1));
    }
    std::istringstream ls(line);
    std::string tok;
    for (long long j = 0; j < n; ++j) {
      if (!(ls >> tok)) {
        throw ParseError("parse_matrix: row " + std::to_string(i + 1) +
                         " has fewer than " + std::to_string(n) + " entries");
      }
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = parse_complex(tok);
    }
    if (ls >> tok) {
      throw ParseError("parse_matrix: row " + std::to_string(i + 1) + " has extra entries");
    }
  }
  return out;
}

inline Matrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix(in);
}

inline Matrix parse_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("parse_matrix_file: cannot open '" + path + "'");
  return parse_matrix(in);
}

inline void write_matrix(std::ostream& out, const Matrix& a) {
  out << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out << ' ';
      out << format_complex(a(i, j));
    }
    out << '\n';
  }
}

inline std::string format_matrix(const Matrix& a) {
  std::ostringstream out;
  write_matrix(out, a);
  return out.str();
}

inline void write_matrix_file(const std::string& path, const Matrix& a) {
  std::ofstream out(path);
  if (!out) throw ParseError("write_matrix_file: cannot open '" + path + "' for writing");
  write_matrix(out, a);
  out.flush();
  if (!out) throw ParseError("write_matrix_file: write to '" + path + "' failed");
}

}  // namespace bjorth
