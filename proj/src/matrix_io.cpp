#include "sqc/linalg.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sqc {

std::string format_complex(cdouble z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gj", z.real(), z.imag());
  return buf;
}

cdouble parse_complex(const std::string& token) {
  // Split on the sign that starts the imaginary part, skipping any sign in
  // an exponent ("e+05") and the leading sign of the real part.
  if (token.empty() || token.back() != 'j')
    throw PreconditionError("parse_complex: missing trailing 'j' in '" + token +
                            "'");
  std::size_t split = std::string::npos;
  for (std::size_t k = token.size() - 1; k > 0; --k) {
    const char c = token[k];
    if ((c == '+' || c == '-') && token[k - 1] != 'e' && token[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos)
    throw PreconditionError("parse_complex: malformed token '" + token + "'");
  std::size_t used = 0;
  const std::string re_part = token.substr(0, split);
  const std::string im_part = token.substr(split, token.size() - 1 - split);
  double re = std::stod(re_part, &used);
  if (used != re_part.size())
    throw PreconditionError("parse_complex: malformed token '" + token + "'");
  double im = std::stod(im_part, &used);
  if (used != im_part.size())
    throw PreconditionError("parse_complex: malformed token '" + token + "'");
  return {re, im};
}

std::string matrix_to_text(const ComplexMatrix& m) {
  std::ostringstream out;
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << format_complex(m(i, j));
    }
    out << '\n';
  }
  return out.str();
}

ComplexMatrix matrix_from_text(const std::string& text) {
  std::istringstream in(text);
  std::size_t rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows == 0 || cols == 0)
    throw PreconditionError("matrix_from_text: bad header");
  ComplexMatrix m(rows, cols);
  std::string token;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      if (!(in >> token))
        throw PreconditionError("matrix_from_text: truncated data");
      m(i, j) = parse_complex(token);
    }
  if (in >> token)
    throw PreconditionError("matrix_from_text: trailing data");
  return m;
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << matrix_to_text(m);
  if (!out) throw std::runtime_error("write failed: " + path);
}

ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return matrix_from_text(buf.str());
}

}  // namespace sqc
