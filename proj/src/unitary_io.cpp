// SPDX-License-Identifier: Apache-2.0

#include "usynth/unitary_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace usynth {

std::string format_unitary(const CMatrix& u) {
  std::ostringstream out;
  out << "dim " << u.rows() << "\n";
  char buf[64];
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g %.17g", u(i, j).real(), u(i, j).imag());
      out << (j == 0 ? "" : " ") << buf;
    }
    out << "\n";
  }
  return out.str();
}

CMatrix parse_unitary(const std::string& text) {
  std::istringstream in(text);
  std::string tag;
  Eigen::Index d = 0;
  if (!(in >> tag >> d) || tag != "dim" || d < 1) {
    throw std::invalid_argument("unitary file: expected 'dim <d>' header");
  }
  if ((d & (d - 1)) != 0) {
    throw std::invalid_argument("unitary file: dim must be a power of two");
  }
  CMatrix u(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      double re, im;
      if (!(in >> re >> im)) {
        throw std::invalid_argument("unitary file: truncated at row " + std::to_string(i));
      }
      u(i, j) = Complex(re, im);
    }
  }
  if (!is_finite(u)) throw std::invalid_argument("unitary file: non-finite entries");
  if (!is_unitary(u, 1e-6)) {
    throw std::invalid_argument("unitary file: matrix is not unitary (tol 1e-6)");
  }
  return u;
}

CMatrix read_unitary_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open unitary file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_unitary(buffer.str());
}

void write_unitary_file(const std::string& path, const CMatrix& u) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write unitary file " + path);
  out << format_unitary(u);
}

}  // namespace usynth
