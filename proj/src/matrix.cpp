// SPDX-License-Identifier: Apache-2.0

#include "usynth/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace usynth {

double max_abs(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  return max_abs(a - b);
}

bool is_finite(const CMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const Complex& v = a(i, j);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
  }
  return true;
}

bool is_square(const CMatrix& a) { return a.rows() == a.cols(); }

namespace {

// 1-norm (max column abs sum), the scaling criterion for expm.
double one_norm(const CMatrix& a) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    best = std::max(best, a.col(j).cwiseAbs().sum());
  }
  return best;
}

// [13/13] Pade numerator coefficients.
constexpr double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};

constexpr double kScalingThreshold = 5.37;

}  // namespace

CMatrix expm(const CMatrix& a) {
  if (!is_square(a)) throw std::invalid_argument("expm: matrix must be square");
  if (!is_finite(a)) throw std::invalid_argument("expm: non-finite input");

  const Eigen::Index d = a.rows();
  if (d == 0) return CMatrix(0, 0);

  const double norm = one_norm(a);
  int squarings = 0;
  if (norm > kScalingThreshold) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / kScalingThreshold)));
  }
  const CMatrix as = a / std::pow(2.0, squarings);

  const CMatrix ident = CMatrix::Identity(d, d);
  const CMatrix a2 = as * as;
  const CMatrix a4 = a2 * a2;
  const CMatrix a6 = a2 * a4;

  const CMatrix u =
      as * (a6 * (kPade13[13] * a6 + kPade13[11] * a4 + kPade13[9] * a2) +
            kPade13[7] * a6 + kPade13[5] * a4 + kPade13[3] * a2 +
            kPade13[1] * ident);
  const CMatrix v =
      a6 * (kPade13[12] * a6 + kPade13[10] * a4 + kPade13[8] * a2) +
      kPade13[6] * a6 + kPade13[4] * a4 + kPade13[2] * a2 + kPade13[0] * ident;

  CMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

CMatrix expm_frechet(const CMatrix& a, const CMatrix& e) {
  if (!is_square(a) || !is_square(e) || a.rows() != e.rows()) {
    throw std::invalid_argument("expm_frechet: dimension mismatch");
  }
  const Eigen::Index d = a.rows();
  CMatrix aug = CMatrix::Zero(2 * d, 2 * d);
  aug.topLeftCorner(d, d) = a;
  aug.topRightCorner(d, d) = e;
  aug.bottomRightCorner(d, d) = a;
  return expm(aug).topRightCorner(d, d);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  if (!is_square(a) || !is_square(b)) {
    throw std::invalid_argument("kron: operands must be square");
  }
  const Eigen::Index da = a.rows();
  const Eigen::Index db = b.rows();
  CMatrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a(i, j) * b;
    }
  }
  return out;
}

bool is_unitary(const CMatrix& u, double tol) {
  if (!is_square(u)) return false;
  const CMatrix gram = u * u.adjoint();
  return max_abs_diff(gram, CMatrix::Identity(u.rows(), u.cols())) <= tol;
}

}  // namespace usynth
