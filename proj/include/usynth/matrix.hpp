// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>

namespace usynth {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Entrywise max-norm |A|_max. All tolerance checks in this library use it.
double max_abs(const CMatrix& a);

/// Entrywise max-norm of A - B.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

bool is_finite(const CMatrix& a);

bool is_square(const CMatrix& a);

/// Matrix exponential e^A, degree-13 Pade approximant with scaling and
/// squaring (scaled 1-norm kept <= 5.37). Throws std::invalid_argument on
/// non-square or non-finite input.
CMatrix expm(const CMatrix& a);

/// Frechet derivative of the matrix exponential: L(A,E) = d/dt e^{A+tE}|_{t=0}.
/// Computed as the top-right block of expm([[A,E],[0,A]]).
CMatrix expm_frechet(const CMatrix& a, const CMatrix& e);

/// Kronecker product, row-major block convention:
/// out[i*dB + k][j*dB + l] = a[i][j] * b[k][l].
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// True iff |U U^dag - I|_max <= tol.
bool is_unitary(const CMatrix& u, double tol);

}  // namespace usynth
