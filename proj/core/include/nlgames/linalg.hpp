// Copyright 2026 The nlgames Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NLGAMES_LINALG_HPP_
#define NLGAMES_LINALG_HPP_

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace nlg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// ||M - M*||_F
double hermitian_residual(const Matrix& m);
// ||M^2 - M||_F
double idempotent_residual(const Matrix& m);

// Orthogonal projector onto the span of eigenvectors of (M + M*) / 2 whose
// eigenvalue exceeds `cutoff`.
Matrix support_projector(const Matrix& m, double cutoff);

// Projector onto the eigenvectors of (M + M*) / 2 with the `rank` largest
// eigenvalues; ties go to the later columns of Eigen's ascending order.
Matrix top_eigenspace_projector(const Matrix& m, std::size_t rank);

// tr(A B^T) computed entrywise.
Complex trace_with_transpose(const Matrix& a, const Matrix& b);

// Uniformly random unitary (QR of a complex Gaussian matrix) for a given
// Gaussian source.
template <typename Gaussian>
Matrix random_unitary(std::size_t d, Gaussian&& gaussian) {
  Matrix g(d, d);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = Complex(gaussian(), gaussian());
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    if (mag > 0) q.col(j) *= diag / mag;
  }
  return q;
}

}  // namespace nlg

#endif  // NLGAMES_LINALG_HPP_
