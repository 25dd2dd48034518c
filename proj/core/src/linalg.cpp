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

#include "nlgames/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace nlg {

double hermitian_residual(const Matrix& m) {
  return (m - m.adjoint()).norm();
}

double idempotent_residual(const Matrix& m) { return (m * m - m).norm(); }

Matrix support_projector(const Matrix& m, double cutoff) {
  const Matrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  const auto& values = eig.eigenvalues();
  const auto& vectors = eig.eigenvectors();
  Matrix p = Matrix::Zero(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) > cutoff) p += vectors.col(i) * vectors.col(i).adjoint();
  }
  return p;
}

Matrix top_eigenspace_projector(const Matrix& m, std::size_t rank) {
  const Matrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  const auto& vectors = eig.eigenvectors();
  const Eigen::Index n = h.rows();
  Matrix p = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(rank) && k < n; ++k) {
    const auto col = vectors.col(n - 1 - k);
    p += col * col.adjoint();
  }
  return p;
}

Complex trace_with_transpose(const Matrix& a, const Matrix& b) {
  return a.cwiseProduct(b).sum();
}

}  // namespace nlg
