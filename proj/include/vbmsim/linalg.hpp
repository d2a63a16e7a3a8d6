// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace vbmsim::linalg {

using cx = std::complex<double>;
using CVector = std::vector<cx>;

// Dense complex matrix, row-major. Values are immutable in spirit: all
// operations return new matrices, nothing mutates shared state.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cx> entries);

  static CMatrix identity(std::size_t n);
  static CMatrix zero(std::size_t rows, std::size_t cols) {
    return CMatrix(rows, cols);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  cx* row(std::size_t r) { return data_.data() + r * cols_; }
  const cx* row(std::size_t r) const { return data_.data() + r * cols_; }

  const std::vector<cx>& data() const { return data_; }

  CVector column(std::size_t c) const;

  bool operator==(const CMatrix& other) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cx> data_;
};

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);
CMatrix hadamard(const CMatrix& a, const CMatrix& b);
CMatrix adjoint(const CMatrix& a);
CMatrix scale(const CMatrix& a, cx factor);

CVector matvec(const CMatrix& a, const CVector& x);
// a * b^H, the rank-1 outer product.
CMatrix outer(const CVector& a, const CVector& b);

double frobenius_norm(const CMatrix& a);
double norm(const CVector& v);
cx dotc(const CVector& x, const CVector& y);

struct EigResult {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // column k pairs with values[k]
};

// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
// Intended for the small systems this project needs (n <= 64). Input must be
// Hermitian within 1e-9; convergence target is an off-diagonal Frobenius norm
// below 1e-12 relative, within 100 sweeps.
EigResult hermitian_eig(const CMatrix& a);

}  // namespace vbmsim::linalg
