// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#include "vbmsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "vbmsim/kernels.hpp"

namespace vbmsim::linalg {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cx{0.0, 0.0}) {
  require(rows > 0 && cols > 0, "CMatrix: dimensions must be positive");
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  require(rows > 0 && cols > 0, "CMatrix: dimensions must be positive");
  require(data_.size() == rows * cols,
          "CMatrix: entry count does not match rows*cols");
  for (const cx& v : data_) {
    require(std::isfinite(v.real()) && std::isfinite(v.imag()),
            "CMatrix: entries must be finite");
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CVector CMatrix::column(std::size_t c) const {
  CVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  require(a.cols() == b.rows(), "matmul: dimension mismatch");
  CMatrix c(a.rows(), b.cols());
  // Accumulate row-by-row with axpy so the inner loop runs over contiguous
  // rows of b.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      kernels::axpy(a(i, l), b.row(l), c.row(i), b.cols());
    }
  }
  return c;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cx aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  std::size_t idx = 0;
  for (const cx& av : a) {
    for (const cx& bv : b) out[idx++] = av * bv;
  }
  return out;
}

CMatrix hadamard(const CMatrix& a, const CMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          "hadamard: shape mismatch");
  CMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) * b(i, j);
  }
  return out;
}

CMatrix adjoint(const CMatrix& a) {
  CMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(j, i) = std::conj(a(i, j));
    }
  }
  return out;
}

CMatrix scale(const CMatrix& a, cx factor) {
  CMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= factor;
  }
  return out;
}

CVector matvec(const CMatrix& a, const CVector& x) {
  require(a.cols() == x.size(), "matvec: dimension mismatch");
  CVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    y[i] = kernels::dotu(a.row(i), x.data(), x.size());
  }
  return y;
}

CMatrix outer(const CVector& a, const CVector& b) {
  require(!a.empty() && !b.empty(), "outer: empty operand");
  CMatrix out(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out(i, j) = a[i] * std::conj(b[j]);
    }
  }
  return out;
}

double frobenius_norm(const CMatrix& a) {
  return std::sqrt(kernels::norm_sq(a.data().data(), a.data().size()));
}

double norm(const CVector& v) {
  return std::sqrt(kernels::norm_sq(v.data(), v.size()));
}

cx dotc(const CVector& x, const CVector& y) {
  require(x.size() == y.size(), "dotc: length mismatch");
  return kernels::dotc(x.data(), y.data(), x.size());
}

namespace {

double off_diagonal_norm(const CMatrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) acc += std::norm(a(i, j));
    }
  }
  return std::sqrt(acc);
}

}  // namespace

EigResult hermitian_eig(const CMatrix& input) {
  require(input.rows() == input.cols(), "hermitian_eig: matrix must be square");
  const std::size_t n = input.rows();
  require(n <= 64, "hermitian_eig: supported only up to 64x64");

  double max_abs = 0.0;
  for (const cx& v : input.data()) max_abs = std::max(max_abs, std::abs(v));
  const double herm_tol = 1e-9 * std::max(1.0, max_abs);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (std::abs(input(i, j) - std::conj(input(j, i))) > herm_tol) {
        throw std::invalid_argument("hermitian_eig: input is not Hermitian");
      }
    }
  }

  // Work on the exactly-Hermitian average; round-off asymmetry would
  // otherwise leak into the rotations.
  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = 0.5 * (input(i, j) + std::conj(input(j, i)));
    }
  }
  CMatrix v = CMatrix::identity(n);

  const double frob = std::max(frobenius_norm(a), 1e-300);
  constexpr int kMaxSweeps = 100;
  constexpr double kOffTol = 1e-12;

  bool converged = n == 1 || off_diagonal_norm(a) <= kOffTol * frob;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cx apq = a(p, q);
        const double g = std::abs(apq);
        if (g <= 1e-300) continue;
        const cx u = apq / g;  // phase of the pivot
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * g);
        const double t = tau >= 0.0
                             ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                             : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J differs from identity only in (p,q):
        //   J(p,p)=c          J(p,q)=s
        //   J(q,p)=-s*conj(u) J(q,q)=c*conj(u)
        const cx uc = std::conj(u);
        for (std::size_t k = 0; k < n; ++k) {  // A <- A J
          const cx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * uc * akq;
          a(k, q) = s * akp + c * uc * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- J^H A
          const cx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * u * aqk;
          a(q, k) = s * apk + c * u * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {  // V <- V J
          const cx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * uc * vkq;
          v(k, q) = s * vkp + c * uc * vkq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
    converged = off_diagonal_norm(a) <= kOffTol * frob;
  }
  if (!converged) {
    throw std::runtime_error("hermitian_eig: no convergence within 100 sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return diag[l] < diag[r]; });

  EigResult out;
  out.values.resize(n);
  out.vectors = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = diag[order[k]];
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

}  // namespace vbmsim::linalg
