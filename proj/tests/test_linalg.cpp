// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#include <doctest.h>

#include "vbmsim/linalg.hpp"
#include "vbmsim/rng.hpp"

using namespace vbmsim;
using linalg::CMatrix;
using linalg::CVector;
using linalg::cx;
using linalg::adjoint;
using linalg::frobenius_norm;
using linalg::hadamard;
using linalg::hermitian_eig;
using linalg::kron;
using linalg::matmul;

namespace {

const cx j{0.0, 1.0};

CMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c) {
  CMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < c; ++k) {
      m(i, k) = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    }
  }
  return m;
}

CMatrix random_hermitian(Rng& rng, std::size_t n) {
  const CMatrix a = random_matrix(rng, n, n);
  CMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      h(i, k) = 0.5 * (a(i, k) + std::conj(a(k, i)));
    }
  }
  return h;
}

double matrix_dist(const CMatrix& a, const CMatrix& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      acc += std::norm(a(i, k) - b(i, k));
    }
  }
  return std::sqrt(acc);
}

}  // namespace

TEST_CASE("matmul basics") {
  const CMatrix b = CMatrix(2, 2, {cx{1, 1}, cx{2, 0}, cx{0, -1}, cx{3, 2}});
  CHECK(matmul(CMatrix::identity(2), b) == b);

  const CMatrix a(2, 2, {cx{1, 0}, j, cx{0, 0}, cx{1, 0}});
  const CMatrix v(2, 1, {cx{1, 0}, cx{1, 0}});
  const CMatrix prod = matmul(a, v);
  CHECK(prod(0, 0) == cx{1, 1});
  CHECK(prod(1, 0) == cx{1, 0});

  CHECK(matmul(b, CMatrix::zero(2, 3)) == CMatrix::zero(2, 3));
  CHECK_THROWS_AS(matmul(CMatrix(2, 3), CMatrix(2, 2)), std::invalid_argument);
}

TEST_CASE("kron definition cases") {
  const CMatrix b = CMatrix(2, 2, {cx{1, 0}, j, cx{-1, 0}, cx{2, 1}});
  CHECK(kron(CMatrix::identity(1), b) == b);

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const CVector half = {cx{inv_sqrt2, 0}, cx{inv_sqrt2, 0}};
  const CVector k1 = kron(half, half);
  for (const cx& e : k1) CHECK(e.real() == doctest::Approx(0.5).epsilon(1e-15));

  const CVector k2 = kron(CVector{cx{1, 0}, cx{-1, 0}}, CVector{cx{1, 0}, cx{1, 0}});
  CHECK(k2 == CVector{cx{1, 0}, cx{1, 0}, cx{-1, 0}, cx{-1, 0}});
}

TEST_CASE("kron mixed-product property") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = random_matrix(rng, 2, 3);
    const CMatrix c = random_matrix(rng, 3, 2);
    const CMatrix b = random_matrix(rng, 3, 3);
    const CMatrix d = random_matrix(rng, 3, 3);
    const CMatrix lhs = matmul(kron(a, b), kron(c, d));
    const CMatrix rhs = kron(matmul(a, c), matmul(b, d));
    CHECK(matrix_dist(lhs, rhs) <= 1e-10);
  }
}

TEST_CASE("hadamard") {
  Rng rng(3);
  const CMatrix a = random_matrix(rng, 2, 3);
  CMatrix ones(2, 3), zeros(2, 3);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 3; ++k) ones(i, k) = 1.0;
  CHECK(hadamard(a, ones) == a);
  CHECK(hadamard(a, zeros) == zeros);

  const CMatrix x(1, 2, {cx{1, 0}, j});
  const CMatrix y(1, 2, {j, j});
  const CMatrix prod = hadamard(x, y);
  CHECK(prod(0, 0) == j);
  CHECK(prod(0, 1) == cx{-1, 0});
  CHECK_THROWS_AS(hadamard(CMatrix(2, 2), CMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("adjoint is an involution") {
  Rng rng(11);
  const CMatrix a = random_matrix(rng, 4, 6);
  CHECK(adjoint(adjoint(a)) == a);
}

TEST_CASE("hermitian_eig on fixed matrices") {
  {
    const auto eig = hermitian_eig(CMatrix::identity(4));
    for (double v : eig.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  }
  {
    CMatrix d(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    const auto eig = hermitian_eig(d);
    CHECK(eig.values[0] == doctest::Approx(1.0));
    CHECK(eig.values[1] == doctest::Approx(3.0));
    CHECK(std::abs(eig.vectors(1, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(eig.vectors(0, 1)) == doctest::Approx(1.0));
  }
  {
    const CMatrix m(2, 2, {cx{2, 0}, cx{1, 0}, cx{1, 0}, cx{2, 0}});
    const auto eig = hermitian_eig(m);
    CHECK(eig.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eig.values[1] == doctest::Approx(3.0).epsilon(1e-12));
  }
}

TEST_CASE("hermitian_eig reconstruction and orthonormality") {
  Rng rng(19);
  for (std::size_t n : {2u, 3u, 5u, 8u, 16u}) {
    const CMatrix a = random_hermitian(rng, n);
    const auto eig = hermitian_eig(a);
    // ascending eigenvalues
    for (std::size_t i = 1; i < n; ++i) CHECK(eig.values[i] >= eig.values[i - 1]);
    // A V = V diag(lambda)
    CMatrix lam(n, n);
    for (std::size_t i = 0; i < n; ++i) lam(i, i) = eig.values[i];
    const CMatrix recon =
        matmul(matmul(eig.vectors, lam), adjoint(eig.vectors));
    CHECK(matrix_dist(recon, a) / std::max(1e-300, frobenius_norm(a)) <= 1e-8);
    // orthonormal columns
    const CMatrix gram = matmul(adjoint(eig.vectors), eig.vectors);
    CHECK(matrix_dist(gram, CMatrix::identity(n)) <= 1e-8);
  }
}

TEST_CASE("hermitian_eig input validation") {
  CMatrix bad(2, 2, {cx{1, 0}, cx{1, 0}, cx{2, 0}, cx{1, 0}});
  CHECK_THROWS_AS(hermitian_eig(bad), std::invalid_argument);
  CHECK_THROWS_AS(hermitian_eig(CMatrix(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(hermitian_eig(CMatrix::identity(65)), std::invalid_argument);
}
