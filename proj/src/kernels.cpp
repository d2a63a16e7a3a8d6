// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#include "vbmsim/kernels.hpp"

#include <atomic>

#if defined(__x86_64__) || defined(_M_X64)
#define VBMSIM_X86_64 1
#include <immintrin.h>
#else
#define VBMSIM_X86_64 0
#endif

namespace vbmsim::kernels {

namespace ref {

cx dotc(const cx* x, const cx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

cx dotu(const cx* x, const cx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr - xi * yi;
    im += xr * yi + xi * yr;
  }
  return {re, im};
}

double norm_sq(const cx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return acc;
}

void axpy(cx a, const cx* x, cx* y, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] += cx{ar * xr - ai * xi, ar * xi + ai * xr};
  }
}

}  // namespace ref

#if VBMSIM_X86_64

namespace avx2 {

// Layout note: std::complex<double> is (re, im) interleaved, so one 256-bit
// lane holds two complex values. dotc/dotu accumulate the plain elementwise
// product and the re/im-swapped product; the final reduction combines them
// into real and imaginary parts.

__attribute__((target("avx2,fma"))) cx dotc(const cx* x, const cx* y,
                                            std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d acc_p = _mm256_setzero_pd();  // xr*yr, xi*yi pairs
  __m256d acc_s = _mm256_setzero_pd();  // xi*yr, xr*yi pairs
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    const __m256d vy = _mm256_loadu_pd(yd + 2 * i);
    const __m256d vxs = _mm256_permute_pd(vx, 0x5);
    acc_p = _mm256_fmadd_pd(vx, vy, acc_p);
    acc_s = _mm256_fmadd_pd(vxs, vy, acc_s);
  }
  alignas(32) double p[4], s[4];
  _mm256_store_pd(p, acc_p);
  _mm256_store_pd(s, acc_s);
  double re = (p[0] + p[1]) + (p[2] + p[3]);
  double im = (s[1] - s[0]) + (s[3] - s[2]);
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

__attribute__((target("avx2,fma"))) cx dotu(const cx* x, const cx* y,
                                            std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d acc_p = _mm256_setzero_pd();
  __m256d acc_s = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    const __m256d vy = _mm256_loadu_pd(yd + 2 * i);
    const __m256d vxs = _mm256_permute_pd(vx, 0x5);
    acc_p = _mm256_fmadd_pd(vx, vy, acc_p);
    acc_s = _mm256_fmadd_pd(vxs, vy, acc_s);
  }
  alignas(32) double p[4], s[4];
  _mm256_store_pd(p, acc_p);
  _mm256_store_pd(s, acc_s);
  double re = (p[0] - p[1]) + (p[2] - p[3]);
  double im = (s[0] + s[1]) + (s[2] + s[3]);
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr - xi * yi;
    im += xr * yi + xi * yr;
  }
  return {re, im};
}

__attribute__((target("avx2,fma"))) double norm_sq(const cx* x,
                                                   std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    acc = _mm256_fmadd_pd(vx, vx, acc);
  }
  alignas(32) double p[4];
  _mm256_store_pd(p, acc);
  double out = (p[0] + p[1]) + (p[2] + p[3]);
  for (; i < n; ++i) {
    out += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return out;
}

__attribute__((target("avx2,fma"))) void axpy(cx a, const cx* x, cx* y,
                                              std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const double ar = a.real(), ai = a.imag();
  const __m256d var = _mm256_set1_pd(ar);
  const __m256d vai = _mm256_set_pd(ai, -ai, ai, -ai);  // [-ai, ai, -ai, ai]
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    const __m256d vxs = _mm256_permute_pd(vx, 0x5);
    __m256d vy = _mm256_loadu_pd(yd + 2 * i);
    vy = _mm256_add_pd(vy, _mm256_fmadd_pd(var, vx, _mm256_mul_pd(vai, vxs)));
    _mm256_storeu_pd(yd + 2 * i, vy);
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] += cx{ar * xr - ai * xi, ar * xi + ai * xr};
  }
}

}  // namespace avx2

#endif  // VBMSIM_X86_64

namespace {

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{detect_backend()};
  return slot;
}

}  // namespace

Backend detect_backend() {
#if VBMSIM_X86_64
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return Backend::Avx2;
  }
#endif
  return Backend::Scalar;
}

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
#if !VBMSIM_X86_64
  b = Backend::Scalar;
#endif
  backend_slot().store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

cx dotc(const cx* x, const cx* y, std::size_t n) {
#if VBMSIM_X86_64
  if (active_backend() == Backend::Avx2) return avx2::dotc(x, y, n);
#endif
  return ref::dotc(x, y, n);
}

cx dotu(const cx* x, const cx* y, std::size_t n) {
#if VBMSIM_X86_64
  if (active_backend() == Backend::Avx2) return avx2::dotu(x, y, n);
#endif
  return ref::dotu(x, y, n);
}

double norm_sq(const cx* x, std::size_t n) {
#if VBMSIM_X86_64
  if (active_backend() == Backend::Avx2) return avx2::norm_sq(x, n);
#endif
  return ref::norm_sq(x, n);
}

void axpy(cx a, const cx* x, cx* y, std::size_t n) {
#if VBMSIM_X86_64
  if (active_backend() == Backend::Avx2) return avx2::axpy(a, x, y, n);
#endif
  return ref::axpy(a, x, y, n);
}

}  // namespace vbmsim::kernels
