// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <complex>
#include <cstddef>

// Complex arithmetic inner loops shared by the linear-algebra, beamforming
// and MUSIC code paths. Every kernel has a scalar reference implementation
// (namespace ref) and, on x86-64 with AVX2+FMA, a vectorized variant picked
// at runtime. ref is the ground truth the SIMD variants are tested against.
namespace vbmsim::kernels {

using cx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

// Backend selected for this process. Detected once on first use; tests may
// override with set_backend(Backend::Scalar).
Backend active_backend();
void set_backend(Backend b);
Backend detect_backend();
const char* backend_name(Backend b);

namespace ref {
cx dotc(const cx* x, const cx* y, std::size_t n);    // sum conj(x[i])*y[i]
cx dotu(const cx* x, const cx* y, std::size_t n);    // sum x[i]*y[i]
double norm_sq(const cx* x, std::size_t n);          // sum |x[i]|^2
void axpy(cx a, const cx* x, cx* y, std::size_t n);  // y += a*x
}  // namespace ref

cx dotc(const cx* x, const cx* y, std::size_t n);
cx dotu(const cx* x, const cx* y, std::size_t n);
double norm_sq(const cx* x, std::size_t n);
void axpy(cx a, const cx* x, cx* y, std::size_t n);

}  // namespace vbmsim::kernels
