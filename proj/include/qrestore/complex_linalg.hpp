// Copyright 2026 The qrestore Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Fixed-size complex linear algebra for single-qubit operators: 2x2 matrices,
 * 2- and 8-component state vectors, the Hilbert-Schmidt distance and a
 * closed-form polar decomposition.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace qrestore {

using cplx = std::complex<double>;

/// Raised when a precondition on a real-valued parameter is violated.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Raised when a decomposition receives a (numerically) singular matrix.
class DegenerateInputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when an internal consistency condition fails.
class InternalError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Default entrywise tolerance for unitarity / Hermiticity / PSD checks.
inline constexpr double kMatrixTol = 1e-12;

using CVec2 = std::array<cplx, 2>;

/**
 * Eight amplitudes of a three-qubit register, basis |q1 q2 q3> with
 * index = 4*q1 + 2*q2 + q3 (qubit 1 is the most significant bit).
 */
using CVec8 = std::array<cplx, 8>;

/// Dense 2x2 complex matrix, row-major.
struct CMat2 {
    std::array<cplx, 4> a{};

    constexpr CMat2() = default;
    constexpr CMat2(cplx m00, cplx m01, cplx m10, cplx m11)
        : a{m00, m01, m10, m11} {}

    [[nodiscard]] constexpr cplx &operator()(std::size_t r, std::size_t c) {
        return a[2 * r + c];
    }
    [[nodiscard]] constexpr const cplx &operator()(std::size_t r,
                                                   std::size_t c) const {
        return a[2 * r + c];
    }

    [[nodiscard]] static constexpr CMat2 identity() { return {1, 0, 0, 1}; }
    [[nodiscard]] static constexpr CMat2 zero() { return {0, 0, 0, 0}; }
    [[nodiscard]] static constexpr CMat2 diag(cplx d0, cplx d1) {
        return {d0, 0, 0, d1};
    }

    [[nodiscard]] CMat2 adjoint() const {
        return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]),
                std::conj(a[3])};
    }
    [[nodiscard]] cplx trace() const { return a[0] + a[3]; }
    [[nodiscard]] cplx det() const { return a[0] * a[3] - a[1] * a[2]; }

    CMat2 &operator+=(const CMat2 &o) {
        for (std::size_t k = 0; k < 4; ++k) {
            a[k] += o.a[k];
        }
        return *this;
    }
    CMat2 &operator-=(const CMat2 &o) {
        for (std::size_t k = 0; k < 4; ++k) {
            a[k] -= o.a[k];
        }
        return *this;
    }
    CMat2 &operator*=(cplx s) {
        for (auto &x : a) {
            x *= s;
        }
        return *this;
    }

    friend bool operator==(const CMat2 &, const CMat2 &) = default;
};

[[nodiscard]] inline CMat2 operator+(CMat2 l, const CMat2 &r) { return l += r; }
[[nodiscard]] inline CMat2 operator-(CMat2 l, const CMat2 &r) { return l -= r; }
[[nodiscard]] inline CMat2 operator-(CMat2 m) { return m *= -1.0; }
[[nodiscard]] inline CMat2 operator*(CMat2 m, cplx s) { return m *= s; }
[[nodiscard]] inline CMat2 operator*(cplx s, CMat2 m) { return m *= s; }

[[nodiscard]] inline CMat2 operator*(const CMat2 &l, const CMat2 &r) {
    return {l(0, 0) * r(0, 0) + l(0, 1) * r(1, 0),
            l(0, 0) * r(0, 1) + l(0, 1) * r(1, 1),
            l(1, 0) * r(0, 0) + l(1, 1) * r(1, 0),
            l(1, 0) * r(0, 1) + l(1, 1) * r(1, 1)};
}

[[nodiscard]] inline CVec2 operator*(const CMat2 &m, const CVec2 &v) {
    return {m(0, 0) * v[0] + m(0, 1) * v[1], m(1, 0) * v[0] + m(1, 1) * v[1]};
}

// Pauli operators.
[[nodiscard]] inline CMat2 sigma_x() { return {0, 1, 1, 0}; }
[[nodiscard]] inline CMat2 sigma_y() { return {0, cplx(0, -1), cplx(0, 1), 0}; }
[[nodiscard]] inline CMat2 sigma_z() { return {1, 0, 0, -1}; }

/// |v><w|
[[nodiscard]] inline CMat2 outer(const CVec2 &v, const CVec2 &w) {
    return {v[0] * std::conj(w[0]), v[0] * std::conj(w[1]),
            v[1] * std::conj(w[0]), v[1] * std::conj(w[1])};
}

/// <v|w>, conjugate-linear in the first argument.
[[nodiscard]] inline cplx inner(const CVec2 &v, const CVec2 &w) {
    return std::conj(v[0]) * w[0] + std::conj(v[1]) * w[1];
}

[[nodiscard]] inline double norm_sq(const CVec2 &v) {
    return std::norm(v[0]) + std::norm(v[1]);
}

[[nodiscard]] inline double norm_sq(const CVec8 &v) {
    double s = 0.0;
    for (const auto &x : v) {
        s += std::norm(x);
    }
    return s;
}

/// <v|m|v>
[[nodiscard]] inline cplx expectation(const CMat2 &m, const CVec2 &v) {
    return inner(v, m * v);
}

/// Largest absolute entry of l - r.
[[nodiscard]] inline double max_abs_diff(const CMat2 &l, const CMat2 &r) {
    double d = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        d = std::max(d, std::abs(l.a[k] - r.a[k]));
    }
    return d;
}

[[nodiscard]] inline bool is_finite(const CMat2 &m) {
    for (const auto &x : m.a) {
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
            return false;
        }
    }
    return true;
}

[[nodiscard]] inline bool is_hermitian(const CMat2 &m, double tol = kMatrixTol) {
    return max_abs_diff(m, m.adjoint()) <= tol;
}

[[nodiscard]] inline bool is_unitary(const CMat2 &m, double tol = kMatrixTol) {
    return max_abs_diff(m.adjoint() * m, CMat2::identity()) <= tol;
}

/**
 * Hermitian and both eigenvalues >= -tol. For a Hermitian 2x2 matrix the
 * smaller eigenvalue is tr/2 - sqrt((tr/2)^2 - det).
 */
[[nodiscard]] inline bool is_psd(const CMat2 &m, double tol = kMatrixTol) {
    if (!is_hermitian(m, tol)) {
        return false;
    }
    const double half_tr = 0.5 * m.trace().real();
    const double det = m.det().real();
    const double disc = std::max(0.0, half_tr * half_tr - det);
    return half_tr - std::sqrt(disc) >= -tol;
}

/// dist(a, b) = (Tr[(a-b)^dag (a-b)])^(1/2), i.e. the Frobenius norm of a-b.
[[nodiscard]] inline double hs_distance(const CMat2 &a, const CMat2 &b) {
    double s = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        s += std::norm(a.a[k] - b.a[k]);
    }
    return std::sqrt(s);
}

/**
 * Principal square root of a 2x2 Hermitian PSD matrix via Cayley-Hamilton:
 * sqrt(A) = (A + s I) / t with s = sqrt(det A), t = sqrt(tr A + 2 s).
 */
[[nodiscard]] inline CMat2 sqrt_psd(const CMat2 &m) {
    const double det = std::max(0.0, m.det().real());
    const double s = std::sqrt(det);
    const double t2 = m.trace().real() + 2.0 * s;
    if (t2 <= 0.0) {
        return CMat2::zero();
    }
    CMat2 r = m + CMat2::diag(s, s);
    r *= 1.0 / std::sqrt(t2);
    // Symmetrize so the result is Hermitian to the last bit.
    const cplx off = 0.5 * (r(0, 1) + std::conj(r(1, 0)));
    return {r(0, 0).real(), off, std::conj(off), r(1, 1).real()};
}

[[nodiscard]] inline CMat2 inverse(const CMat2 &m) {
    const cplx d = m.det();
    if (d == cplx(0.0)) {
        throw DegenerateInputError("inverse: singular 2x2 matrix");
    }
    return CMat2{m(1, 1), -m(0, 1), -m(1, 0), m(0, 0)} * (1.0 / d);
}

struct PolarDecomposition {
    CMat2 u;  // unitary factor
    CMat2 p;  // sqrt(e^dag e), Hermitian PSD
};

/**
 * Left polar decomposition e = u * p with p = sqrt(e^dag e).
 *
 * From Cayley-Hamilton on p, u = (e + (det e / |det e|) adj(e)^dag) / tr p
 * with tr p = sqrt(|e|_F^2 + 2 |det e|), so no matrix inverse is formed.
 * The input must be invertible; a matrix whose |det| is below 1e-14 of its
 * squared Frobenius norm is reported as degenerate.
 */
[[nodiscard]] inline PolarDecomposition polar_decompose(const CMat2 &e) {
    if (!is_finite(e)) {
        throw DegenerateInputError("polar_decompose: non-finite entries");
    }
    const double fro2 = std::norm(e.a[0]) + std::norm(e.a[1]) +
                        std::norm(e.a[2]) + std::norm(e.a[3]);
    const cplx det = e.det();
    const double abs_det = std::abs(det);
    if (fro2 == 0.0 || abs_det <= 1e-14 * fro2) {
        throw DegenerateInputError("polar_decompose: singular input");
    }
    const cplx phase = det / abs_det;
    const CMat2 adj_dag{std::conj(e(1, 1)), -std::conj(e(1, 0)),
                        -std::conj(e(0, 1)), std::conj(e(0, 0))};
    PolarDecomposition out;
    out.u = (e + adj_dag * phase) * (1.0 / std::sqrt(fro2 + 2.0 * abs_det));
    out.p = sqrt_psd(e.adjoint() * e);
    return out;
}

/**
 * The unitary closest to e in Hilbert-Schmidt distance: the unitary polar
 * factor of e (equivalently V W for the singular value decomposition
 * e = V D W).
 */
[[nodiscard]] inline CMat2 nearest_unitary(const CMat2 &e) {
    return polar_decompose(e).u;
}

/**
 * Phase c with |c| = 1 that best aligns l to r (minimizes |c l - r|), taken
 * from the largest entry of l. Returns 1 if l is zero.
 */
[[nodiscard]] inline cplx aligning_phase(const CMat2 &l, const CMat2 &r) {
    std::size_t k_best = 0;
    for (std::size_t k = 1; k < 4; ++k) {
        if (std::abs(l.a[k]) > std::abs(l.a[k_best])) {
            k_best = k;
        }
    }
    const cplx ratio = r.a[k_best] / l.a[k_best];
    if (!std::isfinite(ratio.real()) || std::abs(ratio) == 0.0) {
        return 1.0;
    }
    return ratio / std::abs(ratio);
}

/// max |c l - r| over entries, with c the aligning global phase.
[[nodiscard]] inline double max_abs_diff_up_to_phase(const CMat2 &l,
                                                     const CMat2 &r) {
    return max_abs_diff(l * aligning_phase(l, r), r);
}

} // namespace qrestore
