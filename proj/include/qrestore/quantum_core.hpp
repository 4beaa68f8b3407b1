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
 * Single-qubit states, density matrices, fidelity, Kraus channels and the
 * bit/phase-flip error channel.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qrestore/complex_linalg.hpp"
#include "qrestore/random.hpp"

namespace qrestore {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Maps any finite angle into [0, 2pi).
[[nodiscard]] inline double wrap_phase(double phi) {
    double r = std::fmod(phi, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    // fmod of a tiny negative number can round up to exactly 2pi.
    if (r >= kTwoPi) {
        r = 0.0;
    }
    return r;
}

/**
 * Pure qubit state alpha|0> + beta e^{i phi}|1> with alpha, beta >= 0.
 *
 * The global phase is fixed by making the first nonzero amplitude real and
 * nonnegative. At the poles (alpha == 0 or beta == 0) phi is 0.
 */
class PureQubit {
  public:
    /// |0>
    PureQubit() = default;

    [[nodiscard]] double alpha() const { return alpha_; }
    [[nodiscard]] double beta() const { return beta_; }
    [[nodiscard]] double phi() const { return phi_; }
    [[nodiscard]] double alpha2() const { return alpha_ * alpha_; }

    /// Canonical-gauge amplitude vector (alpha, beta e^{i phi}).
    [[nodiscard]] CVec2 to_vector() const {
        return {cplx(alpha_, 0.0), std::polar(beta_, phi_)};
    }

    /**
     * Normalizes v and moves it into the canonical gauge. Throws DomainError
     * for the zero vector or non-finite input.
     */
    [[nodiscard]] static PureQubit from_vector(const CVec2 &v) {
        const double n2 = norm_sq(v);
        if (!(n2 > 0.0) || !std::isfinite(n2)) {
            throw DomainError("PureQubit::from_vector: zero or non-finite vector");
        }
        const double n = std::sqrt(n2);
        PureQubit q;
        q.alpha_ = std::abs(v[0]) / n;
        q.beta_ = std::abs(v[1]) / n;
        if (q.alpha_ == 0.0 || q.beta_ == 0.0) {
            q.phi_ = 0.0;
        } else {
            q.phi_ = wrap_phase(std::arg(v[1]) - std::arg(v[0]));
        }
        return q;
    }

  private:
    friend PureQubit make_pure(double alpha2, double phi);

    double alpha_ = 1.0;
    double beta_ = 0.0;
    double phi_ = 0.0;
};

/// Builds a state from (alpha^2, phi). alpha2 must lie in [0, 1].
[[nodiscard]] inline PureQubit make_pure(double alpha2, double phi) {
    if (!(alpha2 >= 0.0 && alpha2 <= 1.0)) {
        throw DomainError("make_pure: alpha2 must lie in [0, 1], got " +
                          std::to_string(alpha2));
    }
    if (!std::isfinite(phi)) {
        throw DomainError("make_pure: phi must be finite");
    }
    PureQubit q;
    q.alpha_ = std::sqrt(alpha2);
    q.beta_ = std::sqrt(1.0 - alpha2);
    q.phi_ = (q.alpha_ == 0.0 || q.beta_ == 0.0) ? 0.0 : wrap_phase(phi);
    return q;
}

/// E|psi>, renormalized and gauge-fixed.
[[nodiscard]] inline PureQubit apply(const CMat2 &op, const PureQubit &psi) {
    return PureQubit::from_vector(op * psi.to_vector());
}

/// |<a|b>|^2
[[nodiscard]] inline double overlap(const PureQubit &a, const PureQubit &b) {
    return std::norm(inner(a.to_vector(), b.to_vector()));
}

/// Largest amplitude difference of the canonical-gauge vectors.
[[nodiscard]] inline double state_distance(const PureQubit &a,
                                           const PureQubit &b) {
    const CVec2 va = a.to_vector();
    const CVec2 vb = b.to_vector();
    return std::max(std::abs(va[0] - vb[0]), std::abs(va[1] - vb[1]));
}

/// 2x2 density operator.
struct DensityMatrix {
    CMat2 m = CMat2::diag(1.0, 0.0);

    [[nodiscard]] static DensityMatrix pure(const PureQubit &psi) {
        const CVec2 v = psi.to_vector();
        return {outer(v, v)};
    }
    [[nodiscard]] static DensityMatrix maximally_mixed() {
        return {CMat2::diag(0.5, 0.5)};
    }

    /// Hermitian and unit trace within tol, PSD within psd_tol.
    [[nodiscard]] bool is_valid(double tol = kMatrixTol,
                                double psd_tol = 1e-10) const {
        return is_finite(m) && is_hermitian(m, tol) &&
               std::abs(m.trace() - 1.0) <= tol && is_psd(m, psd_tol);
    }
};

/// F = <psi|rho|psi>
[[nodiscard]] inline double fidelity(const PureQubit &psi,
                                     const DensityMatrix &rho) {
    return expectation(rho.m, psi.to_vector()).real();
}

/// Ordered Kraus operation elements E_i with sum_i E_i^dag E_i = I.
struct KrausChannel {
    std::vector<CMat2> elements;

    /// Largest entry of sum_i E_i^dag E_i - I.
    [[nodiscard]] double completeness_deviation() const {
        CMat2 s = CMat2::zero();
        for (const auto &e : elements) {
            s += e.adjoint() * e;
        }
        return max_abs_diff(s, CMat2::identity());
    }

    /// <psi|E_i^dag E_i|psi>
    [[nodiscard]] double probability(std::size_t i, const PureQubit &psi) const {
        const CVec2 v = elements.at(i) * psi.to_vector();
        return norm_sq(v);
    }
};

/// rho -> sum_i E_i rho E_i^dag
[[nodiscard]] inline DensityMatrix apply_channel(const KrausChannel &ch,
                                                 const DensityMatrix &rho) {
    CMat2 out = CMat2::zero();
    for (const auto &e : ch.elements) {
        out += e * rho.m * e.adjoint();
    }
    return {out};
}

/// Channel error types; the enumerator value is the Kraus element index.
enum class ErrorType : std::uint8_t { ne = 0, bf = 1, pf = 2, bpf = 3 };

inline constexpr std::array<ErrorType, 4> kAllErrors = {
    ErrorType::ne, ErrorType::bf, ErrorType::pf, ErrorType::bpf};

[[nodiscard]] constexpr const char *to_string(ErrorType e) {
    switch (e) {
    case ErrorType::ne:
        return "ne";
    case ErrorType::bf:
        return "bf";
    case ErrorType::pf:
        return "pf";
    case ErrorType::bpf:
        return "bpf";
    }
    return "?";
}

/// I, sigma_x, sigma_z, sigma_x sigma_z (product taken in that order).
[[nodiscard]] inline CMat2 error_operator(ErrorType e) {
    switch (e) {
    case ErrorType::ne:
        return CMat2::identity();
    case ErrorType::bf:
        return sigma_x();
    case ErrorType::pf:
        return sigma_z();
    case ErrorType::bpf:
        return sigma_x() * sigma_z();
    }
    throw InternalError("error_operator: bad ErrorType");
}

inline void check_probability(double p, const char *name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError(std::string(name) + " must lie in [0, 1], got " +
                          std::to_string(p));
    }
}

[[nodiscard]] inline double error_probability(ErrorType e, double p_bit,
                                              double p_ph) {
    check_probability(p_bit, "p_bit");
    check_probability(p_ph, "p_ph");
    switch (e) {
    case ErrorType::ne:
        return (1.0 - p_bit) * (1.0 - p_ph);
    case ErrorType::bf:
        return p_bit * (1.0 - p_ph);
    case ErrorType::pf:
        return p_ph * (1.0 - p_bit);
    case ErrorType::bpf:
        return p_bit * p_ph;
    }
    throw InternalError("error_probability: bad ErrorType");
}

/// Bit/phase-flip channel: elements sqrt(P(e)) * error_operator(e) in ErrorType order.
[[nodiscard]] inline KrausChannel error_channel(double p_bit, double p_ph) {
    KrausChannel ch;
    ch.elements.reserve(4);
    for (ErrorType e : kAllErrors) {
        ch.elements.push_back(error_operator(e) *
                              std::sqrt(error_probability(e, p_bit, p_ph)));
    }
    return ch;
}

struct SampledElement {
    std::size_t index = 0;
    PureQubit state;
};

/**
 * Draws element i with probability <psi|E_i^dag E_i|psi> and returns the
 * renormalized post-measurement state E_i|psi> / ||E_i|psi>||.
 */
template <Random64 G>
[[nodiscard]] SampledElement sample_element(const KrausChannel &ch,
                                            const PureQubit &psi, G &rng) {
    const CVec2 v = psi.to_vector();
    std::vector<double> probs(ch.elements.size());
    double total = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        probs[i] = norm_sq(ch.elements[i] * v);
        total += probs[i];
    }
    if (!(total > 0.0)) {
        throw InternalError("sample_element: all outcome probabilities vanish");
    }
    const double u = uniform01(rng) * total;
    double acc = 0.0;
    std::size_t pick = probs.size();
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] <= 0.0) {
            continue;
        }
        pick = i;
        acc += probs[i];
        if (u < acc) {
            break;
        }
    }
    return {pick, apply(ch.elements[pick], psi)};
}

/// |a> (x) |b> (x) |c>, qubit order as in CVec8.
[[nodiscard]] inline CVec8 product_state(const CVec2 &a, const CVec2 &b,
                                         const CVec2 &c) {
    CVec8 out{};
    for (std::size_t k = 0; k < 8; ++k) {
        out[k] = a[(k >> 2) & 1] * b[(k >> 1) & 1] * c[k & 1];
    }
    return out;
}

/// Reduced density matrix of qubit `keep` (1, 2 or 3) of a three-qubit state.
[[nodiscard]] inline DensityMatrix reduce_qubit(const CVec8 &state, int keep) {
    if (keep < 1 || keep > 3) {
        throw DomainError("reduce_qubit: qubit index must be 1, 2 or 3");
    }
    const unsigned shift = static_cast<unsigned>(3 - keep);
    CMat2 rho = CMat2::zero();
    for (std::size_t k = 0; k < 8; ++k) {
        if ((k >> shift) & 1U) {
            continue;
        }
        const std::size_t k1 = k | (std::size_t{1} << shift);
        const cplx c0 = state[k];
        const cplx c1 = state[k1];
        rho(0, 0) += c0 * std::conj(c0);
        rho(0, 1) += c0 * std::conj(c1);
        rho(1, 0) += c1 * std::conj(c0);
        rho(1, 1) += c1 * std::conj(c1);
    }
    return {rho};
}

} // namespace qrestore
