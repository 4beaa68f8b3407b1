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
 * The 1->2 universal cloning map, the product measurement on the two extra
 * output qubits, its Kraus elements, and the approximate reversal of that
 * measurement.
 *
 * Qubit 1 of the cloned register is the signal. Qubit 2 is measured in the
 * |+>, |-> basis and qubit 3 in the computational basis. The joint outcome
 * is indexed as {0: +0, 1: +1, 2: -0, 3: -1}, i.e. index = 2*sign + bit.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>

#include "qrestore/complex_linalg.hpp"
#include "qrestore/quantum_core.hpp"

namespace qrestore {

enum class Sign : std::uint8_t { plus = 0, minus = 1 };

/// Joint result of the estimation measurement.
struct Outcome {
    Sign sign = Sign::plus;
    std::uint8_t bit = 0;

    [[nodiscard]] static constexpr Outcome from_index(std::size_t i) {
        if (i > 3) {
            throw DomainError("Outcome::from_index: index must be 0..3");
        }
        return {i >= 2 ? Sign::minus : Sign::plus,
                static_cast<std::uint8_t>(i & 1U)};
    }
    [[nodiscard]] constexpr std::size_t index() const {
        return 2 * static_cast<std::size_t>(sign) + bit;
    }

    friend constexpr bool operator==(Outcome, Outcome) = default;
};

inline constexpr std::array<Outcome, 4> kAllOutcomes = {
    Outcome::from_index(0), Outcome::from_index(1), Outcome::from_index(2),
    Outcome::from_index(3)};

/// "+0", "+1", "-0", "-1"
[[nodiscard]] inline std::string to_string(Outcome o) {
    return std::string(o.sign == Sign::plus ? "+" : "-") +
           static_cast<char>('0' + o.bit);
}

/// Measurement elements and their reversal unitaries U_R^i.
struct EstimationChannel {
    KrausChannel kraus;
    std::array<CMat2, 4> reversal;

    [[nodiscard]] const CMat2 &element(Outcome o) const {
        return kraus.elements[o.index()];
    }
    /// U_R^i, the unitary polar factor of E_i.
    [[nodiscard]] const CMat2 &reversal_unitary(Outcome o) const {
        return reversal[o.index()];
    }
    /// U_R^i^dag, the operator applied to undo the measurement back-action.
    [[nodiscard]] CMat2 reversal_adjoint(Outcome o) const {
        return reversal[o.index()].adjoint();
    }
};

/**
 * Cloning map extended by linearity to an arbitrary (unnormalized) amplitude
 * vector (a, b):
 *   sqrt(2/3)(a|000> + b|111>) + sqrt(1/6)(a(|011> + |101>) + b(|010> + |100>))
 */
[[nodiscard]] inline CVec8 uqcm_map(const CVec2 &v) {
    const double big = std::sqrt(2.0 / 3.0);
    const double small = std::sqrt(1.0 / 6.0);
    CVec8 out{};
    out[0b000] = big * v[0];
    out[0b111] = big * v[1];
    out[0b011] = small * v[0];
    out[0b101] = small * v[0];
    out[0b010] = small * v[1];
    out[0b100] = small * v[1];
    return out;
}

/// Output register of the universal 1->2 cloner for input psi.
[[nodiscard]] inline CVec8 uqcm_output(const PureQubit &psi) {
    return uqcm_map(psi.to_vector());
}

/**
 * Operation elements derived from the cloner: E_o|psi> is the signal-qubit
 * component of (<s| (x) <b|) on qubits 2, 3 of uqcm_output(psi), where
 * <s| = <+| or <-| and <b| = <0| or <1|.
 */
[[nodiscard]] inline CMat2 projected_element(Outcome o) {
    const double r = 1.0 / std::sqrt(2.0);
    const std::array<double, 2> sign_bra =
        o.sign == Sign::plus ? std::array<double, 2>{r, r}
                             : std::array<double, 2>{r, -r};
    CMat2 e = CMat2::zero();
    for (std::size_t col = 0; col < 2; ++col) {
        CVec2 basis{0.0, 0.0};
        basis[col] = 1.0;
        const CVec8 psi = uqcm_map(basis);
        for (std::size_t row = 0; row < 2; ++row) {
            for (std::size_t q2 = 0; q2 < 2; ++q2) {
                e(row, col) += sign_bra[q2] * psi[4 * row + 2 * q2 + o.bit];
            }
        }
    }
    return e;
}

namespace detail {

inline EstimationChannel make_estimation_channel() {
    const double s = 1.0 / (2.0 * std::sqrt(3.0));
    const double r = 1.0 / std::sqrt(10.0);
    EstimationChannel ch;
    ch.kraus.elements = {
        CMat2{2, 1, 0, 1} * s,   // +0
        CMat2{1, 0, 1, 2} * s,   // +1
        CMat2{2, -1, 0, 1} * s,  // -0
        CMat2{-1, 0, 1, -2} * s, // -1
    };
    // Unitary polar factors, so that U_R^i^dag E_i = sqrt(E_i^dag E_i).
    ch.reversal = {
        CMat2{3, 1, -1, 3} * r,
        CMat2{3, -1, 1, 3} * r,
        CMat2{3, -1, 1, 3} * r,
        CMat2{-3, -1, 1, -3} * r,
    };
    return ch;
}

} // namespace detail

/// Shared immutable instance of the estimation channel.
[[nodiscard]] inline const EstimationChannel &estimation_channel() {
    static const EstimationChannel ch = detail::make_estimation_channel();
    return ch;
}

/// The four operation elements E_0..E_3 and the reversal unitaries.
[[nodiscard]] inline EstimationChannel estimation_elements() {
    return estimation_channel();
}

/// <psi|E_o^dag E_o|psi>
[[nodiscard]] inline double outcome_probability(const PureQubit &psi,
                                                Outcome o) {
    return estimation_channel().kraus.probability(o.index(), psi);
}

/// E_o|psi>, renormalized, in canonical gauge.
[[nodiscard]] inline PureQubit post_measurement_state(const PureQubit &psi,
                                                      Outcome o) {
    return apply(estimation_channel().element(o), psi);
}

/// Applies U_R^o^dag to state.
[[nodiscard]] inline PureQubit reverse(const PureQubit &state, Outcome o) {
    return apply(estimation_channel().reversal_adjoint(o), state);
}

/**
 * Fidelity with psi after measuring and reversing:
 * sum_o p_o |<psi| reverse(post_measurement_state(psi, o), o)>|^2.
 */
[[nodiscard]] inline double reversed_fidelity(const PureQubit &psi) {
    double f = 0.0;
    for (Outcome o : kAllOutcomes) {
        f += outcome_probability(psi, o) *
             overlap(psi, reverse(post_measurement_state(psi, o), o));
    }
    return f;
}

/// Fidelity of the measured signal without reversal, for comparison.
[[nodiscard]] inline double unreversed_fidelity(const PureQubit &psi) {
    double f = 0.0;
    for (Outcome o : kAllOutcomes) {
        f += outcome_probability(psi, o) *
             overlap(psi, post_measurement_state(psi, o));
    }
    return f;
}

} // namespace qrestore
