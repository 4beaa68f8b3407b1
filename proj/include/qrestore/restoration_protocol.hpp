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
 * End-to-end restoration protocol. The sender clones and measures the
 * signal, reverses the measurement back-action and transmits the signal
 * through a bit/phase-flip channel along with the classical outcome. The
 * receiver repeats the measurement, reverses it and applies a Pauli
 * correction chosen by comparing the two outcomes.
 *
 * Receiver-side order is reversal first, then correction:
 *   final = C(a, b) U_R^b^dag E_b P_e U_R^a^dag E_a |psi>   (normalized)
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qrestore/cloning_estimator.hpp"
#include "qrestore/complex_linalg.hpp"
#include "qrestore/quantum_core.hpp"
#include "qrestore/random.hpp"

namespace qrestore {

/// How outcome disagreements map to Pauli corrections.
enum class PauliAssignment : std::uint8_t {
    /// Bit disagreement -> sigma_x, sign disagreement -> sigma_z.
    outcome_comparison,
    /// Sign disagreement -> sigma_x, bit disagreement -> sigma_z. Kept only
    /// as a negative control; it does not restore anything.
    swapped,
};

/// Pauli correction for sender outcome a and receiver outcome b.
[[nodiscard]] inline CMat2 correction_unitary(
    Outcome a, Outcome b,
    PauliAssignment rule = PauliAssignment::outcome_comparison) {
    bool flip_x = a.bit != b.bit;
    bool flip_z = a.sign != b.sign;
    if (rule == PauliAssignment::swapped) {
        std::swap(flip_x, flip_z);
    }
    if (flip_x && flip_z) {
        return sigma_x() * sigma_z();
    }
    if (flip_x) {
        return sigma_x();
    }
    if (flip_z) {
        return sigma_z();
    }
    return CMat2::identity();
}

/// The state after the sender's measurement (outcome a) and reversal.
[[nodiscard]] inline PureQubit sender_output(const PureQubit &psi, Outcome a) {
    return reverse(post_measurement_state(psi, a), a);
}

/// One fully specified path through the protocol.
struct Branch {
    Outcome alice;
    ErrorType error = ErrorType::ne;
    Outcome bob;
    double alice_probability = 0.0;  // p_A^a
    double bob_probability = 0.0;    // p_e^{ab}, conditional on a and e
    PureQubit final_state;           // |psi_e^{ab}>
};

[[nodiscard]] inline Branch evaluate_branch(
    const PureQubit &psi, Outcome a, ErrorType e, Outcome b,
    PauliAssignment rule = PauliAssignment::outcome_comparison) {
    Branch br;
    br.alice = a;
    br.error = e;
    br.bob = b;
    br.alice_probability = outcome_probability(psi, a);
    const PureQubit received = apply(error_operator(e), sender_output(psi, a));
    br.bob_probability = outcome_probability(received, b);
    br.final_state =
        apply(correction_unitary(a, b, rule),
              reverse(post_measurement_state(received, b), b));
    return br;
}

/**
 * Average input-output fidelity by enumerating all 4 x 4 x 4 branches
 * (sender outcome, channel error, receiver outcome).
 */
[[nodiscard]] inline double exact_fidelity(
    const PureQubit &psi, double p_bit, double p_ph,
    PauliAssignment rule = PauliAssignment::outcome_comparison) {
    check_probability(p_bit, "p_bit");
    check_probability(p_ph, "p_ph");
    double f = 0.0;
    for (Outcome a : kAllOutcomes) {
        const double pa = outcome_probability(psi, a);
        const PureQubit sent = sender_output(psi, a);
        for (ErrorType e : kAllErrors) {
            const double pe = error_probability(e, p_bit, p_ph);
            if (pe == 0.0) {
                continue;
            }
            const PureQubit received = apply(error_operator(e), sent);
            for (Outcome b : kAllOutcomes) {
                const PureQubit out =
                    apply(correction_unitary(a, b, rule),
                          reverse(post_measurement_state(received, b), b));
                f += pa * pe * outcome_probability(received, b) *
                     overlap(psi, out);
            }
        }
    }
    return f;
}

/**
 * Closed-form protocol fidelity:
 * (5 - 2 a^2 + 2 a^4) / 9 + (8/9) a^2 b^2 cos^2(phi), with b^2 = 1 - a^2.
 */
[[nodiscard]] inline double analytic_fidelity(double alpha2, double phi) {
    if (!(alpha2 >= 0.0 && alpha2 <= 1.0)) {
        throw DomainError("analytic_fidelity: alpha2 must lie in [0, 1]");
    }
    const double beta2 = 1.0 - alpha2;
    const double c = std::cos(phi);
    return (5.0 - 2.0 * alpha2 + 2.0 * alpha2 * alpha2) / 9.0 +
           (8.0 / 9.0) * alpha2 * beta2 * c * c;
}

/**
 * Fidelity when the receiver is handed I/2 instead of the transmitted
 * signal; only the sender's classical outcome carries information.
 */
[[nodiscard]] inline double mixed_input_fidelity(
    const PureQubit &psi,
    PauliAssignment rule = PauliAssignment::outcome_comparison) {
    const EstimationChannel &ch = estimation_channel();
    const DensityMatrix mixed = DensityMatrix::maximally_mixed();
    CMat2 rho_out = CMat2::zero();
    for (Outcome a : kAllOutcomes) {
        const double pa = outcome_probability(psi, a);
        for (Outcome b : kAllOutcomes) {
            const CMat2 op = correction_unitary(a, b, rule) *
                             ch.reversal_adjoint(b) * ch.element(b);
            rho_out += (op * mixed.m * op.adjoint()) * pa;
        }
    }
    return fidelity(psi, DensityMatrix{rho_out});
}

/// One sampled run of the protocol.
struct TrajectoryRecord {
    Outcome alice;
    ErrorType error = ErrorType::ne;
    Outcome bob;
    PureQubit final_state;
    double overlap = 0.0;  // |<psi_in|final>|^2

    friend bool operator==(const TrajectoryRecord &l,
                           const TrajectoryRecord &r) {
        return l.alice == r.alice && l.error == r.error && l.bob == r.bob &&
               l.final_state.alpha() == r.final_state.alpha() &&
               l.final_state.beta() == r.final_state.beta() &&
               l.final_state.phi() == r.final_state.phi() &&
               l.overlap == r.overlap;
    }
};

template <Random64 G>
[[nodiscard]] TrajectoryRecord run_trajectory(
    const PureQubit &psi, double p_bit, double p_ph, G &rng,
    PauliAssignment rule = PauliAssignment::outcome_comparison) {
    const KrausChannel noise = error_channel(p_bit, p_ph);
    const KrausChannel &meas = estimation_channel().kraus;

    TrajectoryRecord rec;
    const SampledElement alice = sample_element(meas, psi, rng);
    rec.alice = Outcome::from_index(alice.index);
    const PureQubit sent = reverse(alice.state, rec.alice);

    const SampledElement err = sample_element(noise, sent, rng);
    rec.error = static_cast<ErrorType>(err.index);

    const SampledElement bob = sample_element(meas, err.state, rng);
    rec.bob = Outcome::from_index(bob.index);
    rec.final_state = apply(correction_unitary(rec.alice, rec.bob, rule),
                            reverse(bob.state, rec.bob));
    rec.overlap = overlap(psi, rec.final_state);
    return rec;
}

struct MonteCarloSummary {
    std::size_t trials = 0;
    double mean = 0.0;
    double std_err = 0.0;
};

/// Mean overlap over `trials` trajectories and its standard error.
template <Random64 G>
[[nodiscard]] MonteCarloSummary monte_carlo_fidelity(
    const PureQubit &psi, double p_bit, double p_ph, std::size_t trials,
    G &rng, PauliAssignment rule = PauliAssignment::outcome_comparison) {
    if (trials == 0) {
        throw DomainError("monte_carlo_fidelity: trials must be >= 1");
    }
    // Welford running mean / variance.
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t n = 1; n <= trials; ++n) {
        const double x = run_trajectory(psi, p_bit, p_ph, rng, rule).overlap;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    MonteCarloSummary s;
    s.trials = trials;
    s.mean = mean;
    if (trials > 1) {
        const double var = m2 / static_cast<double>(trials - 1);
        s.std_err = std::sqrt(var / static_cast<double>(trials));
    }
    return s;
}

/**
 * Sender measures in the computational basis and the receiver prepares the
 * observed basis state: F = alpha^4 + beta^4.
 */
[[nodiscard]] inline double baseline_direct_fidelity(const PureQubit &psi) {
    const double a2 = psi.alpha2();
    const double b2 = 1.0 - a2;
    return a2 * a2 + b2 * b2;
}

// Grid convention: alpha^2 = i / (n_alpha - 1), endpoints included;
// phi = 2 pi j / n_phi, endpoint excluded.

[[nodiscard]] inline double grid_alpha2(std::size_t i, std::size_t n_alpha) {
    if (i + 1 == n_alpha) {
        return 1.0;
    }
    return static_cast<double>(i) / static_cast<double>(n_alpha - 1);
}

[[nodiscard]] inline double grid_phi(std::size_t j, std::size_t n_phi) {
    return kTwoPi * static_cast<double>(j) / static_cast<double>(n_phi);
}

/**
 * Average of grid values laid out row-major (alpha index major): trapezoid
 * rule in alpha^2, uniform periodic rule in phi.
 */
[[nodiscard]] inline double grid_average(std::span<const double> values,
                                         std::size_t n_alpha,
                                         std::size_t n_phi) {
    if (n_alpha < 2 || n_phi < 1) {
        throw DomainError("grid_average: need n_alpha >= 2 and n_phi >= 1");
    }
    if (values.size() != n_alpha * n_phi) {
        throw DomainError("grid_average: value count does not match grid");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n_alpha; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n_phi; ++j) {
            row += values[i * n_phi + j];
        }
        const double w = (i == 0 || i + 1 == n_alpha) ? 0.5 : 1.0;
        total += w * row / static_cast<double>(n_phi);
    }
    return total / static_cast<double>(n_alpha - 1);
}

/// Plane average of f(alpha2, phi), uniform in (alpha^2, phi).
[[nodiscard]] inline double plane_average(
    const std::function<double(double, double)> &f, std::size_t n_alpha,
    std::size_t n_phi) {
    if (n_alpha < 2 || n_phi < 1) {
        throw DomainError("plane_average: need n_alpha >= 2 and n_phi >= 1");
    }
    std::vector<double> values(n_alpha * n_phi);
    for (std::size_t i = 0; i < n_alpha; ++i) {
        for (std::size_t j = 0; j < n_phi; ++j) {
            values[i * n_phi + j] =
                f(grid_alpha2(i, n_alpha), grid_phi(j, n_phi));
        }
    }
    return grid_average(values, n_alpha, n_phi);
}

} // namespace qrestore
