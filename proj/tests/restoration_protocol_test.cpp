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

#include "qrestore/restoration_protocol.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "qrestore/verify.hpp"

namespace qrestore {
namespace {

constexpr double kPi = std::numbers::pi;

Outcome O(std::size_t i) { return Outcome::from_index(i); }

TEST(CorrectionUnitary, OutcomeComparisonRule) {
    EXPECT_EQ(correction_unitary(O(0), O(0)), CMat2::identity());
    EXPECT_EQ(correction_unitary(O(0), O(1)), sigma_x());
    EXPECT_EQ(correction_unitary(O(0), O(2)), sigma_z());
    EXPECT_EQ(correction_unitary(O(0), O(3)), sigma_x() * sigma_z());
    // Depends only on componentwise agreement.
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
            EXPECT_EQ(correction_unitary(O(a), O(b)),
                      correction_unitary(O(0), O(a ^ b)));
        }
    }
}

TEST(CorrectionUnitary, SwappedRuleExchangesXAndZ) {
    const auto sw = PauliAssignment::swapped;
    EXPECT_EQ(correction_unitary(O(0), O(1), sw), sigma_z());
    EXPECT_EQ(correction_unitary(O(0), O(2), sw), sigma_x());
    EXPECT_EQ(correction_unitary(O(0), O(3), sw), sigma_x() * sigma_z());
}

TEST(ExactFidelity, KnownValues) {
    EXPECT_NEAR(exact_fidelity(make_pure(1.0, 0.0), 0.0, 0.0), 5.0 / 9.0, 1e-12);
    EXPECT_NEAR(exact_fidelity(make_pure(1.0, 0.0), 0.9, 0.2), 5.0 / 9.0, 1e-12);
    EXPECT_NEAR(exact_fidelity(make_pure(0.5, kPi / 2), 0.4, 0.1), 0.5, 1e-12);
    EXPECT_NEAR(exact_fidelity(make_pure(0.5, 3 * kPi / 2), 0.0, 0.0), 0.5, 1e-12);
    EXPECT_THROW((void)exact_fidelity(make_pure(1.0, 0.0), 1.2, 0.0), DomainError);
}

TEST(ExactFidelity, IndependentOfErrorRates) {
    Rng rng(42);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            const PureQubit psi = make_pure(grid_alpha2(i, 5), grid_phi(j, 5));
            const double ref = exact_fidelity(psi, 0.0, 0.0);
            EXPECT_NEAR(exact_fidelity(psi, 0.3, 0.7), ref, 1e-12);
            EXPECT_NEAR(exact_fidelity(psi, 0.5, 0.5), ref, 1e-12);
            for (int k = 0; k < 10; ++k) {
                EXPECT_NEAR(exact_fidelity(psi, uniform01(rng), uniform01(rng)),
                            ref, 1e-10);
            }
        }
    }
}

TEST(ExactFidelity, MatchesDensityMatrixOracle) {
    Rng rng(9);
    for (int k = 0; k < 200; ++k) {
        const PureQubit psi = random_pure(rng);
        const double pb = uniform01(rng);
        const double pp = uniform01(rng);
        EXPECT_NEAR(exact_fidelity(psi, pb, pp),
                    oracle::protocol_fidelity(psi, pb, pp), 1e-12);
        EXPECT_NEAR(exact_fidelity(psi, pb, pp, PauliAssignment::swapped),
                    oracle::protocol_fidelity(psi, pb, pp, true), 1e-12);
    }
}

TEST(AnalyticFidelity, Values) {
    EXPECT_NEAR(analytic_fidelity(1.0, 0.0), 5.0 / 9.0, 1e-15);
    EXPECT_NEAR(analytic_fidelity(0.5, 0.0), 13.0 / 18.0, 1e-15);
    EXPECT_NEAR(analytic_fidelity(0.5, kPi / 2), 0.5, 1e-15);
    EXPECT_THROW((void)analytic_fidelity(-0.5, 0.0), DomainError);
}

TEST(MixedInputFidelity, ValuesAndEquivalence) {
    EXPECT_NEAR(mixed_input_fidelity(make_pure(1.0, 0.0)), 5.0 / 9.0, 1e-12);
    EXPECT_NEAR(mixed_input_fidelity(make_pure(0.5, 0.0)), 13.0 / 18.0, 1e-12);
    Rng rng(10);
    for (int k = 0; k < 100; ++k) {
        const PureQubit psi = random_pure(rng);
        const double m = mixed_input_fidelity(psi);
        EXPECT_NEAR(m, exact_fidelity(psi, uniform01(rng), uniform01(rng)), 1e-10);
        EXPECT_NEAR(m, analytic_fidelity(psi.alpha2(), psi.phi()), 1e-10);
    }
}

TEST(FidelityFloor, HalfOnlyAtTwoPoints) {
    for (std::size_t i = 0; i < 101; ++i) {
        for (std::size_t j = 0; j < 100; ++j) {  // 100 puts pi/2, 3pi/2 on the grid
            const double a2 = grid_alpha2(i, 101);
            const double phi = grid_phi(j, 100);
            const double f = exact_fidelity(make_pure(a2, phi), 0.0, 0.0);
            const bool special = i == 50 && (j == 25 || j == 75);
            if (special) {
                EXPECT_NEAR(f, 0.5, 1e-12);
            } else {
                EXPECT_GT(f, 0.5 + 1e-12) << a2 << ' ' << phi;
            }
        }
    }
}

TEST(SymmetryIdentities, ZeroStateSpotValue) {
    // p_ne^00 = <0|(E_0^dag E_0)^2|0> / p_A^0 = (5/36) / (1/3) = 5/12.
    const Branch br = evaluate_branch(make_pure(1.0, 0.0), O(0), ErrorType::ne, O(0));
    EXPECT_NEAR(br.alice_probability, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(br.bob_probability, 5.0 / 12.0, 1e-12);
}

TEST(SymmetryIdentities, ProbabilitiesAndStatesCoincide) {
    Rng rng(55);
    for (int k = 0; k < 100; ++k) {
        const PureQubit psi = random_pure(rng);
        for (Outcome a : kAllOutcomes) {
            const Branch ref = evaluate_branch(psi, a, ErrorType::ne, a);
            for (ErrorType e : kAllErrors) {
                const Branch br = evaluate_branch(
                    psi, a, e, O(a.index() ^ static_cast<std::size_t>(e)));
                EXPECT_NEAR(br.bob_probability, ref.bob_probability, 1e-12);
                EXPECT_LT(state_distance(br.final_state, ref.final_state), 1e-12);
            }
        }
    }
}

TEST(SymmetryIdentities, SwappedRuleBreaksStateIdentity) {
    // Branch probabilities do not depend on the correction, so the swapped
    // rule is caught by the final states.
    const PureQubit psi = make_pure(0.3, 0.7);
    const auto sw = PauliAssignment::swapped;
    const Branch ne = evaluate_branch(psi, O(0), ErrorType::ne, O(0), sw);
    const Branch bf = evaluate_branch(psi, O(0), ErrorType::bf, O(1), sw);
    EXPECT_NEAR(bf.bob_probability, ne.bob_probability, 1e-12);
    EXPECT_GT(state_distance(bf.final_state, ne.final_state), 0.1);
    // And it no longer reproduces the closed form.
    EXPECT_GT(std::abs(exact_fidelity(make_pure(1.0, 0.0), 0, 0, sw) - 5.0 / 9.0),
              0.01);
}

TEST(RunTrajectory, SeededRunsRepeat) {
    const PureQubit psi = make_pure(0.4, 1.3);
    Rng a(123), b(123);
    for (int k = 0; k < 100; ++k) {
        EXPECT_EQ(run_trajectory(psi, 0.2, 0.6, a), run_trajectory(psi, 0.2, 0.6, b));
    }
}

TEST(RunTrajectory, CertainBitFlip) {
    Rng rng(6);
    for (int k = 0; k < 200; ++k) {
        const TrajectoryRecord r = run_trajectory(make_pure(0.7, 2.0), 1.0, 0.0, rng);
        EXPECT_EQ(r.error, ErrorType::bf);
        EXPECT_GE(r.overlap, 0.0);
        EXPECT_LE(r.overlap, 1.0 + 1e-12);
    }
}

TEST(RunTrajectory, MeanConvergesToExact) {
    Rng rng(2);
    const MonteCarloSummary s =
        monte_carlo_fidelity(make_pure(1.0, 0.0), 0.0, 0.0, 100000, rng);
    EXPECT_GT(s.std_err, 0.0);
    EXPECT_LT(std::abs(s.mean - 5.0 / 9.0), 4 * s.std_err);
    EXPECT_THROW((void)monte_carlo_fidelity(make_pure(1.0, 0.0), 0, 0, 0, rng),
                 DomainError);
}

TEST(BaselineDirectFidelity, Values) {
    EXPECT_EQ(baseline_direct_fidelity(make_pure(1.0, 0.0)), 1.0);
    EXPECT_NEAR(baseline_direct_fidelity(make_pure(0.5, 2.0)), 0.5, 1e-15);
    const double avg = plane_average(
        [](double a2, double phi) { return baseline_direct_fidelity(make_pure(a2, phi)); },
        201, 1);
    EXPECT_NEAR(avg, 2.0 / 3.0, 1e-3);
}

TEST(PlaneAverage, ConstantAndClosedForm) {
    EXPECT_EQ(plane_average([](double, double) { return 1.0; }, 7, 3), 1.0);
    EXPECT_NEAR(plane_average(analytic_fidelity, 201, 201), 16.0 / 27.0, 1e-3);
    EXPECT_THROW((void)plane_average(analytic_fidelity, 1, 5), DomainError);
    EXPECT_THROW((void)plane_average(analytic_fidelity, 5, 0), DomainError);
}

TEST(PlaneAverage, ProtocolBelowBaseline) {
    const double protocol = plane_average(
        [](double a2, double phi) { return exact_fidelity(make_pure(a2, phi), 0.25, 0.4); },
        201, 201);
    EXPECT_NEAR(protocol, 16.0 / 27.0, 1e-3);
    EXPECT_LT(protocol, 2.0 / 3.0);
}

TEST(Grid, Convention) {
    EXPECT_EQ(grid_alpha2(0, 201), 0.0);
    EXPECT_EQ(grid_alpha2(200, 201), 1.0);
    EXPECT_EQ(grid_phi(0, 4), 0.0);
    EXPECT_NEAR(grid_phi(3, 4), 1.5 * kPi, 1e-15);
}

} // namespace
} // namespace qrestore
