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
 * Runtime invariant suite. Each check measures a worst-case deviation over
 * its sample set and compares it with a tolerance. Deterministic checks use
 * an absolute tolerance (overridable as a whole); statistical checks report
 * the worst |z| score against a fixed 4-sigma bound.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qrestore/cloning_estimator.hpp"
#include "qrestore/complex_linalg.hpp"
#include "qrestore/quantum_core.hpp"
#include "qrestore/random.hpp"
#include "qrestore/restoration_protocol.hpp"

namespace qrestore {

struct VerifyEntry {
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool statistical = false;  // deviation is a |z| score
    bool pass = false;
};

struct VerifyReport {
    std::vector<VerifyEntry> entries;

    [[nodiscard]] bool passed() const {
        return std::all_of(entries.begin(), entries.end(),
                           [](const VerifyEntry &e) { return e.pass; });
    }
};

struct VerifyOptions {
    /// Replaces every deterministic tolerance when set.
    std::optional<double> tol;
    std::uint64_t seed = 0;
    PauliAssignment rule = PauliAssignment::outcome_comparison;
    std::size_t mc_trials = 100000;
};

/// Published reversal adjoints U_R^i^dag, each times sqrt(10).
inline constexpr std::array<std::array<double, 4>, 4> kReferenceReversalAdjoints = {{
    {3, -1, 1, 3},
    {-3, -1, 1, -3},
    {3, 1, -1, 3},
    {-3, 1, -1, -3},
}};

[[nodiscard]] inline CMat2 reference_reversal_adjoint(std::size_t i) {
    const auto &m = kReferenceReversalAdjoints.at(i);
    return CMat2{m[0], m[1], m[2], m[3]} * (1.0 / std::sqrt(10.0));
}

/// Uniformly distributed pure state (Haar measure on the Bloch sphere).
template <Random64 G>
[[nodiscard]] PureQubit random_pure(G &g) {
    const double a2 = uniform01(g);
    return make_pure(a2, kTwoPi * uniform01(g));
}

namespace detail {

class Checker {
  public:
    explicit Checker(const VerifyOptions &opt) : opt_(opt) {}

    void deterministic(std::string name, double deviation, double tol) {
        add(std::move(name), deviation, opt_.tol.value_or(tol), false);
    }
    void statistical(std::string name, double worst_z) {
        add(std::move(name), worst_z, 4.0, true);
    }

    VerifyReport report;

  private:
    void add(std::string name, double dev, double tol, bool stat) {
        VerifyEntry e;
        e.name = std::move(name);
        e.deviation = dev;
        e.tolerance = tol;
        e.statistical = stat;
        e.pass = std::isfinite(dev) && dev <= tol;
        report.entries.push_back(std::move(e));
    }

    const VerifyOptions &opt_;
};

/// Largest negative eigenvalue magnitude plus non-Hermiticity.
inline double psd_violation(const CMat2 &m) {
    const double herm = max_abs_diff(m, m.adjoint());
    const double half_tr = 0.5 * m.trace().real();
    const double disc = std::max(0.0, half_tr * half_tr - m.det().real());
    const double min_eig = half_tr - std::sqrt(disc);
    return herm + std::max(0.0, -min_eig);
}

inline double unitarity_violation(const CMat2 &u) {
    return max_abs_diff(u.adjoint() * u, CMat2::identity());
}

inline void check_linalg(Checker &c, Rng &rng) {
    const EstimationChannel &ch = estimation_channel();

    double eq9 = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        eq9 = std::max(eq9, max_abs_diff_up_to_phase(
                                nearest_unitary(ch.kraus.elements[i]).adjoint(),
                                reference_reversal_adjoint(i)));
    }
    c.deterministic("linalg.nearest_unitary_matches_reference_table", eq9, 1e-12);

    double minimal = 0.0;
    for (const CMat2 &e : ch.kraus.elements) {
        const double best = hs_distance(nearest_unitary(e), e);
        for (int k = 0; k < 1000; ++k) {
            minimal = std::max(minimal, best - hs_distance(haar_unitary(rng), e));
        }
    }
    c.deterministic("linalg.nearest_unitary_minimality", minimal, 1e-12);

    double round_trip = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const CMat2 e = ginibre(rng);
        const PolarDecomposition pd = polar_decompose(e);
        round_trip = std::max({round_trip, max_abs_diff(pd.u * pd.p, e),
                               unitarity_violation(pd.u), psd_violation(pd.p)});
    }
    c.deterministic("linalg.polar_round_trip", round_trip, 1e-12);

    double factor_psd = 0.0;
    for (const CMat2 &e : ch.kraus.elements) {
        const CMat2 p = nearest_unitary(e).adjoint() * e;
        factor_psd = std::max({factor_psd, psd_violation(p),
                               max_abs_diff(p, sqrt_psd(e.adjoint() * e))});
    }
    c.deterministic("linalg.unitary_factor_leaves_sqrt", factor_psd, 1e-12);
}

inline void check_core(Checker &c, Rng &rng) {
    const KrausChannel &meas = estimation_channel().kraus;

    double complete = meas.completeness_deviation();
    for (int k = 0; k < 100; ++k) {
        complete = std::max(complete,
                            error_channel(uniform01(rng), uniform01(rng))
                                .completeness_deviation());
    }
    c.deterministic("core.kraus_completeness", complete, 1e-12);

    double preserve = 0.0;
    for (int k = 0; k < 200; ++k) {
        // Random mixed state: convex mixture of two random pure states.
        const double w = uniform01(rng);
        const DensityMatrix rho{
            DensityMatrix::pure(random_pure(rng)).m * w +
            DensityMatrix::pure(random_pure(rng)).m * (1.0 - w)};
        const KrausChannel ch = (k % 2 == 0)
                                    ? error_channel(uniform01(rng), uniform01(rng))
                                    : meas;
        const DensityMatrix out = apply_channel(ch, rho);
        preserve = std::max({preserve, std::abs(out.m.trace() - 1.0),
                             max_abs_diff(out.m, out.m.adjoint())});
    }
    c.deterministic("core.apply_channel_trace_hermiticity", preserve, 1e-12);

    double worst_z = 0.0;
    constexpr int kDraws = 100000;
    for (const PureQubit &psi : {make_pure(1.0, 0.0), random_pure(rng)}) {
        std::array<int, 4> counts{};
        for (int k = 0; k < kDraws; ++k) {
            ++counts[sample_element(meas, psi, rng).index];
        }
        for (std::size_t i = 0; i < 4; ++i) {
            const double p = meas.probability(i, psi);
            const double sigma = std::sqrt(p * (1.0 - p) / kDraws);
            const double freq = static_cast<double>(counts[i]) / kDraws;
            worst_z = std::max(worst_z, std::abs(freq - p) / sigma);
        }
    }
    c.statistical("core.sampling_frequencies", worst_z);

    double gauge = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const PureQubit psi = random_pure(rng);
        const cplx ph = std::polar(1.0, kTwoPi * uniform01(rng));
        CVec2 v = psi.to_vector();
        v[0] *= ph;
        v[1] *= ph;
        const PureQubit back = PureQubit::from_vector(v);
        double dphi = std::abs(back.phi() - psi.phi());
        dphi = std::min(dphi, kTwoPi - dphi);
        gauge = std::max({gauge, std::abs(back.alpha2() - psi.alpha2()), dphi});
    }
    c.deterministic("core.gauge_round_trip", gauge, 1e-12);

    double order = 0.0;
    for (int k = 0; k < 100; ++k) {
        const DensityMatrix rho = DensityMatrix::pure(random_pure(rng));
        const KrausChannel xz{{sigma_x() * sigma_z()}};
        const KrausChannel zx{{sigma_z() * sigma_x()}};
        order = std::max(order, max_abs_diff(apply_channel(xz, rho).m,
                                             apply_channel(zx, rho).m));
    }
    c.deterministic("core.xz_order_is_global_phase", order, 1e-12);
}

inline void check_cloning(Checker &c, Rng &rng) {
    const EstimationChannel &ch = estimation_channel();

    double projected = 0.0;
    for (Outcome o : kAllOutcomes) {
        projected = std::max(projected, max_abs_diff_up_to_phase(
                                            projected_element(o), ch.element(o)));
    }
    c.deterministic("cloning.projected_elements_match_table", projected, 1e-12);

    double clones = 0.0;
    for (int k = 0; k < 200; ++k) {
        const PureQubit psi = random_pure(rng);
        const CVec8 out = uqcm_output(psi);
        const DensityMatrix r1 = reduce_qubit(out, 1);
        const DensityMatrix r2 = reduce_qubit(out, 2);
        clones = std::max({clones, max_abs_diff(r1.m, r2.m),
                           std::abs(fidelity(psi, r1) - 5.0 / 6.0),
                           std::abs(fidelity(psi, r2) - 5.0 / 6.0),
                           std::abs(norm_sq(out) - 1.0)});
    }
    c.deterministic("cloning.clone_symmetry_and_fidelity", clones, 1e-12);

    double marg = 0.0;
    for (std::size_t i = 0; i < 101; ++i) {
        for (std::size_t j = 0; j < 101; ++j) {
            const PureQubit psi = make_pure(grid_alpha2(i, 101), grid_phi(j, 101));
            std::array<double, 4> p{};
            for (Outcome o : kAllOutcomes) {
                p[o.index()] = outcome_probability(psi, o);
            }
            const double plus = 0.5 * (1.0 + (4.0 / 3.0) * psi.alpha() *
                                                 psi.beta() * std::cos(psi.phi()));
            const double zero = (1.0 + psi.alpha2()) / 3.0;
            marg = std::max({marg, std::abs(p[0] + p[1] + p[2] + p[3] - 1.0),
                             std::abs(p[0] + p[1] - plus),
                             std::abs(p[0] + p[2] - zero)});
        }
    }
    c.deterministic("cloning.outcome_marginals", marg, 1e-12);

    double table = 0.0;
    for (Outcome o : kAllOutcomes) {
        table = std::max({table,
                          max_abs_diff(nearest_unitary(ch.element(o)),
                                       ch.reversal_unitary(o)),
                          unitarity_violation(ch.reversal_unitary(o)),
                          psd_violation(ch.reversal_adjoint(o) * ch.element(o))});
    }
    c.deterministic("cloning.reversal_unitaries_are_polar_factors", table, 1e-12);

    double benefit = 0.0;
    double quadrant = 0.0;
    for (std::size_t i = 0; i < 101; ++i) {
        for (std::size_t j = 0; j < 101; ++j) {
            const PureQubit psi = make_pure(grid_alpha2(i, 101), grid_phi(j, 101));
            benefit = std::max(benefit, 5.0 / 6.0 - reversed_fidelity(psi));
            if (psi.alpha() > psi.beta() && std::cos(psi.phi()) > 0.0 &&
                psi.beta() > 0.0) {
                const PureQubit post =
                    post_measurement_state(psi, Outcome::from_index(0));
                const double margin =
                    std::min(post.alpha() - post.beta(), std::cos(post.phi()));
                quadrant = std::max(quadrant, -margin);
            }
        }
    }
    c.deterministic("cloning.reversal_never_lowers_fidelity",
                    std::max(0.0, benefit), 1e-12);
    c.deterministic("cloning.quadrant_preserved_by_plus0",
                    std::max(0.0, quadrant), 0.0);
    (void)rng;
}

inline void check_protocol(Checker &c, Rng &rng, const VerifyOptions &opt) {
    const PauliAssignment rule = opt.rule;

    double indep = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            const PureQubit psi = make_pure(grid_alpha2(i, 5), grid_phi(j, 5));
            const double ref = exact_fidelity(psi, 0.0, 0.0, rule);
            for (int k = 0; k < 10; ++k) {
                indep = std::max(indep, std::abs(exact_fidelity(
                                            psi, uniform01(rng),
                                            uniform01(rng), rule) -
                                                 ref));
            }
        }
    }
    c.deterministic("protocol.error_rate_independence", indep, 1e-10);

    double triple = 0.0;
    double floor = 0.0;
    std::vector<double> values;
    values.reserve(101 * 101);
    for (std::size_t i = 0; i < 101; ++i) {
        for (std::size_t j = 0; j < 101; ++j) {
            const double a2 = grid_alpha2(i, 101);
            const double phi = grid_phi(j, 101);
            const PureQubit psi = make_pure(a2, phi);
            const double fe = exact_fidelity(psi, 0.0, 0.0, rule);
            const double fm = mixed_input_fidelity(psi, rule);
            const double fa = analytic_fidelity(a2, phi);
            triple = std::max({triple, std::abs(fe - fm), std::abs(fe - fa)});
            floor = std::max(floor, 0.5 - fe);
        }
    }
    c.deterministic("protocol.exact_mixed_analytic_agree", triple, 1e-10);

    double at_points = 0.0;
    for (double phi : {std::numbers::pi / 2.0, 3.0 * std::numbers::pi / 2.0}) {
        at_points = std::max(
            at_points, std::abs(exact_fidelity(make_pure(0.5, phi), 0.0, 0.0,
                                               rule) -
                                0.5));
    }
    c.deterministic("protocol.fidelity_floor",
                    std::max({0.0, floor, at_points}), 1e-12);

    double ident = 0.0;
    for (int k = 0; k < 100; ++k) {
        const PureQubit psi = random_pure(rng);
        for (Outcome a : kAllOutcomes) {
            const Branch ref = evaluate_branch(psi, a, ErrorType::ne, a, rule);
            for (ErrorType e : kAllErrors) {
                const Outcome b = Outcome::from_index(
                    a.index() ^ static_cast<std::size_t>(e));
                const Branch br = evaluate_branch(psi, a, e, b, rule);
                ident = std::max({ident,
                                  std::abs(br.bob_probability - ref.bob_probability),
                                  state_distance(br.final_state, ref.final_state)});
            }
        }
    }
    c.deterministic("protocol.symmetry_identities", ident, 1e-12);

    const Branch spot = evaluate_branch(make_pure(1.0, 0.0), Outcome::from_index(0),
                                        ErrorType::ne, Outcome::from_index(0), rule);
    c.deterministic("protocol.p_ne00_of_zero_is_5_12",
                    std::abs(spot.bob_probability - 5.0 / 12.0), 1e-12);

    const double avg = plane_average(
        [&](double a2, double phi) {
            return exact_fidelity(make_pure(a2, phi), 0.0, 0.0, rule);
        },
        201, 201);
    c.deterministic("protocol.plane_average_16_27", std::abs(avg - 16.0 / 27.0),
                    1e-3);
    const double base = plane_average(
        [](double a2, double phi) {
            return baseline_direct_fidelity(make_pure(a2, phi));
        },
        201, 201);
    c.deterministic("protocol.baseline_average_2_3", std::abs(base - 2.0 / 3.0),
                    1e-3);
    // Positive margin means the protocol is below the baseline, as expected.
    c.deterministic("protocol.below_direct_measurement_baseline",
                    std::max(0.0, avg - base), 0.0);

    double worst_z = 0.0;
    const std::array<std::array<double, 2>, 5> spots = {{
        {1.0, 0.0},
        {0.5, 0.0},
        {0.5, std::numbers::pi / 2.0},
        {0.3, 1.1},
        {0.8, 4.0},
    }};
    for (std::size_t s = 0; s < spots.size(); ++s) {
        const PureQubit psi = make_pure(spots[s][0], spots[s][1]);
        const double pb = uniform01(rng);
        const double pp = uniform01(rng);
        Rng stream(derive_seed(opt.seed, 0xC0FFEE, s));
        const MonteCarloSummary mc =
            monte_carlo_fidelity(psi, pb, pp, opt.mc_trials, stream, rule);
        const double ref = exact_fidelity(psi, pb, pp, rule);
        const double z = mc.std_err > 0.0
                             ? std::abs(mc.mean - ref) / mc.std_err
                             : (std::abs(mc.mean - ref) <= 1e-12 ? 0.0 : HUGE_VAL);
        worst_z = std::max(worst_z, z);
    }
    c.statistical("protocol.monte_carlo_matches_exact", worst_z);
}

} // namespace detail

/// Runs every invariant check once.
[[nodiscard]] inline VerifyReport run_verification(const VerifyOptions &opt = {}) {
    detail::Checker c(opt);
    Rng rng(mix64(opt.seed));
    detail::check_linalg(c, rng);
    detail::check_core(c, rng);
    detail::check_cloning(c, rng);
    detail::check_protocol(c, rng, opt);
    return std::move(c.report);
}

} // namespace qrestore
