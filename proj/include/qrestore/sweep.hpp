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

// Grid sweeps over the (alpha^2, phi) plane and their CSV encoding.

#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <vector>

#include "qrestore/restoration_protocol.hpp"

namespace qrestore {

enum class SweepMode : std::uint8_t { exact, analytic, mixed, mc, baseline };

[[nodiscard]] inline std::optional<SweepMode> parse_sweep_mode(std::string_view s) {
    if (s == "exact") return SweepMode::exact;
    if (s == "analytic") return SweepMode::analytic;
    if (s == "mixed") return SweepMode::mixed;
    if (s == "mc") return SweepMode::mc;
    if (s == "baseline") return SweepMode::baseline;
    return std::nullopt;
}

struct SweepConfig {
    std::size_t grid_alpha = 201;
    std::size_t grid_phi = 201;
    double p_bit = 0.0;
    double p_ph = 0.0;
    SweepMode mode = SweepMode::exact;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    std::string out_path = "-";
    PauliAssignment rule = PauliAssignment::outcome_comparison;

    /// Empty if valid, else a description of the first problem found.
    [[nodiscard]] std::string validate() const {
        if (grid_alpha < 2) return "grid-alpha must be >= 2";
        if (grid_phi < 1) return "grid-phi must be >= 1";
        if (!(p_bit >= 0.0 && p_bit <= 1.0)) return "pbit must lie in [0, 1]";
        if (!(p_ph >= 0.0 && p_ph <= 1.0)) return "pph must lie in [0, 1]";
        if (mode == SweepMode::mc && trials < 1) return "trials must be >= 1";
        return {};
    }
};

/**
 * One grid point. `f_exact` holds the value of the evaluator selected by the
 * sweep mode: the 64-branch enumeration for exact and mc, the I/2-input
 * variant for mixed, the closed form for analytic and the direct-measurement
 * protocol for baseline. `f_analytic` is always the closed form.
 */
struct SweepRecord {
    double alpha2 = 0.0;
    double phi = 0.0;
    double f_exact = 0.0;
    double f_analytic = 0.0;
    std::optional<double> f_mc;
    std::optional<double> mc_std_err;
};

struct SweepResult {
    std::vector<SweepRecord> records;  // alpha index major, phi minor
    double average = 0.0;
};

[[nodiscard]] inline SweepRecord evaluate_point(const SweepConfig &cfg,
                                                std::size_t i, std::size_t j) {
    SweepRecord r;
    r.alpha2 = grid_alpha2(i, cfg.grid_alpha);
    r.phi = grid_phi(j, cfg.grid_phi);
    const PureQubit psi = make_pure(r.alpha2, r.phi);
    r.f_analytic = analytic_fidelity(r.alpha2, r.phi);
    switch (cfg.mode) {
    case SweepMode::exact:
        r.f_exact = exact_fidelity(psi, cfg.p_bit, cfg.p_ph, cfg.rule);
        break;
    case SweepMode::analytic:
        r.f_exact = r.f_analytic;
        break;
    case SweepMode::mixed:
        r.f_exact = mixed_input_fidelity(psi, cfg.rule);
        break;
    case SweepMode::baseline:
        r.f_exact = baseline_direct_fidelity(psi);
        break;
    case SweepMode::mc: {
        r.f_exact = exact_fidelity(psi, cfg.p_bit, cfg.p_ph, cfg.rule);
        Rng rng(derive_seed(cfg.seed, i, j));
        const MonteCarloSummary s = monte_carlo_fidelity(
            psi, cfg.p_bit, cfg.p_ph, cfg.trials, rng, cfg.rule);
        r.f_mc = s.mean;
        r.mc_std_err = s.std_err;
        break;
    }
    }
    return r;
}

/**
 * Evaluates every grid point, splitting alpha rows across `threads`
 * workers. Output order and values do not depend on the thread count.
 */
[[nodiscard]] inline SweepResult run_sweep(const SweepConfig &cfg,
                                           unsigned threads = 0) {
    if (const std::string err = cfg.validate(); !err.empty()) {
        throw DomainError("run_sweep: " + err);
    }
    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(
        std::min<std::size_t>(threads, cfg.grid_alpha));

    SweepResult out;
    out.records.resize(cfg.grid_alpha * cfg.grid_phi);
    auto work = [&](std::size_t first_row) {
        for (std::size_t i = first_row; i < cfg.grid_alpha; i += threads) {
            for (std::size_t j = 0; j < cfg.grid_phi; ++j) {
                out.records[i * cfg.grid_phi + j] = evaluate_point(cfg, i, j);
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(work, t);
        }
    }

    std::vector<double> column(out.records.size());
    std::transform(out.records.begin(), out.records.end(), column.begin(),
                   [&](const SweepRecord &r) {
                       return cfg.mode == SweepMode::mc ? *r.f_mc : r.f_exact;
                   });
    out.average = grid_average(column, cfg.grid_alpha, cfg.grid_phi);
    return out;
}

/// 12 significant digits, shortest form, always '.' as decimal separator.
[[nodiscard]] inline std::string format_number(double x) {
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 12);
    if (res.ec != std::errc{}) {
        throw InternalError("format_number: to_chars failed");
    }
    return {buf, res.ptr};
}

inline void write_sweep_csv(std::ostream &os, const SweepResult &result,
                            SweepMode mode) {
    const bool with_mc = mode == SweepMode::mc;
    os << "alpha2,phi,f_exact,f_analytic";
    if (with_mc) {
        os << ",f_mc,mc_stderr";
    }
    os << '\n';
    for (const SweepRecord &r : result.records) {
        os << format_number(r.alpha2) << ',' << format_number(r.phi) << ','
           << format_number(r.f_exact) << ',' << format_number(r.f_analytic);
        if (with_mc) {
            os << ',' << format_number(r.f_mc.value_or(0.0)) << ','
               << format_number(r.mc_std_err.value_or(0.0));
        }
        os << '\n';
    }
    os << "# average=" << format_number(result.average) << '\n';
}

} // namespace qrestore
