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

// Command-line front end: `sweep`, `verify` and `mc`.
//
// Exit codes: 0 success, 1 verification or statistical failure, 2 usage or
// I/O error.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qrestore.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

int cmd_sweep(qrestore::SweepConfig cfg, const std::string &mode,
              unsigned threads) {
    const auto parsed = qrestore::parse_sweep_mode(mode);
    if (!parsed) {
        std::cerr << "sweep: unknown mode '" << mode << "'\n";
        return kExitUsage;
    }
    cfg.mode = *parsed;
    if (const std::string err = cfg.validate(); !err.empty()) {
        std::cerr << "sweep: " << err << '\n';
        return kExitUsage;
    }

    std::ofstream file;
    std::ostream *os = &std::cout;
    if (cfg.out_path != "-") {
        file.open(cfg.out_path, std::ios::binary | std::ios::trunc);
        if (!file) {
            std::cerr << "sweep: cannot open '" << cfg.out_path
                      << "' for writing\n";
            return kExitUsage;
        }
        os = &file;
    }

    const qrestore::SweepResult result = qrestore::run_sweep(cfg, threads);
    qrestore::write_sweep_csv(*os, result, cfg.mode);
    os->flush();
    if (!*os) {
        std::cerr << "sweep: write to '" << cfg.out_path << "' failed\n";
        return kExitUsage;
    }
    return kExitOk;
}

std::string sci(double x) {
    std::ostringstream ss;
    ss << std::scientific << std::setprecision(3) << x;
    return ss.str();
}

int cmd_verify(const qrestore::VerifyOptions &opt) {
    if (opt.tol && !(*opt.tol > 0.0)) {
        std::cerr << "verify: --tol must be > 0\n";
        return kExitUsage;
    }
    const qrestore::VerifyReport report = qrestore::run_verification(opt);
    std::size_t failed = 0;
    for (const auto &e : report.entries) {
        std::cout << (e.pass ? "PASS " : "FAIL ") << std::left
                  << std::setw(52) << e.name << " dev=" << sci(e.deviation)
                  << (e.statistical ? " sigma" : "")
                  << " tol=" << sci(e.tolerance) << '\n';
        failed += e.pass ? 0 : 1;
    }
    std::cout << (report.passed() ? "verify: all " : "verify: ")
              << (report.passed() ? std::to_string(report.entries.size()) +
                                        " checks passed"
                                  : std::to_string(failed) + " of " +
                                        std::to_string(report.entries.size()) +
                                        " checks failed")
              << '\n';
    return report.passed() ? kExitOk : kExitFail;
}

int cmd_mc(double alpha2, double phi, double p_bit, double p_ph,
           std::size_t trials, std::uint64_t seed) {
    if (!(alpha2 >= 0.0 && alpha2 <= 1.0) || !(p_bit >= 0.0 && p_bit <= 1.0) ||
        !(p_ph >= 0.0 && p_ph <= 1.0) || !std::isfinite(phi) || trials < 1) {
        std::cerr << "mc: alpha2, pbit, pph must lie in [0, 1] and trials >= 1\n";
        return kExitUsage;
    }
    const qrestore::PureQubit psi = qrestore::make_pure(alpha2, phi);
    qrestore::Rng rng(qrestore::mix64(seed));
    const auto mc =
        qrestore::monte_carlo_fidelity(psi, p_bit, p_ph, trials, rng);
    const double exact = qrestore::exact_fidelity(psi, p_bit, p_ph);
    const double diff = mc.mean - exact;
    double z = 0.0;
    if (mc.std_err > 0.0) {
        z = diff / mc.std_err;
    } else if (std::abs(diff) > 1e-12) {
        z = std::copysign(HUGE_VAL, diff);
    }
    using qrestore::format_number;
    std::cout << "alpha2=" << format_number(alpha2)
              << " phi=" << format_number(phi)
              << " pbit=" << format_number(p_bit)
              << " pph=" << format_number(p_ph) << " trials=" << trials
              << " seed=" << seed << '\n'
              << "mean=" << format_number(mc.mean) << '\n'
              << "stderr=" << format_number(mc.std_err) << '\n'
              << "exact=" << format_number(exact) << '\n'
              << "z=" << format_number(z) << '\n';
    const bool ok = std::abs(z) <= 4.0;
    std::cout << (ok ? "PASS" : "FAIL") << " |z| <= 4\n";
    return ok ? kExitOk : kExitFail;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Cloning-based quantum state restoration: sweeps, "
                 "invariant verification and Monte Carlo runs"};
    app.require_subcommand(1);

    qrestore::SweepConfig sweep_cfg;
    std::string mode = "exact";
    unsigned threads = 0;
    bool sweep_swapped = false;
    auto *sweep = app.add_subcommand("sweep", "Evaluate fidelity over the "
                                              "(alpha^2, phi) grid, write CSV");
    sweep->add_option("--grid-alpha", sweep_cfg.grid_alpha,
                      "alpha^2 grid points on [0, 1]")
        ->capture_default_str();
    sweep->add_option("--grid-phi", sweep_cfg.grid_phi,
                      "phi grid points on [0, 2pi)")
        ->capture_default_str();
    sweep->add_option("--pbit", sweep_cfg.p_bit, "bit-flip probability")
        ->capture_default_str();
    sweep->add_option("--pph", sweep_cfg.p_ph, "phase-flip probability")
        ->capture_default_str();
    sweep->add_option("--mode", mode, "exact|analytic|mixed|mc|baseline")
        ->capture_default_str();
    sweep->add_option("--trials", sweep_cfg.trials,
                      "trajectories per grid point (mc mode)")
        ->capture_default_str();
    sweep->add_option("--seed", sweep_cfg.seed, "base random seed")
        ->capture_default_str();
    sweep->add_option("--out", sweep_cfg.out_path, "output file, - for stdout")
        ->capture_default_str();
    sweep->add_option("--threads", threads, "worker threads, 0 = all cores")
        ->capture_default_str();
    sweep->add_flag("--swapped-pauli", sweep_swapped)->group("");

    qrestore::VerifyOptions verify_opt;
    double tol = 0.0;
    bool verify_swapped = false;
    auto *verify = app.add_subcommand("verify", "Run the invariant suite");
    auto *tol_opt = verify->add_option(
        "--tol", tol, "override every deterministic tolerance (must be > 0)");
    verify->add_option("--seed", verify_opt.seed, "random seed")
        ->capture_default_str();
    verify->add_option("--mc-trials", verify_opt.mc_trials,
                       "trajectories per Monte Carlo spot check")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    verify->add_flag("--swapped-pauli", verify_swapped)->group("");

    double alpha2 = 1.0;
    double phi = 0.0;
    double p_bit = 0.0;
    double p_ph = 0.0;
    std::size_t trials = 100000;
    std::uint64_t seed = 0;
    auto *mc = app.add_subcommand("mc", "Monte Carlo trajectories at one state");
    mc->add_option("--alpha2", alpha2, "alpha^2 of the input state")
        ->capture_default_str();
    mc->add_option("--phi", phi, "relative phase (radians)")
        ->capture_default_str();
    mc->add_option("--pbit", p_bit, "bit-flip probability")
        ->capture_default_str();
    mc->add_option("--pph", p_ph, "phase-flip probability")
        ->capture_default_str();
    mc->add_option("--trials", trials, "number of trajectories")
        ->capture_default_str();
    mc->add_option("--seed", seed, "random seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        (void)app.exit(e);
        return kExitUsage;
    }

    try {
        if (*sweep) {
            if (sweep_swapped) {
                sweep_cfg.rule = qrestore::PauliAssignment::swapped;
            }
            return cmd_sweep(sweep_cfg, mode, threads);
        }
        if (*verify) {
            if (*tol_opt) {
                verify_opt.tol = tol;
            }
            if (verify_swapped) {
                verify_opt.rule = qrestore::PauliAssignment::swapped;
            }
            return cmd_verify(verify_opt);
        }
        if (*mc) {
            return cmd_mc(alpha2, phi, p_bit, p_ph, trials, seed);
        }
    } catch (const qrestore::DomainError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitUsage;
}
