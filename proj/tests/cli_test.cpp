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

// Runs the qrestore executable and checks exit codes and output bytes.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string &args) {
    const std::string cmd = std::string(QRESTORE_CLI) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE *p = popen(cmd.c_str(), "r");
    if (p == nullptr) {
        return r;
    }
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof(buf), p)) > 0) {
        r.out.append(buf, n);
    }
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::string> lines(const std::string &s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) {
        out.push_back(l);
    }
    return out;
}

double average_of(const std::string &csv) {
    const auto ls = lines(csv);
    const std::string key = "# average=";
    if (ls.empty() || ls.back().rfind(key, 0) != 0) {
        return NAN;
    }
    return std::stod(ls.back().substr(key.size()));
}

double field(const std::string &report, const std::string &key) {
    for (const auto &l : lines(report)) {
        if (l.rfind(key + "=", 0) == 0) {
            return std::stod(l.substr(key.size() + 1));
        }
    }
    return NAN;
}

std::vector<double> split_doubles(const std::string &row) {
    std::vector<double> v;
    std::istringstream is(row);
    for (std::string tok; std::getline(is, tok, ',');) {
        v.push_back(std::stod(tok));
    }
    return v;
}

TEST(CliSweep, TinyAnalyticGrid) {
    const RunResult r = run("sweep --grid-alpha 2 --grid-phi 2 --mode analytic --out -");
    ASSERT_EQ(r.code, 0);
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 6U);
    EXPECT_EQ(ls[0], "alpha2,phi,f_exact,f_analytic");
    for (std::size_t k = 1; k <= 4; ++k) {
        EXPECT_EQ(ls[k].substr(ls[k].rfind(',') + 1), "0.555555555556");
    }
}

TEST(CliSweep, ExactAverageIndependentOfNoise) {
    const RunResult r = run("sweep --grid-alpha 201 --grid-phi 201 --mode exact "
                            "--pbit 0.25 --pph 0.4");
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(average_of(r.out), 0.592593, 1e-3);
}

TEST(CliSweep, BaselineAverage) {
    const RunResult r = run("sweep --mode baseline --grid-alpha 201");
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(average_of(r.out), 0.666667, 1e-3);
}

TEST(CliSweep, ExactAndMixedColumnsAgree) {
    const RunResult ex = run("sweep --grid-alpha 31 --grid-phi 17 --mode exact --pbit 0.9");
    const RunResult mx = run("sweep --grid-alpha 31 --grid-phi 17 --mode mixed");
    ASSERT_EQ(ex.code, 0);
    ASSERT_EQ(mx.code, 0);
    const auto le = lines(ex.out);
    const auto lm = lines(mx.out);
    ASSERT_EQ(le.size(), lm.size());
    for (std::size_t k = 1; k + 1 < le.size(); ++k) {
        const auto a = split_doubles(le[k]);
        const auto b = split_doubles(lm[k]);
        ASSERT_EQ(a.size(), 4U);
        EXPECT_NEAR(a[2], b[2], 1e-10);
    }
}

TEST(CliSweep, FileOutputMatchesStdout) {
    const std::string path = std::string(QRESTORE_TMPDIR) + "/cli_sweep.csv";
    std::remove(path.c_str());
    const RunResult to_file =
        run("sweep --grid-alpha 5 --grid-phi 3 --mode mc --trials 50 --seed 9 --out " + path);
    ASSERT_EQ(to_file.code, 0);
    EXPECT_TRUE(to_file.out.empty());
    std::ifstream in(path, std::ios::binary);
    const std::string content((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
    const RunResult to_stdout =
        run("sweep --grid-alpha 5 --grid-phi 3 --mode mc --trials 50 --seed 9");
    EXPECT_EQ(content, to_stdout.out);
    EXPECT_EQ(lines(content)[0], "alpha2,phi,f_exact,f_analytic,f_mc,mc_stderr");
}

TEST(CliSweep, UsageErrors) {
    EXPECT_EQ(run("sweep --mode bogus").code, 2);
    EXPECT_EQ(run("sweep --pbit 1.5").code, 2);
    EXPECT_EQ(run("sweep --grid-alpha 1").code, 2);
    EXPECT_EQ(run("sweep --grid-alpha notanumber").code, 2);
    EXPECT_EQ(run("sweep --out /nonexistent-dir/x.csv --grid-alpha 2 --grid-phi 1").code, 2);
    EXPECT_EQ(run("sweep --no-such-flag").code, 2);
    EXPECT_EQ(run("").code, 2);
}

TEST(CliMc, ZeroStateNoiseless) {
    const RunResult r =
        run("mc --alpha2 1 --phi 0 --pbit 0 --pph 0 --trials 100000 --seed 1");
    ASSERT_EQ(r.code, 0) << r.out;
    const double mean = field(r.out, "mean");
    const double se = field(r.out, "stderr");
    EXPECT_NEAR(field(r.out, "exact"), 5.0 / 9.0, 1e-11);
    EXPECT_LE(std::abs(mean - 0.555556), 4 * se + 1e-6);
    EXPECT_LE(std::abs(field(r.out, "z")), 4.0);
}

TEST(CliMc, ExceptionalPoint) {
    const RunResult r = run("mc --alpha2 0.5 --phi 1.5707963 --trials 100000 --seed 7");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_LE(std::abs(field(r.out, "mean") - 0.5), 4 * field(r.out, "stderr") + 1e-6);
}

TEST(CliMc, SeededRunsAreByteIdentical) {
    const std::string args = "mc --alpha2 0.3 --phi 2 --pbit 0.2 --pph 0.6 --trials 20000 --seed 5";
    const RunResult a = run(args);
    const RunResult b = run(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, run("mc --alpha2 0.3 --phi 2 --pbit 0.2 --pph 0.6 --trials 20000 --seed 6").out);
}

TEST(CliMc, UsageErrors) {
    EXPECT_EQ(run("mc --alpha2 2").code, 2);
    EXPECT_EQ(run("mc --trials 0").code, 2);
    EXPECT_EQ(run("mc --pph -1").code, 2);
}

TEST(CliVerify, DefaultRunPasses) {
    const RunResult r = run("verify");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    EXPECT_NE(r.out.find("PASS protocol.symmetry_identities"), std::string::npos);
}

TEST(CliVerify, SwappedPauliNegativeControlFails) {
    const RunResult r = run("verify --swapped-pauli --mc-trials 2000");
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("FAIL protocol.symmetry_identities"), std::string::npos);
}

TEST(CliVerify, ToleranceBelowDoublePrecisionFails) {
    EXPECT_EQ(run("verify --tol 1e-30 --mc-trials 2000").code, 1);
    EXPECT_EQ(run("verify --tol 0").code, 2);
    EXPECT_EQ(run("verify --tol -1").code, 2);
}

} // namespace
