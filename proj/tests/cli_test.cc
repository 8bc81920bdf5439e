// Copyright 2026 The qakg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "gtest/gtest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct CliRun {
    int code;
    std::string out;
};

CliRun run(const std::string &args) {
    std::string cmd = std::string(QAKG_CLI_PATH) + " " + args + " 2>/dev/null";
    std::FILE *p = popen(cmd.c_str(), "r");
    CliRun r{-1, ""};
    if (!p) {
        return r;
    }
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) {
        r.out.append(buf, n);
    }
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string tmp(const std::string &name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST(cli, ptc_search_and_reload) {
    std::string path = tmp("qakg_cli_family.json");
    CliRun a = run("ptc --m 1 --s 3 --target-eps 0.2963 --seed 1 --save " + path);
    ASSERT_EQ(a.code, 0);
    json j = json::parse(a.out);
    EXPECT_EQ(j["schema"], "qakg-report/1");
    EXPECT_LE(j["epsilon_verified"].get<double>(), 0.2963);
    EXPECT_EQ(j["costs"]["qubits_sent"], 4);
    CliRun b = run("ptc --family " + path);
    ASSERT_EQ(b.code, 0);
    EXPECT_EQ(json::parse(b.out)["epsilon_verified"], j["epsilon_verified"]);
    std::filesystem::remove(path);
}

TEST(cli, tampered_family_epsilon_is_violation) {
    std::string path = tmp("qakg_cli_tampered.json");
    ASSERT_EQ(run("ptc --m 1 --s 2 --seed 1 --save " + path).code, 0);
    json f;
    std::ifstream(path) >> f;
    f["epsilon_verified"] = 0.01;
    std::ofstream(path) << f.dump();
    EXPECT_EQ(run("ptc --family " + path).code, 1);
    std::filesystem::remove(path);
}

TEST(cli, malformed_family_exit_code) {
    std::string path = tmp("qakg_cli_bad.json");
    std::ofstream(path) << "{\"schema\": \"qakg-family/1\", \"m\": 1}";
    EXPECT_EQ(run("ptc --family " + path).code, 2);
    EXPECT_EQ(run("uc --family " + path).code, 2);
    std::filesystem::remove(path);
}

TEST(cli, configuration_errors) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("uc --m 1 --s 2").code, 2);           // no seed, no family
    EXPECT_EQ(run("uc --m 2 --s 3 --seed 1").code, 2);  // too many qubits
    EXPECT_EQ(run("wc --field-bits 5").code, 2);
    EXPECT_EQ(run("uc --m 1 --s 1 --seed 1 --attack nothing").code, 2);
    EXPECT_EQ(run("ptc --m 1 --s 1 --seed x").code, 2);
}

TEST(cli, uc_identity_attack) {
    CliRun r = run("uc --m 1 --s 2 --seed 1 --attack identity");
    ASSERT_EQ(r.code, 0);
    json j = json::parse(r.out);
    ASSERT_EQ(j["results"].size(), 1u);
    for (const auto &q : j["results"][0]["qa_kg"]) {
        EXPECT_LT(q["advantage"].get<double>(), 1e-9);
    }
}

TEST(cli, uc_report_is_deterministic) {
    std::string args = "uc --m 1 --s 1 --seed 1";
    CliRun a = run(args);
    CliRun b = run(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    CliRun c = run("uc --m 1 --s 1 --seed 1 --with-timing");
    EXPECT_TRUE(json::parse(c.out).contains("wall_clock_seconds"));
    EXPECT_FALSE(json::parse(a.out).contains("wall_clock_seconds"));
}

TEST(cli, uc_full_suite_passes) {
    CliRun r = run("uc --m 1 --s 2 --seed 1 --suite standard");
    ASSERT_EQ(r.code, 0);
    json j = json::parse(r.out);
    EXPECT_EQ(j["results"].size(), 23u);  // 14 + 3n with n = 3
    EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(cli, ptp_soundness) {
    CliRun r = run("ptp-soundness --m 1 --s 2 --seed 1");
    ASSERT_EQ(r.code, 0);
    json j = json::parse(r.out);
    EXPECT_LE(j["soundness_exact"].get<double>(), j["epsilon_verified"].get<double>() + 1e-9);
}

TEST(cli, wc_reports_full_norm_violation) {
    // full 1-norm advantage is 2 eps_asu2, so the full-norm check fails
    CliRun r = run("wc --field-bits 2 --msg-len 1");
    EXPECT_EQ(r.code, 1);
    json j = json::parse(r.out);
    EXPECT_FALSE(j["pass_full_norm"].get<bool>());
    EXPECT_TRUE(j["pass_tv"].get<bool>());
    EXPECT_NEAR(j["worst_case"]["advantage"].get<double>(), 0.5, 1e-12);
}

TEST(cli, wc_leak_demo_positive) {
    CliRun r = run("wc --field-bits 2 --msg-len 1 --leak-demo");
    json j = json::parse(r.out);
    EXPECT_GT(j["leak_demo"]["mutual_information"].get<double>(), 0.0);
    EXPECT_NEAR(j["leak_honest"]["mutual_information"].get<double>(), 0.0, 1e-12);
}

TEST(cli, psqa_sampled_cipher) {
    CliRun r = run("psqa --m 1 --K 16 --seed 3 --s 1");
    ASSERT_EQ(r.code, 0);
    json j = json::parse(r.out);
    EXPECT_EQ(j["cipher"]["K"], 16);
    EXPECT_GT(j["cipher"]["delta_measured"].get<double>(), 0.0);
    for (const auto &row : j["results"]) {
        EXPECT_LE(row["advantage"].get<double>(), row["bound"].get<double>() + 1e-9);
    }
}

TEST(cli, lemmas) {
    CliRun r = run("lemmas --instances 100 --seed 1");
    ASSERT_EQ(r.code, 0);
    json j = json::parse(r.out);
    EXPECT_LT(j["lemma1_max_residual"].get<double>(), 1e-12);
    EXPECT_LT(j["lemma2_max_residual"].get<double>(), 1e-12);
}

TEST(cli, out_file) {
    std::string path = tmp("qakg_cli_out.json");
    ASSERT_EQ(run("lemmas --out " + path).code, 0);
    json j;
    std::ifstream(path) >> j;
    EXPECT_EQ(j["command"], "lemmas");
    std::filesystem::remove(path);
}
