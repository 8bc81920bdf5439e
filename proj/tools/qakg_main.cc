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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qakg/adversary.h"
#include "qakg/approx_psqa.h"
#include "qakg/classical_wc.h"
#include "qakg/codes.h"
#include "qakg/io.h"
#include "qakg/parallel.h"
#include "qakg/protocols.h"
#include "qakg/qmath.h"
#include "qakg/ucharness.h"

using nlohmann::json;
using namespace qakg;

namespace {

constexpr const char *kVersion = "1.0.0";
constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;

/// Raised for bad option combinations; maps to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string out;
    bool with_timing = false;
};

struct FamilyOpts {
    std::size_t m = 1;
    std::size_t s = 2;
    std::string family_path;
    std::optional<std::uint64_t> seed;
    std::optional<double> target_eps;
    std::size_t budget = 20;
};

struct SuiteOpts {
    std::string attack;  // empty: whole standard suite
    std::string suite = "standard";
};

void add_common(CLI::App *cmd, Common &c) {
    cmd->add_option("--out", c.out, "Write the JSON report to this file instead of stdout");
    cmd->add_flag("--with-timing", c.with_timing, "Include wall-clock seconds in the report");
}

void add_family(CLI::App *cmd, FamilyOpts &f) {
    cmd->add_option("--m", f.m, "Message qubits");
    cmd->add_option("--s", f.s, "Syndrome qubits");
    cmd->add_option("--family", f.family_path, "Load a saved code family instead of searching");
    cmd->add_option("--seed", f.seed, "Seed for the code search");
    cmd->add_option("--target-eps", f.target_eps, "Search target (default: the formula value)");
    cmd->add_option("--budget", f.budget, "Restarts for the code search");
}

void add_suite(CLI::App *cmd, SuiteOpts &o) {
    cmd->add_option("--suite", o.suite, "Attack suite")->check(CLI::IsMember({"standard"}));
    cmd->add_option("--attack", o.attack, "Run only suite entries with this label or kind name");
}

struct LoadedFamily {
    PtcFamily family;
    bool consistent = true;  // stored epsilon equals the recomputed one
    std::optional<double> stored_epsilon;
};

LoadedFamily obtain_family(const FamilyOpts &f, std::size_t max_n) {
    LoadedFamily out;
    if (!f.family_path.empty()) {
        double stored = 0;
        out.family = family_from_json(load_json(f.family_path), &stored);
        out.stored_epsilon = stored;
        out.consistent = std::abs(stored - out.family.epsilon_verified) <= 1e-12;
    } else {
        if (!f.seed) {
            throw ConfigError("--seed is required when no --family is given");
        }
        if (f.m < 1 || f.s < 1) {
            throw ConfigError("--m and --s must be at least 1");
        }
        if (f.m + f.s > max_n) {
            throw ConfigError("m + s exceeds the limit of " + std::to_string(max_n) + " qubits for this command");
        }
        double target = f.target_eps ? *f.target_eps : ptc_epsilon_formula(f.m, f.s);
        out.family = search_ptc(f.m, f.s, target, f.budget, *f.seed);
    }
    if (out.family.n() > max_n) {
        throw ConfigError("code length exceeds the limit of " + std::to_string(max_n) + " qubits for this command");
    }
    return out;
}

json family_config(const FamilyOpts &f) {
    json j{{"m", f.m}, {"s", f.s}, {"budget", f.budget}};
    if (!f.family_path.empty()) {
        j["family"] = f.family_path;
    }
    if (f.seed) {
        j["seed"] = *f.seed;
    }
    if (f.target_eps) {
        j["target_eps"] = *f.target_eps;
    }
    return j;
}

std::vector<AttackDescriptor> select_attacks(const PtcFamily &family, const SuiteOpts &o) {
    auto suite = standard_suite(family.m, family.s);
    if (o.attack.empty()) {
        return suite;
    }
    std::vector<AttackDescriptor> out;
    for (const auto &d : suite) {
        if (d.label() == o.attack || attack_kind_name(d.kind) == o.attack) {
            out.push_back(d);
        }
    }
    if (out.empty()) {
        throw ConfigError("no suite attack matches '" + o.attack + "'");
    }
    return out;
}

std::vector<std::string> split(const std::string &s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        if (comma == std::string::npos) {
            comma = s.size();
        }
        if (comma > start) {
            out.push_back(s.substr(start, comma - start));
        }
        start = comma + 1;
    }
    return out;
}

json envelope(const std::string &command, json config) {
    return json{{"schema", kReportSchema}, {"tool", "qakg"}, {"version", kVersion}, {"command", command},
                {"config", std::move(config)}};
}

int emit(json report, const Common &c, double seconds) {
    if (c.with_timing) {
        report["wall_clock_seconds"] = seconds;
    }
    std::fprintf(stderr, "%s: %.3f s, pass=%s\n", report["command"].get<std::string>().c_str(), seconds,
                 report["pass"].get<bool>() ? "true" : "false");
    if (c.out.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        save_json(c.out, report);
    }
    return report["pass"].get<bool>() ? kExitPass : kExitViolation;
}

// ---------------------------------------------------------------- ptc

json cmd_ptc(const FamilyOpts &f, const std::string &save_path) {
    LoadedFamily lf = obtain_family(f, 6);
    const PtcFamily &fam = lf.family;
    double formula = ptc_epsilon_formula(fam.m, fam.s);
    auto [qubits, key_bits] = cost_formulas(fam.m, fam.s);
    auto counts = undetected_counts(fam.codes);
    json j = envelope("ptc", family_config(f));
    j["family"] = family_to_json(fam);
    j["epsilon_verified"] = fam.epsilon_verified;
    j["epsilon_formula"] = formula;
    j["met_target"] = fam.met_target;
    j["undetected_max"] = counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
    j["costs"] = {{"qubits_sent", qubits}, {"key_bits", key_bits}};
    if (lf.stored_epsilon) {
        j["epsilon_stored"] = *lf.stored_epsilon;
    }
    bool ok = lf.consistent && (lf.stored_epsilon || fam.met_target);
    j["pass"] = ok;
    if (!save_path.empty()) {
        save_json(save_path, family_to_json(fam));
    }
    std::fprintf(stderr, "m=%zu s=%zu K=%zu epsilon_verified=%.6f formula=%.6f\n", fam.m, fam.s, fam.size(),
                 fam.epsilon_verified, formula);
    return j;
}

// ---------------------------------------------------------------- uc

json cmd_uc(const FamilyOpts &f, const SuiteOpts &so, const std::string &inputs_arg) {
    LoadedFamily lf = obtain_family(f, 4);
    const PtcFamily &fam = lf.family;
    auto inputs = split(inputs_arg);
    if (inputs.empty()) {
        throw ConfigError("no inputs given");
    }
    std::vector<StateVector> psis;
    for (const auto &in : inputs) {
        psis.push_back(purified_input(in, fam.m));
    }
    json config = family_config(f);
    config["suite"] = so.suite;
    config["attack"] = so.attack;
    config["inputs"] = inputs;
    json j = envelope("uc", config);
    j["family"] = family_to_json(fam);
    bool all = lf.consistent;
    json rows = json::array();
    for (const auto &d : select_attacks(fam, so)) {
        Attack a = build_attack(d, fam.m, fam.n());
        json row{{"attack", attack_to_json(d)}};
        double step2 = trace_distance(ebit_ptc(fam, a), ebit_ptp(fam, a));
        row["step2_distance"] = step2;
        all = all && step2 < kPipelineTol;
        AdvantageReport eb = ebit_report(analyze_ebit(fam, a), d.label());
        all = all && eb.pass;
        row["ebit"] = report_to_json(eb);
        json qa = json::array();
        for (std::size_t i = 0; i < psis.size(); i++) {
            double step1 = trace_distance(run_qa_kg(psis[i], fam, a), run_tqa_kg(psis[i], fam, a));
            AdvantageReport r = qa_kg_advantage(fam, psis[i], a, inputs[i]);
            r.details["step1_distance"] = step1;
            r.pass = r.pass && step1 < kPipelineTol;
            all = all && r.pass;
            qa.push_back(report_to_json(r));
        }
        row["qa_kg"] = qa;
        rows.push_back(row);
    }
    j["results"] = rows;
    j["bound"] = bound_step3(fam.epsilon_verified);
    j["pass"] = all;
    return j;
}

// ---------------------------------------------------------------- ptp-soundness

json cmd_ptp(const FamilyOpts &f) {
    LoadedFamily lf = obtain_family(f, 4);
    const PtcFamily &fam = lf.family;
    double exact = ptp_soundness_exact(fam);
    double completeness = ptp_completeness_residual(fam);
    json j = envelope("ptp-soundness", family_config(f));
    j["family"] = family_to_json(fam);
    j["epsilon_verified"] = fam.epsilon_verified;
    j["soundness_exact"] = exact;
    j["completeness_residual"] = completeness;
    j["pass"] = lf.consistent && exact <= fam.epsilon_verified + kPipelineTol && completeness < 1e-10;
    return j;
}

// ---------------------------------------------------------------- wc

json cmd_wc(unsigned field_bits, unsigned msg_len, bool leak_demo, bool bruteforce) {
    if (field_bits < 1 || field_bits > 3) {
        throw ConfigError("--field-bits must be 1, 2 or 3");
    }
    if (msg_len < 1) {
        throw ConfigError("--msg-len must be at least 1");
    }
    HashFamily fam = poly_hash_family(field_bits, msg_len);
    json j = envelope("wc", json{{"field_bits", field_bits}, {"msg_len", msg_len}, {"leak_demo", leak_demo},
                                 {"bruteforce", bruteforce}});
    j["family"] = {{"num_keys", fam.num_keys},
                   {"num_messages", fam.num_messages},
                   {"num_tags", fam.num_tags},
                   {"eps_asu2", fam.eps_asu2},
                   {"eps_asu2_bruteforce", verify_asu2(fam)},
                   {"single_point_deviation", single_point_deviation(fam)}};
    WcReport worst = wc_worst_case(fam);
    j["worst_case"] = wc_report_to_json(worst);
    bool pass_full = worst.advantage <= fam.eps_asu2 + kPipelineTol;
    bool pass_tv = worst.tv_distance <= fam.eps_asu2 + kPipelineTol;
    if (bruteforce) {
        j["worst_case_bruteforce"] = wc_report_to_json(wc_worst_case_bruteforce(fam));
    }
    double completeness_gap = 0;
    json honest = json::array();
    for (std::uint32_t x = 0; x < fam.num_messages; x++) {
        WcReport r = wc_kg_advantage(fam, Substitution::identity(fam), x);
        completeness_gap = std::max({completeness_gap, std::abs(1 - r.accept_real), r.advantage});
        honest.push_back(wc_report_to_json(r));
    }
    j["honest"] = honest;
    j["completeness_gap"] = completeness_gap;
    j["pass_full_norm"] = pass_full;
    j["pass_tv"] = pass_tv;
    bool ok = pass_full && completeness_gap < kPipelineTol;
    if (leak_demo) {
        LeakReport leak = key_leak_demo(fam);
        j["leak_demo"] = leak_report_to_json(leak);
        j["leak_honest"] = leak_report_to_json(key_leak_honest(fam));
        ok = ok && leak.mutual_information > 0;
    }
    j["pass"] = ok;
    return j;
}

// ---------------------------------------------------------------- psqa

json cmd_psqa(const FamilyOpts &f, const SuiteOpts &so, std::size_t k, std::optional<std::uint64_t> cipher_seed,
              bool pauli, std::string message) {
    LoadedFamily lf = obtain_family(f, 4);
    const PtcFamily &fam = lf.family;
    if (fam.m > 2) {
        throw ConfigError("psqa supports m <= 2");
    }
    if (!pauli && !cipher_seed) {
        throw ConfigError("--seed is required for a sampled cipher");
    }
    ApproxCipher cipher = pauli ? pauli_cipher(fam.m) : sample_cipher(fam.m, k, *cipher_seed);
    if (message.empty()) {
        message = "random:" + std::to_string(cipher_seed.value_or(0));
    }
    Vector msg = psqa_message(message, fam.m);
    json config = family_config(f);
    config["K"] = cipher.size();
    config["pauli_cipher"] = pauli;
    config["message"] = message;
    config["suite"] = so.suite;
    config["attack"] = so.attack;
    if (cipher_seed) {
        config["cipher_seed"] = *cipher_seed;
    }
    json j = envelope("psqa", config);
    j["cipher"] = cipher_to_json(cipher);
    RspMeasurement rsp = rsp_povm(cipher, msg);
    j["pr_f"] = rsp.failure_probability;
    j["povm_residual"] = rsp.povm.completeness_residual();
    bool all = lf.consistent;
    json rows = json::array();
    for (const auto &d : select_attacks(fam, so)) {
        Attack a = build_attack(d, fam.m, fam.n());
        AdvantageReport r = psqa_advantage(cipher, msg, fam, a, message);
        r.pass = r.pass && r.details.at("branch_deviation") < kPipelineTol;
        all = all && r.pass;
        rows.push_back(report_to_json(r));
    }
    j["results"] = rows;
    j["pass"] = all;
    return j;
}

// ---------------------------------------------------------------- lemmas

json cmd_lemmas(std::size_t instances, std::uint64_t seed) {
    if (instances == 0) {
        throw ConfigError("--instances must be positive");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    double worst1 = 0;
    double worst2 = 0;
    for (std::size_t i = 0; i < instances; i++) {
        worst1 = std::max(worst1, verify_lemma1(random_matrix(dim(rng), dim(rng), rng)));
        std::size_t d = dim(rng);
        std::size_t d2 = dim(rng);
        Matrix u = random_unitary(d * d2, rng);
        std::uniform_int_distribution<std::size_t> pick(0, d - 1);
        worst2 = std::max(worst2, verify_lemma2(u, d, d2, pick(rng)));
    }
    json j = envelope("lemmas", json{{"instances", instances}, {"seed", seed}});
    j["lemma1_max_residual"] = worst1;
    j["lemma2_max_residual"] = worst2;
    j["pass"] = worst1 < kExactTol && worst2 < kExactTol;
    return j;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Simulator for quantum authentication with key recycling"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    Common common;

    FamilyOpts ptc_f;
    std::string save_path;
    auto *ptc = app.add_subcommand("ptc", "Search or load a purity test code family and verify it");
    add_family(ptc, ptc_f);
    ptc->add_option("--save", save_path, "Write the family file here");
    add_common(ptc, common);

    FamilyOpts uc_f;
    SuiteOpts uc_s;
    std::string uc_inputs = "entangled,random:7";
    auto *uc = app.add_subcommand("uc", "Composable-security checks over an attack suite");
    add_family(uc, uc_f);
    add_suite(uc, uc_s);
    uc->add_option("--inputs", uc_inputs, "Comma-separated purified inputs (basis:b, plus, entangled, random:seed)");
    add_common(uc, common);

    FamilyOpts ptp_f;
    auto *ptp = app.add_subcommand("ptp-soundness", "Exact worst-case soundness of the purity test protocol");
    add_family(ptp, ptp_f);
    add_common(ptp, common);

    unsigned field_bits = 2;
    unsigned msg_len = 1;
    bool leak = false;
    bool brute = false;
    auto *wc = app.add_subcommand("wc", "Wegman-Carter authentication with key recycling");
    wc->add_option("--field-bits", field_bits, "Field GF(2^w), w <= 3");
    wc->add_option("--msg-len", msg_len, "Message length in field elements");
    wc->add_flag("--leak-demo", leak, "Run the guess-and-tamper key leakage exhibit");
    wc->add_flag("--bruteforce", brute, "Also enumerate every deterministic substitution");
    add_common(wc, common);

    FamilyOpts ps_f;
    SuiteOpts ps_s;
    std::size_t ps_k = 16;
    std::optional<std::uint64_t> ps_seed;
    bool ps_pauli = false;
    std::string ps_message;
    auto *psqa = app.add_subcommand("psqa", "Approximate-encryption variant on pure messages");
    psqa->add_option("--m", ps_f.m, "Message qubits");
    psqa->add_option("--s", ps_f.s, "Syndrome qubits");
    psqa->add_option("--family", ps_f.family_path, "Load a saved code family");
    psqa->add_option("--seed", ps_seed, "Seed for the cipher and the code search");
    psqa->add_option("--budget", ps_f.budget, "Restarts for the code search");
    psqa->add_option("--K", ps_k, "Number of cipher unitaries");
    psqa->add_flag("--pauli", ps_pauli, "Use the exact Pauli cipher");
    psqa->add_option("--message", ps_message, "basis:b, plus or random:seed (default random:<seed>)");
    add_suite(psqa, ps_s);
    add_common(psqa, common);

    std::size_t instances = 100;
    std::uint64_t lemma_seed = 1;
    auto *lemmas = app.add_subcommand("lemmas", "Transpose-trick identity residuals on random instances");
    lemmas->add_option("--instances", instances, "Random instances");
    lemmas->add_option("--seed", lemma_seed, "Seed");
    add_common(lemmas, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    auto t0 = std::chrono::steady_clock::now();
    try {
        json report;
        if (*ptc) {
            report = cmd_ptc(ptc_f, save_path);
        } else if (*uc) {
            report = cmd_uc(uc_f, uc_s, uc_inputs);
        } else if (*ptp) {
            report = cmd_ptp(ptp_f);
        } else if (*wc) {
            report = cmd_wc(field_bits, msg_len, leak, brute);
        } else if (*psqa) {
            ps_f.seed = ps_seed.value_or(1);
            report = cmd_psqa(ps_f, ps_s, ps_k, ps_seed, ps_pauli, ps_message);
        } else {
            report = cmd_lemmas(instances, lemma_seed);
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return emit(std::move(report), common, secs);
    } catch (const ConfigError &e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const SchemaError &e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument &e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
