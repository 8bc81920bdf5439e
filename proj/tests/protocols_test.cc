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

#include "qakg/protocols.h"

#include <random>

#include "gtest/gtest.h"

using namespace qakg;

namespace {

PtcFamily family_for(std::size_t s) { return search_ptc(1, s, ptc_epsilon_formula(1, s), 20, 1); }

Attack pauli_attack(const PauliString &p, std::size_t m) {
    AttackDescriptor d;
    d.kind = AttackKind::FixedPauli;
    d.pauli = p;
    return build_attack(d, m, p.n);
}

}  // namespace

TEST(protocols, kd_ideal_uniform) {
    auto keys = kd_ideal(1, 2, 4);
    EXPECT_EQ(keys.size(), 4u * 4u * 4u);
    double total = 0;
    for (const auto &k : keys) {
        EXPECT_DOUBLE_EQ(k.probability, 1.0 / 64);
        total += k.probability;
    }
    EXPECT_NEAR(total, 1.0, 1e-14);
    EXPECT_THROW(kd_ideal(1, 1, 0), std::invalid_argument);
}

TEST(protocols, qenc_round_trip) {
    std::mt19937_64 rng(1);
    RegisterList regs = {Register{"R", 2}, Register{"M", 4}};
    DensityMatrix rho = random_density(regs, 3, rng);
    for (const auto &key : enumerate_paulis(2, true)) {
        DensityMatrix back = qenc_decrypt(qenc_encrypt(rho, key), key);
        EXPECT_LT((back.matrix() - rho.matrix()).norm(), 1e-12);
    }
    EXPECT_THROW(qenc_encrypt(rho, PauliString(1, 1, 0)), std::invalid_argument);
}

TEST(protocols, qenc_average_is_maximally_mixed_with_side_information) {
    std::mt19937_64 rng(2);
    for (std::size_t m = 1; m <= 2; m++) {
        std::size_t d = std::size_t{1} << m;
        RegisterList regs = {Register{"R", d}, Register{"M", d}};
        for (int i = 0; i < 20; i++) {
            DensityMatrix rho = random_state(regs, rng).to_density();
            Matrix avg = Matrix::Zero(d * d, d * d);
            auto keys = enumerate_paulis(m, true);
            for (const auto &key : keys) {
                avg += qenc_encrypt(rho, key).matrix();
            }
            avg /= static_cast<double>(keys.size());
            DensityMatrix expected = tensor(rho.partial_trace({"R"}), DensityMatrix::maximally_mixed({Register{"M", d}}));
            EXPECT_LT((avg - expected.matrix()).norm(), 1e-10);
        }
    }
}

TEST(protocols, bell_vectors_orthonormal) {
    for (std::size_t m = 1; m <= 2; m++) {
        std::size_t d = std::size_t{1} << m;
        Matrix basis(d * d, d * d);
        for (std::uint64_t z = 0; z < d; z++) {
            for (std::uint64_t x = 0; x < d; x++) {
                basis.col(x + d * z) = bell_vector(m, x, z);
            }
        }
        EXPECT_LT((basis.adjoint() * basis - identity(d * d)).norm(), 1e-12);
    }
}

TEST(protocols, teleportation_is_exact) {
    std::mt19937_64 rng(3);
    for (std::size_t m = 1; m <= 2; m++) {
        std::size_t d = std::size_t{1} << m;
        RegisterList regs = {Register{"R", 2}, Register{"M", d}};
        DensityMatrix rho = random_density(regs, 2, rng);
        auto outcomes = teleport(rho, max_entangled("A", "B", m).to_density(), m);
        ASSERT_EQ(outcomes.size(), d * d);
        for (const auto &o : outcomes) {
            EXPECT_NEAR(o.probability, 1.0 / static_cast<double>(d * d), 1e-12);
            DensityMatrix got = o.state.reordered({"R", "B"});
            EXPECT_LT((got.matrix() - rho.matrix()).norm(), 1e-12);
        }
    }
}

TEST(protocols, identity_attack_accepts_and_delivers) {
    PtcFamily fam = family_for(2);
    Attack id = build_attack(AttackDescriptor{}, 1, 3);
    StateVector psi = purified_input("random:5", 1);
    HybridState out = run_qa_kg(psi, fam, id);
    out.validate();
    EXPECT_NEAR(out.probability(kVerdict, kAcc), 1.0, 1e-12);
    MixedState target = MixedState::from_state(psi);
    HybridState acc = out.select(kVerdict, kAcc);
    EXPECT_EQ(acc.size(), 4u);
    for (const auto &[rec, st] : acc.branches()) {
        EXPECT_EQ(rec.at(kKeyA), rec.at(kKeyB));
        EXPECT_NEAR(st.weight(), 0.25, 1e-12);
        EXPECT_LT(trace_distance(st.trace_out({"E"}).scaled(4), target), 1e-10);
    }
}

TEST(protocols, pauli_attack_accept_probability_matches_syndromes) {
    for (std::size_t s = 1; s <= 2; s++) {
        PtcFamily fam = family_for(s);
        StateVector psi = purified_input("entangled", 1);
        for (const auto &e : enumerate_paulis(fam.n(), false)) {
            double expected = 0;
            for (const auto &c : fam.codes) {
                expected += syndrome(c, e) == 0 ? 1.0 : 0.0;
            }
            expected /= static_cast<double>(fam.size());
            HybridState out = run_qa_kg(psi, fam, pauli_attack(e, 1));
            EXPECT_NEAR(out.probability(kVerdict, kAcc), expected, 1e-10) << e.str();
        }
    }
}

TEST(protocols, step1_qa_equals_tqa_over_suite) {
    for (std::size_t s = 1; s <= 2; s++) {
        PtcFamily fam = family_for(s);
        for (const auto &d : standard_suite(1, s)) {
            Attack a = build_attack(d, 1, fam.n());
            for (const char *in : {"entangled", "random:7"}) {
                StateVector psi = purified_input(in, 1);
                EXPECT_LT(trace_distance(run_qa_kg(psi, fam, a), run_tqa_kg(psi, fam, a)), 1e-9) << d.label();
            }
        }
    }
}

TEST(protocols, step1_holds_without_back_communication) {
    PtcFamily fam = family_for(2);
    ProtocolOptions opt;
    opt.back_communication = false;
    StateVector psi = purified_input("random:2", 1);
    for (const auto &d : standard_suite(1, 2)) {
        Attack a = build_attack(d, 1, fam.n());
        HybridState qa = run_qa_kg(psi, fam, a, opt);
        EXPECT_LT(trace_distance(qa, run_tqa_kg(psi, fam, a, opt)), 1e-9) << d.label();
        for (const auto &[rec, st] : qa.branches()) {
            EXPECT_NE(rec.at(kKeyA), kErr);
        }
    }
}

TEST(protocols, step2_ptc_equals_ptp_over_suite) {
    for (std::size_t s = 1; s <= 2; s++) {
        PtcFamily fam = family_for(s);
        for (const auto &d : standard_suite(1, s)) {
            Attack a = build_attack(d, 1, fam.n());
            EXPECT_LT(trace_distance(ebit_ptc(fam, a), ebit_ptp(fam, a)), 1e-9) << d.label();
        }
    }
}

TEST(protocols, ebit_identity_gives_phi) {
    PtcFamily fam = family_for(2);
    HybridState out = ebit_ptc(fam, build_attack(AttackDescriptor{}, 1, 3));
    out.validate();
    EXPECT_NEAR(out.probability(kVerdict, kAcc), 1.0, 1e-12);
    MixedState acc = out.branches().at({{kVerdict, kAcc}}).partial_trace({"A", "B"});
    EXPECT_LT(trace_distance(acc, MixedState::from_state(max_entangled("A", "B", 1))), 1e-10);
}

TEST(protocols, ideal_boxes) {
    HybridState acc = ebit_ideal(Verdict::Acc, 1);
    HybridState rej = ebit_ideal(Verdict::Rej, 1);
    acc.validate();
    rej.validate();
    const auto &[rec, st] = *rej.branches().begin();
    EXPECT_EQ(rec.at("B"), kErr);
    EXPECT_LT((st.density().matrix() - identity(2) / 2.0).norm(), 1e-14);
    MixedState in = MixedState::from_state(purified_input("entangled", 1));
    HybridState q = q_ideal(in, Verdict::Rej);
    EXPECT_EQ(register_names(q.branches().begin()->second.registers()), (std::vector<std::string>{"R"}));
}

TEST(protocols, cipher_core_reproduces_pauli_run) {
    PtcFamily fam = family_for(1);
    StateVector psi = purified_input("random:4", 1);
    std::vector<Matrix> us;
    std::vector<std::string> labels;
    for (const auto &k : enumerate_paulis(1, true)) {
        us.push_back(pauli_matrix(k));
        labels.push_back(k.str());
    }
    for (const auto &d : standard_suite(1, 1)) {
        Attack a = build_attack(d, 1, 2);
        EXPECT_LT(trace_distance(run_qa_kg(psi, fam, a), run_qa_kg_cipher(psi, us, labels, fam, a)), 1e-12);
    }
}

TEST(protocols, shape_errors) {
    PtcFamily fam = family_for(2);
    Attack wrong = build_attack(AttackDescriptor{}, 1, 2);
    StateVector psi = purified_input("entangled", 1);
    EXPECT_THROW(run_qa_kg(psi, fam, wrong), std::invalid_argument);
    EXPECT_THROW(run_qa_kg(purified_input("entangled", 2), fam, build_attack(AttackDescriptor{}, 1, 3)),
                 std::invalid_argument);
}
