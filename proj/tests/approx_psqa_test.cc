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

#include "qakg/approx_psqa.h"

#include <cmath>

#include "gtest/gtest.h"

using namespace qakg;

namespace {

PtcFamily family_for(std::size_t s) { return search_ptc(1, s, ptc_epsilon_formula(1, s), 20, 1); }

}  // namespace

TEST(approx_psqa, sampled_unitaries_are_unitary) {
    for (std::size_t m = 1; m <= 2; m++) {
        ApproxCipher c = sample_cipher(m, 8, 5);
        ASSERT_EQ(c.size(), 8u);
        for (const auto &u : c.unitaries) {
            EXPECT_LT((u.adjoint() * u - identity(u.rows())).cwiseAbs().maxCoeff(), 1e-12);
        }
        EXPECT_TRUE(std::isfinite(c.delta_measured));
    }
    EXPECT_THROW(sample_cipher(3, 4, 1), std::invalid_argument);
    EXPECT_THROW(sample_cipher(1, 0, 1), std::invalid_argument);
}

TEST(approx_psqa, pauli_cipher_is_exact) {
    for (std::size_t m = 1; m <= 2; m++) {
        ApproxCipher c = pauli_cipher(m);
        EXPECT_EQ(c.size(), std::size_t{1} << (2 * m));
        EXPECT_LT(c.delta_measured, 1e-10);
    }
}

TEST(approx_psqa, deviation_of_single_unitary_is_maximal) {
    // one unitary maps a pure state to a pure state: 2^m ||psi - I/2^m|| = 2^m - 1
    std::vector<Matrix> one = {identity(2)};
    Matrix rho = Matrix::Zero(2, 2);
    rho(0, 0) = 1;
    EXPECT_NEAR(cipher_deviation(one, rho), 1.0, 1e-14);
}

TEST(approx_psqa, delta_decreases_with_key_count) {
    double prev = 1e9;
    for (std::size_t k : {4, 16, 64}) {
        double mean = 0;
        for (std::uint64_t seed = 1; seed <= 5; seed++) {
            mean += sample_cipher(1, k, seed).delta_measured;
        }
        mean /= 5;
        EXPECT_LT(mean, prev) << "K=" << k;
        prev = mean;
    }
}

TEST(approx_psqa, rsp_povm_complete_and_collapses) {
    ApproxCipher c = sample_cipher(1, 16, 3);
    Vector psi = psqa_message("random:3", 1);
    RspMeasurement rsp = rsp_povm(c, psi);
    EXPECT_LT(rsp.povm.completeness_residual(), 1e-10);
    EXPECT_EQ(rsp.failure_index, c.size());
    EXPECT_GE(rsp.failure_probability, 0.0);
    EXPECT_NEAR(rsp.failure_probability, 1.0 - static_cast<double>(c.size()) / (rsp.norm_m * 2.0), 1e-12);
    for (std::size_t k = 0; k < c.size(); k++) {
        Vector phi = c.unitaries[k] * psi;
        DensityMatrix post = rsp_post_state(rsp, k, 1);
        EXPECT_LT((post.matrix() - phi * phi.adjoint()).norm(), 1e-10);
    }
}

TEST(approx_psqa, rsp_pauli_cipher_on_zero) {
    ApproxCipher c = pauli_cipher(1);
    Vector zero = Vector::Zero(2);
    zero(0) = 1;
    RspMeasurement rsp = rsp_povm(c, zero);
    EXPECT_NEAR(rsp.failure_probability, 0.0, 1e-12);
    for (std::size_t k = 0; k < 4; k++) {
        Matrix p = c.unitaries[k];
        Matrix expected = p * zero * zero.adjoint() * p.adjoint();
        EXPECT_LT((rsp_post_state(rsp, k, 1).matrix() - expected).norm(), 1e-12);
    }
}

TEST(approx_psqa, rsp_rejects_mixed_message) {
    ApproxCipher c = pauli_cipher(1);
    EXPECT_THROW(rsp_povm(c, Matrix(identity(2) / 2.0)), std::invalid_argument);
    Vector bad = Vector::Ones(2);
    EXPECT_THROW(rsp_povm(c, bad), std::invalid_argument);
}

TEST(approx_psqa, pauli_cipher_reduces_to_qa) {
    for (std::size_t s = 1; s <= 2; s++) {
        PtcFamily fam = family_for(s);
        ApproxCipher c = pauli_cipher(1);
        Vector msg = psqa_message("random:11", 1);
        for (const auto &d : standard_suite(1, s)) {
            Attack a = build_attack(d, 1, fam.n());
            HybridState psqa = run_psqa_kg(c, msg, fam, a);
            HybridState qa = run_qa_kg(psqa_input(msg, 1), fam, a);
            EXPECT_LT(trace_distance(psqa, qa), 1e-9) << d.label();
        }
    }
}

TEST(approx_psqa, identity_attack_delivers) {
    PtcFamily fam = family_for(2);
    ApproxCipher c = pauli_cipher(1);
    HybridState out = run_psqa_kg(c, psqa_message("plus", 1), fam, build_attack(AttackDescriptor{}, 1, 3));
    EXPECT_NEAR(out.probability(kVerdict, kAcc), 1.0, 1e-12);
}

TEST(approx_psqa, twin_matches_on_success_branches) {
    PtcFamily fam = family_for(2);
    ApproxCipher c = sample_cipher(1, 16, 3);
    Vector msg = psqa_message("random:3", 1);
    RspMeasurement rsp = rsp_povm(c, msg);
    for (const auto &d : standard_suite(1, 2)) {
        Attack a = build_attack(d, 1, fam.n());
        HybridState psqa = run_psqa_kg(c, msg, fam, a);
        HybridState twin = run_psrqa_kg(c, msg, fam, a);
        twin.validate(1e-10);
        EXPECT_NEAR(twin.probability(kRsp, kRspFail), rsp.failure_probability, 1e-10);
        EXPECT_LT(psrqa_branch_deviation(psqa, twin, rsp), 1e-9) << d.label();
    }
}

TEST(approx_psqa, advantage_within_measured_bound) {
    PtcFamily fam = family_for(2);
    for (std::uint64_t seed : {1, 2, 3}) {
        ApproxCipher c = sample_cipher(1, 16, seed);
        Vector msg = psqa_message("random:" + std::to_string(seed), 1);
        for (const auto &d : standard_suite(1, 2)) {
            AdvantageReport r = psqa_advantage(c, msg, fam, build_attack(d, 1, fam.n()), "m");
            EXPECT_TRUE(r.pass) << d.label();
            EXPECT_NEAR(r.bound, bound_step3(fam.epsilon_verified) + 2 * r.details.at("pr_f"), 1e-15);
        }
    }
}

TEST(approx_psqa, message_names) {
    EXPECT_NEAR(psqa_message("plus", 2).norm(), 1.0, 1e-15);
    EXPECT_EQ(psqa_message("basis:2", 2)(2), cplx(1));
    EXPECT_THROW(psqa_message("basis:4", 2), std::invalid_argument);
    EXPECT_THROW(psqa_message("ghz", 1), std::invalid_argument);
}

TEST(approx_psqa, cipher_family_mismatch) {
    PtcFamily fam = family_for(1);
    EXPECT_THROW(run_psqa_kg(pauli_cipher(2), psqa_message("plus", 2), fam, build_attack(AttackDescriptor{}, 1, 2)),
                 std::invalid_argument);
}
