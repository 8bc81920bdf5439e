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

#include "qakg/qmath.h"

#include <cmath>

#include "gtest/gtest.h"

using namespace qakg;

namespace {

Matrix bloch(double x, double y, double z) {
    Matrix r(2, 2);
    r << cplx(1 + z, 0), cplx(x, -y), cplx(x, y), cplx(1 - z, 0);
    return r / 2;
}

// Textbook partial trace over the second (most significant) factor of a (d0 x d1) system.
Matrix trace_out_high(const Matrix &rho, std::size_t d0, std::size_t d1) {
    Matrix out = Matrix::Zero(d0, d0);
    for (std::size_t i = 0; i < d0; i++) {
        for (std::size_t j = 0; j < d0; j++) {
            for (std::size_t k = 0; k < d1; k++) {
                out(i, j) += rho(i + d0 * k, j + d0 * k);
            }
        }
    }
    return out;
}

}  // namespace

TEST(qmath, kron_little_endian_layout) {
    Matrix a(2, 1), b(2, 1);
    a << 1, 2;
    b << 3, 5;
    Matrix k = kron(a, b);
    // first factor is the high digit of the flat index
    EXPECT_EQ(k(0, 0), cplx(3));
    EXPECT_EQ(k(1, 0), cplx(5));
    EXPECT_EQ(k(2, 0), cplx(6));
    EXPECT_EQ(k(3, 0), cplx(10));
}

TEST(qmath, basis_state_index) {
    RegisterList regs = {Register{"A", 2}, Register{"B", 3}};
    StateVector s = StateVector::basis(regs, {1, 2});
    EXPECT_EQ(s.amplitudes()(1 + 2 * 2), cplx(1));
    EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
}

TEST(qmath, apply_moves_outputs_to_end) {
    RegisterList regs = {Register{"A", 2}, Register{"B", 2}};
    StateVector s = StateVector::basis(regs, {1, 0});
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    StateVector t = s.apply(x, {"A"}, {Register{"C", 2}});
    ASSERT_EQ(register_names(t.registers()), (std::vector<std::string>{"B", "C"}));
    EXPECT_NEAR(std::abs(t.amplitudes()(0)), 1.0, 1e-15);
}

TEST(qmath, reorder_round_trip) {
    std::mt19937_64 rng(3);
    RegisterList regs = {Register{"A", 2}, Register{"B", 3}, Register{"C", 2}};
    StateVector s = random_state(regs, rng);
    StateVector back = s.reordered({"C", "A", "B"}).reordered({"A", "B", "C"});
    EXPECT_LT((back.amplitudes() - s.amplitudes()).norm(), 1e-15);
}

TEST(qmath, partial_trace_matches_direct_sum) {
    std::mt19937_64 rng(5);
    RegisterList regs = {Register{"A", 3}, Register{"B", 2}};
    DensityMatrix rho = random_density(regs, 3, rng);
    DensityMatrix red = rho.partial_trace({"A"});
    EXPECT_LT((red.matrix() - trace_out_high(rho.matrix(), 3, 2)).norm(), 1e-14);
}

TEST(qmath, trace_distance_qubits_is_bloch_distance) {
    Matrix r = bloch(0.3, -0.2, 0.5);
    Matrix s = bloch(-0.1, 0.4, 0.2);
    RegisterList q = qubit_register("Q", 1);
    double expected = std::sqrt(0.16 + 0.36 + 0.09);
    EXPECT_NEAR(trace_distance(DensityMatrix(q, r), DensityMatrix(q, s)), expected, 1e-12);
}

TEST(qmath, trace_distance_orthogonal_pure_states_is_two) {
    RegisterList q = qubit_register("Q", 1);
    EXPECT_NEAR(trace_distance(StateVector::basis(q, {0}).to_density(), StateVector::basis(q, {1}).to_density()), 2.0,
                1e-14);
}

TEST(qmath, fidelity_pure_states_is_squared_overlap) {
    std::mt19937_64 rng(11);
    RegisterList regs = qubit_register("Q", 2);
    StateVector a = random_state(regs, rng);
    StateVector b = random_state(regs, rng);
    double overlap = std::norm(a.amplitudes().dot(b.amplitudes()));
    EXPECT_NEAR(fidelity(a.to_density(), b.to_density()), overlap, 1e-10);
}

TEST(qmath, fidelity_commuting_states) {
    RegisterList q = qubit_register("Q", 1);
    Matrix r = Matrix::Zero(2, 2), s = Matrix::Zero(2, 2);
    r(0, 0) = 0.7;
    r(1, 1) = 0.3;
    s(0, 0) = 0.2;
    s(1, 1) = 0.8;
    double expected = std::pow(std::sqrt(0.14) + std::sqrt(0.24), 2);
    EXPECT_NEAR(fidelity(DensityMatrix(q, r), DensityMatrix(q, s)), expected, 1e-12);
}

TEST(qmath, fuchs_van_de_graaf_holds_on_random_pairs) {
    std::mt19937_64 rng(17);
    RegisterList regs = qubit_register("Q", 2);
    for (int i = 0; i < 30; i++) {
        DensityMatrix a = random_density(regs, 1 + i % 4, rng);
        DensityMatrix b = random_density(regs, 1 + (i / 4) % 4, rng);
        double f = fidelity(a, b);
        double t = trace_distance(a, b);
        EXPECT_LE(2 - 2 * std::sqrt(f), t + 1e-9);
        EXPECT_LE(t, 2 * std::sqrt(1 - f) + 1e-9);
    }
}

TEST(qmath, density_validate_rejects_bad_input) {
    RegisterList q = qubit_register("Q", 1);
    Matrix m = Matrix::Identity(2, 2);
    EXPECT_THROW(DensityMatrix(q, m).validate(), std::domain_error);
    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_THROW(DensityMatrix(q, neg).validate(), std::domain_error);
}

TEST(qmath, channel_completeness_checked) {
    Matrix k = Matrix::Identity(2, 2) * 0.5;
    EXPECT_THROW(QuantumChannel({k}), std::domain_error);
    std::mt19937_64 rng(2);
    QuantumChannel ch = random_channel(2, 3, rng);
    EXPECT_LT(ch.completeness_residual(), 1e-12);
}

TEST(qmath, dilation_reproduces_channel) {
    std::mt19937_64 rng(4);
    QuantumChannel ch = random_channel(2, 3, rng);
    RegisterList regs = {Register{"A", 2}, Register{"Q", 2}};
    DensityMatrix rho = random_density(regs, 4, rng);
    DensityMatrix direct = apply_channel(ch, rho, {"Q"});
    Dilation dl = dilate(ch);
    Matrix rows = apply_rows(dl.isometry, rho.matrix(), regs, {"Q"}, {Register{"Q", 2}, Register{"E", dl.env_dim}},
                             nullptr);
    RegisterList out = {Register{"A", 2}, Register{"Q", 2}, Register{"E", dl.env_dim}};
    // rho V^dag: apply on the column side by taking the adjoint twice
    Matrix full = apply_rows(dl.isometry, Matrix(rows.adjoint()), regs, {"Q"},
                             {Register{"Q", 2}, Register{"E", dl.env_dim}}, nullptr);
    DensityMatrix viaV = DensityMatrix(out, full.adjoint()).partial_trace({"A", "Q"});
    EXPECT_LT((viaV.matrix() - direct.matrix()).norm(), 1e-12);
}

TEST(qmath, measure_probabilities_sum_to_one) {
    std::mt19937_64 rng(9);
    RegisterList q = qubit_register("Q", 1);
    DensityMatrix rho = random_density(q, 2, rng);
    Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
    p0(0, 0) = 1;
    p1(1, 1) = 1;
    auto out = measure(Povm({p0, p1}), rho, {"Q"});
    ASSERT_EQ(out.size(), 2u);
    EXPECT_NEAR(out[0].probability, rho.matrix()(0, 0).real(), 1e-14);
    EXPECT_NEAR(out[0].probability + out[1].probability, 1.0, 1e-14);
    EXPECT_NEAR(std::abs(out[0].post_state.matrix()(0, 0)), 1.0, 1e-12);
}

TEST(qmath, povm_incomplete_rejected) {
    Matrix p0 = Matrix::Zero(2, 2);
    p0(0, 0) = 1;
    EXPECT_THROW(Povm({p0}), std::domain_error);
}

TEST(qmath, random_unitary_is_unitary) {
    std::mt19937_64 rng(1);
    for (std::size_t d : {1, 2, 3, 8}) {
        Matrix u = random_unitary(d, rng);
        EXPECT_LT((u.adjoint() * u - identity(d)).norm(), 1e-12);
    }
}

TEST(qmath, max_entangled_reduced_state_is_maximally_mixed) {
    DensityMatrix phi = max_entangled("A", "B", 2).to_density();
    DensityMatrix a = phi.partial_trace({"A"});
    EXPECT_LT((a.matrix() - identity(4) / 4.0).norm(), 1e-14);
}

TEST(qmath, transpose_trick_lemmas_on_random_instances) {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    for (int i = 0; i < 100; i++) {
        EXPECT_LT(verify_lemma1(random_matrix(dim(rng), dim(rng), rng)), 1e-12);
        std::size_t d = dim(rng), d2 = dim(rng);
        EXPECT_LT(verify_lemma2(random_unitary(d * d2, rng), d, d2, i % d), 1e-12);
    }
}

TEST(qmath, lemma2_rejects_non_unitary) {
    Matrix m = Matrix::Identity(4, 4) * 2.0;
    EXPECT_THROW(verify_lemma2(m, 2, 2, 0), std::domain_error);
}

TEST(qmath, norms) {
    Matrix d = Matrix::Zero(3, 3);
    d(0, 0) = 3;
    d(1, 1) = -2;
    d(2, 2) = 0.5;
    EXPECT_NEAR(operator_norm(d), 3.0, 1e-14);
    EXPECT_NEAR(trace_norm(d), 5.5, 1e-14);
    EXPECT_NEAR(min_eigenvalue(d), -2.0, 1e-14);
    EXPECT_NEAR(max_eigenvalue(d), 3.0, 1e-14);
}
