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

#include "qakg/codes.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

using namespace qakg;

namespace {

// Codespace projector prod_i (I + g_i)/2 from generator matrices.
Matrix code_projector(const StabilizerCode &c) {
    std::size_t d = std::size_t{1} << c.n();
    Matrix p = identity(d);
    for (const auto &g : c.generators()) {
        p = p * (identity(d) + pauli_matrix(g)) / 2.0;
    }
    return p;
}

// State-level detection: P E P must be a multiple of P (zero included).
bool detects_by_projector(const StabilizerCode &c, const PauliString &e) {
    Matrix p = code_projector(c);
    Matrix pep = p * pauli_matrix(e) * p;
    cplx lambda = pep.trace() / p.trace();
    return (pep - lambda * p).norm() < 1e-10;
}

double epsilon_by_projector(const std::vector<StabilizerCode> &codes) {
    std::size_t n = codes[0].n();
    double worst = 0;
    for (const auto &e : enumerate_paulis(n, false)) {
        std::size_t misses = 0;
        for (const auto &c : codes) {
            misses += detects_by_projector(c, e) ? 0 : 1;
        }
        worst = std::max(worst, static_cast<double>(misses) / static_cast<double>(codes.size()));
    }
    return worst;
}

}  // namespace

TEST(codes, rejects_anticommuting_generators) {
    EXPECT_THROW(StabilizerCode::from_strings({"xz:10|00", "xz:00|10"}), std::invalid_argument);
}

TEST(codes, rejects_dependent_generators) {
    EXPECT_THROW(StabilizerCode::from_strings({"xz:11|00", "xz:11|00"}), std::invalid_argument);
}

TEST(codes, rejects_non_hermitian_generator) {
    EXPECT_THROW(StabilizerCode::from_strings({"ixz:10|00"}), std::invalid_argument);
}

TEST(codes, syndrome_matches_anticommutation) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10; i++) {
        StabilizerCode c = StabilizerCode::random(3, 2, rng);
        for (const auto &e : enumerate_paulis(3, true)) {
            std::uint64_t syn = syndrome(c, e);
            for (std::size_t k = 0; k < c.s(); k++) {
                Matrix g = pauli_matrix(c.generators()[k]);
                Matrix em = pauli_matrix(e);
                bool anti = (g * em + em * g).norm() < 1e-12;
                EXPECT_EQ(((syn >> k) & 1) == 1, anti);
            }
        }
    }
}

TEST(codes, detection_predicate_matches_projector) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 12; i++) {
        std::size_t n = 2 + i % 2;
        StabilizerCode c = StabilizerCode::random(n, 1 + i % 2, rng);
        for (const auto &e : enumerate_paulis(n, false)) {
            EXPECT_EQ(detects(c, e), detects_by_projector(c, e)) << e.str();
        }
    }
}

TEST(codes, stabilizer_elements_are_in_group) {
    std::mt19937_64 rng(3);
    StabilizerCode c = StabilizerCode::random(4, 2, rng);
    PauliString prod = c.generators()[0] * c.generators()[1];
    EXPECT_TRUE(in_stabilizer_group(c, prod));
    EXPECT_TRUE(in_stabilizer_group(c, PauliString::identity(4)));
}

TEST(codes, epsilon_formula_values) {
    EXPECT_NEAR(ptc_epsilon_formula(1, 1), 4.0 / 3.0, 1e-15);
    EXPECT_NEAR(ptc_epsilon_formula(1, 2), 0.6, 1e-15);
    EXPECT_NEAR(ptc_epsilon_formula(1, 3), 8.0 / 27.0, 1e-15);
    EXPECT_THROW(ptc_epsilon_formula(0, 1), std::invalid_argument);
}

TEST(codes, cost_formulas_exact) {
    for (std::size_t m = 1; m <= 3; m++) {
        for (std::size_t s = 1; s <= 4; s++) {
            auto [q, k] = cost_formulas(m, s);
            EXPECT_EQ(q, m + s);
            EXPECT_DOUBLE_EQ(k, static_cast<double>(2 * m + s) + std::log2(std::ldexp(1.0, static_cast<int>(s)) + 1));
        }
    }
}

TEST(codes, verify_ptc_matches_projector_oracle) {
    std::mt19937_64 rng(4);
    std::vector<StabilizerCode> codes;
    for (int i = 0; i < 5; i++) {
        codes.push_back(StabilizerCode::random(3, 2, rng));
    }
    EXPECT_DOUBLE_EQ(verify_ptc(codes), epsilon_by_projector(codes));
}

TEST(codes, search_meets_formula_for_one_qubit) {
    for (std::size_t s = 1; s <= 3; s++) {
        PtcFamily f = search_ptc(1, s, ptc_epsilon_formula(1, s), 20, 1);
        EXPECT_TRUE(f.met_target);
        EXPECT_LE(f.epsilon_verified, ptc_epsilon_formula(1, s));
        EXPECT_DOUBLE_EQ(f.epsilon_verified, verify_ptc(f.codes));
        EXPECT_EQ(f.n(), 1 + s);
    }
}

TEST(codes, search_family_sizes_frozen) {
    // seed 1, budget 20
    EXPECT_EQ(search_ptc(1, 1, ptc_epsilon_formula(1, 1), 20, 1).size(), 1u);
    EXPECT_EQ(search_ptc(1, 2, ptc_epsilon_formula(1, 2), 20, 1).size(), 4u);
    EXPECT_EQ(search_ptc(1, 3, ptc_epsilon_formula(1, 3), 20, 1).size(), 7u);
}

TEST(codes, search_is_deterministic) {
    PtcFamily a = search_ptc(1, 2, 0.6, 20, 9);
    PtcFamily b = search_ptc(1, 2, 0.6, 20, 9);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); i++) {
        EXPECT_EQ(a.codes[i], b.codes[i]);
    }
}

TEST(codes, search_rejects_oversized) {
    EXPECT_THROW(search_ptc(3, 4, 0.1, 1, 1), std::invalid_argument);
}

TEST(codes, encoding_unitary_basis_properties) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 6; i++) {
        std::size_t n = 2 + i % 3;
        std::size_t s = n > 2 ? 1 + i % 2 : 1;
        StabilizerCode c = StabilizerCode::random(n, s, rng);
        EncodingUnitary enc = encoding_unitary(c);
        std::size_t d = std::size_t{1} << n;
        std::size_t dm = std::size_t{1} << (n - s);
        EXPECT_LT((enc.matrix.adjoint() * enc.matrix - identity(d)).norm(), 1e-10);
        for (std::size_t col = 0; col < d; col++) {
            std::uint64_t a = col % dm;
            std::uint64_t y = col / dm;
            Vector v = enc.matrix.col(col);
            for (std::size_t k = 0; k < s; k++) {
                double sign = ((y >> k) & 1) ? -1.0 : 1.0;
                EXPECT_LT((pauli_matrix(c.generators()[k]) * v - sign * v).norm(), 1e-10);
            }
            for (std::size_t j = 0; j < enc.logical_z.size(); j++) {
                double sign = ((a >> j) & 1) ? -1.0 : 1.0;
                EXPECT_LT((pauli_matrix(enc.logical_z[j]) * v - sign * v).norm(), 1e-10);
            }
        }
    }
}

TEST(codes, syndrome_block_is_isometry_onto_eigenspace) {
    std::mt19937_64 rng(6);
    StabilizerCode c = StabilizerCode::random(3, 2, rng);
    EncodingUnitary enc = encoding_unitary(c);
    for (std::uint64_t y = 0; y < 4; y++) {
        Matrix b = enc.syndrome_block(y);
        EXPECT_EQ(b.rows(), 8);
        EXPECT_EQ(b.cols(), 2);
        EXPECT_LT((b.adjoint() * b - identity(2)).norm(), 1e-10);
    }
    EXPECT_LT((enc.syndrome_block(0) * enc.syndrome_block(0).adjoint() - code_projector(c)).norm(), 1e-10);
}
