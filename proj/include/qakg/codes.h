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


#ifndef QAKG_CODES_H
#define QAKG_CODES_H

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qakg/pauli.h"
#include "qakg/qmath.h"

namespace qakg {

/// Stabilizer code encoding m qubits into n = m + s with s generators.
class StabilizerCode {
   public:
    StabilizerCode() = default;
    /// Throws if generators fail to commute, are dependent, are not Hermitian,
    /// or generate -I.
    StabilizerCode(std::size_t n, std::vector<PauliString> generators);

    /// Parses generators in "xz:" text form.
    static StabilizerCode from_strings(const std::vector<std::string> &generators);
    static StabilizerCode random(std::size_t n, std::size_t s, std::mt19937_64 &rng);

    std::size_t n() const { return n_; }
    std::size_t s() const { return generators_.size(); }
    std::size_t m() const { return n_ - generators_.size(); }
    const std::vector<PauliString> &generators() const { return generators_; }
    std::vector<std::string> generator_strings() const;

    bool operator==(const StabilizerCode &other) const = default;

   private:
    std::size_t n_ = 0;
    std::vector<PauliString> generators_;
};

/// Bit i set iff e anticommutes with generator i.
std::uint64_t syndrome(const StabilizerCode &code, const PauliString &e);
/// True iff e equals a stabilizer-group element up to phase.
bool in_stabilizer_group(const StabilizerCode &code, const PauliString &e);
/// Nonzero syndrome, or e acts trivially on the codespace.
bool detects(const StabilizerCode &code, const PauliString &e);

/// Worst-case fraction of codes that fail to detect a nontrivial Pauli error.
double verify_ptc(const std::vector<StabilizerCode> &codes);

/// Number of codes failing to detect each error, indexed by x + 2^n z.
std::vector<std::size_t> undetected_counts(const std::vector<StabilizerCode> &codes);

struct PtcFamily {
    std::size_t m = 0;
    std::size_t s = 0;
    std::vector<StabilizerCode> codes;
    double epsilon_verified = 1.0;
    std::uint64_t seed = 0;
    bool met_target = false;

    std::size_t n() const { return m + s; }
    std::size_t size() const { return codes.size(); }
};

PtcFamily make_family(std::vector<StabilizerCode> codes, std::uint64_t seed = 0);

/// 2 (1 + m/s) / (1 + 2^s).
double ptc_epsilon_formula(std::size_t m, std::size_t s);

/// Randomized greedy search for a small family with epsilon_verified <= target_eps.
/// `budget` bounds the number of greedy constructions. If the target is never
/// met the best family found is returned with met_target = false.
PtcFamily search_ptc(std::size_t m, std::size_t s, double target_eps, std::size_t budget, std::uint64_t seed);

/// (qubits sent, key bits) = (m + s, 2m + s + log2(2^s + 1)).
std::pair<std::size_t, double> cost_formulas(std::size_t m, std::size_t s);

/// Orthonormal basis adapted to the code. Column a + 2^m y (a logical, y the
/// syndrome) is D^y Xbar^a |0bar>, where |0bar> is the joint +1 eigenvector of
/// the generators and the logical Zbar operators and D^y flips syndrome bits.
/// As an operator on registers [logical (m qubits), syndrome (s qubits)] -> T.
struct EncodingUnitary {
    Matrix matrix;
    StabilizerCode code;
    std::vector<PauliString> destabilizers;
    std::vector<PauliString> logical_x;
    std::vector<PauliString> logical_z;

    Matrix decoder() const { return matrix.adjoint(); }
    /// C_t restricted to syndrome block y: 2^n x 2^m isometry.
    Matrix syndrome_block(std::uint64_t y) const;
};

EncodingUnitary encoding_unitary(const StabilizerCode &code);

}  // namespace qakg

#endif
