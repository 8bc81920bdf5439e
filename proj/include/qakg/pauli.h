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


#ifndef QAKG_PAULI_H
#define QAKG_PAULI_H

#include <cstdint>
#include <string>
#include <vector>

#include "qakg/qmath.h"

namespace qakg {

/// n-qubit Pauli operator i^phase * X^x Z^z, with X^x Z^z taken qubit by qubit.
/// Qubit j is bit j of `x` and `z`. Under this convention
/// sigma_11 = sigma_10 sigma_01 = [[0,-1],[1,0]], a real matrix.
struct PauliString {
    std::size_t n = 0;
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    std::uint8_t phase = 0;  // power of i, mod 4

    PauliString() = default;
    PauliString(std::size_t num_qubits, std::uint64_t x_bits, std::uint64_t z_bits, std::uint8_t phase_power = 0);

    static PauliString identity(std::size_t num_qubits);
    /// Hermitian representative i^{|x & z|} X^x Z^z (a tensor product of I, X, Y, Z).
    static PauliString hermitian(std::size_t num_qubits, std::uint64_t x_bits, std::uint64_t z_bits);
    /// Parses "xz:<x bits>|<z bits>" with an optional leading "-", "i" or "-i".
    static PauliString parse(const std::string &text);

    bool is_identity() const { return x == 0 && z == 0; }
    bool is_hermitian() const;
    std::size_t weight() const;
    std::string str() const;
    /// Packed symplectic vector x | z << n, for GF(2) linear algebra.
    std::uint64_t symplectic() const { return x | (z << n); }
    PauliString dagger() const;
    PauliString without_phase() const { return PauliString(n, x, z, 0); }

    bool operator==(const PauliString &other) const = default;
};

PauliString pauli_mul(const PauliString &p, const PauliString &q);
inline PauliString operator*(const PauliString &p, const PauliString &q) { return pauli_mul(p, q); }

/// True iff the symplectic form x_p.z_q + z_p.x_q vanishes mod 2.
bool commutes(const PauliString &p, const PauliString &q);

Matrix pauli_matrix(const PauliString &p);

/// All 4^n phase-free Pauli strings, ordered by index x + 2^n z.
std::vector<PauliString> enumerate_paulis(std::size_t n, bool include_identity);

/// Phase-free Pauli with index x + 2^n z.
inline PauliString pauli_from_index(std::size_t n, std::uint64_t index) {
    std::uint64_t mask = (n >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    return PauliString(n, index & mask, index >> n, 0);
}

}  // namespace qakg

#endif
