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


#ifndef QAKG_ADVERSARY_H
#define QAKG_ADVERSARY_H

#include <string>
#include <utility>
#include <vector>

#include "qakg/pauli.h"
#include "qakg/qmath.h"

namespace qakg {

enum class AttackKind { Identity, FixedPauli, PauliMixture, Depolarizing, Swap, RandomDilation };

std::string attack_kind_name(AttackKind kind);
AttackKind parse_attack_kind(const std::string &name);

/// Registers the attack acts on: the transmitted register alone, or the
/// purifying register R together with it.
enum class AttackScope { T, RT };

struct AttackDescriptor {
    AttackKind kind = AttackKind::Identity;
    AttackScope scope = AttackScope::T;
    PauliString pauli;                                   // FixedPauli
    std::vector<std::pair<PauliString, double>> mixture; // PauliMixture
    double strength = 0;                                 // Depolarizing
    std::size_t r_qubit = 0;                             // Swap: qubit of R
    std::size_t t_qubit = 0;                             // Swap: qubit of T
    std::uint64_t seed = 0;                              // RandomDilation
    std::size_t env_dim = 1;                             // RandomDilation

    std::string label() const;
    bool operator==(const AttackDescriptor &other) const = default;
};

/// A built attack: channel on the scope registers and its Stinespring
/// isometry, whose extra output register is named "E".
struct Attack {
    AttackDescriptor descriptor;
    QuantumChannel channel;
    Dilation dilation;
    std::vector<std::string> targets;  // {"T"} or {"R", "T"}
    RegisterList outputs;              // targets followed by E

    std::size_t env_dim() const { return dilation.env_dim; }
};

/// R has r_qubits qubits, T has t_qubits qubits.
Attack build_attack(const AttackDescriptor &d, std::size_t r_qubits, std::size_t t_qubits);

/// Deterministic coverage suite: identity, every single-qubit Pauli on T,
/// 3 Pauli mixtures, depolarizing at {0.1, 0.5, 1.0}, 2 swaps between R and T,
/// 5 random dilations (three on T, two on R and T). Length 14 + 3n.
std::vector<AttackDescriptor> standard_suite(std::size_t m, std::size_t s);

/// Named test state on [R, M], each of m qubits: "basis:<b>", "plus",
/// "entangled", "random:<seed>".
StateVector purified_input(const std::string &name, std::size_t m);

/// Kraus operators of rho -> (1 - p) rho + p I/d on n qubits.
std::vector<Matrix> depolarizing_kraus(std::size_t n, double p);

}  // namespace qakg

#endif
