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


#ifndef QAKG_PROTOCOLS_H
#define QAKG_PROTOCOLS_H

#include <string>
#include <vector>

#include "qakg/adversary.h"
#include "qakg/codes.h"
#include "qakg/hybrid.h"
#include "qakg/pauli.h"
#include "qakg/qmath.h"

namespace qakg {

// Record vocabulary shared by every protocol in this library.
inline const std::string kVerdict = "V";
inline const std::string kAcc = "acc";
inline const std::string kRej = "rej";
inline const std::string kErr = "ERR";
inline const std::string kKeyA = "keyA";
inline const std::string kKeyB = "keyB";

enum class Verdict { Acc, Rej };

struct KeyTuple {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    std::size_t t = 0;
    std::uint64_t y = 0;
    double probability = 0;
};

/// Uniform product distribution over x, z (m bits each), t < family_size, y (s bits).
std::vector<KeyTuple> kd_ideal(std::size_t m, std::size_t s, std::size_t family_size);

/// Record label of the Pauli key sigma_xz, e.g. "xz:1|0".
std::string key_label(std::size_t m, std::uint64_t x, std::uint64_t z);

/// sigma_xz rho sigma_xz^dag on register `reg`; key must have m qubits.
DensityMatrix qenc_encrypt(const DensityMatrix &rho, const PauliString &key, const std::string &reg = "M");
DensityMatrix qenc_decrypt(const DensityMatrix &rho, const PauliString &key, const std::string &reg = "M");

/// (I (x) sigma_xz)|Phi^m> on registers (first, second).
Vector bell_vector(std::size_t m, std::uint64_t x, std::uint64_t z);

struct TeleportOutcome {
    std::uint64_t x;
    std::uint64_t z;
    double probability;
    DensityMatrix state;  // registers of the input other than M, then B (corrected)
};

/// Bell-measures (M, A) of input (x) resource and corrects B with sigma_xz^dag.
/// The resource must be a state on registers A and B of m qubits each.
std::vector<TeleportOutcome> teleport(const DensityMatrix &input, const DensityMatrix &resource, std::size_t m);

struct ProtocolOptions {
    /// Bob tells Alice about a rejection, so she also discards her recycled key.
    bool back_communication = true;
};

/// QA+KG on purified input psi over [R, M]. Output records:
///   {V:acc, keyA:xz, keyB:xz} over [R, M, E];
///   {V:rej, M:ERR, keyA:ERR, keyB:ERR} over [R, E]
/// (keyA keeps xz on rejection when back communication is off).
HybridState run_qa_kg(const StateVector &psi, const PtcFamily &family, const Attack &attack, ProtocolOptions options = {});

/// QA+KG with an arbitrary cipher: key k is uniform over `unitaries` and
/// recorded as labels[k]. run_qa_kg is the Pauli case.
HybridState run_qa_kg_cipher(const StateVector &psi, const std::vector<Matrix> &unitaries,
                             const std::vector<std::string> &labels, const PtcFamily &family, const Attack &attack,
                             ProtocolOptions options = {});

/// Teleportation-based variant with the same output schema.
HybridState run_tqa_kg(const StateVector &psi, const PtcFamily &family, const Attack &attack, ProtocolOptions options = {});

/// Environment used by the entanglement experiments: R = |0...0> on m qubits.
MixedState default_environment(std::size_t m);

/// Entanglement generation from the code family. `env` holds the
/// environment's registers (it must contain R when the attack touches R).
/// Output records: {V:acc} over [A, B, env..., E]; {V:rej, B:ERR} over
/// [A, env..., E] with A maximally mixed.
HybridState ebit_ptc(const PtcFamily &family, const Attack &attack, const MixedState &env);
HybridState ebit_ptc(const PtcFamily &family, const Attack &attack);

/// Purity test protocol: n ebits, attack on Bob's halves, both parties
/// measure the syndrome of the same secret code, accept iff they agree.
/// Same output schema as ebit_ptc.
HybridState ebit_ptp(const PtcFamily &family, const Attack &attack, const MixedState &env);
HybridState ebit_ptp(const PtcFamily &family, const Attack &attack);

/// Ideal entanglement box: Phi^m on [A, B], or A maximally mixed and B = ERR.
HybridState ebit_ideal(Verdict verdict, std::size_t m);

/// Ideal quantum channel on input over [R, M]: delivers M or replaces it by ERR.
HybridState q_ideal(const MixedState &input, Verdict verdict);

/// Tensors a maximally mixed register onto every column.
MixedState with_maximally_mixed(const MixedState &st, const std::string &name, std::size_t dim);

}  // namespace qakg

#endif
