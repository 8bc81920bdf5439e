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

#ifndef QAKG_APPROX_PSQA_H
#define QAKG_APPROX_PSQA_H

#include <cstdint>
#include <string>
#include <vector>

#include "qakg/hybrid.h"
#include "qakg/protocols.h"
#include "qakg/qmath.h"
#include "qakg/ucharness.h"

namespace qakg {

/// Approximate encryption: key k uniform over K unitaries on m qubits.
struct ApproxCipher {
    std::size_t m = 0;
    std::uint64_t seed = 0;
    std::vector<Matrix> unitaries;
    std::vector<std::string> labels;
    /// max over tested pure rho of 2^m ||(1/K) sum U rho U^dag - I/2^m||_inf.
    /// A sampled lower bound on the sup over all rho.
    double delta_measured = 0;

    std::size_t size() const { return unitaries.size(); }
};

inline constexpr std::size_t kDeltaSamples = 2000;

/// 2^m ||(1/K) sum_k U_k rho U_k^dag - I/2^m||_inf for one state.
double cipher_deviation(const std::vector<Matrix> &unitaries, const Matrix &rho);

/// Max of cipher_deviation over computational and Hadamard basis states
/// plus `samples` Haar-random pure states drawn from `seed`.
double measure_delta(const std::vector<Matrix> &unitaries, std::size_t m, std::uint64_t seed,
                     std::size_t samples = kDeltaSamples);

/// K Haar-random unitaries. m <= 2.
ApproxCipher sample_cipher(std::size_t m, std::size_t k, std::uint64_t seed);
/// All 4^m Paulis, labelled like the QA+KG key records.
ApproxCipher pauli_cipher(std::size_t m);

/// Remote state preparation measurement for a known pure message.
struct RspMeasurement {
    Povm povm;                // K outcome elements, then F
    std::size_t failure_index;
    double norm_m;            // ||sum_k U_k rho U_k^dag||_inf
    double failure_probability;  // Tr(F)/2^m on half of Phi^m
    std::vector<Vector> kets;    // conj(U_k psi): O_k = |kets[k]><kets[k]| / M
};
RspMeasurement rsp_povm(const ApproxCipher &cipher, const Vector &psi);
/// Throws std::invalid_argument unless rho is pure.
RspMeasurement rsp_povm(const ApproxCipher &cipher, const Matrix &rho);

/// Bob's half of Phi^m after outcome k (normalized), by direct Luders update.
DensityMatrix rsp_post_state(const RspMeasurement &rsp, std::size_t outcome, std::size_t m);

/// |0>_R (x) psi_M: the environment knows the label x, so it holds no purification.
StateVector psqa_input(const Vector &message, std::size_t m);

/// QA+KG with the approximate cipher on a pure message. Same schema as run_qa_kg.
HybridState run_psqa_kg(const ApproxCipher &cipher, const Vector &message, const PtcFamily &family, const Attack &attack,
                        ProtocolOptions options = {});

/// RSP twin: Alice encodes half of m ebits, measures the other half with
/// rsp_povm and announces k. Outcomes k != f use the run_psqa_kg schema; the
/// failure outcome is recorded as {rsp:fail, V:rej, M:ERR, keyA:ERR, keyB:ERR} over [R, E].
HybridState run_psrqa_kg(const ApproxCipher &cipher, const Vector &message, const PtcFamily &family, const Attack &attack,
                         ProtocolOptions options = {});

inline const std::string kRsp = "rsp";
inline const std::string kRspFail = "fail";

/// ||psqa - psrqa_{k != f} / (1 - Pr(f))||_1 over records. Zero when every
/// k != f branch of the twin matches run_psqa_kg given k.
double psrqa_branch_deviation(const HybridState &psqa, const HybridState &psrqa, const RspMeasurement &rsp);

/// Advantage against qa_kg_ideal with the cipher's key labels. The bound is
/// bound_step3(eps) + 2 Pr(f) with Pr(f) from rsp_povm; details carry
/// pr_f, delta_measured and branch_deviation.
AdvantageReport psqa_advantage(const ApproxCipher &cipher, const Vector &message, const PtcFamily &family,
                               const Attack &attack, const std::string &input_name, ProtocolOptions options = {});

/// Named test messages: "basis:b", "plus", "random:seed".
Vector psqa_message(const std::string &name, std::size_t m);

}  // namespace qakg

#endif
