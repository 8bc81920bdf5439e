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


#ifndef QAKG_UCHARNESS_H
#define QAKG_UCHARNESS_H

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qakg/adversary.h"
#include "qakg/codes.h"
#include "qakg/hybrid.h"
#include "qakg/protocols.h"

namespace qakg {

/// min(2, 2 sqrt(2) eps^{1/3}).
double bound_step3(double eps);

/// Real side of the entanglement experiment: the purity test protocol.
HybridState eta_pt(const PtcFamily &family, const Attack &attack);

/// Ideal side built from a dummy run: the ACC branch p_acc xi_ABE is replaced
/// by Phi^m (x) p_acc xi_E, the REJ branch is copied unchanged.
HybridState eta_ideal_from(const HybridState &eta_pt_state, std::size_t m);
HybridState eta_ideal(const PtcFamily &family, const Attack &attack);

/// Quantities of one entanglement-generation experiment.
struct EbitAnalysis {
    double p_acc = 0;
    double advantage = 0;           // || eta_pt - eta_I ||_1
    double factored_advantage = 0;  // p_acc || xi_ABE - Phi (x) xi_E ||_1
    double alpha = 0;               // 1 - <Phi| xi_AB |Phi>
    double fidelity = 0;            // F(xi_ABE, Phi (x) xi_E)
    double fvdg_bound = 0;          // p_acc * 2 sqrt(1 - F)
    double bound = 0;               // bound_step3(eps)
    double epsilon = 0;
    bool eq4_applicable = false;    // p_acc > eps^{1/3}
    bool eq4_holds = true;          // alpha <= eps / p_acc when applicable
};

EbitAnalysis analyze_ebit(const PtcFamily &family, const Attack &attack);

/// Acceptance branch of the purity test protocol applied to an arbitrary
/// state on [AF, T] (n qubits each), as an operator on [A, B].
MixedState ptp_accept_branch(const PtcFamily &family, const MixedState &input);

/// Tr[((I - Phi^m) (x) acc) T(rho)] for input rho on [AF, T].
double ptp_soundness_functional(const PtcFamily &family, const MixedState &input);

/// (1/K) sum_{t,y} K^dag (I - Phi^m) K with K = W^A_y (x) W^B_y, on [AF, T].
Matrix ptp_dual_operator(const PtcFamily &family);

/// Worst case of the soundness functional over all input states.
double ptp_soundness_exact(const PtcFamily &family);

/// ||accept branch of Phi^n - Phi^m||_1; zero for a complete protocol.
double ptp_completeness_residual(const PtcFamily &family);

struct AdvantageReport {
    std::string protocol;
    std::string attack;
    std::string input;
    double p_acc = 0;
    double advantage = 0;
    double bound = 0;
    double epsilon_used = 0;
    bool pass = false;
    std::map<std::string, double> details;

    /// 1/2 + 1/4 ||.||_1
    double distinguishing_probability() const { return 0.5 + 0.25 * advantage; }
};

AdvantageReport make_report(std::string protocol, std::string attack, std::string input, double p_acc, double advantage,
                             double bound, double eps);

/// Composed ideal side for QA+KG: a dummy entanglement run with the same attack
/// (the adversary holding R) decides the verdict; on ACC the message is
/// delivered untouched and each label in `key_labels` is emitted uniformly as
/// the recycled key; on REJ the outputs are error symbols.
HybridState qa_kg_ideal(const StateVector &psi, const PtcFamily &family, const Attack &attack,
                        const std::vector<std::string> &key_labels, ProtocolOptions options = {});

/// All m-qubit Pauli key labels in the order used by the protocols.
std::vector<std::string> pauli_key_labels(std::size_t m);

AdvantageReport qa_kg_advantage(const PtcFamily &family, const StateVector &psi, const Attack &attack,
                                const std::string &input_name = "", ProtocolOptions options = {});

AdvantageReport ebit_report(const EbitAnalysis &a, const std::string &attack);

/// Subroutine structure of a modular protocol with per-node epsilons.
struct CompositionTree {
    std::vector<std::pair<std::string, double>> nodes;
    std::vector<std::pair<std::string, std::string>> edges;  // (parent, child)
};

/// Sum of node epsilons. Throws if an edge names an unknown node or the
/// subroutine relation has a cycle.
double compose(const CompositionTree &tree);

}  // namespace qakg

#endif
