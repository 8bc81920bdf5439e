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

#include "qakg/ucharness.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

namespace qakg {

namespace {

const Record kAccRecord = {{kVerdict, kAcc}};

double phi_overlap(const MixedState &ab, std::size_t m) {
    Vector phi = max_entangled("A", "B", m).amplitudes();
    MixedState st = ab.partial_trace({"A", "B"}).reordered({"A", "B"});
    return (phi.adjoint() * st.columns()).squaredNorm();
}

double distance_checked(const MixedState &a, const MixedState &b) {
    // Dense path for moderate sizes, so the factored form is not computed by
    // the same routine as the hybrid distance.
    if (a.dim() <= 1024) {
        return trace_distance(a.density(), b.reordered(register_names(a.registers())).density());
    }
    return trace_distance(a, b);
}

}  // namespace

double bound_step3(double eps) {
    if (eps < 0) {
        throw std::invalid_argument("epsilon must be nonnegative");
    }
    return std::min(2.0, 2.0 * std::sqrt(2.0) * std::cbrt(eps));
}

HybridState eta_pt(const PtcFamily &family, const Attack &attack) {
    return ebit_ptp(family, attack);
}

HybridState eta_ideal_from(const HybridState &eta, std::size_t m) {
    return eta.map_states([&](const Record &rec, const MixedState &st) {
        if (rec.at(kVerdict) != kAcc) {
            return st;
        }
        MixedState env = st.trace_out({"A", "B"});
        return tensor(MixedState::from_state(max_entangled("A", "B", m)), env);
    });
}

HybridState eta_ideal(const PtcFamily &family, const Attack &attack) {
    return eta_ideal_from(eta_pt(family, attack), family.m);
}

EbitAnalysis analyze_ebit(const PtcFamily &family, const Attack &attack) {
    EbitAnalysis out;
    out.epsilon = family.epsilon_verified;
    out.bound = bound_step3(out.epsilon);
    HybridState real = eta_pt(family, attack);
    HybridState ideal = eta_ideal_from(real, family.m);
    out.p_acc = real.probability(kVerdict, kAcc);
    out.advantage = trace_distance(real, ideal);
    out.fidelity = 1;
    auto it = real.branches().find(kAccRecord);
    if (it != real.branches().end() && out.p_acc > 0) {
        MixedState xi = it->second.scaled(1.0 / out.p_acc);
        MixedState target = ideal.branches().at(kAccRecord).scaled(1.0 / out.p_acc);
        out.factored_advantage = out.p_acc * distance_checked(xi, target);
        out.alpha = std::max(0.0, 1.0 - phi_overlap(xi, family.m));
        out.fidelity = std::min(1.0, fidelity(xi, target));
    }
    out.fvdg_bound = out.p_acc * 2.0 * std::sqrt(std::max(0.0, 1.0 - out.fidelity));
    out.eq4_applicable = out.p_acc > std::cbrt(out.epsilon);
    out.eq4_holds = !out.eq4_applicable || out.alpha <= out.epsilon / out.p_acc + 1e-9;
    return out;
}

MixedState ptp_accept_branch(const PtcFamily &family, const MixedState &input) {
    std::size_t dm = std::size_t{1} << family.m;
    std::size_t ds = std::size_t{1} << family.s;
    std::vector<MixedState> parts;
    for (const auto &code : family.codes) {
        EncodingUnitary enc = encoding_unitary(code);
        for (std::uint64_t y = 0; y < ds; y++) {
            MixedState st = input.apply(enc.syndrome_block(y).transpose(), {"AF"}, {Register{"A", dm}});
            st = st.apply(enc.syndrome_block(y).adjoint(), {"T"}, {Register{"B", dm}});
            parts.push_back(st.scaled(1.0 / static_cast<double>(family.size())));
        }
    }
    return MixedState::sum(parts);
}

double ptp_soundness_functional(const PtcFamily &family, const MixedState &input) {
    MixedState acc = ptp_accept_branch(family, input);
    return acc.weight() - phi_overlap(acc, family.m);
}

Matrix ptp_dual_operator(const PtcFamily &family) {
    std::size_t n = family.n();
    if (n > 4) {
        throw std::invalid_argument("ptp_dual_operator supports n <= 4");
    }
    std::size_t dm = std::size_t{1} << family.m;
    std::size_t ds = std::size_t{1} << family.s;
    std::size_t dn = std::size_t{1} << n;
    Vector phi = max_entangled("A", "B", family.m).amplitudes();
    Matrix reject_phi = identity(dm * dm) - phi * phi.adjoint();
    Matrix dual = Matrix::Zero(dn * dn, dn * dn);
    for (const auto &code : family.codes) {
        EncodingUnitary enc = encoding_unitary(code);
        for (std::uint64_t y = 0; y < ds; y++) {
            Matrix block = enc.syndrome_block(y);
            // Input index af + 2^n t, output index a + 2^m b.
            Matrix k = kron(block.adjoint(), block.transpose());
            dual += k.adjoint() * reject_phi * k;
        }
    }
    return dual / static_cast<double>(family.size());
}

double ptp_soundness_exact(const PtcFamily &family) {
    return max_eigenvalue(ptp_dual_operator(family));
}

double ptp_completeness_residual(const PtcFamily &family) {
    MixedState input = MixedState::from_state(max_entangled("AF", "T", family.n()));
    MixedState acc = ptp_accept_branch(family, input).reordered({"A", "B"});
    MixedState phi = MixedState::from_state(max_entangled("A", "B", family.m));
    return trace_distance(acc, phi);
}

AdvantageReport make_report(std::string protocol, std::string attack, std::string input, double p_acc, double advantage,
                             double bound, double eps) {
    AdvantageReport r;
    r.protocol = std::move(protocol);
    r.attack = std::move(attack);
    r.input = std::move(input);
    r.p_acc = p_acc;
    r.advantage = advantage;
    r.bound = bound;
    r.epsilon_used = eps;
    r.pass = advantage <= bound + 1e-9;
    return r;
}

std::vector<std::string> pauli_key_labels(std::size_t m) {
    std::vector<std::string> out;
    std::uint64_t dm = std::uint64_t{1} << m;
    for (std::uint64_t z = 0; z < dm; z++) {
        for (std::uint64_t x = 0; x < dm; x++) {
            out.push_back(key_label(m, x, z));
        }
    }
    return out;
}

HybridState qa_kg_ideal(const StateVector &psi, const PtcFamily &family, const Attack &attack,
                        const std::vector<std::string> &key_labels, ProtocolOptions options) {
    if (key_labels.empty()) {
        throw std::invalid_argument("no key labels");
    }
    HybridState dummy = ebit_ptc(family, attack, MixedState::from_state(psi));
    double w = 1.0 / static_cast<double>(key_labels.size());
    HybridState out;
    for (const auto &[rec, st] : dummy.branches()) {
        bool acc = rec.at(kVerdict) == kAcc;
        MixedState kept = acc ? st.trace_out({"A", "B"}).reordered({"R", "M", "E"})
                              : st.trace_out({"A", "M"}).reordered({"R", "E"});
        for (const auto &label : key_labels) {
            Record r;
            if (acc) {
                r = {{kVerdict, kAcc}, {kKeyA, label}, {kKeyB, label}};
            } else {
                r = {{kVerdict, kRej}, {"M", kErr}, {kKeyB, kErr}, {kKeyA, options.back_communication ? kErr : label}};
            }
            out.add(r, kept.scaled(w));
        }
    }
    return out.compressed();
}

AdvantageReport qa_kg_advantage(const PtcFamily &family, const StateVector &psi, const Attack &attack,
                                const std::string &input_name, ProtocolOptions options) {
    HybridState real = run_qa_kg(psi, family, attack, options);
    HybridState ideal = qa_kg_ideal(psi, family, attack, pauli_key_labels(family.m), options);
    double eps = family.epsilon_verified;
    AdvantageReport r = make_report("qa_kg", attack.descriptor.label(), input_name, real.probability(kVerdict, kAcc),
                                    trace_distance(real, ideal), bound_step3(eps), eps);
    r.details["p_acc_ideal"] = ideal.probability(kVerdict, kAcc);
    return r;
}

AdvantageReport ebit_report(const EbitAnalysis &a, const std::string &attack) {
    AdvantageReport r = make_report("ebit", attack, "", a.p_acc, a.advantage, a.bound, a.epsilon);
    r.details["factored_advantage"] = a.factored_advantage;
    r.details["alpha"] = a.alpha;
    r.details["fidelity"] = a.fidelity;
    r.details["fvdg_bound"] = a.fvdg_bound;
    r.details["eq4_applicable"] = a.eq4_applicable ? 1 : 0;
    r.details["eq4_holds"] = a.eq4_holds ? 1 : 0;
    r.pass = r.pass && a.eq4_holds;
    return r;
}

double compose(const CompositionTree &tree) {
    std::map<std::string, double> eps;
    for (const auto &[id, e] : tree.nodes) {
        if (!eps.emplace(id, e).second) {
            throw std::invalid_argument("duplicate node: " + id);
        }
        if (e < 0) {
            throw std::invalid_argument("negative epsilon at node " + id);
        }
    }
    std::map<std::string, std::vector<std::string>> children;
    for (const auto &[parent, child] : tree.edges) {
        if (!eps.count(parent) || !eps.count(child)) {
            throw std::invalid_argument("edge refers to unknown node");
        }
        children[parent].push_back(child);
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    std::map<std::string, int> state;
    std::function<void(const std::string &)> visit = [&](const std::string &v) {
        state[v] = 1;
        for (const auto &c : children[v]) {
            if (state[c] == 1) {
                throw std::invalid_argument("cycle in subroutine structure at " + c);
            }
            if (state[c] == 0) {
                visit(c);
            }
        }
        state[v] = 2;
    };
    double total = 0;
    for (const auto &[id, e] : tree.nodes) {
        if (state[id] == 0) {
            visit(id);
        }
        total += e;
    }
    return total;
}

}  // namespace qakg
