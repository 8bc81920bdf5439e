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

#include "qakg/protocols.h"

#include <cmath>
#include <stdexcept>

#include "qakg/parallel.h"

namespace qakg {

namespace {

Vector basis_ket(std::size_t dim, std::size_t k) {
    Vector v = Vector::Zero(dim);
    v(k) = 1;
    return v;
}

Matrix basis_bra(std::size_t dim, std::size_t k) {
    Matrix b = Matrix::Zero(1, dim);
    b(0, k) = 1;
    return b;
}

Matrix reject_projector(std::size_t dim, std::size_t y) {
    Matrix p = identity(dim);
    p(y, y) = 0;
    return p;
}

MixedState attacked(const MixedState &st, const Attack &attack) {
    return st.apply(attack.dilation.isometry, attack.targets, attack.outputs);
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string> &b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

void check_shapes(const PtcFamily &family, const Attack &attack, std::size_t r_dim) {
    if (family.codes.empty()) {
        throw std::invalid_argument("empty code family");
    }
    std::size_t t_dim = std::size_t{1} << family.n();
    for (const auto &r : attack.outputs) {
        if (r.name == "T" && r.dim != t_dim) {
            throw std::invalid_argument("attack does not match the code length");
        }
        if (r.name == "R" && r.dim != r_dim) {
            throw std::invalid_argument("attack does not match the R register");
        }
    }
}

std::vector<EncodingUnitary> encoders(const PtcFamily &family) {
    std::vector<EncodingUnitary> out;
    for (const auto &c : family.codes) {
        out.push_back(encoding_unitary(c));
    }
    return out;
}

HybridState merge_in_order(const std::vector<HybridState> &parts) {
    return HybridState::sum(parts);
}

void check_input(const StateVector &psi, std::size_t m) {
    std::size_t d = std::size_t{1} << m;
    const auto &regs = psi.registers();
    if (regs.size() != 2 || !has_register(regs, "R") || !has_register(regs, "M") ||
        regs[register_position(regs, "R")].dim != d || regs[register_position(regs, "M")].dim != d) {
        throw std::invalid_argument("input must be a state on registers R and M of m qubits each");
    }
    psi.validate_normalized(1e-10);
}

Record reject_record(bool back_communication, const std::string &label) {
    return {{kVerdict, kRej}, {"M", kErr}, {kKeyB, kErr}, {kKeyA, back_communication ? kErr : label}};
}

}  // namespace

std::vector<KeyTuple> kd_ideal(std::size_t m, std::size_t s, std::size_t family_size) {
    if (family_size == 0) {
        throw std::invalid_argument("family size must be positive");
    }
    std::uint64_t dm = std::uint64_t{1} << m;
    std::uint64_t ds = std::uint64_t{1} << s;
    double p = 1.0 / (static_cast<double>(dm * dm * ds) * static_cast<double>(family_size));
    std::vector<KeyTuple> out;
    for (std::uint64_t x = 0; x < dm; x++) {
        for (std::uint64_t z = 0; z < dm; z++) {
            for (std::size_t t = 0; t < family_size; t++) {
                for (std::uint64_t y = 0; y < ds; y++) {
                    out.push_back(KeyTuple{x, z, t, y, p});
                }
            }
        }
    }
    return out;
}

std::string key_label(std::size_t m, std::uint64_t x, std::uint64_t z) {
    return PauliString(m, x, z).str();
}

DensityMatrix qenc_encrypt(const DensityMatrix &rho, const PauliString &key, const std::string &reg) {
    const auto &regs = rho.registers();
    std::size_t d = regs[register_position(regs, reg)].dim;
    if ((std::size_t{1} << key.n) != d) {
        throw std::invalid_argument("key length does not match the message register");
    }
    return MixedState::from_density(rho).apply(pauli_matrix(key), {reg}).density();
}

DensityMatrix qenc_decrypt(const DensityMatrix &rho, const PauliString &key, const std::string &reg) {
    return qenc_encrypt(rho, key.dagger(), reg);
}

Vector bell_vector(std::size_t m, std::uint64_t x, std::uint64_t z) {
    std::size_t d = std::size_t{1} << m;
    Matrix sigma = pauli_matrix(PauliString(m, x, z));
    Vector v = Vector::Zero(d * d);
    double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t a = 0; a < d; a++) {
        for (std::size_t b = 0; b < d; b++) {
            v(a + d * b) = sigma(b, a) * amp;
        }
    }
    return v;
}

std::vector<TeleportOutcome> teleport(const DensityMatrix &input, const DensityMatrix &resource, std::size_t m) {
    std::size_t d = std::size_t{1} << m;
    const auto &rr = resource.registers();
    if (rr.size() != 2 || !has_register(rr, "A") || !has_register(rr, "B") || rr[register_position(rr, "A")].dim != d ||
        rr[register_position(rr, "B")].dim != d) {
        throw std::invalid_argument("resource must live on registers A and B of m qubits each");
    }
    const auto &ir = input.registers();
    if (!has_register(ir, "M") || ir[register_position(ir, "M")].dim != d) {
        throw std::invalid_argument("input must contain register M of m qubits");
    }
    MixedState joint = MixedState::from_density(tensor(input, resource));
    std::vector<TeleportOutcome> out;
    for (std::uint64_t x = 0; x < d; x++) {
        for (std::uint64_t z = 0; z < d; z++) {
            PauliString key(m, x, z);
            Matrix bra = bell_vector(m, x, z).adjoint();
            // The convention makes every sigma_xz real, so Bob holds sigma_xz psi.
            MixedState post = joint.apply(bra, {"M", "A"}, {}).apply(pauli_matrix(key.dagger()), {"B"});
            double p = post.weight();
            DensityMatrix state = post.density();
            if (p > 0) {
                state = state.scaled(1.0 / p);
            }
            out.push_back(TeleportOutcome{x, z, p, state});
        }
    }
    return out;
}

HybridState run_qa_kg_cipher(const StateVector &psi, const std::vector<Matrix> &unitaries,
                             const std::vector<std::string> &labels, const PtcFamily &family, const Attack &attack,
                             ProtocolOptions options) {
    std::size_t m = family.m;
    std::size_t dm = std::size_t{1} << m;
    std::size_t ds = std::size_t{1} << family.s;
    std::size_t dt = std::size_t{1} << family.n();
    std::size_t k_codes = family.size();
    check_input(psi, m);
    check_shapes(family, attack, dm);
    if (unitaries.empty() || unitaries.size() != labels.size()) {
        throw std::invalid_argument("cipher needs one label per unitary");
    }
    for (const auto &u : unitaries) {
        if (static_cast<std::size_t>(u.rows()) != dm || static_cast<std::size_t>(u.cols()) != dm) {
            throw std::invalid_argument("cipher unitary does not act on m qubits");
        }
    }
    auto encs = encoders(family);
    MixedState input = MixedState::from_state(psi).reordered({"R", "M"});
    double w = 1.0 / static_cast<double>(unitaries.size() * ds * k_codes);

    std::vector<HybridState> parts(unitaries.size() * k_codes);
    parallel_for(parts.size(), [&](std::size_t job) {
        std::size_t k = job / k_codes;
        std::size_t t = job % k_codes;
        const std::string &label = labels[k];
        const auto &enc = encs[t];
        MixedState encrypted = input.apply(unitaries[k], {"M"});
        Matrix undo = unitaries[k].adjoint();
        HybridState part;
        for (std::uint64_t y = 0; y < ds; y++) {
            MixedState st = encrypted.with_pure("S", basis_ket(ds, y));
            st = st.apply(enc.matrix, {"M", "S"}, {Register{"T", dt}});
            st = attacked(st, attack);
            st = st.apply(enc.decoder(), {"T"}, {Register{"M", dm}, Register{"S", ds}});
            MixedState acc = st.apply(basis_bra(ds, y), {"S"}, {}).apply(undo, {"M"});
            part.add({{kVerdict, kAcc}, {kKeyA, label}, {kKeyB, label}}, acc.reordered({"R", "M", "E"}).scaled(w));
            MixedState rej = st.apply(reject_projector(ds, y), {"S"}).trace_out({"M", "S"});
            part.add(reject_record(options.back_communication, label), rej.reordered({"R", "E"}).scaled(w));
        }
        parts[job] = part.compressed();
    });
    return merge_in_order(parts);
}

HybridState run_qa_kg(const StateVector &psi, const PtcFamily &family, const Attack &attack, ProtocolOptions options) {
    std::uint64_t dm = std::uint64_t{1} << family.m;
    std::vector<Matrix> unitaries;
    std::vector<std::string> labels;
    for (std::uint64_t z = 0; z < dm; z++) {
        for (std::uint64_t x = 0; x < dm; x++) {
            PauliString key(family.m, x, z);
            unitaries.push_back(pauli_matrix(key));
            labels.push_back(key.str());
        }
    }
    return run_qa_kg_cipher(psi, unitaries, labels, family, attack, options);
}

HybridState run_tqa_kg(const StateVector &psi, const PtcFamily &family, const Attack &attack, ProtocolOptions options) {
    std::size_t m = family.m;
    std::size_t dm = std::size_t{1} << m;
    std::size_t ds = std::size_t{1} << family.s;
    std::size_t dt = std::size_t{1} << family.n();
    std::size_t k_codes = family.size();
    check_input(psi, m);
    check_shapes(family, attack, dm);
    auto encs = encoders(family);
    MixedState input = MixedState::from_state(tensor(psi.reordered({"R", "M"}), max_entangled("A", "A2", m)));
    double w = 1.0 / static_cast<double>(ds * k_codes);

    std::vector<HybridState> parts(k_codes * ds);
    parallel_for(parts.size(), [&](std::size_t job) {
        std::size_t t = job / ds;
        std::uint64_t y = job % ds;
        const auto &enc = encs[t];
        // Alice encodes her half of the ebits and sends it.
        MixedState st = input.with_pure("S", basis_ket(ds, y));
        st = st.apply(enc.matrix, {"A2", "S"}, {Register{"T", dt}});
        st = attacked(st, attack);
        // Bob decodes and compares syndromes.
        st = st.apply(enc.decoder(), {"T"}, {Register{"B", dm}, Register{"S", ds}});
        MixedState acc_all = st.apply(basis_bra(ds, y), {"S"}, {});
        MixedState rej_all = st.apply(reject_projector(ds, y), {"S"}).trace_out({"B", "S"});
        HybridState part;
        for (std::uint64_t z = 0; z < dm; z++) {
            for (std::uint64_t x = 0; x < dm; x++) {
                PauliString key(m, x, z);
                std::string label = key.str();
                // Alice's Bell measurement on (M, A) yields the recycled key.
                Matrix bra = bell_vector(m, x, z).adjoint();
                MixedState acc = acc_all.apply(bra, {"M", "A"}, {}).apply(pauli_matrix(key.dagger()), {"B"});
                acc = acc.renamed("B", "M");
                part.add({{kVerdict, kAcc}, {kKeyA, label}, {kKeyB, label}}, acc.reordered({"R", "M", "E"}).scaled(w));
                MixedState rej = rej_all.apply(bra, {"M", "A"}, {});
                part.add(reject_record(options.back_communication, label), rej.reordered({"R", "E"}).scaled(w));
            }
        }
        parts[job] = part.compressed();
    });
    return merge_in_order(parts);
}

MixedState default_environment(std::size_t m) {
    std::size_t d = std::size_t{1} << m;
    return MixedState({Register{"R", d}}, basis_ket(d, 0));
}

MixedState with_maximally_mixed(const MixedState &st, const std::string &name, std::size_t dim) {
    RegisterList regs = st.registers();
    regs.push_back(Register{name, dim});
    Matrix out = Matrix::Zero(st.dim() * dim, st.rank_bound() * dim);
    double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::size_t k = 0; k < dim; k++) {
        out.block(k * st.dim(), k * st.rank_bound(), st.dim(), st.rank_bound()) = st.columns() * amp;
    }
    return MixedState(regs, out);
}

namespace {

void check_env(const MixedState &env, const Attack &attack, std::size_t m) {
    for (const auto &name : {"A", "A2", "AF", "B", "S", "T", "E"}) {
        if (has_register(env.registers(), name)) {
            throw std::invalid_argument(std::string("environment may not use register name ") + name);
        }
    }
    bool needs_r = attack.targets.size() == 2;
    if (needs_r) {
        if (!has_register(env.registers(), "R") ||
            env.registers()[register_position(env.registers(), "R")].dim != (std::size_t{1} << m)) {
            throw std::invalid_argument("attack on R needs an environment register R of m qubits");
        }
    }
}

// The REJ filter's maximally mixed A is attached after merging, which keeps
// the accumulated column count down.
HybridState finish_ebit(const HybridState &merged, std::size_t dm, const std::vector<std::string> &acc_order,
                        const std::vector<std::string> &rej_order) {
    return merged.map_states([&](const Record &rec, const MixedState &st) {
        if (rec.at(kVerdict) == kAcc) {
            return st.reordered(acc_order);
        }
        return with_maximally_mixed(st, "A", dm).reordered(rej_order);
    });
}

}  // namespace

HybridState ebit_ptc(const PtcFamily &family, const Attack &attack, const MixedState &env) {
    std::size_t m = family.m;
    std::size_t dm = std::size_t{1} << m;
    std::size_t ds = std::size_t{1} << family.s;
    std::size_t dt = std::size_t{1} << family.n();
    std::size_t k_codes = family.size();
    check_shapes(family, attack, dm);
    check_env(env, attack, m);
    auto encs = encoders(family);
    auto env_names = register_names(env.registers());
    MixedState base = tensor(MixedState::from_state(max_entangled("A", "A2", m)), env);
    double w = 1.0 / static_cast<double>(ds * k_codes);
    auto acc_order = concat(concat({"A", "B"}, env_names), {"E"});
    auto rej_order = concat(concat({"A"}, env_names), {"E"});

    std::vector<HybridState> parts(k_codes * ds);
    parallel_for(parts.size(), [&](std::size_t job) {
        std::size_t t = job / ds;
        std::uint64_t y = job % ds;
        const auto &enc = encs[t];
        MixedState st = base.with_pure("S", basis_ket(ds, y));
        st = st.apply(enc.matrix, {"A2", "S"}, {Register{"T", dt}});
        st = attacked(st, attack);
        st = st.apply(enc.decoder(), {"T"}, {Register{"B", dm}, Register{"S", ds}});
        HybridState part;
        MixedState acc = st.apply(basis_bra(ds, y), {"S"}, {});
        part.add({{kVerdict, kAcc}}, acc.reordered(acc_order).scaled(w));
        MixedState rej = st.apply(reject_projector(ds, y), {"S"}).trace_out({"A", "B", "S"});
        part.add({{kVerdict, kRej}, {"B", kErr}}, rej.scaled(w));
        parts[job] = part.compressed();
    });
    return finish_ebit(merge_in_order(parts), dm, acc_order, rej_order);
}

HybridState ebit_ptc(const PtcFamily &family, const Attack &attack) {
    return ebit_ptc(family, attack, default_environment(family.m));
}

HybridState ebit_ptp(const PtcFamily &family, const Attack &attack, const MixedState &env) {
    std::size_t m = family.m;
    std::size_t n = family.n();
    std::size_t dm = std::size_t{1} << m;
    std::size_t ds = std::size_t{1} << family.s;
    std::size_t k_codes = family.size();
    check_shapes(family, attack, dm);
    check_env(env, attack, m);
    auto encs = encoders(family);
    auto env_names = register_names(env.registers());
    auto acc_order = concat(concat({"A", "B"}, env_names), {"E"});
    auto rej_order = concat(concat({"A"}, env_names), {"E"});

    MixedState base = tensor(MixedState::from_state(max_entangled("AF", "T", n)), env);
    MixedState st = attacked(base, attack);
    double w = 1.0 / static_cast<double>(k_codes);

    std::vector<HybridState> parts(k_codes);
    parallel_for(k_codes, [&](std::size_t t) {
        const auto &enc = encs[t];
        HybridState part;
        for (std::uint64_t ya = 0; ya < ds; ya++) {
            // Alice's syndrome measurement and decoding use the complex
            // conjugate of Bob's, which fixes the state she is left with.
            MixedState alice = st.apply(enc.syndrome_block(ya).transpose(), {"AF"}, {Register{"A", dm}});
            for (std::uint64_t yb = 0; yb < ds; yb++) {
                MixedState both = alice.apply(enc.syndrome_block(yb).adjoint(), {"T"}, {Register{"B", dm}});
                if (ya == yb) {
                    part.add({{kVerdict, kAcc}}, both.reordered(acc_order).scaled(w));
                } else {
                    part.add({{kVerdict, kRej}, {"B", kErr}}, both.trace_out({"A", "B"}).scaled(w));
                }
            }
        }
        parts[t] = part.compressed();
    });
    return finish_ebit(merge_in_order(parts), dm, acc_order, rej_order);
}

HybridState ebit_ptp(const PtcFamily &family, const Attack &attack) {
    return ebit_ptp(family, attack, default_environment(family.m));
}

HybridState ebit_ideal(Verdict verdict, std::size_t m) {
    HybridState out;
    if (verdict == Verdict::Acc) {
        out.add({{kVerdict, kAcc}}, MixedState::from_state(max_entangled("A", "B", m)));
    } else {
        MixedState empty({}, Matrix::Ones(1, 1));
        out.add({{kVerdict, kRej}, {"B", kErr}}, with_maximally_mixed(empty, "A", std::size_t{1} << m));
    }
    return out;
}

HybridState q_ideal(const MixedState &input, Verdict verdict) {
    HybridState out;
    if (verdict == Verdict::Acc) {
        out.add({{kVerdict, kAcc}}, input);
    } else {
        out.add({{kVerdict, kRej}, {"M", kErr}}, input.trace_out({"M"}));
    }
    return out;
}

}  // namespace qakg
