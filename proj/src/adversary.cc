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

#include "qakg/adversary.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qakg {

std::string attack_kind_name(AttackKind kind) {
    switch (kind) {
        case AttackKind::Identity:
            return "identity";
        case AttackKind::FixedPauli:
            return "pauli";
        case AttackKind::PauliMixture:
            return "pauli_mixture";
        case AttackKind::Depolarizing:
            return "depolarizing";
        case AttackKind::Swap:
            return "swap";
        case AttackKind::RandomDilation:
            return "random_dilation";
    }
    throw std::logic_error("unreachable");
}

AttackKind parse_attack_kind(const std::string &name) {
    for (auto k : {AttackKind::Identity, AttackKind::FixedPauli, AttackKind::PauliMixture, AttackKind::Depolarizing,
                   AttackKind::Swap, AttackKind::RandomDilation}) {
        if (attack_kind_name(k) == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown attack kind: " + name);
}

std::string AttackDescriptor::label() const {
    std::ostringstream out;
    out << attack_kind_name(kind);
    switch (kind) {
        case AttackKind::Identity:
            break;
        case AttackKind::FixedPauli:
            out << ":" << pauli.str();
            break;
        case AttackKind::PauliMixture:
            for (const auto &[p, w] : mixture) {
                out << ":" << p.str() << "@" << w;
            }
            break;
        case AttackKind::Depolarizing:
            out << ":" << strength;
            break;
        case AttackKind::Swap:
            out << ":R" << r_qubit << "-T" << t_qubit;
            break;
        case AttackKind::RandomDilation:
            out << ":seed=" << seed << ":env=" << env_dim;
            break;
    }
    out << (scope == AttackScope::RT ? "@RT" : "@T");
    return out.str();
}

std::vector<Matrix> depolarizing_kraus(std::size_t n, double p) {
    if (p < 0 || p > 1) {
        throw std::invalid_argument("depolarizing strength must lie in [0, 1]");
    }
    double d2 = std::ldexp(1.0, static_cast<int>(2 * n));
    std::vector<Matrix> kraus;
    for (const auto &pauli : enumerate_paulis(n, true)) {
        double w = pauli.is_identity() ? 1 - p + p / d2 : p / d2;
        kraus.push_back(std::sqrt(w) * pauli_matrix(pauli));
    }
    return kraus;
}

namespace {

Matrix swap_unitary(std::size_t r_qubits, std::size_t t_qubits, std::size_t rq, std::size_t tq) {
    // Joint index r + 2^{r_qubits} t; qubit rq of R is bit rq, qubit tq of T is bit r_qubits + tq.
    std::size_t dim = std::size_t{1} << (r_qubits + t_qubits);
    std::size_t a = rq;
    std::size_t b = r_qubits + tq;
    Matrix u = Matrix::Zero(dim, dim);
    for (std::size_t i = 0; i < dim; i++) {
        std::size_t ba = (i >> a) & 1;
        std::size_t bb = (i >> b) & 1;
        std::size_t j = i;
        if (ba != bb) {
            j ^= (std::size_t{1} << a) | (std::size_t{1} << b);
        }
        u(j, i) = 1;
    }
    return u;
}

}  // namespace

Attack build_attack(const AttackDescriptor &d, std::size_t r_qubits, std::size_t t_qubits) {
    std::size_t scope_qubits = t_qubits + (d.scope == AttackScope::RT ? r_qubits : 0);
    std::size_t dim = std::size_t{1} << scope_qubits;
    std::vector<Matrix> kraus;
    switch (d.kind) {
        case AttackKind::Identity:
            kraus.push_back(identity(dim));
            break;
        case AttackKind::FixedPauli:
            if (d.pauli.n != scope_qubits) {
                throw std::invalid_argument("Pauli attack length does not match attacked registers");
            }
            kraus.push_back(pauli_matrix(d.pauli));
            break;
        case AttackKind::PauliMixture: {
            double total = 0;
            for (const auto &[p, w] : d.mixture) {
                if (p.n != scope_qubits) {
                    throw std::invalid_argument("Pauli mixture length does not match attacked registers");
                }
                if (w < 0) {
                    throw std::invalid_argument("negative mixture weight");
                }
                total += w;
                kraus.push_back(std::sqrt(w) * pauli_matrix(p));
            }
            if (d.mixture.empty() || std::abs(total - 1) > 1e-12) {
                throw std::invalid_argument("mixture weights must sum to 1");
            }
            break;
        }
        case AttackKind::Depolarizing:
            kraus = depolarizing_kraus(scope_qubits, d.strength);
            break;
        case AttackKind::Swap:
            if (d.scope != AttackScope::RT || d.r_qubit >= r_qubits || d.t_qubit >= t_qubits) {
                throw std::invalid_argument("swap attack needs R and T qubits in range");
            }
            kraus.push_back(swap_unitary(r_qubits, t_qubits, d.r_qubit, d.t_qubit));
            break;
        case AttackKind::RandomDilation: {
            if (d.env_dim < 1) {
                throw std::invalid_argument("env_dim must be positive");
            }
            std::mt19937_64 rng(d.seed);
            kraus = random_channel(dim, d.env_dim, rng).kraus();
            break;
        }
    }
    Attack a;
    a.descriptor = d;
    a.channel = QuantumChannel(kraus, 1e-12);
    a.dilation = dilate(a.channel);
    if (d.scope == AttackScope::RT) {
        a.targets = {"R", "T"};
        a.outputs = {Register{"R", std::size_t{1} << r_qubits}, Register{"T", std::size_t{1} << t_qubits}};
    } else {
        a.targets = {"T"};
        a.outputs = {Register{"T", std::size_t{1} << t_qubits}};
    }
    a.outputs.push_back(Register{"E", a.dilation.env_dim});
    return a;
}

std::vector<AttackDescriptor> standard_suite(std::size_t m, std::size_t s) {
    std::size_t n = m + s;
    std::uint64_t all = (std::uint64_t{1} << n) - 1;
    std::vector<AttackDescriptor> suite;
    suite.push_back(AttackDescriptor{});
    for (std::size_t q = 0; q < n; q++) {
        for (auto [x, z] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
            AttackDescriptor d;
            d.kind = AttackKind::FixedPauli;
            d.pauli = PauliString(n, std::uint64_t(x) << q, std::uint64_t(z) << q);
            suite.push_back(d);
        }
    }
    auto mix = [&](std::vector<std::pair<PauliString, double>> terms) {
        AttackDescriptor d;
        d.kind = AttackKind::PauliMixture;
        d.mixture = std::move(terms);
        suite.push_back(d);
    };
    PauliString id = PauliString::identity(n);
    mix({{id, 0.5}, {PauliString(n, 1, 0), 0.5}});
    mix({{id, 0.7}, {PauliString(n, 0, std::uint64_t{1} << (n - 1)), 0.2}, {PauliString(n, all, all), 0.1}});
    mix({{PauliString(n, all, 0), 0.25}, {PauliString(n, 0, all), 0.25}, {PauliString(n, 1, 1), 0.25},
         {PauliString(n, all, 1), 0.25}});
    for (double p : {0.1, 0.5, 1.0}) {
        AttackDescriptor d;
        d.kind = AttackKind::Depolarizing;
        d.strength = p;
        suite.push_back(d);
    }
    for (std::size_t tq : {std::size_t{0}, n - 1}) {
        AttackDescriptor d;
        d.kind = AttackKind::Swap;
        d.scope = AttackScope::RT;
        d.r_qubit = 0;
        d.t_qubit = tq;
        suite.push_back(d);
    }
    for (std::uint64_t k = 0; k < 5; k++) {
        AttackDescriptor d;
        d.kind = AttackKind::RandomDilation;
        d.seed = 1001 + k;
        d.env_dim = 4;
        d.scope = (k < 3) ? AttackScope::T : AttackScope::RT;
        suite.push_back(d);
    }
    return suite;
}

StateVector purified_input(const std::string &name, std::size_t m) {
    std::size_t d = std::size_t{1} << m;
    RegisterList regs = {Register{"R", d}, Register{"M", d}};
    if (name == "entangled") {
        return max_entangled("R", "M", m);
    }
    if (name == "plus") {
        Vector v = Vector::Zero(d * d);
        for (std::size_t b = 0; b < d; b++) {
            v(d * b) = 1.0 / std::sqrt(static_cast<double>(d));
        }
        return StateVector(regs, v);
    }
    auto colon = name.find(':');
    if (colon != std::string::npos) {
        std::string head = name.substr(0, colon);
        std::string arg = name.substr(colon + 1);
        std::size_t used = 0;
        unsigned long long value = 0;
        try {
            value = std::stoull(arg, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == arg.size() && !arg.empty()) {
            if (head == "basis") {
                if (value >= d) {
                    throw std::invalid_argument("basis value out of range: " + name);
                }
                return StateVector::basis(regs, {0, static_cast<std::size_t>(value)});
            }
            if (head == "random") {
                std::mt19937_64 rng(value);
                return random_state(regs, rng);
            }
        }
    }
    throw std::invalid_argument("unknown input name: " + name);
}

}  // namespace qakg
