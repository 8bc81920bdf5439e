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

#include "qakg/io.h"

#include <fstream>

namespace qakg {

using nlohmann::json;

namespace {

template <typename T>
T field(const json &j, const std::string &key) {
    if (!j.is_object() || !j.contains(key)) {
        throw SchemaError("missing field '" + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw SchemaError("bad field '" + key + "': " + e.what());
    }
}

const char *scope_name(AttackScope s) { return s == AttackScope::RT ? "RT" : "T"; }

AttackScope parse_scope(const std::string &s) {
    if (s == "T") {
        return AttackScope::T;
    }
    if (s == "RT") {
        return AttackScope::RT;
    }
    throw SchemaError("unknown attack scope: " + s);
}

PauliString parse_pauli(const std::string &s) {
    try {
        return PauliString::parse(s);
    } catch (const std::exception &e) {
        throw SchemaError(std::string("bad Pauli string: ") + e.what());
    }
}

}  // namespace

json family_to_json(const PtcFamily &family) {
    json codes = json::array();
    for (const auto &c : family.codes) {
        codes.push_back(c.generator_strings());
    }
    return json{{"schema", kFamilySchema},
                {"m", family.m},
                {"s", family.s},
                {"seed", family.seed},
                {"epsilon_verified", family.epsilon_verified},
                {"codes", codes}};
}

PtcFamily family_from_json(const json &j, double *stored_epsilon) {
    if (field<std::string>(j, "schema") != kFamilySchema) {
        throw SchemaError("not a code family file");
    }
    auto m = field<std::size_t>(j, "m");
    auto s = field<std::size_t>(j, "s");
    auto seed = field<std::uint64_t>(j, "seed");
    auto eps = field<double>(j, "epsilon_verified");
    auto lists = field<std::vector<std::vector<std::string>>>(j, "codes");
    if (lists.empty()) {
        throw SchemaError("family has no codes");
    }
    std::vector<StabilizerCode> codes;
    for (const auto &gens : lists) {
        try {
            codes.push_back(StabilizerCode::from_strings(gens));
        } catch (const std::exception &e) {
            throw SchemaError(std::string("bad code: ") + e.what());
        }
        if (codes.back().m() != m || codes.back().s() != s) {
            throw SchemaError("code shape disagrees with m and s");
        }
    }
    if (stored_epsilon) {
        *stored_epsilon = eps;
    }
    return make_family(std::move(codes), seed);
}

void save_json(const std::string &path, const json &j) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << j.dump(2) << "\n";
}

json load_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw SchemaError("cannot read " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw SchemaError(path + ": " + e.what());
    }
}

json attack_to_json(const AttackDescriptor &d) {
    json j{{"kind", attack_kind_name(d.kind)}, {"scope", scope_name(d.scope)}, {"label", d.label()}};
    switch (d.kind) {
        case AttackKind::FixedPauli:
            j["pauli"] = d.pauli.str();
            break;
        case AttackKind::PauliMixture: {
            json mix = json::array();
            for (const auto &[p, w] : d.mixture) {
                mix.push_back(json{{"pauli", p.str()}, {"weight", w}});
            }
            j["mixture"] = mix;
            break;
        }
        case AttackKind::Depolarizing:
            j["strength"] = d.strength;
            break;
        case AttackKind::Swap:
            j["r_qubit"] = d.r_qubit;
            j["t_qubit"] = d.t_qubit;
            break;
        case AttackKind::RandomDilation:
            j["seed"] = d.seed;
            j["env_dim"] = d.env_dim;
            break;
        case AttackKind::Identity:
            break;
    }
    return j;
}

AttackDescriptor attack_from_json(const json &j) {
    AttackDescriptor d;
    try {
        d.kind = parse_attack_kind(field<std::string>(j, "kind"));
    } catch (const SchemaError &) {
        throw;
    } catch (const std::exception &e) {
        throw SchemaError(e.what());
    }
    d.scope = j.contains("scope") ? parse_scope(field<std::string>(j, "scope")) : AttackScope::T;
    switch (d.kind) {
        case AttackKind::FixedPauli:
            d.pauli = parse_pauli(field<std::string>(j, "pauli"));
            break;
        case AttackKind::PauliMixture:
            for (const auto &e : field<json>(j, "mixture")) {
                d.mixture.emplace_back(parse_pauli(field<std::string>(e, "pauli")), field<double>(e, "weight"));
            }
            break;
        case AttackKind::Depolarizing:
            d.strength = field<double>(j, "strength");
            break;
        case AttackKind::Swap:
            d.r_qubit = field<std::size_t>(j, "r_qubit");
            d.t_qubit = field<std::size_t>(j, "t_qubit");
            d.scope = AttackScope::RT;
            break;
        case AttackKind::RandomDilation:
            d.seed = field<std::uint64_t>(j, "seed");
            d.env_dim = field<std::size_t>(j, "env_dim");
            break;
        case AttackKind::Identity:
            break;
    }
    return d;
}

json report_to_json(const AdvantageReport &r) {
    return json{{"protocol", r.protocol},
                {"attack", r.attack},
                {"input", r.input},
                {"p_acc", r.p_acc},
                {"advantage", r.advantage},
                {"distinguishing_probability", r.distinguishing_probability()},
                {"bound", r.bound},
                {"epsilon_used", r.epsilon_used},
                {"pass", r.pass},
                {"details", r.details}};
}

json wc_report_to_json(const WcReport &r) {
    return json{{"advantage", r.advantage},     {"tv_distance", r.tv_distance},
                {"accept_real", r.accept_real}, {"forge_probability", r.forge_probability},
                {"bound", r.bound},             {"message", r.message}};
}

json leak_report_to_json(const LeakReport &r) {
    return json{{"mutual_information", r.mutual_information},
                {"accept_probability", r.accept_probability},
                {"accept_entropy", r.accept_entropy},
                {"guessed_key", r.guessed_key}};
}

json cipher_to_json(const ApproxCipher &c) {
    return json{{"m", c.m}, {"K", c.size()}, {"seed", c.seed}, {"delta_measured", c.delta_measured}};
}

CompositionTree composition_from_json(const json &j) {
    CompositionTree t;
    auto nodes = field<json>(j, "nodes");
    if (!nodes.is_object()) {
        throw SchemaError("nodes must be an object");
    }
    for (const auto &[id, e] : nodes.items()) {
        if (!e.is_number()) {
            throw SchemaError("epsilon of node " + id + " is not a number");
        }
        t.nodes.emplace_back(id, e.get<double>());
    }
    if (j.contains("edges")) {
        for (const auto &e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
                throw SchemaError("edges must be [parent, child] pairs");
            }
            t.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
        }
    }
    return t;
}

json composition_to_json(const CompositionTree &t) {
    json nodes = json::object();
    for (const auto &[id, e] : t.nodes) {
        nodes[id] = e;
    }
    json edges = json::array();
    for (const auto &[p, c] : t.edges) {
        edges.push_back({p, c});
    }
    return json{{"nodes", nodes}, {"edges", edges}};
}

}  // namespace qakg
