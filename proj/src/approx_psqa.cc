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

#include "qakg/approx_psqa.h"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "qakg/parallel.h"
#include "qakg/pauli.h"

namespace qakg {

namespace {

void check_m(std::size_t m) {
    if (m == 0 || m > 2) {
        throw std::invalid_argument("approximate cipher supports 1 or 2 qubits");
    }
}

Vector hadamard_basis_ket(std::size_t m, std::size_t b) {
    std::size_t d = std::size_t{1} << m;
    Vector v(d);
    double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t j = 0; j < d; j++) {
        v(j) = std::popcount(j & b) % 2 ? -amp : amp;
    }
    return v;
}

void check_message(const Vector &message, std::size_t m) {
    if (static_cast<std::size_t>(message.size()) != (std::size_t{1} << m)) {
        throw std::invalid_argument("message does not have m qubits");
    }
    if (std::abs(message.squaredNorm() - 1) > 1e-10) {
        throw std::invalid_argument("message is not normalized");
    }
}

void check_pairing(const ApproxCipher &cipher, const PtcFamily &family, const Attack &attack) {
    if (cipher.m != family.m) {
        throw std::invalid_argument("cipher and code family disagree on m");
    }
    if (cipher.unitaries.empty() || cipher.unitaries.size() != cipher.labels.size()) {
        throw std::invalid_argument("cipher needs one label per unitary");
    }
    std::size_t t_dim = std::size_t{1} << family.n();
    for (const auto &r : attack.outputs) {
        if (r.name == "T" && r.dim != t_dim) {
            throw std::invalid_argument("attack does not match the code length");
        }
        if (r.name == "R" && r.dim != (std::size_t{1} << family.m)) {
            throw std::invalid_argument("attack does not match the R register");
        }
    }
}

Vector unit(std::size_t dim, std::size_t k) {
    Vector v = Vector::Zero(dim);
    v(k) = 1;
    return v;
}

}  // namespace

double cipher_deviation(const std::vector<Matrix> &unitaries, const Matrix &rho) {
    if (unitaries.empty()) {
        throw std::invalid_argument("empty cipher");
    }
    Eigen::Index d = rho.rows();
    Matrix avg = Matrix::Zero(d, d);
    for (const auto &u : unitaries) {
        avg += u * rho * u.adjoint();
    }
    avg /= static_cast<double>(unitaries.size());
    avg -= identity(d) / static_cast<double>(d);
    return static_cast<double>(d) * operator_norm(avg);
}

double measure_delta(const std::vector<Matrix> &unitaries, std::size_t m, std::uint64_t seed, std::size_t samples) {
    std::size_t d = std::size_t{1} << m;
    std::vector<Vector> kets;
    for (std::size_t b = 0; b < d; b++) {
        kets.push_back(unit(d, b));
        kets.push_back(hadamard_basis_ket(m, b));
    }
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; i++) {
        kets.push_back(random_ket(d, rng));
    }
    std::vector<double> dev(kets.size());
    parallel_for(kets.size(), [&](std::size_t i) { dev[i] = cipher_deviation(unitaries, kets[i] * kets[i].adjoint()); });
    double best = 0;
    for (double v : dev) {
        best = std::max(best, v);
    }
    return best;
}

ApproxCipher sample_cipher(std::size_t m, std::size_t k, std::uint64_t seed) {
    check_m(m);
    if (k == 0) {
        throw std::invalid_argument("cipher needs at least one key");
    }
    ApproxCipher c;
    c.m = m;
    c.seed = seed;
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < k; i++) {
        c.unitaries.push_back(random_unitary(std::size_t{1} << m, rng));
        c.labels.push_back("u:" + std::to_string(i));
    }
    // separate stream for the test states
    c.delta_measured = measure_delta(c.unitaries, m, seed ^ 0x5bd1e995u);
    return c;
}

ApproxCipher pauli_cipher(std::size_t m) {
    check_m(m);
    ApproxCipher c;
    c.m = m;
    std::uint64_t dm = std::uint64_t{1} << m;
    for (std::uint64_t z = 0; z < dm; z++) {
        for (std::uint64_t x = 0; x < dm; x++) {
            PauliString key(m, x, z);
            c.unitaries.push_back(pauli_matrix(key));
            c.labels.push_back(key.str());
        }
    }
    c.delta_measured = measure_delta(c.unitaries, m, 0x5bd1e995u);
    return c;
}

RspMeasurement rsp_povm(const ApproxCipher &cipher, const Vector &psi) {
    check_message(psi, cipher.m);
    std::size_t d = std::size_t{1} << cipher.m;
    Matrix sum = Matrix::Zero(d, d);
    std::vector<Vector> kets;
    for (const auto &u : cipher.unitaries) {
        Vector phi = u * psi;
        sum += phi * phi.adjoint();
        kets.push_back(phi.conjugate());
    }
    double norm_m = max_eigenvalue(sum);
    std::vector<Matrix> elements;
    for (const auto &c : kets) {
        elements.push_back(c * c.adjoint() / norm_m);
    }
    Matrix fail = identity(d) - Matrix(sum.transpose()) / norm_m;
    fail = (fail + fail.adjoint()) / 2;
    double pr_f = fail.trace().real() / static_cast<double>(d);
    elements.push_back(fail);
    std::size_t idx = elements.size() - 1;
    return RspMeasurement{Povm(std::move(elements)), idx, norm_m, std::max(0.0, pr_f), std::move(kets)};
}

RspMeasurement rsp_povm(const ApproxCipher &cipher, const Matrix &rho) {
    std::size_t d = std::size_t{1} << cipher.m;
    if (static_cast<std::size_t>(rho.rows()) != d || rho.cols() != rho.rows()) {
        throw std::invalid_argument("message does not have m qubits");
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10 || std::abs(rho.trace().real() - 1) > 1e-10 ||
        std::abs((rho * rho).trace().real() - 1) > 1e-10) {
        throw std::invalid_argument("remote state preparation needs a pure message");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    return rsp_povm(cipher, Vector(es.eigenvectors().col(d - 1)));
}

DensityMatrix rsp_post_state(const RspMeasurement &rsp, std::size_t outcome, std::size_t m) {
    DensityMatrix phi = max_entangled("A", "B", m).to_density();
    auto outcomes = measure(rsp.povm, phi, {"A"});
    if (outcome >= outcomes.size()) {
        throw std::out_of_range("no such RSP outcome");
    }
    const auto &o = outcomes[outcome];
    if (o.probability <= 0) {
        throw std::domain_error("RSP outcome has zero probability");
    }
    return o.post_state.partial_trace({"B"});
}

StateVector psqa_input(const Vector &message, std::size_t m) {
    check_message(message, m);
    std::size_t d = std::size_t{1} << m;
    Vector v = Vector::Zero(d * d);
    for (std::size_t j = 0; j < d; j++) {
        v(d * j) = message(j);
    }
    return StateVector({Register{"R", d}, Register{"M", d}}, v);
}

HybridState run_psqa_kg(const ApproxCipher &cipher, const Vector &message, const PtcFamily &family, const Attack &attack,
                        ProtocolOptions options) {
    check_pairing(cipher, family, attack);
    return run_qa_kg_cipher(psqa_input(message, cipher.m), cipher.unitaries, cipher.labels, family, attack, options);
}

HybridState run_psrqa_kg(const ApproxCipher &cipher, const Vector &message, const PtcFamily &family, const Attack &attack,
                         ProtocolOptions options) {
    check_pairing(cipher, family, attack);
    RspMeasurement rsp = rsp_povm(cipher, message);
    std::size_t m = family.m;
    std::size_t dm = std::size_t{1} << m;
    std::size_t ds = std::size_t{1} << family.s;
    std::size_t dt = std::size_t{1} << family.n();
    std::size_t k_codes = family.size();
    std::vector<EncodingUnitary> encs;
    for (const auto &c : family.codes) {
        encs.push_back(encoding_unitary(c));
    }
    StateVector r0 = StateVector::basis({Register{"R", dm}}, {0});
    MixedState input = MixedState::from_state(tensor(r0, max_entangled("A", "A2", m)));
    Matrix sqrt_fail = psd_sqrt(rsp.povm.elements()[rsp.failure_index]);
    double w = 1.0 / static_cast<double>(ds * k_codes);
    Record fail_rec = {{kRsp, kRspFail}, {kVerdict, kRej}, {"M", kErr}, {kKeyA, kErr}, {kKeyB, kErr}};

    std::vector<HybridState> parts(k_codes * ds);
    parallel_for(parts.size(), [&](std::size_t job) {
        std::size_t t = job / ds;
        std::uint64_t y = job % ds;
        const auto &enc = encs[t];
        MixedState st = input.with_pure("S", unit(ds, y));
        st = st.apply(enc.matrix, {"A2", "S"}, {Register{"T", dt}});
        st = st.apply(attack.dilation.isometry, attack.targets, attack.outputs);
        st = st.apply(enc.decoder(), {"T"}, {Register{"B", dm}, Register{"S", ds}});
        Matrix acc_bra = Matrix::Zero(1, ds);
        acc_bra(0, y) = 1;
        Matrix rej_proj = identity(ds);
        rej_proj(y, y) = 0;
        MixedState acc_all = st.apply(acc_bra, {"S"}, {});
        MixedState rej_all = st.apply(rej_proj, {"S"}).trace_out({"B", "S"});
        HybridState part;
        for (std::size_t k = 0; k < cipher.size(); k++) {
            const std::string &label = cipher.labels[k];
            // O_k = |c_k><c_k| / M, applied to Alice's half A.
            Matrix bra = rsp.kets[k].adjoint() / std::sqrt(rsp.norm_m);
            MixedState acc = acc_all.apply(bra, {"A"}, {}).apply(cipher.unitaries[k].adjoint(), {"B"}).renamed("B", "M");
            part.add({{kVerdict, kAcc}, {kKeyA, label}, {kKeyB, label}}, acc.reordered({"R", "M", "E"}).scaled(w));
            Record rej_rec = {{kVerdict, kRej}, {"M", kErr}, {kKeyB, kErr},
                              {kKeyA, options.back_communication ? kErr : label}};
            part.add(rej_rec, rej_all.apply(bra, {"A"}, {}).reordered({"R", "E"}).scaled(w));
        }
        MixedState fail_acc = acc_all.apply(sqrt_fail, {"A"}).trace_out({"A", "B"});
        MixedState fail_rej = rej_all.apply(sqrt_fail, {"A"}).trace_out({"A"});
        part.add(fail_rec, fail_acc.reordered({"R", "E"}).scaled(w));
        part.add(fail_rec, fail_rej.reordered({"R", "E"}).scaled(w));
        parts[job] = part.compressed();
    });
    return HybridState::sum(parts);
}

double psrqa_branch_deviation(const HybridState &psqa, const HybridState &psrqa, const RspMeasurement &rsp) {
    double keep = 1 - rsp.failure_probability;
    if (keep <= 0) {
        throw std::domain_error("RSP always fails");
    }
    HybridState ok;
    for (const auto &[rec, st] : psrqa.branches()) {
        if (!rec.count(kRsp)) {
            ok.add(rec, st);
        }
    }
    return trace_distance(psqa, ok.scaled(1 / keep));
}

AdvantageReport psqa_advantage(const ApproxCipher &cipher, const Vector &message, const PtcFamily &family,
                               const Attack &attack, const std::string &input_name, ProtocolOptions options) {
    HybridState real = run_psqa_kg(cipher, message, family, attack, options);
    HybridState twin = run_psrqa_kg(cipher, message, family, attack, options);
    HybridState ideal = qa_kg_ideal(psqa_input(message, cipher.m), family, attack, cipher.labels, options);
    RspMeasurement rsp = rsp_povm(cipher, message);
    double eps = family.epsilon_verified;
    AdvantageReport r = make_report("psqa_kg", attack.descriptor.label(), input_name, real.probability(kVerdict, kAcc),
                                    trace_distance(real, ideal), bound_step3(eps) + 2 * rsp.failure_probability, eps);
    r.details["pr_f"] = rsp.failure_probability;
    r.details["delta_measured"] = cipher.delta_measured;
    r.details["branch_deviation"] = psrqa_branch_deviation(real, twin, rsp);
    r.details["p_acc_ideal"] = ideal.probability(kVerdict, kAcc);
    r.details["K"] = static_cast<double>(cipher.size());
    return r;
}

Vector psqa_message(const std::string &name, std::size_t m) {
    std::size_t d = std::size_t{1} << m;
    if (name == "plus") {
        return hadamard_basis_ket(m, 0);
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
            if (head == "basis" && value < d) {
                return unit(d, value);
            }
            if (head == "random") {
                std::mt19937_64 rng(value);
                return random_ket(d, rng);
            }
        }
    }
    throw std::invalid_argument("unknown message: " + name);
}

}  // namespace qakg
