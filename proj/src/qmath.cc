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

#include "qakg/qmath.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qakg {

namespace {

std::vector<std::size_t> strides_of(const RegisterList &regs) {
    std::vector<std::size_t> strides(regs.size());
    std::size_t s = 1;
    for (std::size_t k = 0; k < regs.size(); k++) {
        strides[k] = s;
        s *= regs[k].dim;
    }
    return strides;
}

// Flat offsets (into the full index space) of every combined index over the
// given register positions, enumerated little-endian in the given order.
std::vector<std::size_t> offsets_for(const RegisterList &regs, const std::vector<std::size_t> &positions) {
    auto strides = strides_of(regs);
    std::size_t count = 1;
    for (auto p : positions) {
        count *= regs[p].dim;
    }
    std::vector<std::size_t> out(count, 0);
    std::size_t block = 1;
    for (auto p : positions) {
        std::size_t d = regs[p].dim;
        for (std::size_t i = 0; i < count; i++) {
            out[i] += ((i / block) % d) * strides[p];
        }
        block *= d;
    }
    return out;
}

void check_unique(const RegisterList &regs) {
    std::set<std::string> seen;
    for (const auto &r : regs) {
        if (!seen.insert(r.name).second) {
            throw std::invalid_argument("duplicate register name: " + r.name);
        }
        if (r.dim == 0) {
            throw std::invalid_argument("register with zero dimension: " + r.name);
        }
    }
}

std::vector<std::size_t> positions_of(const RegisterList &regs, const std::vector<std::string> &names) {
    std::vector<std::size_t> pos;
    std::set<std::string> seen;
    for (const auto &n : names) {
        if (!seen.insert(n).second) {
            throw std::invalid_argument("register listed twice: " + n);
        }
        pos.push_back(register_position(regs, n));
    }
    return pos;
}

Matrix hermitian_part(const Matrix &a) {
    return (a + a.adjoint()) * 0.5;
}

}  // namespace

std::size_t total_dim(const RegisterList &regs) {
    std::size_t d = 1;
    for (const auto &r : regs) {
        d *= r.dim;
    }
    return d;
}

std::size_t register_position(const RegisterList &regs, const std::string &name) {
    for (std::size_t k = 0; k < regs.size(); k++) {
        if (regs[k].name == name) {
            return k;
        }
    }
    throw std::out_of_range("unknown register name: " + name);
}

bool has_register(const RegisterList &regs, const std::string &name) {
    return std::any_of(regs.begin(), regs.end(), [&](const Register &r) { return r.name == name; });
}

RegisterList qubit_register(const std::string &name, std::size_t num_qubits) {
    return {Register{name, std::size_t{1} << num_qubits}};
}

std::vector<std::string> register_names(const RegisterList &regs) {
    std::vector<std::string> out;
    for (const auto &r : regs) {
        out.push_back(r.name);
    }
    return out;
}

Matrix apply_rows(
    const Matrix &op,
    const Matrix &data,
    const RegisterList &regs,
    const std::vector<std::string> &targets,
    const RegisterList &outputs,
    RegisterList *out_regs) {
    if (static_cast<std::size_t>(data.rows()) != total_dim(regs)) {
        throw std::invalid_argument("data rows do not match register dimensions");
    }
    auto tpos = positions_of(regs, targets);
    std::vector<std::size_t> rpos;
    for (std::size_t k = 0; k < regs.size(); k++) {
        if (std::find(tpos.begin(), tpos.end(), k) == tpos.end()) {
            rpos.push_back(k);
        }
    }
    auto off_t = offsets_for(regs, tpos);
    auto off_r = offsets_for(regs, rpos);
    std::size_t dim_t = off_t.size();
    std::size_t dim_r = off_r.size();
    std::size_t dim_o = total_dim(outputs);
    if (static_cast<std::size_t>(op.cols()) != dim_t || static_cast<std::size_t>(op.rows()) != dim_o) {
        throw std::invalid_argument("operator shape does not match target/output dimensions");
    }
    RegisterList new_regs;
    for (auto p : rpos) {
        new_regs.push_back(regs[p]);
    }
    for (const auto &o : outputs) {
        new_regs.push_back(o);
    }
    check_unique(new_regs);

    std::size_t cols = data.cols();
    Matrix gathered(dim_t, dim_r * cols);
    for (std::size_t c = 0; c < cols; c++) {
        for (std::size_t r = 0; r < dim_r; r++) {
            for (std::size_t j = 0; j < dim_t; j++) {
                gathered(j, c * dim_r + r) = data(off_t[j] + off_r[r], c);
            }
        }
    }
    Matrix mapped = op * gathered;
    Matrix result(dim_r * dim_o, cols);
    for (std::size_t c = 0; c < cols; c++) {
        for (std::size_t o = 0; o < dim_o; o++) {
            for (std::size_t r = 0; r < dim_r; r++) {
                result(r + dim_r * o, c) = mapped(o, c * dim_r + r);
            }
        }
    }
    if (out_regs != nullptr) {
        *out_regs = std::move(new_regs);
    }
    return result;
}

Matrix reorder_rows(const Matrix &data, const RegisterList &regs, const std::vector<std::string> &order) {
    if (order.size() != regs.size()) {
        throw std::invalid_argument("reorder must list every register exactly once");
    }
    auto pos = positions_of(regs, order);
    auto off = offsets_for(regs, pos);
    Matrix out(data.rows(), data.cols());
    for (std::size_t i = 0; i < off.size(); i++) {
        out.row(i) = data.row(off[i]);
    }
    return out;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix identity(std::size_t dim) {
    return Matrix::Identity(dim, dim);
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(RegisterList regs, Vector amps) : regs_(std::move(regs)), amps_(std::move(amps)) {
    check_unique(regs_);
    if (static_cast<std::size_t>(amps_.size()) != total_dim(regs_)) {
        throw std::invalid_argument("amplitude count does not match register dimensions");
    }
}

StateVector StateVector::basis(const RegisterList &regs, const std::vector<std::size_t> &values) {
    if (values.size() != regs.size()) {
        throw std::invalid_argument("one basis value per register expected");
    }
    Vector v = Vector::Zero(total_dim(regs));
    std::size_t index = 0;
    auto strides = strides_of(regs);
    for (std::size_t k = 0; k < regs.size(); k++) {
        if (values[k] >= regs[k].dim) {
            throw std::out_of_range("basis value exceeds register dimension");
        }
        index += values[k] * strides[k];
    }
    v(index) = 1;
    return StateVector(regs, v);
}

void StateVector::validate_normalized(double tol) const {
    if (std::abs(norm_squared() - 1.0) > tol) {
        throw std::domain_error("state vector is not normalized");
    }
}

StateVector StateVector::normalized() const {
    double n = amps_.norm();
    if (n == 0) {
        throw std::domain_error("cannot normalize the zero vector");
    }
    return StateVector(regs_, amps_ / n);
}

StateVector StateVector::scaled(cplx factor) const {
    return StateVector(regs_, amps_ * factor);
}

StateVector StateVector::apply(const Matrix &op, const std::vector<std::string> &targets, const RegisterList &outputs) const {
    RegisterList new_regs;
    Matrix out = apply_rows(op, amps_, regs_, targets, outputs, &new_regs);
    return StateVector(std::move(new_regs), out.col(0));
}

StateVector StateVector::apply(const Matrix &op, const std::vector<std::string> &targets) const {
    RegisterList outs;
    for (const auto &t : targets) {
        outs.push_back(regs_[register_position(regs_, t)]);
    }
    return apply(op, targets, outs).reordered(register_names(regs_));
}

StateVector StateVector::project(const std::string &name, std::size_t value) const {
    const auto &r = regs_[register_position(regs_, name)];
    if (value >= r.dim) {
        throw std::out_of_range("projection value exceeds register dimension");
    }
    Matrix bra = Matrix::Zero(1, r.dim);
    bra(0, value) = 1;
    return apply(bra, {name}, {});
}

StateVector StateVector::reordered(const std::vector<std::string> &order) const {
    RegisterList new_regs;
    for (const auto &n : order) {
        new_regs.push_back(regs_[register_position(regs_, n)]);
    }
    return StateVector(new_regs, reorder_rows(amps_, regs_, order).col(0));
}

StateVector StateVector::renamed(const std::string &from, const std::string &to) const {
    RegisterList regs = regs_;
    regs[register_position(regs, from)].name = to;
    return StateVector(regs, amps_);
}

DensityMatrix StateVector::to_density() const {
    return DensityMatrix(regs_, amps_ * amps_.adjoint());
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    RegisterList regs = a.registers();
    regs.insert(regs.end(), b.registers().begin(), b.registers().end());
    check_unique(regs);
    // Little-endian: a is the low digit, so the flat vector is kron(b, a).
    Vector v(a.dim() * b.dim());
    for (std::size_t j = 0; j < b.dim(); j++) {
        v.segment(j * a.dim(), a.dim()) = b.amplitudes()(j) * a.amplitudes();
    }
    return StateVector(regs, v);
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(RegisterList regs, Matrix rho) : regs_(std::move(regs)), rho_(std::move(rho)) {
    check_unique(regs_);
    std::size_t d = total_dim(regs_);
    if (static_cast<std::size_t>(rho_.rows()) != d || static_cast<std::size_t>(rho_.cols()) != d) {
        throw std::invalid_argument("density matrix shape does not match register dimensions");
    }
}

DensityMatrix DensityMatrix::maximally_mixed(const RegisterList &regs) {
    std::size_t d = total_dim(regs);
    return DensityMatrix(regs, identity(d) / static_cast<double>(d));
}

void DensityMatrix::validate(double tol) const {
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol) {
        throw std::domain_error("density matrix is not Hermitian");
    }
    if (min_eigenvalue(rho_) < -kPsdTol) {
        throw std::domain_error("density matrix is not positive semidefinite");
    }
    if (std::abs(trace() - 1.0) > tol) {
        throw std::domain_error("density matrix does not have unit trace");
    }
}

DensityMatrix DensityMatrix::reordered(const std::vector<std::string> &order) const {
    RegisterList new_regs;
    for (const auto &n : order) {
        new_regs.push_back(regs_[register_position(regs_, n)]);
    }
    Matrix rows = reorder_rows(rho_, regs_, order);
    Matrix both = reorder_rows(rows.adjoint(), regs_, order).adjoint();
    return DensityMatrix(new_regs, both);
}

DensityMatrix DensityMatrix::partial_trace(const std::vector<std::string> &keep) const {
    std::set<std::string> keep_set(keep.begin(), keep.end());
    std::vector<std::size_t> kpos;
    std::vector<std::size_t> tpos;
    for (const auto &n : keep) {
        register_position(regs_, n);
    }
    for (std::size_t k = 0; k < regs_.size(); k++) {
        (keep_set.count(regs_[k].name) ? kpos : tpos).push_back(k);
    }
    auto off_k = offsets_for(regs_, kpos);
    auto off_t = offsets_for(regs_, tpos);
    RegisterList new_regs;
    for (auto p : kpos) {
        new_regs.push_back(regs_[p]);
    }
    Matrix out = Matrix::Zero(off_k.size(), off_k.size());
    for (std::size_t i = 0; i < off_k.size(); i++) {
        for (std::size_t j = 0; j < off_k.size(); j++) {
            cplx acc = 0;
            for (auto t : off_t) {
                acc += rho_(off_k[i] + t, off_k[j] + t);
            }
            out(i, j) = acc;
        }
    }
    return DensityMatrix(new_regs, out);
}

DensityMatrix DensityMatrix::scaled(double factor) const {
    return DensityMatrix(regs_, rho_ * factor);
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    RegisterList regs = a.registers();
    regs.insert(regs.end(), b.registers().begin(), b.registers().end());
    check_unique(regs);
    return DensityMatrix(regs, kron(b.matrix(), a.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix &rho, const std::vector<std::string> &keep) {
    return rho.partial_trace(keep);
}

namespace {

DensityMatrix aligned(const DensityMatrix &sigma, const RegisterList &target) {
    if (sigma.registers() == target) {
        return sigma;
    }
    if (sigma.registers().size() != target.size()) {
        throw std::invalid_argument("dimension mismatch between states");
    }
    for (const auto &r : target) {
        if (!has_register(sigma.registers(), r.name) ||
            sigma.registers()[register_position(sigma.registers(), r.name)].dim != r.dim) {
            throw std::invalid_argument("dimension mismatch between states");
        }
    }
    return sigma.reordered(register_names(target));
}

}  // namespace

double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw std::invalid_argument("dimension mismatch between states");
    }
    DensityMatrix s = aligned(sigma, rho.registers());
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(rho.matrix() - s.matrix()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw std::invalid_argument("dimension mismatch between states");
    }
    DensityMatrix s = aligned(sigma, rho.registers());
    if (min_eigenvalue(rho.matrix()) < -kPsdTol || min_eigenvalue(s.matrix()) < -kPsdTol) {
        throw std::domain_error("fidelity requires positive semidefinite inputs");
    }
    // F = ||A^dag B||_1^2 with rho = A A^dag, sigma = B B^dag. Dropping the
    // numerically zero eigenvalues keeps pure-state fidelities accurate.
    auto factor = [](const Matrix &m) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
        double cut = 1e-13 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        std::vector<Eigen::Index> keep;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); i++) {
            if (es.eigenvalues()(i) > cut) {
                keep.push_back(i);
            }
        }
        Matrix a(m.rows(), static_cast<Eigen::Index>(keep.size()));
        for (std::size_t k = 0; k < keep.size(); k++) {
            a.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]) * std::sqrt(es.eigenvalues()(keep[k]));
        }
        return a;
    };
    Matrix a = factor(rho.matrix());
    Matrix b = factor(s.matrix());
    if (a.cols() == 0 || b.cols() == 0) {
        return 0;
    }
    double f = trace_norm(a.adjoint() * b);
    return f * f;
}

double operator_norm(const Matrix &a) {
    if (a.size() == 0) {
        return 0;
    }
    Eigen::BDCSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

double trace_norm(const Matrix &a) {
    if (a.size() == 0) {
        return 0;
    }
    Eigen::BDCSVD<Matrix> svd(a);
    return svd.singularValues().sum();
}

Matrix psd_sqrt(const Matrix &a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(a));
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

double min_eigenvalue(const Matrix &hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(hermitian), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

double max_eigenvalue(const Matrix &hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(hermitian), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(es.eigenvalues().size() - 1);
}

// ---------------------------------------------------------------------------
// Channels

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus, double tol) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) {
        throw std::invalid_argument("channel needs at least one Kraus operator");
    }
    in_dim_ = kraus_[0].cols();
    out_dim_ = kraus_[0].rows();
    for (const auto &k : kraus_) {
        if (static_cast<std::size_t>(k.cols()) != in_dim_ || static_cast<std::size_t>(k.rows()) != out_dim_) {
            throw std::invalid_argument("Kraus operators have inconsistent shapes");
        }
    }
    if (completeness_residual() > tol) {
        throw std::domain_error("Kraus completeness violated");
    }
}

QuantumChannel QuantumChannel::identity(std::size_t dim) {
    return QuantumChannel({qakg::identity(dim)});
}

QuantumChannel QuantumChannel::unitary(const Matrix &u) {
    return QuantumChannel({u});
}

double QuantumChannel::completeness_residual() const {
    Matrix sum = Matrix::Zero(in_dim_, in_dim_);
    for (const auto &k : kraus_) {
        sum += k.adjoint() * k;
    }
    return (sum - qakg::identity(in_dim_)).cwiseAbs().maxCoeff();
}

Dilation dilate(const QuantumChannel &ch) {
    std::size_t env = ch.kraus().size();
    Matrix v(ch.out_dim() * env, ch.in_dim());
    for (std::size_t k = 0; k < env; k++) {
        v.block(k * ch.out_dim(), 0, ch.out_dim(), ch.in_dim()) = ch.kraus()[k];
    }
    return Dilation{v, env};
}

DensityMatrix apply_channel(const QuantumChannel &ch, const DensityMatrix &rho, const std::vector<std::string> &targets) {
    const auto &regs = rho.registers();
    std::size_t din = 1;
    RegisterList outs;
    for (const auto &t : targets) {
        const auto &r = regs[register_position(regs, t)];
        din *= r.dim;
        outs.push_back(r);
    }
    if (din != ch.in_dim()) {
        throw std::invalid_argument("channel input dimension does not match targets");
    }
    if (ch.out_dim() != ch.in_dim()) {
        throw std::invalid_argument("apply_channel expects a dimension-preserving channel");
    }
    if (ch.completeness_residual() > kExactTol) {
        throw std::domain_error("Kraus completeness violated");
    }
    Matrix acc = Matrix::Zero(rho.dim(), rho.dim());
    RegisterList new_regs;
    for (const auto &k : ch.kraus()) {
        Matrix left = apply_rows(k, rho.matrix(), regs, targets, outs, &new_regs);
        Matrix right = apply_rows(k, left.adjoint(), regs, targets, outs, &new_regs);
        acc += right.adjoint();
    }
    return DensityMatrix(new_regs, acc).reordered(register_names(regs));
}

// ---------------------------------------------------------------------------
// POVMs

Povm::Povm(std::vector<Matrix> elements, double tol) : elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw std::invalid_argument("empty POVM");
    }
    for (const auto &e : elements_) {
        if (e.rows() != elements_[0].rows() || e.cols() != e.rows()) {
            throw std::invalid_argument("POVM elements must be square and equally sized");
        }
        if ((e - e.adjoint()).cwiseAbs().maxCoeff() > tol || min_eigenvalue(e) < -tol) {
            throw std::domain_error("POVM element is not positive semidefinite");
        }
    }
    if (completeness_residual() > tol) {
        throw std::domain_error("POVM elements do not sum to identity");
    }
}

double Povm::completeness_residual() const {
    Matrix sum = Matrix::Zero(elements_[0].rows(), elements_[0].cols());
    for (const auto &e : elements_) {
        sum += e;
    }
    return (sum - identity(sum.rows())).cwiseAbs().maxCoeff();
}

std::vector<MeasurementOutcome> measure(const Povm &povm, const DensityMatrix &rho, const std::vector<std::string> &targets) {
    const auto &regs = rho.registers();
    RegisterList outs;
    for (const auto &t : targets) {
        outs.push_back(regs[register_position(regs, t)]);
    }
    if (total_dim(outs) != static_cast<std::size_t>(povm.elements()[0].rows())) {
        throw std::invalid_argument("POVM dimension does not match targets");
    }
    std::vector<MeasurementOutcome> out;
    for (const auto &e : povm.elements()) {
        Matrix root = psd_sqrt(e);
        RegisterList new_regs;
        Matrix left = apply_rows(root, rho.matrix(), regs, targets, outs, &new_regs);
        Matrix both = apply_rows(root, left.adjoint(), regs, targets, outs, &new_regs).adjoint();
        DensityMatrix post = DensityMatrix(new_regs, both).reordered(register_names(regs));
        double p = std::max(0.0, post.trace());
        if (p > 0) {
            post = post.scaled(1.0 / p);
        } else {
            post = DensityMatrix();
        }
        out.push_back(MeasurementOutcome{p, post});
    }
    return out;
}

StateVector max_entangled(const std::string &a, const std::string &b, std::size_t num_qubits) {
    std::size_t d = std::size_t{1} << num_qubits;
    Vector v = Vector::Zero(d * d);
    double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t k = 0; k < d; k++) {
        v(k + d * k) = amp;
    }
    return StateVector({Register{a, d}, Register{b, d}}, v);
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; i++) {
        for (std::size_t j = 0; j < cols; j++) {
            // Draw order fixed explicitly so results do not depend on evaluation order.
            double re = g(rng);
            double im = g(rng);
            m(i, j) = cplx(re, im);
        }
    }
    return m;
}

Vector random_ket(std::size_t dim, std::mt19937_64 &rng) {
    Matrix m = random_matrix(dim, 1, rng);
    return m.col(0) / m.norm();
}

StateVector random_state(const RegisterList &regs, std::mt19937_64 &rng) {
    return StateVector(regs, random_ket(total_dim(regs), rng));
}

Matrix random_unitary(std::size_t dim, std::mt19937_64 &rng) {
    Matrix z = random_matrix(dim, dim, rng);
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ() * identity(dim);
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (std::size_t k = 0; k < dim; k++) {
        cplx d = r(k, k);
        double mag = std::abs(d);
        if (mag > 0) {
            q.col(k) *= d / mag;
        }
    }
    return q;
}

DensityMatrix random_density(const RegisterList &regs, std::size_t rank, std::mt19937_64 &rng) {
    std::size_t d = total_dim(regs);
    Matrix g = random_matrix(d, std::max<std::size_t>(rank, 1), rng);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(regs, rho);
}

QuantumChannel random_channel(std::size_t dim, std::size_t env_dim, std::mt19937_64 &rng) {
    Matrix u = random_unitary(dim * env_dim, rng);
    std::vector<Matrix> kraus;
    for (std::size_t k = 0; k < env_dim; k++) {
        kraus.push_back(u.block(k * dim, 0, dim, dim));
    }
    return QuantumChannel(kraus, 1e-10);
}

double verify_lemma1(const Matrix &m) {
    std::size_t d2 = m.rows();
    std::size_t d1 = m.cols();
    Vector phi1 = Vector::Zero(d2 * d2);
    for (std::size_t j = 0; j < d2; j++) {
        phi1(j * d2 + j) = 1;
    }
    Vector phi2 = Vector::Zero(d1 * d1);
    for (std::size_t i = 0; i < d1; i++) {
        phi2(i * d1 + i) = 1;
    }
    Vector lhs = kron(m.transpose(), identity(d2)) * phi1;
    Vector rhs = kron(identity(d1), m) * phi2;
    return (lhs - rhs).norm();
}

double verify_lemma2(const Matrix &u, std::size_t d, std::size_t d2, std::size_t y) {
    std::size_t n = d * d2;
    if (static_cast<std::size_t>(u.rows()) != n || static_cast<std::size_t>(u.cols()) != n || y >= d) {
        throw std::invalid_argument("verify_lemma2: shape mismatch");
    }
    if ((u.adjoint() * u - identity(n)).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::domain_error("verify_lemma2: U is not unitary");
    }
    // Left side over systems (1, 2, 3).
    Vector in_l = Vector::Zero(n * d2);
    for (std::size_t j = 0; j < d2; j++) {
        in_l((y * d2 + j) * d2 + j) = 1;
    }
    Vector lhs = kron(u, identity(d2)) * in_l;
    // Right side: sum_i |i>_12 |i>_43 over systems (1, 2, 4, 3), then <y|_4.
    Vector in_r = Vector::Zero(n * n);
    for (std::size_t i = 0; i < n; i++) {
        in_r(i * n + i) = 1;
    }
    Vector mid = kron(identity(n), u.transpose()) * in_r;
    Vector rhs = Vector::Zero(n * d2);
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t k = 0; k < d2; k++) {
            rhs(i * d2 + k) = mid(i * n + y * d2 + k);
        }
    }
    return (lhs - rhs).norm();
}

}  // namespace qakg
