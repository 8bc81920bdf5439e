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

#include "qakg/hybrid.h"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qakg {

namespace {

std::vector<std::string> order_matching(const RegisterList &have, const RegisterList &want) {
    if (have.size() != want.size()) {
        throw std::invalid_argument("register sets differ");
    }
    for (const auto &r : want) {
        if (!has_register(have, r.name) || have[register_position(have, r.name)].dim != r.dim) {
            throw std::invalid_argument("register sets differ: " + r.name);
        }
    }
    return register_names(want);
}

Matrix factor_psd(const Matrix &rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es((rho + rho.adjoint()) * 0.5);
    const auto &ev = es.eigenvalues();
    double top = std::max(0.0, ev.maxCoeff());
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < ev.size(); i++) {
        if (ev(i) > 1e-15 * top && ev(i) > 0) {
            keep.push_back(i);
        }
    }
    Matrix out(rho.rows(), keep.size());
    for (std::size_t k = 0; k < keep.size(); k++) {
        out.col(k) = es.eigenvectors().col(keep[k]) * std::sqrt(ev(keep[k]));
    }
    return out;
}

}  // namespace

MixedState::MixedState(RegisterList regs, Matrix columns) : regs_(std::move(regs)), cols_(std::move(columns)) {
    if (static_cast<std::size_t>(cols_.rows()) != total_dim(regs_)) {
        throw std::invalid_argument("column length does not match register dimensions");
    }
}

MixedState MixedState::from_state(const StateVector &psi) {
    return MixedState(psi.registers(), psi.amplitudes());
}

MixedState MixedState::from_density(const DensityMatrix &rho) {
    return MixedState(rho.registers(), factor_psd(rho.matrix()));
}

DensityMatrix MixedState::density() const {
    return DensityMatrix(regs_, cols_ * cols_.adjoint());
}

MixedState MixedState::apply(const Matrix &op, const std::vector<std::string> &targets, const RegisterList &outputs) const {
    RegisterList new_regs;
    Matrix out = apply_rows(op, cols_, regs_, targets, outputs, &new_regs);
    return MixedState(std::move(new_regs), std::move(out));
}

MixedState MixedState::apply(const Matrix &op, const std::vector<std::string> &targets) const {
    RegisterList outs;
    for (const auto &t : targets) {
        outs.push_back(regs_[register_position(regs_, t)]);
    }
    return apply(op, targets, outs).reordered(register_names(regs_));
}

MixedState MixedState::partial_trace(const std::vector<std::string> &keep) const {
    std::set<std::string> keep_set(keep.begin(), keep.end());
    for (const auto &k : keep) {
        register_position(regs_, k);
    }
    std::vector<std::string> order;
    RegisterList kept;
    std::size_t dim_t = 1;
    for (const auto &r : regs_) {
        if (keep_set.count(r.name)) {
            order.push_back(r.name);
            kept.push_back(r);
        }
    }
    for (const auto &r : regs_) {
        if (!keep_set.count(r.name)) {
            order.push_back(r.name);
            dim_t *= r.dim;
        }
    }
    Matrix sorted = reorder_rows(cols_, regs_, order);
    if (dim_t == 1) {
        return MixedState(std::move(kept), std::move(sorted));
    }
    std::size_t dim_k = total_dim(kept);
    Matrix out(dim_k, cols_.cols() * dim_t);
    for (Eigen::Index c = 0; c < cols_.cols(); c++) {
        for (std::size_t t = 0; t < dim_t; t++) {
            out.col(c * dim_t + t) = sorted.col(c).segment(t * dim_k, dim_k);
        }
    }
    MixedState result(kept, std::move(out));
    if (result.rank_bound() > 2 * result.dim()) {
        return result.compressed();
    }
    return result;
}

MixedState MixedState::trace_out(const std::vector<std::string> &names) const {
    std::set<std::string> drop(names.begin(), names.end());
    for (const auto &n : names) {
        register_position(regs_, n);
    }
    std::vector<std::string> keep;
    for (const auto &r : regs_) {
        if (!drop.count(r.name)) {
            keep.push_back(r.name);
        }
    }
    return partial_trace(keep);
}

MixedState MixedState::reordered(const std::vector<std::string> &order) const {
    if (order == register_names(regs_)) {
        return *this;
    }
    RegisterList new_regs;
    for (const auto &n : order) {
        new_regs.push_back(regs_[register_position(regs_, n)]);
    }
    return MixedState(new_regs, reorder_rows(cols_, regs_, order));
}

MixedState MixedState::renamed(const std::string &from, const std::string &to) const {
    RegisterList regs = regs_;
    regs[register_position(regs, from)].name = to;
    return MixedState(regs, cols_);
}

MixedState MixedState::scaled(double factor) const {
    if (factor < 0) {
        throw std::invalid_argument("negative scale factor");
    }
    return MixedState(regs_, cols_ * std::sqrt(factor));
}

MixedState MixedState::with_pure(const std::string &name, const Vector &ket) const {
    RegisterList regs = regs_;
    regs.push_back(Register{name, static_cast<std::size_t>(ket.size())});
    Matrix out(cols_.rows() * ket.size(), cols_.cols());
    for (Eigen::Index j = 0; j < ket.size(); j++) {
        out.block(j * cols_.rows(), 0, cols_.rows(), cols_.cols()) = ket(j) * cols_;
    }
    return MixedState(regs, std::move(out));
}

MixedState MixedState::plus(const MixedState &other) const {
    if (cols_.cols() == 0 && regs_.empty()) {
        return other;
    }
    MixedState b = other.reordered(order_matching(other.registers(), regs_));
    Matrix out(cols_.rows(), cols_.cols() + b.cols_.cols());
    out << cols_, b.cols_;
    MixedState result(regs_, std::move(out));
    if (result.rank_bound() > 2 * result.dim()) {
        return result.compressed();
    }
    return result;
}

MixedState MixedState::compressed() const {
    if (rank_bound() <= dim()) {
        return *this;
    }
    // V V^dag = R^dag R for the QR factorization V^dag = Q R.
    Eigen::HouseholderQR<Matrix> qr(cols_.adjoint());
    Matrix r = qr.matrixQR().topRows(dim()).triangularView<Eigen::Upper>();
    return MixedState(regs_, r.adjoint());
}

MixedState MixedState::sum(const std::vector<MixedState> &parts) {
    if (parts.empty()) {
        return MixedState();
    }
    const RegisterList &regs = parts[0].registers();
    std::vector<MixedState> aligned;
    Eigen::Index total = 0;
    for (const auto &p : parts) {
        aligned.push_back(p.reordered(order_matching(p.registers(), regs)));
        total += p.columns().cols();
    }
    Matrix out(parts[0].dim(), total);
    Eigen::Index off = 0;
    for (const auto &p : aligned) {
        out.middleCols(off, p.columns().cols()) = p.columns();
        off += p.columns().cols();
    }
    return MixedState(regs, std::move(out)).compressed();
}

double trace_distance(const MixedState &a, const MixedState &b) {
    MixedState bb = b.reordered(order_matching(b.registers(), a.registers()));
    std::size_t r1 = a.rank_bound();
    std::size_t r2 = bb.rank_bound();
    std::size_t r = r1 + r2;
    std::size_t dim = a.dim();
    Eigen::VectorXd ev;
    if (r == 0) {
        return 0;
    }
    if (r < dim) {
        Matrix joint(dim, r);
        joint << a.columns(), bb.columns();
        Eigen::HouseholderQR<Matrix> qr(joint);
        Matrix rr = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
        Eigen::VectorXd signs(r);
        signs.head(r1).setOnes();
        signs.tail(r2).setConstant(-1);
        Matrix inner = rr * signs.cast<cplx>().asDiagonal() * rr.adjoint();
        Eigen::SelfAdjointEigenSolver<Matrix> es((inner + inner.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
        ev = es.eigenvalues();
    } else {
        Matrix diff = a.columns() * a.columns().adjoint() - bb.columns() * bb.columns().adjoint();
        Eigen::SelfAdjointEigenSolver<Matrix> es((diff + diff.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
        ev = es.eigenvalues();
    }
    return ev.cwiseAbs().sum();
}

double fidelity(const MixedState &a, const MixedState &b) {
    MixedState bb = b.reordered(order_matching(b.registers(), a.registers()));
    double f = trace_norm(a.columns().adjoint() * bb.columns());
    return f * f;
}

MixedState tensor(const MixedState &a, const MixedState &b) {
    RegisterList regs = a.registers();
    regs.insert(regs.end(), b.registers().begin(), b.registers().end());
    Matrix out(a.dim() * b.dim(), a.rank_bound() * b.rank_bound());
    for (std::size_t j = 0; j < b.rank_bound(); j++) {
        for (std::size_t i = 0; i < a.rank_bound(); i++) {
            for (std::size_t k = 0; k < b.dim(); k++) {
                out.col(j * a.rank_bound() + i).segment(k * a.dim(), a.dim()) = b.columns()(k, j) * a.columns().col(i);
            }
        }
    }
    return MixedState(regs, std::move(out));
}

std::string record_str(const Record &r) {
    std::string out;
    for (const auto &[k, v] : r) {
        if (!out.empty()) {
            out += ",";
        }
        out += k + "=" + v;
    }
    return out;
}

void HybridState::add(const Record &record, const MixedState &state) {
    if (state.rank_bound() == 0) {
        return;
    }
    auto it = branches_.find(record);
    if (it == branches_.end()) {
        branches_.emplace(record, state);
    } else {
        it->second = it->second.plus(state);
    }
}

void HybridState::merge(const HybridState &other) {
    for (const auto &[rec, st] : other.branches_) {
        add(rec, st);
    }
}

HybridState HybridState::sum(const std::vector<HybridState> &parts) {
    std::map<Record, std::vector<MixedState>> pending;
    for (const auto &p : parts) {
        for (const auto &[rec, st] : p.branches_) {
            pending[rec].push_back(st);
        }
    }
    HybridState out;
    for (const auto &[rec, list] : pending) {
        out.add(rec, MixedState::sum(list));
    }
    return out;
}

double HybridState::total_weight() const {
    double w = 0;
    for (const auto &[rec, st] : branches_) {
        w += st.weight();
    }
    return w;
}

double HybridState::probability(const std::string &key, const std::string &value) const {
    double w = 0;
    for (const auto &[rec, st] : branches_) {
        auto it = rec.find(key);
        if (it != rec.end() && it->second == value) {
            w += st.weight();
        }
    }
    return w;
}

HybridState HybridState::map_states(const std::function<MixedState(const Record &, const MixedState &)> &fn) const {
    HybridState out;
    for (const auto &[rec, st] : branches_) {
        out.add(rec, fn(rec, st));
    }
    return out;
}

HybridState HybridState::forget(const std::vector<std::string> &keys) const {
    HybridState out;
    for (const auto &[rec, st] : branches_) {
        Record r = rec;
        for (const auto &k : keys) {
            r.erase(k);
        }
        out.add(r, st);
    }
    return out;
}

HybridState HybridState::select(const std::string &key, const std::string &value) const {
    HybridState out;
    for (const auto &[rec, st] : branches_) {
        auto it = rec.find(key);
        if (it != rec.end() && it->second == value) {
            out.add(rec, st);
        }
    }
    return out;
}

HybridState HybridState::scaled(double factor) const {
    return map_states([&](const Record &, const MixedState &st) { return st.scaled(factor); });
}

HybridState HybridState::trace_out(const std::vector<std::string> &names) const {
    return map_states([&](const Record &, const MixedState &st) {
        std::vector<std::string> present;
        for (const auto &n : names) {
            if (has_register(st.registers(), n)) {
                present.push_back(n);
            }
        }
        return st.trace_out(present);
    });
}

HybridState HybridState::compressed() const {
    return map_states([](const Record &, const MixedState &st) { return st.compressed(); });
}

void HybridState::validate(double tol) const {
    if (std::abs(total_weight() - 1.0) > tol) {
        throw std::domain_error("hybrid state branch probabilities do not sum to 1");
    }
}

double trace_distance(const HybridState &a, const HybridState &b) {
    double total = 0;
    for (const auto &[rec, st] : a.branches()) {
        auto it = b.branches().find(rec);
        total += (it == b.branches().end()) ? st.weight() : trace_distance(st, it->second);
    }
    for (const auto &[rec, st] : b.branches()) {
        if (a.branches().find(rec) == a.branches().end()) {
            total += st.weight();
        }
    }
    return total;
}

std::pair<Matrix, Matrix> block_embedding(const HybridState &a, const HybridState &b) {
    std::set<Record> records;
    for (const auto &[rec, st] : a.branches()) {
        records.insert(rec);
    }
    for (const auto &[rec, st] : b.branches()) {
        records.insert(rec);
    }
    std::vector<std::pair<Matrix, Matrix>> blocks;
    std::size_t total = 0;
    for (const auto &rec : records) {
        auto ia = a.branches().find(rec);
        auto ib = b.branches().find(rec);
        const MixedState &ref = (ia != a.branches().end()) ? ia->second : ib->second;
        auto order = register_names(ref.registers());
        std::size_t d = ref.dim();
        Matrix ma = (ia != a.branches().end()) ? ia->second.density().matrix() : Matrix(Matrix::Zero(d, d));
        Matrix mb = (ib != b.branches().end()) ? ib->second.reordered(order).density().matrix() : Matrix(Matrix::Zero(d, d));
        blocks.emplace_back(ma, mb);
        total += d;
    }
    Matrix ea = Matrix::Zero(total, total);
    Matrix eb = Matrix::Zero(total, total);
    std::size_t off = 0;
    for (const auto &[ma, mb] : blocks) {
        ea.block(off, off, ma.rows(), ma.cols()) = ma;
        eb.block(off, off, mb.rows(), mb.cols()) = mb;
        off += ma.rows();
    }
    return {ea, eb};
}

}  // namespace qakg
