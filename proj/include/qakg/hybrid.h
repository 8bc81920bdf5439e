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


#ifndef QAKG_HYBRID_H
#define QAKG_HYBRID_H

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qakg/qmath.h"

namespace qakg {

/// Unnormalized mixed state held as columns: rho = V V^dag. The weight of a
/// branch is Tr rho. Registers follow the little-endian layout of qmath.
class MixedState {
   public:
    MixedState() = default;
    MixedState(RegisterList regs, Matrix columns);

    static MixedState from_state(const StateVector &psi);
    /// Factorizes a PSD matrix by eigendecomposition (eigenvalues clipped at 0).
    static MixedState from_density(const DensityMatrix &rho);

    const RegisterList &registers() const { return regs_; }
    const Matrix &columns() const { return cols_; }
    std::size_t dim() const { return static_cast<std::size_t>(cols_.rows()); }
    std::size_t rank_bound() const { return static_cast<std::size_t>(cols_.cols()); }
    double weight() const { return cols_.squaredNorm(); }
    bool empty() const { return cols_.cols() == 0 || weight() == 0; }

    DensityMatrix density() const;
    MixedState apply(const Matrix &op, const std::vector<std::string> &targets, const RegisterList &outputs) const;
    /// Square operator on `targets`, layout unchanged.
    MixedState apply(const Matrix &op, const std::vector<std::string> &targets) const;
    /// Traces out everything not in `keep`; kept registers retain their relative order.
    MixedState partial_trace(const std::vector<std::string> &keep) const;
    MixedState trace_out(const std::vector<std::string> &names) const;
    MixedState reordered(const std::vector<std::string> &order) const;
    MixedState renamed(const std::string &from, const std::string &to) const;
    /// Multiplies the represented operator by `factor` >= 0.
    MixedState scaled(double factor) const;
    /// Appends a register in the given pure state (normalized vector).
    MixedState with_pure(const std::string &name, const Vector &ket) const;
    /// Sum of the represented operators. Registers of `other` are aligned to this.
    MixedState plus(const MixedState &other) const;
    /// Reduces the column count to at most dim.
    MixedState compressed() const;
    /// Sum of the represented operators, aligned to the first part's registers.
    static MixedState sum(const std::vector<MixedState> &parts);

   private:
    RegisterList regs_;
    Matrix cols_;
};

/// || V V^dag - W W^dag ||_1 with registers of `b` aligned to `a`.
double trace_distance(const MixedState &a, const MixedState &b);
/// (|| V^dag W ||_1)^2, the squared fidelity of the represented operators.
double fidelity(const MixedState &a, const MixedState &b);
/// Registers of a followed by registers of b.
MixedState tensor(const MixedState &a, const MixedState &b);

/// Classical record of a branch: named symbols such as V -> acc, keyB -> xz:1|0.
using Record = std::map<std::string, std::string>;

std::string record_str(const Record &r);

/// Classical-quantum state: for every record, a subnormalized quantum state.
/// Records with zero weight are dropped. Different records may carry
/// different quantum registers (an ERR symbol replaces a quantum system).
class HybridState {
   public:
    using Branches = std::map<Record, MixedState>;

    HybridState() = default;

    void add(const Record &record, const MixedState &state);
    void merge(const HybridState &other);
    /// Record-wise sum of all parts, concatenating columns once per record.
    static HybridState sum(const std::vector<HybridState> &parts);

    const Branches &branches() const { return branches_; }
    std::size_t size() const { return branches_.size(); }
    double total_weight() const;
    /// Weight of records whose `key` entry equals `value`.
    double probability(const std::string &key, const std::string &value) const;

    /// Applies fn to every branch quantum state.
    HybridState map_states(const std::function<MixedState(const Record &, const MixedState &)> &fn) const;
    /// Drops classical entries `keys` (summing merged branches).
    HybridState forget(const std::vector<std::string> &keys) const;
    /// Keeps only records with record[key] == value.
    HybridState select(const std::string &key, const std::string &value) const;
    HybridState scaled(double factor) const;
    HybridState trace_out(const std::vector<std::string> &names) const;
    HybridState compressed() const;

    void validate(double tol = 1e-10) const;

   private:
    Branches branches_;
};

/// sum over records of || p_c rho_c - q_c sigma_c ||_1; a record on one side
/// only contributes its weight.
double trace_distance(const HybridState &a, const HybridState &b);

/// Block-diagonal dense embedding of both states over the union of their
/// records (same order on both sides). Used to spot-check the hybrid distance.
std::pair<Matrix, Matrix> block_embedding(const HybridState &a, const HybridState &b);

}  // namespace qakg

#endif
