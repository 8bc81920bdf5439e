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

#ifndef QAKG_QMATH_H
#define QAKG_QMATH_H

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qakg {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Tolerance for exact algebraic identities.
inline constexpr double kExactTol = 1e-12;
/// Tolerance for quantities accumulated through a protocol pipeline.
inline constexpr double kPipelineTol = 1e-9;
/// Eigenvalues above -kPsdTol count as nonnegative.
inline constexpr double kPsdTol = 1e-10;

struct Register {
    std::string name;
    std::size_t dim;
    bool operator==(const Register &other) const = default;
};

/// Ordered register list. Index layout is little-endian: the first register
/// is the least significant digit of the flat basis index, and inside a
/// multi-qubit register qubit j is bit j of the register value.
using RegisterList = std::vector<Register>;

std::size_t total_dim(const RegisterList &regs);
std::size_t register_position(const RegisterList &regs, const std::string &name);
bool has_register(const RegisterList &regs, const std::string &name);
RegisterList qubit_register(const std::string &name, std::size_t num_qubits);
std::vector<std::string> register_names(const RegisterList &regs);

/// Applies `op` (dim_out x dim_in) to the row index space of `data` restricted
/// to the `targets` registers. The targets are removed and `outputs` appended
/// at the end of the register list. Columns of `data` are transformed
/// independently, so this serves kets (one column) and ensembles alike.
Matrix apply_rows(
    const Matrix &op,
    const Matrix &data,
    const RegisterList &regs,
    const std::vector<std::string> &targets,
    const RegisterList &outputs,
    RegisterList *out_regs);

/// Permutes the row index space of `data` so registers appear in `order`.
Matrix reorder_rows(const Matrix &data, const RegisterList &regs, const std::vector<std::string> &order);

Matrix kron(const Matrix &a, const Matrix &b);
Matrix identity(std::size_t dim);

class DensityMatrix;

/// A ket over named registers. Branch vectors inside protocol simulations
/// are left unnormalized (their squared norm is the branch weight); use
/// `validate_normalized` at API boundaries.
class StateVector {
   public:
    StateVector() = default;
    StateVector(RegisterList regs, Vector amps);

    static StateVector basis(const RegisterList &regs, const std::vector<std::size_t> &values);

    const RegisterList &registers() const { return regs_; }
    const Vector &amplitudes() const { return amps_; }
    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    double norm_squared() const { return amps_.squaredNorm(); }

    void validate_normalized(double tol = kExactTol) const;
    StateVector normalized() const;
    StateVector scaled(cplx factor) const;

    /// General linear map on `targets`; targets are replaced by `outputs` at the end.
    StateVector apply(const Matrix &op, const std::vector<std::string> &targets, const RegisterList &outputs) const;
    /// Square operator on `targets`; register layout unchanged.
    StateVector apply(const Matrix &op, const std::vector<std::string> &targets) const;
    /// Projects register `name` onto basis value `value` and removes it.
    StateVector project(const std::string &name, std::size_t value) const;
    StateVector reordered(const std::vector<std::string> &order) const;
    StateVector renamed(const std::string &from, const std::string &to) const;

    DensityMatrix to_density() const;

   private:
    RegisterList regs_;
    Vector amps_;
};

class DensityMatrix {
   public:
    DensityMatrix() = default;
    DensityMatrix(RegisterList regs, Matrix rho);

    static DensityMatrix maximally_mixed(const RegisterList &regs);

    const RegisterList &registers() const { return regs_; }
    const Matrix &matrix() const { return rho_; }
    std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
    double trace() const { return rho_.trace().real(); }

    /// Checks Hermiticity, positivity (min eigenvalue >= -kPsdTol) and unit trace.
    void validate(double tol = 1e-9) const;
    DensityMatrix reordered(const std::vector<std::string> &order) const;
    /// Reduced state on `keep`; kept registers stay in their original relative order.
    DensityMatrix partial_trace(const std::vector<std::string> &keep) const;
    DensityMatrix scaled(double factor) const;

   private:
    RegisterList regs_;
    Matrix rho_;
};

StateVector tensor(const StateVector &a, const StateVector &b);
DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);

DensityMatrix partial_trace(const DensityMatrix &rho, const std::vector<std::string> &keep);

/// Full Schatten 1-norm ||rho - sigma||_1 (maximum 2 for states).
double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma);
/// Squared-overlap fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma);
/// Largest singular value.
double operator_norm(const Matrix &a);
/// Sum of singular values.
double trace_norm(const Matrix &a);
/// Eigenvalue-clipped square root of a Hermitian PSD matrix.
Matrix psd_sqrt(const Matrix &a);
double min_eigenvalue(const Matrix &hermitian);
double max_eigenvalue(const Matrix &hermitian);

/// CPTP map in operator-sum form.
class QuantumChannel {
   public:
    QuantumChannel() = default;
    explicit QuantumChannel(std::vector<Matrix> kraus, double tol = kExactTol);

    static QuantumChannel identity(std::size_t dim);
    static QuantumChannel unitary(const Matrix &u);

    const std::vector<Matrix> &kraus() const { return kraus_; }
    std::size_t in_dim() const { return in_dim_; }
    std::size_t out_dim() const { return out_dim_; }
    /// ||sum K^dag K - I||_max
    double completeness_residual() const;

   private:
    std::vector<Matrix> kraus_;
    std::size_t in_dim_ = 0;
    std::size_t out_dim_ = 0;
};

/// Stinespring isometry V = sum_k K_k (x) |k>_E. Row index is out + out_dim * k.
struct Dilation {
    Matrix isometry;
    std::size_t env_dim;
};
Dilation dilate(const QuantumChannel &ch);

/// sum_k K rho K^dag on `targets`, identity elsewhere. Square channels only.
DensityMatrix apply_channel(const QuantumChannel &ch, const DensityMatrix &rho, const std::vector<std::string> &targets);

class Povm {
   public:
    explicit Povm(std::vector<Matrix> elements, double tol = 1e-10);
    const std::vector<Matrix> &elements() const { return elements_; }
    double completeness_residual() const;

   private:
    std::vector<Matrix> elements_;
};

struct MeasurementOutcome {
    double probability;
    DensityMatrix post_state;  // normalized; empty registers if probability is zero
};
/// Luders update sqrt(O) rho sqrt(O) / p on `targets`.
std::vector<MeasurementOutcome> measure(const Povm &povm, const DensityMatrix &rho, const std::vector<std::string> &targets);

/// |Phi>^{(x)m} = 2^{-m/2} sum_a |a>_A |a>_B.
StateVector max_entangled(const std::string &a, const std::string &b, std::size_t num_qubits);

Vector random_ket(std::size_t dim, std::mt19937_64 &rng);
StateVector random_state(const RegisterList &regs, std::mt19937_64 &rng);
Matrix random_unitary(std::size_t dim, std::mt19937_64 &rng);
Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64 &rng);
DensityMatrix random_density(const RegisterList &regs, std::size_t rank, std::mt19937_64 &rng);
/// Channel whose dilation is the first `dim` columns of a Haar unitary on dim * env_dim.
QuantumChannel random_channel(std::size_t dim, std::size_t env_dim, std::mt19937_64 &rng);

/// || (M^T (x) I) sum_j |j>|j> - (I (x) M) sum_i |i>|i> ||, M is d2 x d1.
double verify_lemma1(const Matrix &m);
/// Residual of (U_12 (x) I_3)[|y>_1 sum_j |j>_2|j>_3] = (I_12 (x) <y|_4 U^T_43) sum_i |i>_12|i>_43,
/// with U acting on a d-dimensional system 1 and a d2-dimensional system 2.
/// These two use the textbook ordering (system 1 most significant).
double verify_lemma2(const Matrix &u, std::size_t d, std::size_t d2, std::size_t y);

}  // namespace qakg

#endif
