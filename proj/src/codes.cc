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

#include "qakg/codes.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "qakg/parallel.h"

namespace qakg {

namespace {

int symplectic_form(std::uint64_t u, std::uint64_t v, std::size_t n) {
    std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    std::uint64_t ux = u & mask, uz = u >> n;
    std::uint64_t vx = v & mask, vz = v >> n;
    return std::popcount((ux & vz) ^ (uz & vx)) & 1;
}

// Row w such that popcount(v & w) = symplectic_form(v, g).
std::uint64_t swapped(std::uint64_t g, std::size_t n) {
    std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    return ((g & mask) << n) | (g >> n);
}

// Incremental GF(2) basis in echelon form keyed by leading bit.
class Gf2Basis {
   public:
    bool add(std::uint64_t v) {
        v = reduce(v);
        if (v == 0) {
            return false;
        }
        rows_.push_back(v);
        return true;
    }
    std::uint64_t reduce(std::uint64_t v) const {
        for (auto r : rows_) {
            std::uint64_t lead = std::uint64_t{1} << (63 - std::countl_zero(r));
            if (v & lead) {
                v ^= r;
            }
        }
        return v;
    }
    bool contains(std::uint64_t v) const { return reduce(v) == 0; }

   private:
    std::vector<std::uint64_t> rows_;
};

// Solves rows[i] . v = rhs[i] over GF(2); returns any solution.
std::optional<std::uint64_t> solve_gf2(std::vector<std::uint64_t> rows, std::vector<int> rhs, std::size_t width) {
    std::size_t r = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t col = 0; col < width && r < rows.size(); col++) {
        std::uint64_t bit = std::uint64_t{1} << col;
        std::size_t sel = r;
        while (sel < rows.size() && !(rows[sel] & bit)) {
            sel++;
        }
        if (sel == rows.size()) {
            continue;
        }
        std::swap(rows[sel], rows[r]);
        std::swap(rhs[sel], rhs[r]);
        for (std::size_t i = 0; i < rows.size(); i++) {
            if (i != r && (rows[i] & bit)) {
                rows[i] ^= rows[r];
                rhs[i] ^= rhs[r];
            }
        }
        pivots.push_back(col);
        r++;
    }
    for (std::size_t i = r; i < rows.size(); i++) {
        if (rhs[i]) {
            return std::nullopt;
        }
    }
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < r; i++) {
        if (rhs[i]) {
            v |= std::uint64_t{1} << pivots[i];
        }
    }
    return v;
}

// Basis of {v : rows[i] . v = 0 for all i}.
std::vector<std::uint64_t> null_space_gf2(std::vector<std::uint64_t> rows, std::size_t width) {
    std::size_t r = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t col = 0; col < width && r < rows.size(); col++) {
        std::uint64_t bit = std::uint64_t{1} << col;
        std::size_t sel = r;
        while (sel < rows.size() && !(rows[sel] & bit)) {
            sel++;
        }
        if (sel == rows.size()) {
            continue;
        }
        std::swap(rows[sel], rows[r]);
        for (std::size_t i = 0; i < rows.size(); i++) {
            if (i != r && (rows[i] & bit)) {
                rows[i] ^= rows[r];
            }
        }
        pivots.push_back(col);
        r++;
    }
    std::vector<std::uint64_t> out;
    for (std::size_t col = 0; col < width; col++) {
        if (std::find(pivots.begin(), pivots.end(), col) != pivots.end()) {
            continue;
        }
        std::uint64_t v = std::uint64_t{1} << col;
        for (std::size_t i = 0; i < r; i++) {
            if (rows[i] & (std::uint64_t{1} << col)) {
                v |= std::uint64_t{1} << pivots[i];
            }
        }
        out.push_back(v);
    }
    return out;
}

PauliString from_symplectic(std::uint64_t v, std::size_t n) {
    std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    return PauliString::hermitian(n, v & mask, v >> n);
}

std::vector<std::uint32_t> undetected_list(const StabilizerCode &code) {
    std::vector<std::uint32_t> out;
    std::uint64_t total = std::uint64_t{1} << (2 * code.n());
    for (std::uint64_t k = 1; k < total; k++) {
        if (!detects(code, pauli_from_index(code.n(), k))) {
            out.push_back(static_cast<std::uint32_t>(k));
        }
    }
    return out;
}

}  // namespace

StabilizerCode::StabilizerCode(std::size_t n, std::vector<PauliString> generators) : n_(n), generators_(std::move(generators)) {
    if (n_ == 0 || n_ > 12) {
        throw std::invalid_argument("stabilizer code needs 1..12 qubits");
    }
    if (generators_.empty() || generators_.size() >= n_) {
        throw std::invalid_argument("stabilizer code needs 1 <= s < n generators");
    }
    Gf2Basis basis;
    for (std::size_t i = 0; i < generators_.size(); i++) {
        const auto &g = generators_[i];
        if (g.n != n_) {
            throw std::invalid_argument("generator length does not match n");
        }
        if (!g.is_hermitian()) {
            throw std::invalid_argument("generator is not Hermitian: " + g.str());
        }
        for (std::size_t j = 0; j < i; j++) {
            if (!commutes(g, generators_[j])) {
                throw std::invalid_argument("generators do not commute: " + g.str() + ", " + generators_[j].str());
            }
        }
        // With independent symplectic vectors no nonempty product is
        // proportional to I, so -I cannot be generated.
        if (!basis.add(g.symplectic())) {
            throw std::invalid_argument("generators are not independent");
        }
    }
}

StabilizerCode StabilizerCode::from_strings(const std::vector<std::string> &generators) {
    std::vector<PauliString> gens;
    for (const auto &g : generators) {
        gens.push_back(PauliString::parse(g));
    }
    if (gens.empty()) {
        throw std::invalid_argument("no generators");
    }
    return StabilizerCode(gens[0].n, gens);
}

StabilizerCode StabilizerCode::random(std::size_t n, std::size_t s, std::mt19937_64 &rng) {
    std::uniform_int_distribution<std::uint64_t> pick(1, (std::uint64_t{1} << (2 * n)) - 1);
    std::bernoulli_distribution sign(0.5);
    std::vector<PauliString> gens;
    Gf2Basis basis;
    while (gens.size() < s) {
        PauliString p = from_symplectic(pick(rng), n);
        if (sign(rng)) {
            p.phase = (p.phase + 2) & 3;
        }
        bool ok = std::all_of(gens.begin(), gens.end(), [&](const PauliString &g) { return commutes(g, p); });
        if (ok && !basis.contains(p.symplectic())) {
            basis.add(p.symplectic());
            gens.push_back(p);
        }
    }
    return StabilizerCode(n, gens);
}

std::vector<std::string> StabilizerCode::generator_strings() const {
    std::vector<std::string> out;
    for (const auto &g : generators_) {
        out.push_back(g.str());
    }
    return out;
}

std::uint64_t syndrome(const StabilizerCode &code, const PauliString &e) {
    if (e.n != code.n()) {
        throw std::invalid_argument("error length does not match code");
    }
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < code.s(); i++) {
        if (!commutes(code.generators()[i], e)) {
            out |= std::uint64_t{1} << i;
        }
    }
    return out;
}

bool in_stabilizer_group(const StabilizerCode &code, const PauliString &e) {
    Gf2Basis basis;
    for (const auto &g : code.generators()) {
        basis.add(g.symplectic());
    }
    return basis.contains(e.symplectic());
}

bool detects(const StabilizerCode &code, const PauliString &e) {
    return syndrome(code, e) != 0 || in_stabilizer_group(code, e);
}

std::vector<std::size_t> undetected_counts(const std::vector<StabilizerCode> &codes) {
    if (codes.empty()) {
        throw std::invalid_argument("empty code family");
    }
    std::size_t n = codes[0].n();
    for (const auto &c : codes) {
        if (c.n() != n || c.s() != codes[0].s()) {
            throw std::invalid_argument("inconsistent family parameters");
        }
    }
    std::vector<std::vector<std::uint32_t>> lists(codes.size());
    parallel_for(codes.size(), [&](std::size_t i) { lists[i] = undetected_list(codes[i]); });
    std::vector<std::size_t> counts(std::size_t{1} << (2 * n), 0);
    for (const auto &l : lists) {
        for (auto k : l) {
            counts[k]++;
        }
    }
    return counts;
}

double verify_ptc(const std::vector<StabilizerCode> &codes) {
    auto counts = undetected_counts(codes);
    std::size_t worst = *std::max_element(counts.begin() + 1, counts.end());
    return static_cast<double>(worst) / static_cast<double>(codes.size());
}

PtcFamily make_family(std::vector<StabilizerCode> codes, std::uint64_t seed) {
    PtcFamily f;
    f.epsilon_verified = verify_ptc(codes);
    f.m = codes[0].m();
    f.s = codes[0].s();
    f.codes = std::move(codes);
    f.seed = seed;
    f.met_target = true;
    return f;
}

double ptc_epsilon_formula(std::size_t m, std::size_t s) {
    if (m < 1 || s < 1) {
        throw std::invalid_argument("m and s must be at least 1");
    }
    return 2.0 * (1.0 + static_cast<double>(m) / static_cast<double>(s)) / (1.0 + std::ldexp(1.0, static_cast<int>(s)));
}

PtcFamily search_ptc(std::size_t m, std::size_t s, double target_eps, std::size_t budget, std::uint64_t seed) {
    std::size_t n = m + s;
    if (m < 1 || s < 1 || n > 6) {
        throw std::invalid_argument("search_ptc needs m, s >= 1 and m + s <= 6");
    }
    constexpr std::size_t kMaxCodes = 64;
    constexpr std::size_t kCandidates = 24;
    std::mt19937_64 rng(seed);
    std::size_t num_errors = std::size_t{1} << (2 * n);

    std::vector<StabilizerCode> best;
    std::size_t best_worst = 0;
    bool best_met = false;
    auto better = [&](std::size_t k, std::size_t worst, bool met) {
        if (best.empty()) {
            return true;
        }
        if (met != best_met) {
            return met;
        }
        if (met && k != best.size()) {
            return k < best.size();
        }
        return static_cast<double>(worst) * best.size() < static_cast<double>(best_worst) * k;
    };

    for (std::size_t trial = 0; trial < std::max<std::size_t>(budget, 1); trial++) {
        std::vector<StabilizerCode> family;
        std::vector<std::size_t> counts(num_errors, 0);
        std::size_t limit = best_met ? best.size() : kMaxCodes;
        for (std::size_t k = 1; k <= limit; k++) {
            StabilizerCode chosen;
            std::vector<std::uint32_t> chosen_list;
            std::size_t chosen_max = 0;
            double chosen_sq = 0;
            for (std::size_t c = 0; c < kCandidates; c++) {
                StabilizerCode cand = StabilizerCode::random(n, s, rng);
                auto list = undetected_list(cand);
                std::size_t mx = 0;
                double sq = 0;
                for (auto e : list) {
                    mx = std::max(mx, counts[e] + 1);
                    sq += 2.0 * counts[e] + 1;
                }
                for (std::size_t e = 1; e < num_errors; e++) {
                    mx = std::max(mx, counts[e]);
                }
                if (c == 0 || mx < chosen_max || (mx == chosen_max && sq < chosen_sq)) {
                    chosen = cand;
                    chosen_list = list;
                    chosen_max = mx;
                    chosen_sq = sq;
                }
            }
            family.push_back(chosen);
            for (auto e : chosen_list) {
                counts[e]++;
            }
            bool met = static_cast<double>(chosen_max) <= target_eps * static_cast<double>(k) + 1e-12;
            if (better(k, chosen_max, met)) {
                best = family;
                best_worst = chosen_max;
                best_met = met;
            }
            if (met) {
                break;
            }
        }
    }
    PtcFamily f = make_family(best, seed);
    f.met_target = f.epsilon_verified <= target_eps + 1e-12;
    return f;
}

std::pair<std::size_t, double> cost_formulas(std::size_t m, std::size_t s) {
    if (m < 1 || s < 1) {
        throw std::invalid_argument("m and s must be at least 1");
    }
    double key = 2.0 * m + s + std::log2(std::ldexp(1.0, static_cast<int>(s)) + 1.0);
    return {m + s, key};
}

Matrix EncodingUnitary::syndrome_block(std::uint64_t y) const {
    std::size_t dm = std::size_t{1} << code.m();
    return matrix.block(0, y * dm, matrix.rows(), dm);
}

EncodingUnitary encoding_unitary(const StabilizerCode &code) {
    std::size_t n = code.n();
    std::size_t s = code.s();
    std::size_t m = code.m();
    if (n > 6) {
        throw std::invalid_argument("encoding_unitary supports n <= 6");
    }
    std::vector<std::uint64_t> gvec;
    std::vector<std::uint64_t> grows;
    for (const auto &g : code.generators()) {
        gvec.push_back(g.symplectic());
        grows.push_back(swapped(g.symplectic(), n));
    }

    // Destabilizers: symplectic partner of g_i, commuting with every other g_j.
    std::vector<std::uint64_t> dvec;
    for (std::size_t i = 0; i < s; i++) {
        std::vector<int> rhs(s, 0);
        rhs[i] = 1;
        auto sol = solve_gf2(grows, rhs, 2 * n);
        if (!sol) {
            throw std::invalid_argument("degenerate generator set");
        }
        dvec.push_back(*sol);
    }
    for (std::size_t i = 0; i < s; i++) {
        for (std::size_t k = 0; k < i; k++) {
            if (symplectic_form(dvec[i], dvec[k], n)) {
                dvec[i] ^= gvec[k];
            }
        }
    }

    // Logical operators from the symplectic complement of span{g, d}.
    std::vector<std::uint64_t> rows = grows;
    for (auto d : dvec) {
        rows.push_back(swapped(d, n));
    }
    auto rest = null_space_gf2(rows, 2 * n);
    if (rest.size() != 2 * m) {
        throw std::invalid_argument("degenerate generator set");
    }
    std::vector<std::uint64_t> lx, lz;
    while (!rest.empty()) {
        std::uint64_t u = rest.front();
        rest.erase(rest.begin());
        auto it = std::find_if(rest.begin(), rest.end(), [&](std::uint64_t v) { return symplectic_form(u, v, n) == 1; });
        if (it == rest.end()) {
            throw std::invalid_argument("degenerate generator set");
        }
        std::uint64_t v = *it;
        rest.erase(it);
        for (auto &w : rest) {
            std::uint64_t add = 0;
            if (symplectic_form(w, v, n)) {
                add ^= u;
            }
            if (symplectic_form(w, u, n)) {
                add ^= v;
            }
            w ^= add;
        }
        lx.push_back(u);
        lz.push_back(v);
    }

    EncodingUnitary out;
    out.code = code;
    for (auto d : dvec) {
        out.destabilizers.push_back(from_symplectic(d, n));
    }
    for (std::size_t k = 0; k < m; k++) {
        out.logical_x.push_back(from_symplectic(lx[k], n));
        out.logical_z.push_back(from_symplectic(lz[k], n));
    }

    std::size_t dim = std::size_t{1} << n;
    Matrix proj = identity(dim);
    for (const auto &g : code.generators()) {
        proj = proj * (identity(dim) + pauli_matrix(g)) * 0.5;
    }
    for (const auto &z : out.logical_z) {
        proj = proj * (identity(dim) + pauli_matrix(z)) * 0.5;
    }
    Eigen::Index best_col = 0;
    proj.colwise().norm().maxCoeff(&best_col);
    Vector zero = proj.col(best_col);
    zero /= zero.norm();
    Eigen::Index best_row = 0;
    zero.cwiseAbs().maxCoeff(&best_row);
    zero *= std::conj(zero(best_row)) / std::abs(zero(best_row));

    std::vector<Matrix> dmat, xmat;
    for (const auto &d : out.destabilizers) {
        dmat.push_back(pauli_matrix(d));
    }
    for (const auto &x : out.logical_x) {
        xmat.push_back(pauli_matrix(x));
    }
    std::size_t dm = std::size_t{1} << m;
    out.matrix = Matrix::Zero(dim, dim);
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << s); y++) {
        for (std::uint64_t a = 0; a < dm; a++) {
            Vector v = zero;
            for (std::size_t k = 0; k < m; k++) {
                if ((a >> k) & 1) {
                    v = xmat[k] * v;
                }
            }
            for (std::size_t i = 0; i < s; i++) {
                if ((y >> i) & 1) {
                    v = dmat[i] * v;
                }
            }
            out.matrix.col(a + dm * y) = v;
        }
    }
    double residual = (out.matrix.adjoint() * out.matrix - identity(dim)).cwiseAbs().maxCoeff();
    if (residual > 1e-10) {
        throw std::logic_error("encoding unitary construction failed");
    }
    return out;
}

}  // namespace qakg
