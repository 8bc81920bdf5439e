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

#include "qakg/pauli.h"

#include <bit>
#include <stdexcept>

namespace qakg {

namespace {

constexpr cplx kIPow[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};

void check_same(const PauliString &p, const PauliString &q) {
    if (p.n != q.n) {
        throw std::invalid_argument("Pauli strings have different lengths");
    }
}

}  // namespace

PauliString::PauliString(std::size_t num_qubits, std::uint64_t x_bits, std::uint64_t z_bits, std::uint8_t phase_power)
    : n(num_qubits), x(x_bits), z(z_bits), phase(phase_power & 3) {
    if (n > 32) {
        throw std::invalid_argument("PauliString supports at most 32 qubits");
    }
    std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    if ((x & ~mask) || (z & ~mask)) {
        throw std::invalid_argument("Pauli bits exceed qubit count");
    }
}

PauliString PauliString::identity(std::size_t num_qubits) {
    return PauliString(num_qubits, 0, 0, 0);
}

PauliString PauliString::hermitian(std::size_t num_qubits, std::uint64_t x_bits, std::uint64_t z_bits) {
    return PauliString(num_qubits, x_bits, z_bits, static_cast<std::uint8_t>(std::popcount(x_bits & z_bits) & 3));
}

bool PauliString::is_hermitian() const {
    return (phase & 1) == (std::popcount(x & z) & 1);
}

std::size_t PauliString::weight() const {
    return std::popcount(x | z);
}

PauliString PauliString::dagger() const {
    int p = -static_cast<int>(phase) + 2 * std::popcount(x & z);
    return PauliString(n, x, z, static_cast<std::uint8_t>(((p % 4) + 4) % 4));
}

std::string PauliString::str() const {
    static const char *prefix[4] = {"", "i", "-", "-i"};
    std::string out = prefix[phase];
    out += "xz:";
    for (std::size_t j = 0; j < n; j++) {
        out += ((x >> j) & 1) ? '1' : '0';
    }
    out += '|';
    for (std::size_t j = 0; j < n; j++) {
        out += ((z >> j) & 1) ? '1' : '0';
    }
    return out;
}

PauliString PauliString::parse(const std::string &text) {
    std::string s = text;
    std::uint8_t ph = 0;
    if (s.rfind("-i", 0) == 0) {
        ph = 3;
        s = s.substr(2);
    } else if (s.rfind("-", 0) == 0) {
        ph = 2;
        s = s.substr(1);
    } else if (s.rfind("i", 0) == 0) {
        ph = 1;
        s = s.substr(1);
    } else if (s.rfind("+", 0) == 0) {
        s = s.substr(1);
    }
    if (s.rfind("xz:", 0) != 0) {
        throw std::invalid_argument("Pauli text must start with 'xz:': " + text);
    }
    s = s.substr(3);
    auto bar = s.find('|');
    if (bar == std::string::npos) {
        throw std::invalid_argument("Pauli text needs '|' separator: " + text);
    }
    std::string xs = s.substr(0, bar);
    std::string zs = s.substr(bar + 1);
    if (xs.size() != zs.size()) {
        throw std::invalid_argument("Pauli x and z parts differ in length: " + text);
    }
    std::uint64_t xb = 0;
    std::uint64_t zb = 0;
    for (std::size_t j = 0; j < xs.size(); j++) {
        if ((xs[j] != '0' && xs[j] != '1') || (zs[j] != '0' && zs[j] != '1')) {
            throw std::invalid_argument("Pauli text bits must be 0 or 1: " + text);
        }
        xb |= std::uint64_t(xs[j] == '1') << j;
        zb |= std::uint64_t(zs[j] == '1') << j;
    }
    return PauliString(xs.size(), xb, zb, ph);
}

PauliString pauli_mul(const PauliString &p, const PauliString &q) {
    check_same(p, q);
    // Z^z1 X^x2 = (-1)^{z1.x2} X^x2 Z^z1.
    int ph = p.phase + q.phase + 2 * std::popcount(p.z & q.x);
    return PauliString(p.n, p.x ^ q.x, p.z ^ q.z, static_cast<std::uint8_t>(ph & 3));
}

bool commutes(const PauliString &p, const PauliString &q) {
    check_same(p, q);
    return (std::popcount((p.x & q.z) ^ (p.z & q.x)) & 1) == 0;
}

Matrix pauli_matrix(const PauliString &p) {
    std::size_t d = std::size_t{1} << p.n;
    Matrix m = Matrix::Zero(d, d);
    for (std::uint64_t b = 0; b < d; b++) {
        int sign = std::popcount(p.z & b) & 1;
        m(b ^ p.x, b) = kIPow[(p.phase + 2 * sign) & 3];
    }
    return m;
}

std::vector<PauliString> enumerate_paulis(std::size_t n, bool include_identity) {
    std::vector<PauliString> out;
    std::uint64_t total = std::uint64_t{1} << (2 * n);
    out.reserve(total);
    for (std::uint64_t k = include_identity ? 0 : 1; k < total; k++) {
        out.push_back(pauli_from_index(n, k));
    }
    return out;
}

}  // namespace qakg
