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


#ifndef QAKG_CLASSICAL_WC_H
#define QAKG_CLASSICAL_WC_H

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qakg {

/// Arithmetic in GF(2^w), 1 <= w <= 8, elements as bit patterns.
class GaloisField {
   public:
    explicit GaloisField(unsigned bits);
    unsigned bits() const { return bits_; }
    std::uint32_t size() const { return 1u << bits_; }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t pow(std::uint32_t a, unsigned e) const;

   private:
    unsigned bits_;
    std::uint32_t modulus_;
};

/// Finite keyed hash family given by its full evaluation table.
struct HashFamily {
    unsigned field_bits = 0;
    unsigned msg_len = 0;
    std::uint32_t num_keys = 0;
    std::uint32_t num_messages = 0;
    std::uint32_t num_tags = 0;
    std::vector<std::uint16_t> table;  // table[key * num_messages + msg]
    double eps_asu2 = 1;

    std::uint32_t evaluate(std::uint32_t key, std::uint32_t msg) const { return table[key * num_messages + msg]; }
};

/// Polynomial hashing over GF(2^w): key (a, b) with index a + 2^w b, message
/// x = (x_1..x_L) with index sum x_i 2^{w(i-1)}, h(x) = b + sum_i x_i a^i.
/// eps_asu2 is computed from the difference polynomials.
HashFamily poly_hash_family(unsigned field_bits, unsigned msg_len);

/// |tags| * max over x != x' and tags (a, b) of Pr_k[h(x) = a and h(x') = b],
/// by enumeration of every key, message pair and tag pair.
double verify_asu2(const HashFamily &family);

/// max over messages and tags of |Pr_k[h(x) = a] - 1/|tags||.
double single_point_deviation(const HashFamily &family);

struct WireSymbol {
    std::uint32_t msg;
    std::uint32_t tag;
    bool operator==(const WireSymbol &other) const = default;
};

/// (x, h_k(x) xor t).
WireSymbol wc_send(const HashFamily &family, std::uint32_t x, std::uint32_t key, std::uint32_t pad);

/// Adversary's map on the wire alphabet: for every symbol (index
/// msg + num_messages * tag) a distribution over replacement symbols.
struct Substitution {
    std::vector<std::vector<std::pair<WireSymbol, double>>> table;

    static Substitution identity(const HashFamily &family);
    /// Deterministic map given one replacement per wire symbol.
    static Substitution deterministic(const HashFamily &family, const std::vector<WireSymbol> &image);
};

struct WcReport {
    double advantage = 0;        // full 1-norm between real and ideal outputs
    double tv_distance = 0;      // half of it
    double accept_real = 0;      // Pr[acc] in WC+KG
    double forge_probability = 0;  // Pr[acc and the wire symbol was changed]
    double bound = 0;            // eps_asu2
    std::uint32_t message = 0;
};

/// Exact comparison of WC+KG against the ideal authentication box, KD_I and
/// the tag-appending simulator, for Alice's message x. The environment sees
/// the wire symbol, the replacement, the verdict and the recycled key.
WcReport wc_kg_advantage(const HashFamily &family, const Substitution &sub, std::uint32_t x);

/// Maximum advantage over all deterministic substitutions and messages. The
/// advantage is a sum of independent per-tag terms, so each tag's best
/// replacement is chosen separately.
WcReport wc_worst_case(const HashFamily &family);

/// Same maximum by enumerating every deterministic map on the symbols
/// (x, tag) of each message; only feasible for tiny families.
WcReport wc_worst_case_bruteforce(const HashFamily &family);

struct LeakReport {
    double mutual_information = 0;  // I(k ; wire tag, verdict) in bits
    double accept_probability = 0;
    double accept_entropy = 0;      // binary entropy of the accept event
    std::uint32_t guessed_key = 0;
};

/// Guess-and-tamper: the adversary guesses key k* and replaces (x, tag) with
/// (x', tag xor h_{k*}(x) xor h_{k*}(x')), which is accepted exactly when the
/// real key agrees with the guess on the difference. The verdict then leaks
/// information about the recycled key.
LeakReport key_leak_demo(const HashFamily &family, std::uint32_t guessed_key = 1, std::uint32_t x = 0, std::uint32_t x_forged = 1);

/// Leakage of the honest (identity) adversary.
LeakReport key_leak_honest(const HashFamily &family, std::uint32_t x = 0);

}  // namespace qakg

#endif
