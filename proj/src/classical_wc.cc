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

#include "qakg/classical_wc.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

namespace qakg {

namespace {

// Irreducible polynomials for GF(2^w), w = 1..8.
constexpr std::uint32_t kModulus[9] = {0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11B};

double entropy(const std::map<std::vector<std::uint32_t>, double> &dist) {
    double h = 0;
    for (const auto &[k, p] : dist) {
        if (p > 0) {
            h -= p * std::log2(p);
        }
    }
    return h;
}

double binary_entropy(double p) {
    if (p <= 0 || p >= 1) {
        return 0;
    }
    return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

std::uint32_t symbol_index(const HashFamily &f, WireSymbol w) {
    return w.msg + f.num_messages * w.tag;
}

void check_symbol(const HashFamily &f, WireSymbol w) {
    if (w.msg >= f.num_messages || w.tag >= f.num_tags) {
        throw std::out_of_range("wire symbol outside the alphabet");
    }
}

}  // namespace

GaloisField::GaloisField(unsigned bits) : bits_(bits) {
    if (bits < 1 || bits > 8) {
        throw std::invalid_argument("field bits must be in 1..8");
    }
    modulus_ = kModulus[bits];
}

std::uint32_t GaloisField::mul(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t prod = 0;
    for (unsigned i = 0; i < bits_; i++) {
        if ((b >> i) & 1) {
            prod ^= a << i;
        }
    }
    for (int i = 2 * static_cast<int>(bits_) - 2; i >= static_cast<int>(bits_); i--) {
        if ((prod >> i) & 1) {
            prod ^= modulus_ << (i - bits_);
        }
    }
    return prod;
}

std::uint32_t GaloisField::pow(std::uint32_t a, unsigned e) const {
    std::uint32_t r = 1;
    for (unsigned i = 0; i < e; i++) {
        r = mul(r, a);
    }
    return r;
}

HashFamily poly_hash_family(unsigned field_bits, unsigned msg_len) {
    if (field_bits < 1 || field_bits > 8 || msg_len < 1 || msg_len > 4) {
        throw std::invalid_argument("poly_hash_family needs 1 <= w <= 8 and 1 <= L <= 4");
    }
    GaloisField gf(field_bits);
    std::uint64_t q = gf.size();
    std::uint64_t messages = 1;
    for (unsigned i = 0; i < msg_len; i++) {
        messages *= q;
    }
    // Table has q^2 * q^L entries; the eps computation visits q^L * q.
    if (q * q * messages > (std::uint64_t{1} << 24)) {
        throw std::invalid_argument("parameters too large for exhaustive verification");
    }
    HashFamily f;
    f.field_bits = field_bits;
    f.msg_len = msg_len;
    f.num_keys = static_cast<std::uint32_t>(q * q);
    f.num_messages = static_cast<std::uint32_t>(messages);
    f.num_tags = static_cast<std::uint32_t>(q);
    f.table.resize(static_cast<std::size_t>(f.num_keys) * f.num_messages);

    // p_x(a) = sum_i x_i a^i
    auto poly = [&](std::uint32_t x, std::uint32_t a) {
        std::uint32_t v = 0;
        std::uint32_t ap = a;
        for (unsigned i = 0; i < msg_len; i++) {
            std::uint32_t xi = (x >> (field_bits * i)) & (q - 1);
            v ^= gf.mul(xi, ap);
            ap = gf.mul(ap, a);
        }
        return v;
    };
    for (std::uint32_t a = 0; a < q; a++) {
        for (std::uint32_t x = 0; x < messages; x++) {
            std::uint32_t pa = poly(x, a);
            for (std::uint32_t b = 0; b < q; b++) {
                f.table[static_cast<std::size_t>(a + q * b) * f.num_messages + x] = static_cast<std::uint16_t>(pa ^ b);
            }
        }
    }
    // Pr_k[h(x) = alpha, h(x') = beta] = #{a : p_d(a) = alpha ^ beta} / q^2 with d = x ^ x',
    // so eps = q * max_{d != 0, c} #{a : p_d(a) = c} / q^2.
    std::uint32_t worst = 0;
    for (std::uint32_t d = 1; d < messages; d++) {
        std::vector<std::uint32_t> hits(q, 0);
        for (std::uint32_t a = 0; a < q; a++) {
            worst = std::max(worst, ++hits[poly(d, a)]);
        }
    }
    f.eps_asu2 = static_cast<double>(worst) / static_cast<double>(q);
    return f;
}

double verify_asu2(const HashFamily &f) {
    std::uint64_t work = std::uint64_t{f.num_messages} * f.num_messages * f.num_keys;
    if (work > (std::uint64_t{1} << 28)) {
        throw std::invalid_argument("family too large for exhaustive verification");
    }
    std::uint32_t worst = 0;
    std::vector<std::uint32_t> counts(static_cast<std::size_t>(f.num_tags) * f.num_tags);
    for (std::uint32_t x = 0; x < f.num_messages; x++) {
        for (std::uint32_t xp = 0; xp < f.num_messages; xp++) {
            if (x == xp) {
                continue;
            }
            std::fill(counts.begin(), counts.end(), 0);
            for (std::uint32_t k = 0; k < f.num_keys; k++) {
                worst = std::max(worst, ++counts[f.evaluate(k, x) + f.num_tags * f.evaluate(k, xp)]);
            }
        }
    }
    return static_cast<double>(f.num_tags) * worst / static_cast<double>(f.num_keys);
}

double single_point_deviation(const HashFamily &f) {
    double worst = 0;
    std::vector<std::uint32_t> counts(f.num_tags);
    for (std::uint32_t x = 0; x < f.num_messages; x++) {
        std::fill(counts.begin(), counts.end(), 0);
        for (std::uint32_t k = 0; k < f.num_keys; k++) {
            counts[f.evaluate(k, x)]++;
        }
        for (auto c : counts) {
            worst = std::max(worst, std::abs(static_cast<double>(c) / f.num_keys - 1.0 / f.num_tags));
        }
    }
    return worst;
}

WireSymbol wc_send(const HashFamily &f, std::uint32_t x, std::uint32_t key, std::uint32_t pad) {
    if (x >= f.num_messages || key >= f.num_keys || pad >= f.num_tags) {
        throw std::out_of_range("wc_send argument out of range");
    }
    return WireSymbol{x, f.evaluate(key, x) ^ pad};
}

Substitution Substitution::identity(const HashFamily &f) {
    Substitution s;
    s.table.resize(static_cast<std::size_t>(f.num_messages) * f.num_tags);
    for (std::uint32_t tag = 0; tag < f.num_tags; tag++) {
        for (std::uint32_t msg = 0; msg < f.num_messages; msg++) {
            s.table[symbol_index(f, {msg, tag})] = {{WireSymbol{msg, tag}, 1.0}};
        }
    }
    return s;
}

Substitution Substitution::deterministic(const HashFamily &f, const std::vector<WireSymbol> &image) {
    if (image.size() != static_cast<std::size_t>(f.num_messages) * f.num_tags) {
        throw std::invalid_argument("substitution needs one image per wire symbol");
    }
    Substitution s;
    for (const auto &w : image) {
        check_symbol(f, w);
        s.table.push_back({{w, 1.0}});
    }
    return s;
}

WcReport wc_kg_advantage(const HashFamily &f, const Substitution &sub, std::uint32_t x) {
    if (x >= f.num_messages) {
        throw std::out_of_range("message out of range");
    }
    if (sub.table.size() != static_cast<std::size_t>(f.num_messages) * f.num_tags) {
        throw std::invalid_argument("substitution does not cover the wire alphabet");
    }
    // Observation: (tag on the wire, replacement msg, replacement tag, verdict, recycled key).
    using Obs = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, bool, std::uint32_t>;
    std::map<Obs, std::pair<double, double>> dist;
    double nk = f.num_keys;
    double nt = f.num_tags;
    WcReport rep;
    rep.message = x;
    rep.bound = f.eps_asu2;
    for (std::uint32_t k = 0; k < f.num_keys; k++) {
        for (std::uint32_t t = 0; t < f.num_tags; t++) {
            WireSymbol sent = wc_send(f, x, k, t);
            for (const auto &[w, p] : sub.table[symbol_index(f, sent)]) {
                bool acc = w.tag == (f.evaluate(k, w.msg) ^ t);
                double prob = p / (nk * nt);
                dist[Obs{sent.tag, w.msg, w.tag, acc, k}].first += prob;
                if (acc) {
                    rep.accept_real += prob;
                    if (!(w == sent)) {
                        rep.forge_probability += prob;
                    }
                }
            }
        }
    }
    // Ideal: the simulator puts a uniform tag on the wire, the box accepts iff
    // the symbol arrives unchanged, and KD_I emits an independent key.
    for (std::uint32_t tag = 0; tag < f.num_tags; tag++) {
        WireSymbol sent{x, tag};
        for (const auto &[w, p] : sub.table[symbol_index(f, sent)]) {
            bool acc = w == sent;
            for (std::uint32_t k = 0; k < f.num_keys; k++) {
                dist[Obs{tag, w.msg, w.tag, acc, k}].second += p / (nt * nk);
            }
        }
    }
    for (const auto &[obs, pq] : dist) {
        rep.advantage += std::abs(pq.first - pq.second);
    }
    rep.tv_distance = rep.advantage / 2;
    return rep;
}

WcReport wc_worst_case(const HashFamily &f) {
    WcReport best;
    best.bound = f.eps_asu2;
    for (std::uint32_t x = 0; x < f.num_messages; x++) {
        std::vector<WireSymbol> image;
        for (std::uint32_t tag = 0; tag < f.num_tags; tag++) {
            image.push_back({x, tag});
        }
        for (std::uint32_t tag = 0; tag < f.num_tags; tag++) {
            // With the wire tag fixed, the pad is t = tag ^ h_k(x). A replacement
            // contributes 2/(|K||T|) for each key on which real and ideal
            // verdicts disagree.
            std::uint32_t best_count = 0;
            WireSymbol best_w{x, tag};
            for (std::uint32_t wt = 0; wt < f.num_tags; wt++) {
                for (std::uint32_t wm = 0; wm < f.num_messages; wm++) {
                    bool ideal_acc = (wm == x && wt == tag);
                    std::uint32_t count = 0;
                    for (std::uint32_t k = 0; k < f.num_keys; k++) {
                        std::uint32_t pad = tag ^ f.evaluate(k, x);
                        bool real_acc = wt == (f.evaluate(k, wm) ^ pad);
                        count += real_acc != ideal_acc;
                    }
                    if (count > best_count) {
                        best_count = count;
                        best_w = {wm, wt};
                    }
                }
            }
            image[tag] = best_w;
        }
        std::vector<WireSymbol> full;
        for (std::uint32_t tag = 0; tag < f.num_tags; tag++) {
            for (std::uint32_t msg = 0; msg < f.num_messages; msg++) {
                full.push_back(msg == x ? image[tag] : WireSymbol{msg, tag});
            }
        }
        WcReport rep = wc_kg_advantage(f, Substitution::deterministic(f, full), x);
        if (rep.advantage > best.advantage) {
            best = rep;
        }
    }
    return best;
}

WcReport wc_worst_case_bruteforce(const HashFamily &f) {
    std::uint64_t symbols = std::uint64_t{f.num_messages} * f.num_tags;
    std::uint64_t maps = 1;
    for (std::uint32_t i = 0; i < f.num_tags; i++) {
        maps *= symbols;
        if (maps > (std::uint64_t{1} << 16)) {
            throw std::invalid_argument("too many substitutions for brute force");
        }
    }
    WcReport best;
    best.bound = f.eps_asu2;
    for (std::uint32_t x = 0; x < f.num_messages; x++) {
        for (std::uint64_t code = 0; code < maps; code++) {
            std::vector<WireSymbol> full;
            for (std::uint32_t tag = 0; tag < f.num_tags; tag++) {
                for (std::uint32_t msg = 0; msg < f.num_messages; msg++) {
                    full.push_back(WireSymbol{msg, tag});
                }
            }
            std::uint64_t c = code;
            for (std::uint32_t tag = 0; tag < f.num_tags; tag++) {
                std::uint64_t pick = c % symbols;
                c /= symbols;
                full[x + f.num_messages * tag] =
                    WireSymbol{static_cast<std::uint32_t>(pick % f.num_messages), static_cast<std::uint32_t>(pick / f.num_messages)};
            }
            WcReport rep = wc_kg_advantage(f, Substitution::deterministic(f, full), x);
            if (rep.advantage > best.advantage) {
                best = rep;
            }
        }
    }
    return best;
}

namespace {

LeakReport leak_for(const HashFamily &f, const Substitution &sub, std::uint32_t x) {
    std::map<std::vector<std::uint32_t>, double> joint, key_marg, obs_marg;
    double pk = 1.0 / (static_cast<double>(f.num_keys) * f.num_tags);
    LeakReport rep;
    for (std::uint32_t k = 0; k < f.num_keys; k++) {
        for (std::uint32_t t = 0; t < f.num_tags; t++) {
            WireSymbol sent = wc_send(f, x, k, t);
            for (const auto &[w, p] : sub.table[symbol_index(f, sent)]) {
                std::uint32_t acc = w.tag == (f.evaluate(k, w.msg) ^ t);
                double prob = p * pk;
                joint[{k, sent.tag, w.msg, w.tag, acc}] += prob;
                key_marg[{k}] += prob;
                obs_marg[{sent.tag, w.msg, w.tag, acc}] += prob;
                rep.accept_probability += acc * prob;
            }
        }
    }
    rep.mutual_information = std::max(0.0, entropy(key_marg) + entropy(obs_marg) - entropy(joint));
    rep.accept_entropy = binary_entropy(rep.accept_probability);
    return rep;
}

}  // namespace

LeakReport key_leak_demo(const HashFamily &f, std::uint32_t guessed_key, std::uint32_t x, std::uint32_t x_forged) {
    if (guessed_key >= f.num_keys || x >= f.num_messages || x_forged >= f.num_messages || x == x_forged) {
        throw std::invalid_argument("key_leak_demo: bad key or messages");
    }
    Substitution sub = Substitution::identity(f);
    for (std::uint32_t tag = 0; tag < f.num_tags; tag++) {
        std::uint32_t forged_tag = tag ^ f.evaluate(guessed_key, x) ^ f.evaluate(guessed_key, x_forged);
        sub.table[symbol_index(f, {x, tag})] = {{WireSymbol{x_forged, forged_tag}, 1.0}};
    }
    LeakReport rep = leak_for(f, sub, x);
    rep.guessed_key = guessed_key;
    return rep;
}

LeakReport key_leak_honest(const HashFamily &f, std::uint32_t x) {
    return leak_for(f, Substitution::identity(f), x);
}

}  // namespace qakg
