// Copyright 2026 The Many-Hypercube Authors
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

#include "mhc/decoders.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "mhc/code.h"

namespace mhc {

std::string decoder_name(DecoderKind kind) {
    switch (kind) {
        case DecoderKind::Hard:
            return "hard";
        case DecoderKind::Soft:
            return "soft";
        case DecoderKind::MinDistance:
            return "md";
    }
    return "?";
}

DecoderKind parse_decoder_kind(const std::string &name) {
    if (name == "hard") {
        return DecoderKind::Hard;
    }
    if (name == "soft" || name == "map") {
        return DecoderKind::Soft;
    }
    if (name == "md") {
        return DecoderKind::MinDistance;
    }
    throw std::invalid_argument("unknown decoder '" + name + "' (expected hard, soft or md)");
}

std::string mode_name(DecodeMode mode) {
    return mode == DecodeMode::Correct ? "correct" : "detect";
}

DecodeMode parse_decode_mode(const std::string &name) {
    if (name == "correct") {
        return DecodeMode::Correct;
    }
    if (name == "detect") {
        return DecodeMode::Detect;
    }
    throw std::invalid_argument("unknown decode mode '" + name + "' (expected correct or detect)");
}

uint64_t DecoderConfig::default_product_cap(int level) {
    if (level <= 2) {
        return std::numeric_limits<uint64_t>::max();
    }
    return 100000;
}

uint64_t DecoderConfig::default_sum_cap(int level) {
    if (level <= 2) {
        return 6;
    }
    return uint64_t{6} << (level - 2);
}

uint64_t DecoderConfig::n_th(int level) const {
    auto it = product_cap.find(level);
    return it == product_cap.end() ? default_product_cap(level) : it->second;
}

uint64_t DecoderConfig::m_th(int level) const {
    auto it = sum_cap.find(level);
    return it == sum_cap.end() ? default_sum_cap(level) : it->second;
}

void DecoderConfig::validate(int code_level) const {
    if (detect_level < 1 || detect_level > code_level) {
        throw std::invalid_argument(
            "detection level L_D=" + std::to_string(detect_level) + " must be in 1.." + std::to_string(code_level));
    }
    for (const auto &[lvl, cap] : product_cap) {
        if (cap == 0) {
            throw std::invalid_argument("N_th for level " + std::to_string(lvl) + " must be positive");
        }
    }
    for (const auto &[lvl, cap] : sum_cap) {
        if (cap == 0) {
            throw std::invalid_argument("M_th for level " + std::to_string(lvl) + " must be positive");
        }
    }
    if (!(prior_error > 0.0 && prior_error < 1.0)) {
        throw std::invalid_argument("prior error probability must be in (0,1)");
    }
}

std::vector<uint8_t> CandidateSet::bits(size_t i) const {
    size_t n = size_t{1} << (2 * level);
    std::vector<uint8_t> out(n);
    auto e = entry(i);
    for (size_t k = 0; k < n; k++) {
        out[k] = (e[k >> 6] >> (k & 63)) & 1;
    }
    return out;
}

namespace c642 {

namespace {

struct Tables {
    // Codeword with qubit 1 equal to 0 for each of the 16 encodings.
    std::array<uint8_t, 16> canonical{};
    // Minimum distance from a block to the two codewords of an encoding.
    std::array<std::array<uint8_t, 16>, 64> distance{};

    constexpr Tables() {
        for (unsigned x = 0; x < 64; x++) {
            if (std::popcount(x) % 2 == 0 && (x & 1) == 0) {
                canonical[encode(x)] = static_cast<uint8_t>(x);
            }
        }
        for (unsigned x = 0; x < 64; x++) {
            for (unsigned e = 0; e < 16; e++) {
                int w = std::popcount(x ^ canonical[e]);
                distance[x][e] = static_cast<uint8_t>(w < 6 - w ? w : 6 - w);
            }
        }
    }
};

constexpr Tables kTables{};

}  // namespace

unsigned canonical_codeword(unsigned encoded) {
    return kTables.canonical[encoded & 15];
}

int block_distance(unsigned block, unsigned encoded) {
    return kTables.distance[block & 63][encoded & 15];
}

}  // namespace c642

namespace {

size_t checked_length(std::span<const uint8_t> outcomes, int level) {
    CodeParams params = CodeParams::for_level(level);
    if (outcomes.size() != params.n) {
        throw std::invalid_argument(
            "expected " + std::to_string(params.n) + " outcome bits for level " + std::to_string(level) + ", got " +
            std::to_string(outcomes.size()));
    }
    return params.n;
}

unsigned block_byte(std::span<const uint8_t> outcomes, size_t block) {
    unsigned x = 0;
    for (int i = 0; i < 6; i++) {
        x |= static_cast<unsigned>(outcomes[block * 6 + i] & 1) << i;
    }
    return x;
}

}  // namespace

CandidateSet level1_candidates(std::span<const uint8_t> block) {
    if (block.size() != 6) {
        throw std::invalid_argument("a level-1 block has 6 bits");
    }
    unsigned x = block_byte(block, 0);
    CandidateSet out;
    out.level = 1;
    out.words_per_entry = 1;
    if (std::popcount(x) % 2 == 0) {
        out.distance = 0;
        out.words.push_back(c642::encode(x));
    } else {
        out.distance = 1;
        for (int i = 0; i < 6; i++) {
            out.words.push_back(c642::encode(x ^ (1u << i)));
        }
    }
    return out;
}

DecodeResult hard_decode(std::span<const uint8_t> outcomes, int level, DecodeMode mode, Rng &rng) {
    checked_length(outcomes, level);
    constexpr uint8_t F = 2;
    bool flagged = false;

    // Level-1 values.
    size_t blocks = ipow(6, level - 1);
    std::vector<uint8_t> cur(blocks * 4);
    for (size_t o = 0; o < blocks; o++) {
        unsigned x = block_byte(outcomes, o);
        if (std::popcount(x) % 2) {
            flagged = true;
            for (int q = 0; q < 4; q++) {
                cur[o * 4 + q] = F;
            }
        } else {
            unsigned e = c642::encode(x);
            for (int q = 0; q < 4; q++) {
                cur[o * 4 + q] = (e >> q) & 1;
            }
        }
    }

    for (int m = 2; m <= level; m++) {
        size_t inner = ipow(4, m - 1);
        blocks /= 6;
        std::vector<uint8_t> next(blocks * inner * 4);
        for (size_t o = 0; o < blocks; o++) {
            for (size_t t = 0; t < inner; t++) {
                uint8_t v[6];
                int num_f = 0;
                int where = -1;
                unsigned parity = 0;
                for (int j = 0; j < 6; j++) {
                    v[j] = cur[(o * 6 + j) * inner + t];
                    if (v[j] == F) {
                        num_f++;
                        where = j;
                    } else {
                        parity ^= v[j];
                    }
                }
                bool ok;
                if (num_f == 0) {
                    ok = parity == 0;
                } else if (num_f == 1) {
                    v[where] = static_cast<uint8_t>(parity);
                    ok = true;
                } else {
                    ok = false;
                }
                for (int q = 0; q < 4; q++) {
                    size_t idx = o * inner * 4 + q * inner + t;
                    next[idx] = ok ? static_cast<uint8_t>(v[kZPairs[q][0]] ^ v[kZPairs[q][1]]) : F;
                }
                if (!ok) {
                    flagged = true;
                }
            }
        }
        cur = std::move(next);
    }

    if (mode == DecodeMode::Detect && flagged) {
        return DecodeResult::detection();
    }
    DecodeResult r;
    r.logical.resize(cur.size());
    for (size_t i = 0; i < cur.size(); i++) {
        r.logical[i] = cur[i] == F ? static_cast<uint8_t>(rng.coin()) : cur[i];
    }
    return r;
}

namespace {

// Marginals P(value=0) of the four encoded values of one six-symbol block,
// given independent marginals P(symbol=0) of its six symbols.
void soft_block(const double p0[6], double out[4]) {
    double r[16];
    for (unsigned e = 0; e < 16; e++) {
        unsigned c = c642::canonical_codeword(e);
        double a = 1.0;
        double b = 1.0;
        for (int i = 0; i < 6; i++) {
            bool bit = (c >> i) & 1;
            a *= bit ? 1.0 - p0[i] : p0[i];
            b *= bit ? p0[i] : 1.0 - p0[i];
        }
        r[e] = a + b;
    }
    double total = 0;
    for (double v : r) {
        total += v;
    }
    for (int q = 0; q < 4; q++) {
        double z = 0;
        for (unsigned e = 0; e < 16; e++) {
            if (!((e >> q) & 1)) {
                z += r[e];
            }
        }
        out[q] = total > 0 ? z / total : 0.5;
    }
}

}  // namespace

std::vector<std::vector<double>> soft_marginals(std::span<const uint8_t> outcomes, int level, double prior_error) {
    checked_length(outcomes, level);
    if (!(prior_error > 0.0 && prior_error < 1.0)) {
        throw std::invalid_argument("prior error probability must be in (0,1)");
    }
    std::vector<std::vector<double>> levels;
    size_t blocks = ipow(6, level - 1);
    std::vector<double> cur(blocks * 4);
    for (size_t o = 0; o < blocks; o++) {
        double p0[6];
        for (int i = 0; i < 6; i++) {
            p0[i] = outcomes[o * 6 + i] ? prior_error : 1.0 - prior_error;
        }
        soft_block(p0, &cur[o * 4]);
    }
    levels.push_back(cur);
    for (int m = 2; m <= level; m++) {
        size_t inner = ipow(4, m - 1);
        blocks /= 6;
        std::vector<double> next(blocks * inner * 4);
        for (size_t o = 0; o < blocks; o++) {
            for (size_t t = 0; t < inner; t++) {
                double p0[6];
                double out[4];
                for (int j = 0; j < 6; j++) {
                    p0[j] = cur[(o * 6 + j) * inner + t];
                }
                soft_block(p0, out);
                for (int q = 0; q < 4; q++) {
                    next[o * inner * 4 + q * inner + t] = out[q];
                }
            }
        }
        cur = next;
        levels.push_back(std::move(next));
    }
    return levels;
}

DecodeResult soft_decode(std::span<const uint8_t> outcomes, int level, double prior_error) {
    auto levels = soft_marginals(outcomes, level, prior_error);
    DecodeResult r;
    const auto &top = levels.back();
    r.logical.resize(top.size());
    for (size_t i = 0; i < top.size(); i++) {
        r.logical[i] = top[i] > 0.5 ? 0 : 1;
    }
    return r;
}

namespace {

struct ArrayHash {
    size_t operator()(const std::array<uint64_t, 4> &a) const {
        uint64_t h = 0;
        for (uint64_t w : a) {
            h = mix64(h ^ w);
        }
        return h;
    }
};

// Bits [q*width, (q+1)*width) of a packed string, for width <= 64.
inline uint64_t chunk(const uint64_t *s, size_t width, int q) {
    if (width == 64) {
        return s[q];
    }
    uint64_t mask = (uint64_t{1} << width) - 1;
    size_t start = q * width;
    return (s[start >> 6] >> (start & 63)) & mask;
}

// Open-addressing map from 64-bit strings to distances, emptied in O(1) by
// bumping a generation counter.
class StampedMemo {
   public:
    void reset(uint32_t generation) {
        generation_ = generation;
        live_ = 0;
    }
    bool find(uint64_t key, uint32_t &value) const {
        if (keys_.empty()) {
            return false;
        }
        size_t mask = keys_.size() - 1;
        for (size_t i = mix64(key) & mask;; i = (i + 1) & mask) {
            if (stamps_[i] != generation_) {
                return false;
            }
            if (keys_[i] == key) {
                value = values_[i];
                return true;
            }
        }
    }
    void insert(uint64_t key, uint32_t value) {
        if (2 * (live_ + 1) > keys_.size()) {
            grow();
        }
        place(key, value);
        live_++;
    }

   private:
    void place(uint64_t key, uint32_t value) {
        size_t mask = keys_.size() - 1;
        size_t i = mix64(key) & mask;
        while (stamps_[i] == generation_) {
            i = (i + 1) & mask;
        }
        stamps_[i] = generation_;
        keys_[i] = key;
        values_[i] = value;
    }
    void grow() {
        std::vector<uint64_t> keys = std::move(keys_);
        std::vector<uint32_t> values = std::move(values_);
        std::vector<uint32_t> stamps = std::move(stamps_);
        size_t cap = std::max<size_t>(64, keys.size() * 2);
        keys_.assign(cap, 0);
        values_.assign(cap, 0);
        stamps_.assign(cap, 0);
        for (size_t i = 0; i < keys.size(); i++) {
            if (stamps[i] == generation_) {
                place(keys[i], values[i]);
            }
        }
    }

    uint32_t generation_ = 1;
    size_t live_ = 0;
    std::vector<uint64_t> keys_;
    std::vector<uint32_t> values_;
    std::vector<uint32_t> stamps_;
};

}  // namespace

struct MinDistanceDecoder::Impl {
    int L;
    DecoderConfig cfg;
    // cand[m] for m = 1..L: candidate sets of every level-m block.
    std::vector<std::vector<CandidateSet>> cand;
    // lb[m][block]: lower bound on any distance evaluation of that block.
    std::vector<std::vector<uint32_t>> lb;
    // reduced[k][block]: the candidates of a level-k block kept after the
    // M_th(k+1) reduction of its parent, used when the parent's distance is
    // evaluated. Built once per decode for k <= L-2.
    std::vector<std::vector<std::vector<uint64_t>>> reduced;
    std::vector<uint8_t> level1_bytes;
    // For level-2 blocks whose six reduced level-1 lists are singletons:
    // the chosen encoding of each sub-block, else 0xFF in entry 0.
    std::vector<std::array<uint8_t, 6>> single1;

    uint32_t generation = 0;
    std::vector<std::vector<uint32_t>> memo2;
    std::vector<StampedMemo> memo3;
    std::vector<std::unordered_map<std::array<uint64_t, 4>, uint32_t, ArrayHash>> memo4;

    Rng *rng = nullptr;
    std::vector<CandidateSet> empty;

    Impl(int level, DecoderConfig config) : L(level), cfg(std::move(config)) {
        CodeParams::for_level(level);
        cfg.validate(level);
        cand.resize(L + 1);
        lb.resize(L + 1);
        reduced.resize(L + 1);
        if (L >= 3) {
            memo2.resize(ipow(6, L - 2));
        }
        if (L >= 4) {
            memo3.resize(ipow(6, L - 3));
        }
        if (L >= 5) {
            memo4.resize(ipow(6, L - 4));
        }
    }

    void begin_decode() {
        generation++;
        if (generation >= (1u << 24)) {
            generation = 1;
            for (auto &t : memo2) {
                std::fill(t.begin(), t.end(), 0);
            }
        }
        for (auto &m : memo3) {
            m.reset(generation);
        }
        for (auto &m : memo4) {
            m.clear();
        }
        for (int m = 1; m <= L; m++) {
            cand[m].clear();
            lb[m].clear();
            reduced[m].clear();
        }
    }

    // Collapses the largest candidate lists of the six sub-blocks of each
    // level-(k+1) block to one random entry until their total is at most M_th(k+1).
    void build_reduced(int k) {
        const auto &sets = cand[k];
        auto &out = reduced[k];
        out.assign(sets.size(), {});
        uint64_t cap = cfg.m_th(k + 1);
        for (size_t parent = 0; parent < sets.size() / 6; parent++) {
            uint64_t counts[6];
            uint64_t sum = 0;
            int64_t fixed[6] = {-1, -1, -1, -1, -1, -1};
            for (int j = 0; j < 6; j++) {
                counts[j] = sets[parent * 6 + j].size();
                sum += counts[j];
            }
            while (sum > cap) {
                int big = 0;
                for (int j = 1; j < 6; j++) {
                    if (counts[j] > counts[big]) {
                        big = j;
                    }
                }
                if (counts[big] <= 1) {
                    break;
                }
                fixed[big] = static_cast<int64_t>(rng->below(counts[big]));
                sum -= counts[big] - 1;
                counts[big] = 1;
            }
            for (int j = 0; j < 6; j++) {
                const CandidateSet &cs = sets[parent * 6 + j];
                auto &r = out[parent * 6 + j];
                if (fixed[j] >= 0) {
                    r.push_back(cs.words[fixed[j]]);
                } else {
                    r = cs.words;
                }
            }
        }
        if (k == 1) {
            single1.assign(sets.size() / 6, {});
            for (size_t parent = 0; parent < single1.size(); parent++) {
                for (int j = 0; j < 6; j++) {
                    const auto &r = out[parent * 6 + j];
                    if (r.size() != 1) {
                        single1[parent][0] = 0xFF;
                        break;
                    }
                    single1[parent][j] = static_cast<uint8_t>(r[0]);
                }
            }
        }
    }

    // Canonical sub-strings of a codeword with encoded chunks c0..c3: the
    // codeword whose first sub-block string is zero. All others are obtained
    // by XOR-ing one common string into every sub-block.
    static void canonical_substrings(uint64_t c0, uint64_t c1, uint64_t c2, uint64_t c3, uint64_t w[6]) {
        w[0] = 0;
        w[1] = c0;
        w[2] = c0 ^ c1;
        w[3] = c1 ^ c3;
        w[4] = c1 ^ c3 ^ c2;
        w[5] = c1 ^ c2;
    }

    uint32_t dist2(size_t block, uint64_t s) {
        auto &table = memo2[block];
        if (table.empty()) {
            table.assign(65536, 0);
        }
        uint32_t &slot = table[s & 0xFFFF];
        if ((slot >> 8) == generation) {
            return slot & 0xFF;
        }
        uint64_t w[6];
        canonical_substrings(s & 15, (s >> 4) & 15, (s >> 8) & 15, (s >> 12) & 15, w);
        size_t first = block * 6;
        const uint8_t *x = &level1_bytes[first];
        const auto &dtab = c642::kTables.distance;
        uint32_t lb_sum = 0;
        for (int j = 0; j < 6; j++) {
            lb_sum += lb[1][first + j];
        }
        uint32_t best = std::numeric_limits<uint32_t>::max();
        const auto &one = single1[block];
        if (one[0] != 0xFF) {
            for (int b1 = 0; b1 < 6; b1++) {
                unsigned shift = static_cast<unsigned>(one[b1] ^ w[b1]);
                uint32_t total = lb[1][first + b1];
                for (int j = 0; j < 6; j++) {
                    total += j == b1 ? 0 : dtab[x[j]][(w[j] ^ shift) & 15];
                }
                best = std::min(best, total);
            }
            slot = (generation << 8) | best;
            return best;
        }
        for (int b1 = 0; b1 < 6; b1++) {
            uint32_t d1 = lb[1][first + b1];
            if (lb_sum >= best) {
                break;
            }
            for (uint64_t c : reduced[1][first + b1]) {
                uint64_t shift = c ^ w[b1];
                uint32_t total = d1;
                for (int j = 0; j < 6; j++) {
                    if (j != b1) {
                        total += dtab[x[j]][(w[j] ^ shift) & 15];
                    }
                }
                best = std::min(best, total);
            }
        }
        slot = (generation << 8) | best;
        return best;
    }

    // Distance of a level-k block to the best codeword found with encoded
    // string s (4^k bits). Level 1 is exact; higher levels back-substitute
    // through one reduced candidate of a sub-block.
    uint32_t dist(int k, size_t block, const uint64_t *s) {
        if (k == 1) {
            return c642::kTables.distance[level1_bytes[block]][s[0] & 15];
        }
        if (k == 2) {
            return dist2(block, s[0]);
        }
        uint32_t memo_value;
        if (k == 3) {
            if (memo3[block].find(s[0], memo_value)) {
                return memo_value;
            }
        } else if (k == 4) {
            std::array<uint64_t, 4> key{s[0], s[1], s[2], s[3]};
            auto it = memo4[block].find(key);
            if (it != memo4[block].end()) {
                return it->second;
            }
        } else {
            throw std::invalid_argument("distance evaluation above level 4 is not supported");
        }

        size_t width = size_t{1} << (2 * (k - 1));
        uint64_t w[6];
        canonical_substrings(chunk(s, width, 0), chunk(s, width, 1), chunk(s, width, 2), chunk(s, width, 3), w);

        size_t first = block * 6;
        uint32_t lb_sum = 0;
        for (int j = 0; j < 6; j++) {
            lb_sum += lb[k - 1][first + j];
        }
        uint32_t best = std::numeric_limits<uint32_t>::max();
        for (int b1 = 0; b1 < 6; b1++) {
            uint32_t d1 = cand[k - 1][first + b1].distance;
            if (lb_sum - lb[k - 1][first + b1] + d1 >= best) {
                continue;
            }
            for (uint64_t c : reduced[k - 1][first + b1]) {
                uint64_t shift = c ^ w[b1];
                uint32_t total = d1;
                for (int j = 0; j < 6 && total < best; j++) {
                    if (j == b1) {
                        continue;
                    }
                    uint64_t y = w[j] ^ shift;
                    total += dist(k - 1, first + j, &y);
                }
                best = std::min(best, total);
            }
        }

        if (k == 3) {
            memo3[block].insert(s[0], best);
        } else {
            memo4[block].emplace(std::array<uint64_t, 4>{s[0], s[1], s[2], s[3]}, best);
        }
        return best;
    }

    void compute_lower_bounds(int m) {
        auto &out = lb[m];
        out.resize(cand[m].size());
        for (size_t o = 0; o < cand[m].size(); o++) {
            if (m == 1) {
                out[o] = cand[1][o].distance;
                continue;
            }
            uint32_t best = std::numeric_limits<uint32_t>::max();
            uint32_t sum = 0;
            for (int j = 0; j < 6; j++) {
                sum += lb[m - 1][o * 6 + j];
            }
            for (int j = 0; j < 6; j++) {
                best = std::min<uint32_t>(best, sum - lb[m - 1][o * 6 + j] + cand[m - 1][o * 6 + j].distance);
            }
            out[o] = best;
        }
    }

    template <size_t SW>
    CandidateSet build_block(int m, size_t o) {
        size_t out_words = words_for_level(m);
        size_t sub_width = size_t{1} << (2 * (m - 1));
        size_t first = o * 6;
        const CandidateSet *sub[6];
        for (int j = 0; j < 6; j++) {
            sub[j] = &cand[m - 1][first + j];
        }
        uint64_t cap = cfg.n_th(m);

        CandidateSet out;
        out.level = m;
        out.words_per_entry = out_words;
        uint32_t best = std::numeric_limits<uint32_t>::max();

        std::array<uint64_t, SW> y[6];
        auto emit = [&](uint32_t d) {
            if (d > best) {
                return;
            }
            if (d < best) {
                best = d;
                out.words.clear();
            }
            size_t at = out.words.size();
            out.words.resize(at + out_words, 0);
            uint64_t *dst = out.words.data() + at;
            for (int q = 0; q < 4; q++) {
                const auto &a = y[kZPairs[q][0]];
                const auto &b = y[kZPairs[q][1]];
                if constexpr (SW == 1) {
                    dst[(q * sub_width) >> 6] |= (a[0] ^ b[0]) << ((q * sub_width) & 63);
                } else {
                    for (size_t w = 0; w < SW; w++) {
                        dst[q * SW + w] = a[w] ^ b[w];
                    }
                }
            }
        };

        for (int b = 0; b < 6; b++) {
            uint32_t base = 0;
            for (int j = 0; j < 6; j++) {
                if (j != b) {
                    base += sub[j]->distance;
                }
            }
            if (base + lb[m - 1][first + b] > best) {
                continue;
            }

            // Candidate index ranges of the five free blocks, reduced to N_th.
            int free_blocks[5];
            uint64_t counts[5];
            int64_t fixed[5];
            uint64_t product = 1;
            bool overflow = false;
            for (int j = 0, i = 0; j < 6; j++) {
                if (j == b) {
                    continue;
                }
                free_blocks[i] = j;
                counts[i] = sub[j]->size();
                fixed[i] = -1;
                if (product > std::numeric_limits<uint64_t>::max() / counts[i]) {
                    overflow = true;
                }
                product *= counts[i];
                i++;
            }
            while (overflow || product > cap) {
                int big = 0;
                for (int i = 1; i < 5; i++) {
                    if (counts[i] > counts[big]) {
                        big = i;
                    }
                }
                if (counts[big] <= 1) {
                    break;
                }
                fixed[big] = static_cast<int64_t>(rng->below(counts[big]));
                counts[big] = 1;
                overflow = false;
                product = 1;
                for (int i = 0; i < 5; i++) {
                    product *= counts[i];
                }
            }

            std::array<uint64_t, SW> acc[6];
            acc[0].fill(0);
            auto recurse = [&](auto &self, int i) -> void {
                if (i == 5) {
                    y[b] = acc[5];
                    uint32_t d = base + dist(m - 1, first + b, y[b].data());
                    if (d <= best) {
                        emit(d);
                    }
                    return;
                }
                int j = free_blocks[i];
                const CandidateSet &cs = *sub[j];
                uint64_t lo = fixed[i] >= 0 ? static_cast<uint64_t>(fixed[i]) : 0;
                uint64_t hi = fixed[i] >= 0 ? lo + 1 : counts[i];
                for (uint64_t c = lo; c < hi; c++) {
                    const uint64_t *e = cs.words.data() + c * SW;
                    for (size_t w = 0; w < SW; w++) {
                        y[j][w] = e[w];
                        acc[i + 1][w] = acc[i][w] ^ e[w];
                    }
                    self(self, i + 1);
                }
            };
            recurse(recurse, 0);
        }

        out.distance = static_cast<int>(best);
        dedupe(out);
        return out;
    }

    static void dedupe(CandidateSet &cs) {
        size_t w = cs.words_per_entry;
        size_t n = cs.size();
        if (n <= 1) {
            return;
        }
        if (w == 1) {
            std::sort(cs.words.begin(), cs.words.end());
            cs.words.erase(std::unique(cs.words.begin(), cs.words.end()), cs.words.end());
            return;
        }
        std::vector<std::vector<uint64_t>> rows(n);
        for (size_t i = 0; i < n; i++) {
            rows[i].assign(cs.words.begin() + i * w, cs.words.begin() + (i + 1) * w);
        }
        std::sort(rows.begin(), rows.end());
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
        cs.words.clear();
        for (const auto &r : rows) {
            cs.words.insert(cs.words.end(), r.begin(), r.end());
        }
    }

    DecodeResult run(std::span<const uint8_t> outcomes, Rng &r, DecodeMode mode, int detect_level) {
        checked_length(outcomes, L);
        if (detect_level < 1 || detect_level > L) {
            throw std::invalid_argument(
                "detection level L_D=" + std::to_string(detect_level) + " must be in 1.." + std::to_string(L));
        }
        rng = &r;
        begin_decode();
        bool detect = mode == DecodeMode::Detect;

        size_t blocks = ipow(6, L - 1);
        level1_bytes.resize(blocks);
        cand[1].resize(blocks);
        for (size_t o = 0; o < blocks; o++) {
            level1_bytes[o] = static_cast<uint8_t>(block_byte(outcomes, o));
            cand[1][o] = level1_candidates(outcomes.subspan(o * 6, 6));
            if (detect && detect_level <= 1 && cand[1][o].size() > 1) {
                return DecodeResult::detection();
            }
        }
        compute_lower_bounds(1);
        if (L >= 3) {
            build_reduced(1);
        }

        for (int m = 2; m <= L; m++) {
            blocks /= 6;
            cand[m].resize(blocks);
            for (size_t o = 0; o < blocks; o++) {
                if (m <= 4) {
                    cand[m][o] = build_block<1>(m, o);
                } else {
                    cand[m][o] = build_block<4>(m, o);
                }
                if (detect && detect_level <= m && cand[m][o].size() > 1) {
                    return DecodeResult::detection();
                }
            }
            compute_lower_bounds(m);
            if (m <= L - 2) {
                build_reduced(m);
            }
        }

        const CandidateSet &top = cand[L][0];
        DecodeResult res;
        res.distance = top.distance;
        res.final_candidates = top.size();
        size_t pick = top.size() > 1 ? static_cast<size_t>(rng->below(top.size())) : 0;
        res.logical = top.bits(pick);
        return res;
    }
};

MinDistanceDecoder::MinDistanceDecoder(int level, DecoderConfig config)
    : impl_(std::make_unique<Impl>(level, std::move(config))) {
}
MinDistanceDecoder::~MinDistanceDecoder() = default;
MinDistanceDecoder::MinDistanceDecoder(MinDistanceDecoder &&) noexcept = default;
MinDistanceDecoder &MinDistanceDecoder::operator=(MinDistanceDecoder &&) noexcept = default;

int MinDistanceDecoder::level() const {
    return impl_->L;
}

const DecoderConfig &MinDistanceDecoder::config() const {
    return impl_->cfg;
}

DecodeResult MinDistanceDecoder::decode(std::span<const uint8_t> outcomes, Rng &rng) {
    return impl_->run(outcomes, rng, impl_->cfg.mode, impl_->cfg.detect_level);
}

DecodeResult MinDistanceDecoder::decode(
    std::span<const uint8_t> outcomes, Rng &rng, DecodeMode mode, int detect_level) {
    return impl_->run(outcomes, rng, mode, detect_level);
}

const std::vector<CandidateSet> &MinDistanceDecoder::candidates(int m) const {
    if (m < 1 || m > impl_->L) {
        return impl_->empty;
    }
    return impl_->cand[m];
}

DecodeResult md_decode(std::span<const uint8_t> outcomes, int level, const DecoderConfig &config, Rng &rng) {
    MinDistanceDecoder dec(level, config);
    return dec.decode(outcomes, rng);
}

DecoderSuite::DecoderSuite(DecoderConfig base) : base_(std::move(base)) {
}

DecodeResult DecoderSuite::decode(
    DecoderKind kind, std::span<const uint8_t> outcomes, int level, DecodeMode mode, int detect_level, Rng &rng) {
    switch (kind) {
        case DecoderKind::Hard:
            return hard_decode(outcomes, level, mode, rng);
        case DecoderKind::Soft: {
            if (mode == DecodeMode::Detect) {
                throw std::invalid_argument("the soft decoder has no detection mode");
            }
            return soft_decode(outcomes, level, base_.prior_error);
        }
        case DecoderKind::MinDistance: {
            auto it = md_.find(level);
            if (it == md_.end()) {
                DecoderConfig cfg = base_;
                cfg.detect_level = std::min(cfg.detect_level, level);
                it = md_.emplace(level, MinDistanceDecoder(level, cfg)).first;
            }
            return it->second.decode(outcomes, rng, mode, detect_level);
        }
    }
    throw std::invalid_argument("bad decoder kind");
}

}  // namespace mhc
