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

#ifndef MHC_DECODERS_H
#define MHC_DECODERS_H

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mhc/rng.h"

namespace mhc {

enum class DecoderKind { Hard, Soft, MinDistance };
enum class DecodeMode { Correct, Detect };

std::string decoder_name(DecoderKind kind);
/// Accepts "hard", "soft" (or "map"), "md". Throws std::invalid_argument otherwise.
DecoderKind parse_decoder_kind(const std::string &name);
std::string mode_name(DecodeMode mode);
DecodeMode parse_decode_mode(const std::string &name);

struct DecoderConfig {
    DecodeMode mode = DecodeMode::Correct;
    /// Detection depth L_D: in detect mode the minimum-distance decoder reports
    /// a detection unless every block at levels L_D..L has exactly one candidate.
    int detect_level = 1;
    /// Candidate-product caps N_th keyed by the level being built. Levels
    /// missing from the map use default_product_cap().
    std::map<int, uint64_t> product_cap;
    /// Candidate-sum caps M_th keyed by the level of the block whose distance
    /// is being evaluated. Levels missing from the map use default_sum_cap().
    std::map<int, uint64_t> sum_cap;
    /// Prior physical error probability for the soft decoder.
    double prior_error = 0.01;
    uint64_t seed = 0;

    uint64_t n_th(int level) const;
    uint64_t m_th(int level) const;

    /// 10^5 from level 3 up, no cap at level 2 (at most 6^5 products there).
    static uint64_t default_product_cap(int level);
    /// 6 at level 2, 12 at level 3, doubling above.
    static uint64_t default_sum_cap(int level);

    /// Throws std::invalid_argument on a non-positive cap or a bad prior.
    void validate(int code_level) const;
};

/// Decoder output: either 4^L logical bits or a detection.
struct DecodeResult {
    bool detected = false;
    std::vector<uint8_t> logical;
    /// Minimum-distance decoder only: Hamming distance of the chosen candidate.
    int distance = -1;
    /// Minimum-distance decoder only: number of candidates left at the logical level.
    uint64_t final_candidates = 0;

    static DecodeResult detection() {
        DecodeResult r;
        r.detected = true;
        return r;
    }
};

/// Minimum-distance candidates of one block at some level m: encoded strings
/// of 4^m bits, all at the same distance, duplicate-free.
struct CandidateSet {
    int level = 1;
    int distance = 0;
    /// Entries are stored back to back, words_per_entry words each.
    size_t words_per_entry = 1;
    std::vector<uint64_t> words;

    size_t size() const {
        return words.size() / words_per_entry;
    }
    std::span<const uint64_t> entry(size_t i) const {
        return {words.data() + i * words_per_entry, words_per_entry};
    }
    /// Entry i as one byte per bit (4^level bits).
    std::vector<uint8_t> bits(size_t i) const;
};

/// Number of words holding a level-m encoded string.
constexpr size_t words_for_level(int m) {
    size_t bits = size_t{1} << (2 * m);
    return (bits + 63) / 64;
}

/// Level-1 tables of the [[6,4,2]] code. A 6-bit block is a byte whose bit i
/// is physical qubit i+1; an encoded string is a nibble whose bit q is logical q+1.
namespace c642 {
/// Encoded string of an even-parity block (x1+x2, x2+x3, x4+x5, x5+x6).
constexpr unsigned encode(unsigned block) {
    unsigned b0 = block & 1, b1 = (block >> 1) & 1, b2 = (block >> 2) & 1;
    unsigned b3 = (block >> 3) & 1, b4 = (block >> 4) & 1, b5 = (block >> 5) & 1;
    return (b0 ^ b1) | ((b1 ^ b2) << 1) | ((b3 ^ b4) << 2) | ((b4 ^ b5) << 3);
}
/// The codeword with first bit 0 encoding `encoded`; its complement is the other.
unsigned canonical_codeword(unsigned encoded);
/// Distance from a 6-bit block to the nearest codeword with the given encoding.
int block_distance(unsigned block, unsigned encoded);
}  // namespace c642

/// Minimum-distance candidates of a single 6-bit block (bits[0..5]).
CandidateSet level1_candidates(std::span<const uint8_t> block);

/// Hard-decision decoding with located-error correction. In correct mode an
/// unresolved logical flag becomes a fair coin from `rng`; in detect mode any
/// flag anywhere yields a detection. Throws std::invalid_argument on a length mismatch.
DecodeResult hard_decode(std::span<const uint8_t> outcomes, int level, DecodeMode mode, Rng &rng);

/// Symbol-MAP soft decoding. Returns P(value = 0) for every encoded qubit at
/// every level: result[m-1] has 6^(L-m) * 4^m entries in level-m flat order.
std::vector<std::vector<double>> soft_marginals(std::span<const uint8_t> outcomes, int level, double prior_error);

/// Logical bit = 0 iff its marginal P(0) > 0.5. Throws std::invalid_argument
/// unless 0 < prior_error < 1 and the length matches.
DecodeResult soft_decode(std::span<const uint8_t> outcomes, int level, double prior_error);

/// Level-by-level minimum-distance decoder. Holds reusable scratch tables,
/// so keep one instance per thread and call decode() repeatedly.
class MinDistanceDecoder {
   public:
    MinDistanceDecoder(int level, DecoderConfig config);
    ~MinDistanceDecoder();
    MinDistanceDecoder(MinDistanceDecoder &&) noexcept;
    MinDistanceDecoder &operator=(MinDistanceDecoder &&) noexcept;

    int level() const;
    const DecoderConfig &config() const;

    DecodeResult decode(std::span<const uint8_t> outcomes, Rng &rng);
    /// Same, overriding the configured mode and detection depth.
    DecodeResult decode(std::span<const uint8_t> outcomes, Rng &rng, DecodeMode mode, int detect_level);

    /// Candidate sets of every block at level m from the last decode() call
    /// (6^(L-m) of them). Empty when decoding stopped early.
    const std::vector<CandidateSet> &candidates(int m) const;

   private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One-shot convenience wrapper around MinDistanceDecoder.
DecodeResult md_decode(std::span<const uint8_t> outcomes, int level, const DecoderConfig &config, Rng &rng);

/// Dispatches to one of the three decoders, caching minimum-distance scratch
/// per level. Not thread safe; use one per worker.
class DecoderSuite {
   public:
    explicit DecoderSuite(DecoderConfig base = {});

    DecodeResult decode(
        DecoderKind kind, std::span<const uint8_t> outcomes, int level, DecodeMode mode, int detect_level, Rng &rng);

    const DecoderConfig &base_config() const {
        return base_;
    }

   private:
    DecoderConfig base_;
    std::map<int, MinDistanceDecoder> md_;
};

}  // namespace mhc

#endif
