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

#ifndef MHC_BITS_H
#define MHC_BITS_H

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace mhc {

/// Fixed-length packed bit vector.
class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(size_t num_bits) : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {
    }

    size_t size() const {
        return num_bits_;
    }
    size_t num_words() const {
        return words_.size();
    }
    bool get(size_t k) const {
        return (words_[k >> 6] >> (k & 63)) & 1;
    }
    void set(size_t k, bool v = true) {
        uint64_t m = uint64_t{1} << (k & 63);
        if (v) {
            words_[k >> 6] |= m;
        } else {
            words_[k >> 6] &= ~m;
        }
    }
    void flip(size_t k) {
        words_[k >> 6] ^= uint64_t{1} << (k & 63);
    }
    size_t popcount() const {
        size_t r = 0;
        for (uint64_t w : words_) {
            r += std::popcount(w);
        }
        return r;
    }
    bool none() const {
        for (uint64_t w : words_) {
            if (w) {
                return false;
            }
        }
        return true;
    }
    /// Parity of the bitwise AND with `other`.
    bool dot(const BitVec &other) const {
        uint64_t acc = 0;
        for (size_t i = 0; i < words_.size(); i++) {
            acc ^= words_[i] & other.words_[i];
        }
        return std::popcount(acc) & 1;
    }
    BitVec &operator^=(const BitVec &other) {
        for (size_t i = 0; i < words_.size(); i++) {
            words_[i] ^= other.words_[i];
        }
        return *this;
    }
    bool operator==(const BitVec &other) const = default;

    /// Indices of set bits, ascending.
    std::vector<uint32_t> ones() const {
        std::vector<uint32_t> out;
        for (size_t i = 0; i < words_.size(); i++) {
            uint64_t w = words_[i];
            while (w) {
                out.push_back(static_cast<uint32_t>(i * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
        return out;
    }
    std::string str() const {
        std::string s(num_bits_, '0');
        for (size_t k = 0; k < num_bits_; k++) {
            if (get(k)) {
                s[k] = '1';
            }
        }
        return s;
    }

    uint64_t *data() {
        return words_.data();
    }
    const uint64_t *data() const {
        return words_.data();
    }

   private:
    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

/// Parses a string of '0'/'1' characters (whitespace ignored) into one byte per bit.
/// Throws std::invalid_argument on any other character.
std::vector<uint8_t> parse_bits(const std::string &text);

/// Renders one byte per bit as '0'/'1' characters.
std::string format_bits(const std::vector<uint8_t> &bits);

}  // namespace mhc

#endif
