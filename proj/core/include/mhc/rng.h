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

#ifndef MHC_RNG_H
#define MHC_RNG_H

#include <cstdint>
#include <random>

namespace mhc {

/// SplitMix64 finalizer. Used only to derive independent seeds; the streams
/// themselves come from std::mt19937_64.
constexpr uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Counter-based seed derivation: stream `index` of purpose `tag` under `master`.
/// Different (tag, index) pairs give unrelated seeds, so work can be split
/// across batches in any order.
constexpr uint64_t derive_seed(uint64_t master, uint64_t tag, uint64_t index = 0) {
    return mix64(mix64(master ^ mix64(tag)) + index);
}

/// Stream tags. Keeping noise and decoder draws on separate streams means a
/// decoder change never perturbs the sampled errors.
enum class StreamTag : uint64_t {
    Noise = 0x6E6F697365ULL,
    Decoder = 0x6465636F6465ULL,
    Reference = 0x7265666572ULL,
    Bootstrap = 0x626F6F74ULL,
};

class Rng {
   public:
    explicit Rng(uint64_t seed) : engine_(seed) {
    }
    Rng(uint64_t master, StreamTag tag, uint64_t index = 0)
        : engine_(derive_seed(master, static_cast<uint64_t>(tag), index)) {
    }

    uint64_t next() {
        return engine_();
    }
    bool coin() {
        return (engine_() >> 63) != 0;
    }
    /// Uniform integer in [0, n).
    uint64_t below(uint64_t n) {
        return std::uniform_int_distribution<uint64_t>(0, n - 1)(engine_);
    }
    /// Uniform real in [0, 1).
    double uniform() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
    }
    std::mt19937_64 &engine() {
        return engine_;
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace mhc

#endif
