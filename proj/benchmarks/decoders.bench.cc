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

#include <benchmark/benchmark.h>

#include "mhc/code.h"
#include "mhc/decoders.h"
#include "mhc/rng.h"

namespace {

using namespace mhc;

// Noisy all-zero outcomes; the zero string is a codeword at every level.
std::vector<std::vector<uint8_t>> inputs(int level, double p, size_t count) {
    Rng rng(5);
    std::vector<std::vector<uint8_t>> out(count, std::vector<uint8_t>(ipow(6, level)));
    for (auto &v : out) {
        for (auto &b : v) {
            b = rng.uniform() < p;
        }
    }
    return out;
}

void BM_hard(benchmark::State &state) {
    int level = static_cast<int>(state.range(0));
    auto in = inputs(level, 0.01, 256);
    Rng rng(1);
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hard_decode(in[i++ % in.size()], level, DecodeMode::Correct, rng));
    }
}
BENCHMARK(BM_hard)->DenseRange(1, 4);

void BM_soft(benchmark::State &state) {
    int level = static_cast<int>(state.range(0));
    auto in = inputs(level, 0.01, 256);
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(soft_decode(in[i++ % in.size()], level, 0.01));
    }
}
BENCHMARK(BM_soft)->DenseRange(1, 4);

void BM_min_distance(benchmark::State &state) {
    int level = static_cast<int>(state.range(0));
    double p = static_cast<double>(state.range(1)) / 1000.0;
    auto in = inputs(level, p, 64);
    MinDistanceDecoder dec(level, {});
    Rng rng(1);
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dec.decode(in[i++ % in.size()], rng));
    }
}
BENCHMARK(BM_min_distance)
    ->Args({2, 50})
    ->Args({3, 20})
    ->Args({3, 56})
    ->Args({4, 20})
    ->Args({4, 56})
    ->Unit(benchmark::kMicrosecond);

}  // namespace
