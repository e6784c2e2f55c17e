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

#include "mhc/builders.h"
#include "mhc/frame.h"
#include "mhc/simulate.h"

namespace {

using namespace mhc;

void BM_tableau_encoder(benchmark::State &state) {
    BuiltCircuit enc = build_ft_zero_encoder(static_cast<int>(state.range(0)));
    TableauSimulator sim(enc.circuit, NoiseModel::circuit_level(1e-3));
    uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sim.run(seed++));
    }
}
BENCHMARK(BM_tableau_encoder)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

// One batch is 64 trials.
void BM_frame_encoder(benchmark::State &state) {
    BuiltCircuit enc = build_ft_zero_encoder(static_cast<int>(state.range(0)));
    FrameSimulator sim(enc.circuit, NoiseModel::circuit_level(1e-3));
    uint64_t seed = 0;
    for (auto _ : state) {
        sim.run(seed, seed + 1);
        seed += 2;
    }
    state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_frame_encoder)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_frame_cnot_experiment(benchmark::State &state) {
    int level = static_cast<int>(state.range(0));
    BuiltCircuit exp = build_cnot_experiment(level);
    FrameSimulator sim(exp.circuit, NoiseModel::circuit_level(2e-3));
    uint64_t seed = 0;
    for (auto _ : state) {
        sim.run(seed, seed + 1);
        seed += 2;
    }
    state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_frame_cnot_experiment)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
