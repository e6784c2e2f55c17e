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

#ifndef MHC_SIMULATE_H
#define MHC_SIMULATE_H

#include <cstdint>
#include <vector>

#include "mhc/circuit.h"
#include "mhc/decoders.h"
#include "mhc/noise.h"
#include "mhc/tableau.h"

namespace mhc {

/// Attempts taken by one execution of a repeat-until-success block.
struct RepeatStat {
    uint32_t op = 0;
    uint32_t attempts = 0;
};

/// A Pauli drawn at a noise site. Single-qubit sites use only pauli_a.
/// Characters are from {I, X, Y, Z}.
struct InjectedError {
    uint32_t op = 0;
    char pauli_a = 'I';
    char pauli_b = 'I';
};

struct RunRecord {
    std::vector<uint8_t> slots;
    std::vector<RepeatStat> repeats;
    std::vector<InjectedError> injected;
    /// A repeat block ran out of attempts; the run stopped there.
    bool discarded = false;
};

/// Executes circuits on a full stabilizer tableau, one trial at a time.
class TableauSimulator {
   public:
    TableauSimulator(const Circuit &circuit, NoiseModel noise, DecoderConfig decoder_config = {});

    /// Noise, measurement randomness and decoder choices derive from `seed`.
    RunRecord run(uint64_t seed, bool log_errors = false);

    /// State left by the last run().
    const Tableau &state() const {
        return tableau_;
    }

   private:
    const Circuit &circuit_;
    NoiseModel noise_;
    DecoderSuite decoders_;
    Tableau tableau_;
};

RunRecord simulate(const Circuit &circuit, const NoiseModel &noise, uint64_t seed);

}  // namespace mhc

#endif
