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

#ifndef MHC_FRAME_H
#define MHC_FRAME_H

#include <cstdint>
#include <span>
#include <vector>

#include "mhc/circuit.h"
#include "mhc/decoders.h"
#include "mhc/noise.h"
#include "mhc/rng.h"

namespace mhc {

/// A forced Pauli at one noise site. For single-qubit sites `pauli` holds
/// (x | z<<1); for CNOT sites it is the index 1..15 of two_qubit_pauli().
struct Fault {
    uint32_t op = 0;
    uint8_t pauli = 1;
};

/// Runs 64 trials of a circuit at once by tracking, per lane, the Pauli
/// difference between the noisy run and a noiseless reference run. Slots
/// hold the difference between noisy and reference classical values.
///
/// This is exact for the circuits built here because every branch and every
/// acceptance predicate is an XOR-linear function of decoded outcomes whose
/// reference values are fixed, and the decoders commute with adding a codeword.
class FrameSimulator {
   public:
    static constexpr size_t kLanes = 64;

    FrameSimulator(const Circuit &circuit, NoiseModel noise, DecoderConfig decoder_config = {});

    /// One batch of 64 noisy trials.
    void run(uint64_t noise_seed, uint64_t decoder_seed);

    /// One batch without random noise; lane i receives faults[i] the first
    /// time its site executes. At most 64 faults; unused lanes stay clean.
    void run_with_faults(std::span<const Fault> faults, uint64_t decoder_seed);

    uint64_t x(uint32_t q) const {
        return x_[q];
    }
    uint64_t z(uint32_t q) const {
        return z_[q];
    }
    uint64_t slot(uint32_t s) const {
        return slots_[s];
    }
    /// Lanes whose repeat blocks ran out of attempts.
    uint64_t discarded() const {
        return discarded_;
    }
    /// Lanes that received their forced fault (fault runs only).
    uint64_t fired() const {
        return fired_;
    }

    /// Repeat statistics accumulated over all runs, indexed by RepeatBegin op.
    struct RepeatTotals {
        uint64_t entries = 0;
        uint64_t attempts = 0;
    };
    const std::vector<RepeatTotals> &repeat_totals() const {
        return totals_;
    }

    const Circuit &circuit() const {
        return circuit_;
    }

   private:
    struct Bernoulli {
        double p = 0;
        double log_q = 0;
        int64_t gap = 0;

        void reset(double prob, Rng &rng);
        uint64_t next(Rng &rng);
        int64_t draw(Rng &rng) const;
    };

    void execute(Rng *noise_rng, Rng &decoder_rng);
    void apply_pauli_lane(uint32_t q, unsigned lane, bool px, bool pz);

    const Circuit &circuit_;
    NoiseModel noise_;
    DecoderSuite decoders_;
    std::vector<uint64_t> x_, z_, slots_;
    uint64_t discarded_ = 0;
    uint64_t fired_ = 0;
    std::vector<RepeatTotals> totals_;

    // Fault mode: faults grouped by op.
    std::vector<int32_t> fault_first_;
    std::vector<int32_t> fault_next_;
    std::vector<Fault> faults_;

    Bernoulli circ_, flip_;
    std::vector<uint8_t> bits_;
};

}  // namespace mhc

#endif
