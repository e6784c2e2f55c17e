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

#ifndef MHC_CIRCUIT_H
#define MHC_CIRCUIT_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mhc/decoders.h"

namespace mhc {

enum class OpKind : uint8_t {
    PrepZ,
    H,
    S,
    X,
    Y,
    Z,
    CNOT,
    SWAP,
    MeasZ,
    Noise,
    Decode,
    Xor,
    XIf,
    ZIf,
    RepeatBegin,
    RepeatEnd,
};

enum class NoiseKind : uint8_t {
    /// Bit flip after a zero-state preparation.
    Prep,
    /// Bit flip before a Z measurement.
    Meas,
    /// One of the 15 nontrivial two-qubit Paulis after a CNOT.
    Cnot,
    /// Bit flip of the code-capacity channel.
    Flip,
};

/// Decoding of a block of measurement slots into logical slots.
struct DecodeSpec {
    DecoderKind decoder = DecoderKind::MinDistance;
    int level = 1;
    DecodeMode mode = DecodeMode::Correct;
    int detect_level = 1;
    /// 6^level consecutive input slots.
    uint32_t in_base = 0;
    /// 4^level consecutive output slots, zeroed when detected.
    uint32_t out_base = 0;
    /// Set to 1 on detection.
    uint32_t flag = 0;

    bool operator==(const DecodeSpec &) const = default;
};

/// One instruction. Field use by kind:
///   PrepZ/H/S/X/Y/Z: a = qubit.  CNOT: a = control, b = target.  SWAP: a, b.
///   MeasZ: a = qubit, b = slot.  Noise: noise, a (and b for Cnot).
///   Decode: a = index into Circuit::decodes.  Xor: c = a ^ b (slots).
///   XIf/ZIf: a = slot; list = qubits.
///   RepeatBegin: a = max attempts, b = index of the matching RepeatEnd.
///   RepeatEnd: a = index of the matching RepeatBegin; list = slots that must all be 0.
struct Op {
    OpKind kind = OpKind::H;
    NoiseKind noise = NoiseKind::Prep;
    uint32_t a = 0;
    uint32_t b = 0;
    uint32_t c = 0;
    uint32_t list_begin = 0;
    uint32_t list_size = 0;

    bool operator==(const Op &) const = default;
};

struct Circuit {
    uint32_t num_qubits = 0;
    uint32_t num_slots = 0;
    std::vector<Op> ops;
    std::vector<uint32_t> lists;
    std::vector<DecodeSpec> decodes;

    std::span<const uint32_t> list(const Op &op) const {
        return {lists.data() + op.list_begin, op.list_size};
    }

    /// Throws std::invalid_argument on out-of-range indices or unbalanced repeats.
    void validate() const;

    size_t count(OpKind kind) const;
    size_t count_noise() const;

    /// Line-oriented text form; parse_circuit(to_text()) reproduces the circuit.
    std::string to_text() const;

    bool operator==(const Circuit &) const = default;
};

/// Throws std::invalid_argument with the offending line number on bad input.
Circuit parse_circuit(const std::string &text);

/// Incremental construction with qubit recycling and automatic noise sites.
class CircuitBuilder {
   public:
    /// While true, preparations, measurements and CNOTs get noise sites attached.
    bool noisy = true;
    /// While true, SWAPs are followed by a two-qubit noise site (when noisy).
    bool noisy_swaps = false;

    /// A qubit in |0>: recycled if possible, prepared either way.
    uint32_t alloc();
    std::vector<uint32_t> alloc(size_t n);
    void release(uint32_t q);
    void release(std::span<const uint32_t> qs);

    uint32_t new_slot();
    /// Base of n consecutive fresh slots.
    uint32_t new_slots(size_t n);

    void prep(uint32_t q);
    void h(uint32_t q);
    void s(uint32_t q);
    void x(uint32_t q);
    void y(uint32_t q);
    void z(uint32_t q);
    void cnot(uint32_t c, uint32_t t);
    void swap(uint32_t a, uint32_t b);
    void measure(uint32_t q, uint32_t slot);
    uint32_t measure(uint32_t q);
    /// Measures qubits into consecutive slots; returns the base slot.
    uint32_t measure_all(std::span<const uint32_t> qs);
    /// Bit flip site, regardless of `noisy`.
    void flip_noise(uint32_t q);

    void decode(const DecodeSpec &spec);
    void xor_slots(uint32_t dst, uint32_t a, uint32_t b);
    void x_if(uint32_t slot, std::span<const uint32_t> qs);
    void z_if(uint32_t slot, std::span<const uint32_t> qs);

    void begin_repeat(uint32_t max_attempts);
    void end_repeat(std::span<const uint32_t> must_be_zero);

    const Circuit &circuit() const {
        return c_;
    }
    Circuit finish();

   private:
    void push(Op op);
    uint32_t push_list(std::span<const uint32_t> items);

    Circuit c_;
    std::vector<uint32_t> free_;
    std::vector<size_t> open_repeats_;
};

}  // namespace mhc

#endif
