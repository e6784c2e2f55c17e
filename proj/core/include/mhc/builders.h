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

#ifndef MHC_BUILDERS_H
#define MHC_BUILDERS_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mhc/circuit.h"
#include "mhc/code.h"
#include "mhc/decoders.h"

namespace mhc {

/// The qubits of one level-L code block; q[j] holds physical flat index j.
struct Block {
    int level = 0;
    std::vector<uint32_t> q;

    size_t size() const {
        return q.size();
    }
    /// Level-(level-1) sub-block j in 0..5.
    Block sub(int j) const;
};

/// Digit-value exchange at one address digit. Digit values are 1-based.
enum class SwapPlane {
    OneThree,   // 1<->3
    FourSix,    // 4<->6
    Halves,     // 123<->456
};

/// Accepts "1<->3", "4<->6" and "123<->456" (also written with '-' or ','
/// separators, e.g. "1-3"). Throws std::invalid_argument otherwise.
SwapPlane parse_swap_plane(const std::string &text);
std::string swap_plane_name(SwapPlane plane);

/// Permutation of physical flat indices exchanging digit values at `digit`
/// (1 = innermost, level = outermost). Involutive.
std::vector<uint32_t> swap_permutation(int level, int digit, SwapPlane plane);
/// The induced permutation of logical flat indices.
std::vector<uint32_t> logical_swap_permutation(int level, int digit, SwapPlane plane);
/// Where logical H (transversal H plus SWAPs) moves each physical position.
std::vector<uint32_t> hadamard_permutation(int level);
/// Parses "<digit>:<plane>", e.g. "3:123<->456".
std::vector<uint32_t> swap_permutation(int level, const std::string &spec);

/// Options shared by the encoder and gadget builders.
struct GadgetOptions {
    uint32_t max_attempts = 1000;
    /// Decoder for the error-correcting teleportation outcomes.
    DecoderKind ect_decoder = DecoderKind::MinDistance;
    /// Level-4 encoder: detection depth of its md decodes.
    int level4_detect_level = 2;
    /// Level-3 encoder: detection depth of its md decodes.
    int level3_detect_level = 1;
};

/// Gate-level constructions appended to a CircuitBuilder. Noise follows the
/// builder's `noisy` flag.
namespace build {

/// Level-L zero state by recursive GHZ encoding, no verification.
Block zero_642(CircuitBuilder &b, int level);
/// Encodes four input qubits (holding logical qubits 1..4) into a level-1
/// block; the inputs become block positions 2, 3, 5, 6.
Block arbitrary_642(CircuitBuilder &b, std::span<const uint32_t> inputs);

void transversal_h(CircuitBuilder &b, const Block &blk);
/// Transversal H followed by the SWAPs that restore the logical labelling.
void logical_h(CircuitBuilder &b, const Block &blk);
void transversal_cnot(CircuitBuilder &b, const Block &control, const Block &target);
void permute(CircuitBuilder &b, const Block &blk, std::span<const uint32_t> perm);

/// Qubits of the logical Z or X operator of logical flat index t.
std::vector<uint32_t> logical_qubits(const Block &blk, uint64_t t, Basis basis);

/// Fault-tolerant zero-state encoder, wrapped in its own repeat block.
Block ft_zero(CircuitBuilder &b, int level, const GadgetOptions &opt = {});

/// Z-error (Basis::Z) or X-error (Basis::X) detection on a level-1 or
/// level-2 block. Slots that must read 0 are appended to `must_be_zero`.
void error_detection(CircuitBuilder &b, const Block &data, Basis errors, const GadgetOptions &opt,
    std::vector<uint32_t> &must_be_zero);

/// Slot bases of a teleportation's two decodes.
struct TeleportSlots {
    uint32_t z_flip = 0;  // 4^L decoded data outcomes (drive Z corrections)
    uint32_t x_flip = 0;  // 4^L decoded ancilla outcomes (drive X corrections)
    uint32_t z_flag = 0;
    uint32_t x_flag = 0;
};

/// Error-correcting teleportation of `data`; returns the new block.
Block ect(CircuitBuilder &b, const Block &data, const GadgetOptions &opt = {}, TeleportSlots *slots = nullptr);
/// Error-detecting teleportation: md detection at `detect_level`; the flags
/// are appended to `must_be_zero`.
Block edt(CircuitBuilder &b, const Block &data, int detect_level, const GadgetOptions &opt,
    std::vector<uint32_t> &must_be_zero);

/// Measures a block and decodes it; returns the DecodeSpec used.
DecodeSpec measure_and_decode(
    CircuitBuilder &b, const Block &blk, DecoderKind kind, DecodeMode mode, int detect_level);

}  // namespace build

/// A finished circuit with the block it leaves behind.
struct BuiltCircuit {
    Circuit circuit;
    Block output;
    /// Circuit-specific result slots (documented per builder).
    std::vector<uint32_t> result_slots;
};

/// Six-qubit encoder. With `arbitrary`, qubits 1, 2, 4, 5 (0-based) are the
/// inputs for logical qubits 1..4 and start in |0>; prepend gates on them to
/// encode something else.
BuiltCircuit build_zero_encoder_642(bool arbitrary);

BuiltCircuit build_ft_zero_encoder(int level, const GadgetOptions &opt = {});

/// A noiseless level-`level` zero block followed by one noisy gadget.
/// result_slots: the gadget's must-be-zero slots.
BuiltCircuit build_ed_gadget(Basis errors, int level, const GadgetOptions &opt = {});

/// A noiseless level-`level` zero block followed by a noisy ECT.
/// result_slots: z_flip base, x_flip base.
BuiltCircuit build_ect(int level, const GadgetOptions &opt = {});

/// Ten noisy transversal CNOTs with ECTs between noiseless Bell pairs.
/// result_slots: the 4 * 4^level decoded logical outcomes; the trial fails
/// when any is 1.
BuiltCircuit build_cnot_experiment(int level, const GadgetOptions &opt = {}, int rounds = 10);

}  // namespace mhc

#endif
