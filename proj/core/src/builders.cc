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

#include "mhc/builders.h"

#include <algorithm>
#include <stdexcept>

#include "mhc/code.h"

namespace mhc {

Block Block::sub(int j) const {
    if (level < 1 || j < 0 || j >= 6) {
        throw std::invalid_argument("no such sub-block");
    }
    size_t s = q.size() / 6;
    Block out;
    out.level = level - 1;
    out.q.assign(q.begin() + static_cast<ptrdiff_t>(j * s), q.begin() + static_cast<ptrdiff_t>((j + 1) * s));
    return out;
}

namespace {

Block concat(const std::vector<Block> &parts) {
    Block out;
    out.level = parts.front().level + 1;
    for (const Block &p : parts) {
        out.q.insert(out.q.end(), p.q.begin(), p.q.end());
    }
    return out;
}

int physical_image(SwapPlane plane, int v) {
    switch (plane) {
        case SwapPlane::OneThree:
            return v == 0 ? 2 : v == 2 ? 0 : v;
        case SwapPlane::FourSix:
            return v == 3 ? 5 : v == 5 ? 3 : v;
        case SwapPlane::Halves:
            return (v + 3) % 6;
    }
    return v;
}

int logical_image(SwapPlane plane, int v) {
    switch (plane) {
        case SwapPlane::OneThree:
            return v < 2 ? 1 - v : v;
        case SwapPlane::FourSix:
            return v >= 2 ? 5 - v : v;
        case SwapPlane::Halves:
            return v ^ 2;
    }
    return v;
}

std::vector<uint32_t> digit_permutation(uint64_t radix, int level, int digit, SwapPlane plane, bool logical) {
    if (level < 1 || level > kMaxCodeLevel) {
        throw std::invalid_argument("level out of range");
    }
    if (digit < 1 || digit > level) {
        throw std::invalid_argument("digit must lie in 1.." + std::to_string(level));
    }
    uint64_t n = ipow(radix, level), stride = ipow(radix, digit - 1);
    std::vector<uint32_t> perm(n);
    for (uint64_t j = 0; j < n; j++) {
        int v = static_cast<int>((j / stride) % radix);
        int w = logical ? logical_image(plane, v) : physical_image(plane, v);
        perm[j] = static_cast<uint32_t>(j + (static_cast<int64_t>(w) - v) * static_cast<int64_t>(stride));
    }
    return perm;
}

}  // namespace

SwapPlane parse_swap_plane(const std::string &text) {
    std::string digits;
    for (char c : text) {
        if (c >= '1' && c <= '6') {
            digits += c;
        } else if (c != ' ' && c != '-' && c != '<' && c != '>' && c != ',') {
            throw std::invalid_argument("bad swap plane '" + text + "'");
        }
    }
    if (digits == "13" || digits == "31") {
        return SwapPlane::OneThree;
    }
    if (digits == "46" || digits == "64") {
        return SwapPlane::FourSix;
    }
    if (digits == "123456" || digits == "456123") {
        return SwapPlane::Halves;
    }
    throw std::invalid_argument("bad swap plane '" + text + "'; expected 1<->3, 4<->6 or 123<->456");
}

std::string swap_plane_name(SwapPlane plane) {
    switch (plane) {
        case SwapPlane::OneThree:
            return "1<->3";
        case SwapPlane::FourSix:
            return "4<->6";
        case SwapPlane::Halves:
            return "123<->456";
    }
    return "?";
}

std::vector<uint32_t> swap_permutation(int level, int digit, SwapPlane plane) {
    return digit_permutation(6, level, digit, plane, false);
}

std::vector<uint32_t> logical_swap_permutation(int level, int digit, SwapPlane plane) {
    return digit_permutation(4, level, digit, plane, true);
}

std::vector<uint32_t> hadamard_permutation(int level) {
    std::vector<uint32_t> out(ipow(6, level));
    for (uint32_t j = 0; j < out.size(); j++) {
        out[j] = j;
    }
    for (int digit = 1; digit <= level; digit++) {
        for (SwapPlane plane : {SwapPlane::OneThree, SwapPlane::FourSix}) {
            auto p = swap_permutation(level, digit, plane);
            for (auto &x : out) {
                x = p[x];
            }
        }
    }
    return out;
}

std::vector<uint32_t> swap_permutation(int level, const std::string &spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos || colon == 0) {
        throw std::invalid_argument("swap spec must look like <digit>:<plane>, got '" + spec + "'");
    }
    int digit;
    try {
        size_t used = 0;
        digit = std::stoi(spec.substr(0, colon), &used);
        if (used != colon) {
            throw std::invalid_argument("");
        }
    } catch (const std::exception &) {
        throw std::invalid_argument("bad digit in swap spec '" + spec + "'");
    }
    return swap_permutation(level, digit, parse_swap_plane(spec.substr(colon + 1)));
}

namespace build {

Block zero_642(CircuitBuilder &b, int level) {
    if (level == 0) {
        return Block{0, {b.alloc()}};
    }
    std::vector<Block> parts;
    for (int j = 0; j < 6; j++) {
        parts.push_back(zero_642(b, level - 1));
    }
    logical_h(b, parts[0]);
    for (int j = 0; j + 1 < 6; j++) {
        transversal_cnot(b, parts[j], parts[j + 1]);
    }
    return concat(parts);
}

Block arbitrary_642(CircuitBuilder &b, std::span<const uint32_t> inputs) {
    if (inputs.size() != 4) {
        throw std::invalid_argument("arbitrary-state encoder takes four inputs");
    }
    Block blk{1, {b.alloc(), inputs[0], inputs[1], b.alloc(), inputs[2], inputs[3]}};
    const auto &q = blk.q;
    b.cnot(q[1], q[3]);
    b.cnot(q[5], q[3]);
    b.h(q[0]);
    for (int j = 0; j < 5; j++) {
        b.cnot(q[j], q[j + 1]);
    }
    return blk;
}

void transversal_h(CircuitBuilder &b, const Block &blk) {
    for (uint32_t q : blk.q) {
        b.h(q);
    }
}

void permute(CircuitBuilder &b, const Block &blk, std::span<const uint32_t> perm) {
    for (size_t j = 0; j < perm.size(); j++) {
        if (j < perm[j]) {
            b.swap(blk.q[j], blk.q[perm[j]]);
        }
    }
}

void logical_h(CircuitBuilder &b, const Block &blk) {
    transversal_h(b, blk);
    for (int digit = 1; digit <= blk.level; digit++) {
        permute(b, blk, swap_permutation(blk.level, digit, SwapPlane::OneThree));
        permute(b, blk, swap_permutation(blk.level, digit, SwapPlane::FourSix));
    }
}

void transversal_cnot(CircuitBuilder &b, const Block &control, const Block &target) {
    if (control.size() != target.size()) {
        throw std::invalid_argument("transversal CNOT between blocks of different size");
    }
    for (size_t j = 0; j < control.size(); j++) {
        b.cnot(control.q[j], target.q[j]);
    }
}

std::vector<uint32_t> logical_qubits(const Block &blk, uint64_t t, Basis basis) {
    std::vector<uint32_t> out;
    for (uint64_t j : logical_support(blk.level, logical_address(t, blk.level), basis)) {
        out.push_back(blk.q[j]);
    }
    return out;
}

DecodeSpec measure_and_decode(
    CircuitBuilder &b, const Block &blk, DecoderKind kind, DecodeMode mode, int detect_level) {
    DecodeSpec spec;
    spec.decoder = kind;
    spec.level = blk.level;
    spec.mode = mode;
    spec.detect_level = detect_level;
    spec.in_base = b.measure_all(blk.q);
    spec.out_base = b.new_slots(ipow(4, blk.level));
    spec.flag = b.new_slot();
    b.decode(spec);
    return spec;
}

namespace {

// Flag-based parity check of one level-1 block: S_Z when looking for X
// errors, S_X when looking for Z errors.
void flag_check(CircuitBuilder &b, const Block &data, Basis errors, std::vector<uint32_t> &must_be_zero) {
    const auto &d = data.q;
    uint32_t a = b.alloc();
    uint32_t f = b.alloc();
    if (errors == Basis::X) {
        b.h(f);
        b.cnot(d[0], a);
        b.cnot(f, a);
        for (int j = 1; j < 5; j++) {
            b.cnot(d[j], a);
        }
        b.cnot(f, a);
        b.cnot(d[5], a);
        b.h(f);
    } else {
        b.h(a);
        b.cnot(a, d[0]);
        b.cnot(a, f);
        for (int j = 1; j < 5; j++) {
            b.cnot(a, d[j]);
        }
        b.cnot(a, f);
        b.cnot(a, d[5]);
        b.h(a);
    }
    must_be_zero.push_back(b.measure(a));
    must_be_zero.push_back(b.measure(f));
    b.release(a);
    b.release(f);
}

// Steane-style check with a verified ancilla block.
void steane_check(CircuitBuilder &b, const Block &data, Basis errors, const GadgetOptions &opt,
    std::vector<uint32_t> &must_be_zero) {
    Block anc = ft_zero(b, data.level, opt);
    if (errors == Basis::X) {
        logical_h(b, anc);
        transversal_cnot(b, data, anc);
    } else {
        transversal_cnot(b, anc, data);
        logical_h(b, anc);
    }
    DecodeSpec spec =
        measure_and_decode(b, anc, DecoderKind::MinDistance, DecodeMode::Detect, opt.level3_detect_level);
    must_be_zero.push_back(spec.flag);
    b.release(anc.q);
}

}  // namespace

void error_detection(CircuitBuilder &b, const Block &data, Basis errors, const GadgetOptions &opt,
    std::vector<uint32_t> &must_be_zero) {
    if (data.level == 1) {
        flag_check(b, data, errors, must_be_zero);
    } else if (data.level == 2) {
        steane_check(b, data, errors, opt, must_be_zero);
    } else {
        throw std::invalid_argument("error-detection gadgets exist for levels 1 and 2");
    }
}

namespace {

Block teleport(CircuitBuilder &b, const Block &data, DecoderKind kind, DecodeMode mode, int detect_level,
    const GadgetOptions &opt, TeleportSlots *slots) {
    Block a = ft_zero(b, data.level, opt);
    Block out = ft_zero(b, data.level, opt);
    logical_h(b, a);
    transversal_cnot(b, a, out);
    transversal_cnot(b, data, a);
    logical_h(b, data);
    DecodeSpec zs = measure_and_decode(b, data, kind, mode, detect_level);
    DecodeSpec xs = measure_and_decode(b, a, kind, mode, detect_level);
    b.release(data.q);
    b.release(a.q);
    uint64_t k = ipow(4, data.level);
    for (uint64_t t = 0; t < k; t++) {
        b.x_if(xs.out_base + static_cast<uint32_t>(t), logical_qubits(out, t, Basis::X));
        b.z_if(zs.out_base + static_cast<uint32_t>(t), logical_qubits(out, t, Basis::Z));
    }
    if (slots != nullptr) {
        *slots = TeleportSlots{zs.out_base, xs.out_base, zs.flag, xs.flag};
    }
    return out;
}

}  // namespace

Block ect(CircuitBuilder &b, const Block &data, const GadgetOptions &opt, TeleportSlots *slots) {
    return teleport(b, data, opt.ect_decoder, DecodeMode::Correct, 1, opt, slots);
}

Block edt(CircuitBuilder &b, const Block &data, int detect_level, const GadgetOptions &opt,
    std::vector<uint32_t> &must_be_zero) {
    TeleportSlots s;
    Block out = teleport(b, data, DecoderKind::MinDistance, DecodeMode::Detect, detect_level, opt, &s);
    must_be_zero.push_back(s.z_flag);
    must_be_zero.push_back(s.x_flag);
    return out;
}

namespace {

Block ft_zero_level1(CircuitBuilder &b, const GadgetOptions &opt) {
    b.begin_repeat(opt.max_attempts);
    Block blk{1, b.alloc(6)};
    const auto &q = blk.q;
    uint32_t a = b.alloc();
    b.h(q[0]);
    for (int j = 0; j < 5; j++) {
        b.cnot(q[j], q[j + 1]);
    }
    b.cnot(q[0], a);
    b.cnot(q[5], a);
    uint32_t s = b.measure(a);
    b.release(a);
    b.end_repeat(std::vector<uint32_t>{s});
    return blk;
}

// Six verified blocks fanned out from the first into a transversal GHZ
// state, a parity check block on two of them, then Z- and X-error detection
// on every block. The fan-out (rather than a chain) keeps a logical Z from
// inside one lower-level block from spreading to an odd number of blocks.
Block ft_zero_chain(CircuitBuilder &b, int level, const GadgetOptions &opt) {
    b.begin_repeat(opt.max_attempts);
    std::vector<Block> parts;
    for (int j = 0; j < 6; j++) {
        parts.push_back(ft_zero(b, level - 1, opt));
    }
    Block check = ft_zero(b, level - 1, opt);
    logical_h(b, parts[0]);
    for (int j = 1; j < 6; j++) {
        transversal_cnot(b, parts[0], parts[j]);
    }
    transversal_cnot(b, parts[0], check);
    transversal_cnot(b, parts[5], check);

    std::vector<uint32_t> must;
    DecodeSpec spec = level == 2
        ? measure_and_decode(b, check, DecoderKind::Hard, DecodeMode::Detect, 1)
        : measure_and_decode(b, check, DecoderKind::MinDistance, DecodeMode::Detect, opt.level3_detect_level);
    b.release(check.q);
    must.push_back(spec.flag);
    for (uint64_t t = 0; t < ipow(4, level - 1); t++) {
        must.push_back(spec.out_base + static_cast<uint32_t>(t));
    }
    for (const Block &p : parts) {
        error_detection(b, p, Basis::Z, opt, must);
    }
    for (const Block &p : parts) {
        error_detection(b, p, Basis::X, opt, must);
    }
    b.end_repeat(must);
    return concat(parts);
}

// Two four-block GHZ states, joined and checked through one block of each.
Block ft_zero_level4(CircuitBuilder &b, const GadgetOptions &opt) {
    int ld = opt.level4_detect_level;
    b.begin_repeat(opt.max_attempts);
    std::vector<Block> a_side, b_side;
    for (int j = 0; j < 4; j++) {
        a_side.push_back(ft_zero(b, 3, opt));
    }
    for (int j = 0; j < 4; j++) {
        b_side.push_back(ft_zero(b, 3, opt));
    }
    logical_h(b, a_side[0]);
    logical_h(b, b_side[0]);
    for (int j = 1; j < 4; j++) {
        transversal_cnot(b, a_side[0], a_side[j]);
        transversal_cnot(b, b_side[0], b_side[j]);
    }
    // a_side = (A1, A2, A3, a), b_side = (b, B1, B2, B3)
    transversal_cnot(b, b_side[1], a_side[3]);
    transversal_cnot(b, a_side[2], b_side[0]);

    std::vector<uint32_t> must;
    DecodeSpec sa = measure_and_decode(b, a_side[3], DecoderKind::MinDistance, DecodeMode::Detect, ld);
    DecodeSpec sb = measure_and_decode(b, b_side[0], DecoderKind::MinDistance, DecodeMode::Detect, ld);
    b.release(a_side[3].q);
    b.release(b_side[0].q);
    must.push_back(sa.flag);
    must.push_back(sb.flag);
    uint64_t k = ipow(4, 3);
    for (uint64_t t = 0; t < k; t++) {
        uint32_t p = b.new_slot();
        b.xor_slots(p, sa.out_base + static_cast<uint32_t>(t), sb.out_base + static_cast<uint32_t>(t));
        must.push_back(p);
        // Both halves disagree when the pair reads 1 1: flip the first half.
        std::vector<uint32_t> qs;
        for (int j = 0; j < 3; j++) {
            auto part = logical_qubits(a_side[j], t, Basis::X);
            qs.insert(qs.end(), part.begin(), part.end());
        }
        b.x_if(sa.out_base + static_cast<uint32_t>(t), qs);
    }
    std::vector<Block> parts = {a_side[0], a_side[1], a_side[2], b_side[1], b_side[2], b_side[3]};
    for (Block &p : parts) {
        p = edt(b, p, ld, opt, must);
    }
    b.end_repeat(must);
    return concat(parts);
}

}  // namespace

Block ft_zero(CircuitBuilder &b, int level, const GadgetOptions &opt) {
    switch (level) {
        case 1:
            return ft_zero_level1(b, opt);
        case 2:
        case 3:
            return ft_zero_chain(b, level, opt);
        case 4:
            return ft_zero_level4(b, opt);
        default:
            throw std::invalid_argument("fault-tolerant encoders exist for levels 1 to 4, not " + std::to_string(level));
    }
}

}  // namespace build

BuiltCircuit build_zero_encoder_642(bool arbitrary) {
    CircuitBuilder b;
    BuiltCircuit out;
    if (arbitrary) {
        std::vector<uint32_t> q(6);
        for (auto &x : q) {
            x = b.alloc();
        }
        std::vector<uint32_t> inputs = {q[1], q[2], q[4], q[5]};
        b.release(q[3]);
        b.release(q[0]);
        out.output = build::arbitrary_642(b, inputs);
    } else {
        out.output = build::zero_642(b, 1);
    }
    out.circuit = b.finish();
    return out;
}

BuiltCircuit build_ft_zero_encoder(int level, const GadgetOptions &opt) {
    CircuitBuilder b;
    BuiltCircuit out;
    out.output = build::ft_zero(b, level, opt);
    out.circuit = b.finish();
    return out;
}

BuiltCircuit build_ed_gadget(Basis errors, int level, const GadgetOptions &opt) {
    CircuitBuilder b;
    BuiltCircuit out;
    b.noisy = false;
    out.output = build::zero_642(b, level);
    b.noisy = true;
    build::error_detection(b, out.output, errors, opt, out.result_slots);
    out.circuit = b.finish();
    return out;
}

BuiltCircuit build_ect(int level, const GadgetOptions &opt) {
    CircuitBuilder b;
    BuiltCircuit out;
    b.noisy = false;
    Block data = build::zero_642(b, level);
    b.noisy = true;
    build::TeleportSlots s;
    out.output = build::ect(b, data, opt, &s);
    out.result_slots = {s.z_flip, s.x_flip};
    out.circuit = b.finish();
    return out;
}

BuiltCircuit build_cnot_experiment(int level, const GadgetOptions &opt, int rounds) {
    if (level < 1 || level > 4) {
        throw std::invalid_argument("CNOT experiment levels are 1 to 4");
    }
    if (rounds < 0) {
        throw std::invalid_argument("rounds must be nonnegative");
    }
    CircuitBuilder b;
    b.noisy = false;
    std::vector<Block> r;
    for (int j = 0; j < 4; j++) {
        r.push_back(build::zero_642(b, level));
    }
    build::logical_h(b, r[0]);
    build::transversal_cnot(b, r[0], r[1]);
    build::logical_h(b, r[2]);
    build::transversal_cnot(b, r[2], r[3]);

    b.noisy = true;
    for (int i = 0; i < rounds; i++) {
        build::transversal_cnot(b, r[0], r[2]);
        r[0] = build::ect(b, r[0], opt);
        r[2] = build::ect(b, r[2], opt);
    }

    b.noisy = false;
    if (rounds % 2 == 1) {
        build::transversal_cnot(b, r[0], r[2]);
    }
    build::transversal_cnot(b, r[0], r[1]);
    build::logical_h(b, r[0]);
    build::transversal_cnot(b, r[2], r[3]);
    build::logical_h(b, r[2]);
    BuiltCircuit out;
    uint64_t k = ipow(4, level);
    for (const Block &blk : r) {
        DecodeSpec s = build::measure_and_decode(b, blk, DecoderKind::MinDistance, DecodeMode::Correct, 1);
        for (uint64_t t = 0; t < k; t++) {
            out.result_slots.push_back(s.out_base + static_cast<uint32_t>(t));
        }
    }
    out.output = r[0];
    out.circuit = b.finish();
    return out;
}

}  // namespace mhc
