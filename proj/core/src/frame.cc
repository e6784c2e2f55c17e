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

#include "mhc/frame.h"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "mhc/code.h"

namespace mhc {

void FrameSimulator::Bernoulli::reset(double prob, Rng &rng) {
    p = prob;
    log_q = p > 0 && p < 1 ? std::log1p(-p) : 0.0;
    gap = draw(rng);
}

int64_t FrameSimulator::Bernoulli::draw(Rng &rng) const {
    if (p <= 0 || p >= 1) {
        return 0;
    }
    double u = rng.uniform();
    double g = std::floor(std::log1p(-u) / log_q);
    return g > 1e15 ? static_cast<int64_t>(1e15) : static_cast<int64_t>(g);
}

uint64_t FrameSimulator::Bernoulli::next(Rng &rng) {
    if (p <= 0) {
        return 0;
    }
    if (p >= 1) {
        return ~uint64_t{0};
    }
    uint64_t mask = 0;
    while (gap < 64) {
        mask |= uint64_t{1} << gap;
        gap += 1 + draw(rng);
    }
    gap -= 64;
    return mask;
}

FrameSimulator::FrameSimulator(const Circuit &circuit, NoiseModel noise, DecoderConfig decoder_config)
    : circuit_(circuit), noise_(noise), decoders_(std::move(decoder_config)) {
    circuit_.validate();
    noise_.validate();
    totals_.resize(circuit_.ops.size());
}

void FrameSimulator::run(uint64_t noise_seed, uint64_t decoder_seed) {
    Rng noise_rng(noise_seed);
    Rng decoder_rng(decoder_seed);
    fault_first_.clear();
    circ_.reset(noise_.p_circ, noise_rng);
    flip_.reset(noise_.p_flip, noise_rng);
    execute(&noise_rng, decoder_rng);
}

void FrameSimulator::run_with_faults(std::span<const Fault> faults, uint64_t decoder_seed) {
    if (faults.size() > kLanes) {
        throw std::invalid_argument("at most 64 faults per batch");
    }
    faults_.assign(faults.begin(), faults.end());
    fault_first_.assign(circuit_.ops.size(), -1);
    fault_next_.assign(faults_.size(), -1);
    for (size_t i = faults_.size(); i-- > 0;) {
        uint32_t op = faults_[i].op;
        if (op >= circuit_.ops.size() || circuit_.ops[op].kind != OpKind::Noise) {
            throw std::invalid_argument("fault placed on op " + std::to_string(op) + ", which is not a noise site");
        }
        fault_next_[i] = fault_first_[op];
        fault_first_[op] = static_cast<int32_t>(i);
    }
    Rng decoder_rng(decoder_seed);
    execute(nullptr, decoder_rng);
}

void FrameSimulator::apply_pauli_lane(uint32_t q, unsigned lane, bool px, bool pz) {
    uint64_t m = uint64_t{1} << lane;
    if (px) {
        x_[q] ^= m;
    }
    if (pz) {
        z_[q] ^= m;
    }
}

void FrameSimulator::execute(Rng *noise_rng, Rng &decoder_rng) {
    const auto &ops = circuit_.ops;
    x_.assign(circuit_.num_qubits, 0);
    z_.assign(circuit_.num_qubits, 0);
    slots_.assign(circuit_.num_slots, 0);
    discarded_ = 0;
    fired_ = 0;

    struct Open {
        size_t begin;
        uint64_t saved;
        uint32_t counts[kLanes];
    };
    std::vector<Open> stack;
    uint64_t active = ~uint64_t{0};

    for (size_t i = 0; i < ops.size(); i++) {
        const Op &op = ops[i];
        switch (op.kind) {
            case OpKind::PrepZ:
                x_[op.a] &= ~active;
                z_[op.a] &= ~active;
                break;
            case OpKind::H: {
                uint64_t t = (x_[op.a] ^ z_[op.a]) & active;
                x_[op.a] ^= t;
                z_[op.a] ^= t;
                break;
            }
            case OpKind::S:
                z_[op.a] ^= x_[op.a] & active;
                break;
            case OpKind::X:
            case OpKind::Y:
            case OpKind::Z:
                break;
            case OpKind::CNOT:
                x_[op.b] ^= x_[op.a] & active;
                z_[op.a] ^= z_[op.b] & active;
                break;
            case OpKind::SWAP: {
                uint64_t tx = (x_[op.a] ^ x_[op.b]) & active;
                uint64_t tz = (z_[op.a] ^ z_[op.b]) & active;
                x_[op.a] ^= tx;
                x_[op.b] ^= tx;
                z_[op.a] ^= tz;
                z_[op.b] ^= tz;
                break;
            }
            case OpKind::MeasZ:
                slots_[op.b] = (slots_[op.b] & ~active) | (x_[op.a] & active);
                z_[op.a] &= ~active;
                break;
            case OpKind::Noise: {
                if (noise_rng == nullptr) {
                    for (int32_t f = fault_first_[i]; f >= 0; f = fault_next_[f]) {
                        uint64_t m = uint64_t{1} << f;
                        if (!(active & m) || (fired_ & m)) {
                            continue;
                        }
                        fired_ |= m;
                        unsigned lane = static_cast<unsigned>(f);
                        uint8_t p = faults_[f].pauli;
                        if (op.noise == NoiseKind::Cnot) {
                            bool xa, za, xb, zb;
                            two_qubit_pauli(p, xa, za, xb, zb);
                            apply_pauli_lane(op.a, lane, xa, za);
                            apply_pauli_lane(op.b, lane, xb, zb);
                        } else {
                            apply_pauli_lane(op.a, lane, p & 1, (p >> 1) & 1);
                        }
                    }
                    break;
                }
                double rate = noise_.rate(op.noise);
                if (rate <= 0) {
                    break;
                }
                Bernoulli &stream = op.noise == NoiseKind::Flip ? flip_ : circ_;
                if (stream.p != rate) {
                    stream.reset(rate, *noise_rng);
                }
                uint64_t hits = stream.next(*noise_rng) & active;
                if (op.noise != NoiseKind::Cnot) {
                    x_[op.a] ^= hits;
                    break;
                }
                while (hits) {
                    unsigned lane = static_cast<unsigned>(std::countr_zero(hits));
                    hits &= hits - 1;
                    bool xa, za, xb, zb;
                    two_qubit_pauli(1 + static_cast<unsigned>(noise_rng->below(15)), xa, za, xb, zb);
                    apply_pauli_lane(op.a, lane, xa, za);
                    apply_pauli_lane(op.b, lane, xb, zb);
                }
                break;
            }
            case OpKind::Decode: {
                const DecodeSpec &d = circuit_.decodes[op.a];
                size_t n = ipow(6, d.level), k = ipow(4, d.level);
                const uint64_t *in = &slots_[d.in_base];
                uint64_t touched = 0;
                for (size_t j = 0; j < n; j++) {
                    touched |= in[j];
                }
                touched &= active;
                // Untouched lanes decode the all-zero string: zero, nothing detected.
                for (size_t j = 0; j < k; j++) {
                    slots_[d.out_base + j] &= ~active;
                }
                slots_[d.flag] &= ~active;
                bits_.resize(n);
                while (touched) {
                    unsigned lane = static_cast<unsigned>(std::countr_zero(touched));
                    touched &= touched - 1;
                    for (size_t j = 0; j < n; j++) {
                        bits_[j] = (in[j] >> lane) & 1;
                    }
                    DecodeResult r = decoders_.decode(d.decoder, bits_, d.level, d.mode, d.detect_level, decoder_rng);
                    uint64_t m = uint64_t{1} << lane;
                    if (r.detected) {
                        slots_[d.flag] |= m;
                        continue;
                    }
                    for (size_t j = 0; j < k; j++) {
                        if (r.logical[j]) {
                            slots_[d.out_base + j] |= m;
                        }
                    }
                }
                break;
            }
            case OpKind::Xor:
                slots_[op.c] = (slots_[op.c] & ~active) | ((slots_[op.a] ^ slots_[op.b]) & active);
                break;
            case OpKind::XIf: {
                uint64_t m = slots_[op.a] & active;
                if (m) {
                    for (uint32_t q : circuit_.list(op)) {
                        x_[q] ^= m;
                    }
                }
                break;
            }
            case OpKind::ZIf: {
                uint64_t m = slots_[op.a] & active;
                if (m) {
                    for (uint32_t q : circuit_.list(op)) {
                        z_[q] ^= m;
                    }
                }
                break;
            }
            case OpKind::RepeatBegin: {
                if (stack.empty() || stack.back().begin != i) {
                    Open o;
                    o.begin = i;
                    o.saved = active;
                    std::fill(std::begin(o.counts), std::end(o.counts), 0);
                    stack.push_back(o);
                }
                Open &top = stack.back();
                for (uint64_t m = active; m;) {
                    top.counts[std::countr_zero(m)]++;
                    m &= m - 1;
                }
                break;
            }
            case OpKind::RepeatEnd: {
                Open &top = stack.back();
                uint64_t fail = 0;
                for (uint32_t s : circuit_.list(op)) {
                    fail |= slots_[s];
                }
                fail &= active;
                uint32_t max_attempts = ops[top.begin].a;
                for (uint64_t m = fail; m;) {
                    unsigned lane = static_cast<unsigned>(std::countr_zero(m));
                    m &= m - 1;
                    if (top.counts[lane] >= max_attempts) {
                        discarded_ |= uint64_t{1} << lane;
                        fail &= ~(uint64_t{1} << lane);
                    }
                }
                if (fail) {
                    active = fail;
                    i = top.begin - 1;
                    break;
                }
                RepeatTotals &t = totals_[top.begin];
                t.entries += std::popcount(top.saved);
                for (uint64_t m = top.saved; m;) {
                    t.attempts += top.counts[std::countr_zero(m)];
                    m &= m - 1;
                }
                active = top.saved;
                stack.pop_back();
                break;
            }
        }
    }
}

}  // namespace mhc
