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

#include "mhc/simulate.h"

#include <stdexcept>

namespace mhc {

namespace {

char pauli_char(bool x, bool z) {
    return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
}

void apply_single(Tableau &t, size_t q, bool x, bool z) {
    if (x && z) {
        t.y(q);
    } else if (x) {
        t.x(q);
    } else if (z) {
        t.z(q);
    }
}

}  // namespace

TableauSimulator::TableauSimulator(const Circuit &circuit, NoiseModel noise, DecoderConfig decoder_config)
    : circuit_(circuit), noise_(noise), decoders_(std::move(decoder_config)), tableau_(circuit.num_qubits) {
    circuit_.validate();
    noise_.validate();
}

RunRecord TableauSimulator::run(uint64_t seed, bool log_errors) {
    Rng rng(seed, StreamTag::Noise);
    Rng decoder_rng(seed, StreamTag::Decoder);
    tableau_ = Tableau(circuit_.num_qubits);
    RunRecord rec;
    rec.slots.assign(circuit_.num_slots, 0);
    std::vector<uint32_t> attempts(circuit_.ops.size(), 0);
    std::vector<uint8_t> bits;

    const auto &ops = circuit_.ops;
    for (size_t i = 0; i < ops.size(); i++) {
        const Op &op = ops[i];
        switch (op.kind) {
            case OpKind::PrepZ:
                tableau_.reset_z(op.a, rng);
                break;
            case OpKind::H:
                tableau_.h(op.a);
                break;
            case OpKind::S:
                tableau_.s(op.a);
                break;
            case OpKind::X:
                tableau_.x(op.a);
                break;
            case OpKind::Y:
                tableau_.y(op.a);
                break;
            case OpKind::Z:
                tableau_.z(op.a);
                break;
            case OpKind::CNOT:
                tableau_.cnot(op.a, op.b);
                break;
            case OpKind::SWAP:
                tableau_.swap(op.a, op.b);
                break;
            case OpKind::MeasZ:
                rec.slots[op.b] = tableau_.measure_z(op.a, rng);
                break;
            case OpKind::Noise: {
                double p = noise_.rate(op.noise);
                if (p <= 0 || rng.uniform() >= p) {
                    break;
                }
                if (op.noise == NoiseKind::Cnot) {
                    bool xa, za, xb, zb;
                    two_qubit_pauli(1 + static_cast<unsigned>(rng.below(15)), xa, za, xb, zb);
                    apply_single(tableau_, op.a, xa, za);
                    apply_single(tableau_, op.b, xb, zb);
                    if (log_errors) {
                        rec.injected.push_back({static_cast<uint32_t>(i), pauli_char(xa, za), pauli_char(xb, zb)});
                    }
                } else {
                    tableau_.x(op.a);
                    if (log_errors) {
                        rec.injected.push_back({static_cast<uint32_t>(i), 'X', 'I'});
                    }
                }
                break;
            }
            case OpKind::Decode: {
                const DecodeSpec &d = circuit_.decodes[op.a];
                size_t n = ipow(6, d.level), k = ipow(4, d.level);
                bits.assign(rec.slots.begin() + d.in_base, rec.slots.begin() + d.in_base + n);
                DecodeResult r = decoders_.decode(d.decoder, bits, d.level, d.mode, d.detect_level, decoder_rng);
                rec.slots[d.flag] = r.detected;
                for (size_t j = 0; j < k; j++) {
                    rec.slots[d.out_base + j] = r.detected ? 0 : r.logical[j];
                }
                break;
            }
            case OpKind::Xor:
                rec.slots[op.c] = rec.slots[op.a] ^ rec.slots[op.b];
                break;
            case OpKind::XIf:
            case OpKind::ZIf:
                if (rec.slots[op.a]) {
                    for (uint32_t q : circuit_.list(op)) {
                        if (op.kind == OpKind::XIf) {
                            tableau_.x(q);
                        } else {
                            tableau_.z(q);
                        }
                    }
                }
                break;
            case OpKind::RepeatBegin:
                attempts[i]++;
                break;
            case OpKind::RepeatEnd: {
                bool ok = true;
                for (uint32_t s : circuit_.list(op)) {
                    ok &= rec.slots[s] == 0;
                }
                uint32_t begin = op.a;
                if (ok) {
                    rec.repeats.push_back({begin, attempts[begin]});
                    attempts[begin] = 0;
                } else if (attempts[begin] >= ops[begin].a) {
                    rec.repeats.push_back({begin, attempts[begin]});
                    rec.discarded = true;
                    return rec;
                } else {
                    i = static_cast<size_t>(begin) - 1;
                }
                break;
            }
        }
    }
    return rec;
}

RunRecord simulate(const Circuit &circuit, const NoiseModel &noise, uint64_t seed) {
    TableauSimulator sim(circuit, noise);
    return sim.run(seed);
}

}  // namespace mhc
