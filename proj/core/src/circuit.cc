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

#include "mhc/circuit.h"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "mhc/code.h"

namespace mhc {

namespace {

const char *kind_name(OpKind k) {
    switch (k) {
        case OpKind::PrepZ:
            return "PREPZ";
        case OpKind::H:
            return "H";
        case OpKind::S:
            return "S";
        case OpKind::X:
            return "X";
        case OpKind::Y:
            return "Y";
        case OpKind::Z:
            return "Z";
        case OpKind::CNOT:
            return "CNOT";
        case OpKind::SWAP:
            return "SWAP";
        case OpKind::MeasZ:
            return "MEASZ";
        case OpKind::Noise:
            return "NOISE";
        case OpKind::Decode:
            return "DECODE";
        case OpKind::Xor:
            return "XOR";
        case OpKind::XIf:
            return "XIF";
        case OpKind::ZIf:
            return "ZIF";
        case OpKind::RepeatBegin:
            return "REPEAT";
        case OpKind::RepeatEnd:
            return "UNTIL";
    }
    return "?";
}

const char *noise_name(NoiseKind k) {
    switch (k) {
        case NoiseKind::Prep:
            return "prep";
        case NoiseKind::Meas:
            return "meas";
        case NoiseKind::Cnot:
            return "cnot";
        case NoiseKind::Flip:
            return "flip";
    }
    return "?";
}

}  // namespace

void Circuit::validate() const {
    auto fail = [](size_t i, const std::string &msg) {
        throw std::invalid_argument("op " + std::to_string(i) + ": " + msg);
    };
    auto qubit = [&](size_t i, uint32_t q) {
        if (q >= num_qubits) {
            fail(i, "qubit " + std::to_string(q) + " out of range");
        }
    };
    auto slot = [&](size_t i, uint32_t s) {
        if (s >= num_slots) {
            fail(i, "slot " + std::to_string(s) + " out of range");
        }
    };
    std::vector<size_t> stack;
    for (size_t i = 0; i < ops.size(); i++) {
        const Op &op = ops[i];
        if (static_cast<size_t>(op.list_begin) + op.list_size > lists.size()) {
            fail(i, "list out of range");
        }
        switch (op.kind) {
            case OpKind::PrepZ:
            case OpKind::H:
            case OpKind::S:
            case OpKind::X:
            case OpKind::Y:
            case OpKind::Z:
                qubit(i, op.a);
                break;
            case OpKind::CNOT:
            case OpKind::SWAP:
                qubit(i, op.a);
                qubit(i, op.b);
                if (op.a == op.b) {
                    fail(i, "two-qubit gate on a single qubit");
                }
                break;
            case OpKind::MeasZ:
                qubit(i, op.a);
                slot(i, op.b);
                break;
            case OpKind::Noise:
                qubit(i, op.a);
                if (op.noise == NoiseKind::Cnot) {
                    qubit(i, op.b);
                    if (op.a == op.b) {
                        fail(i, "two-qubit noise on a single qubit");
                    }
                }
                break;
            case OpKind::Decode: {
                if (op.a >= decodes.size()) {
                    fail(i, "decode spec out of range");
                }
                const DecodeSpec &d = decodes[op.a];
                if (d.level < 1 || d.level > kMaxCodeLevel) {
                    fail(i, "bad decode level");
                }
                if (d.detect_level < 1 || d.detect_level > d.level) {
                    fail(i, "bad detection level");
                }
                if (d.in_base + ipow(6, d.level) > num_slots || d.out_base + ipow(4, d.level) > num_slots) {
                    fail(i, "decode slots out of range");
                }
                slot(i, d.flag);
                break;
            }
            case OpKind::Xor:
                slot(i, op.a);
                slot(i, op.b);
                slot(i, op.c);
                break;
            case OpKind::XIf:
            case OpKind::ZIf:
                slot(i, op.a);
                for (uint32_t q : list(op)) {
                    qubit(i, q);
                }
                break;
            case OpKind::RepeatBegin:
                if (op.a == 0) {
                    fail(i, "repeat needs at least one attempt");
                }
                stack.push_back(i);
                break;
            case OpKind::RepeatEnd:
                if (stack.empty() || stack.back() != op.a || ops[op.a].b != i) {
                    fail(i, "unbalanced repeat");
                }
                stack.pop_back();
                for (uint32_t s : list(op)) {
                    slot(i, s);
                }
                break;
        }
    }
    if (!stack.empty()) {
        throw std::invalid_argument("unterminated repeat at op " + std::to_string(stack.back()));
    }
}

size_t Circuit::count(OpKind kind) const {
    size_t n = 0;
    for (const Op &op : ops) {
        n += op.kind == kind;
    }
    return n;
}

size_t Circuit::count_noise() const {
    return count(OpKind::Noise);
}

std::string Circuit::to_text() const {
    std::ostringstream out;
    out << "QUBITS " << num_qubits << "\n";
    out << "SLOTS " << num_slots << "\n";
    int depth = 0;
    for (const Op &op : ops) {
        if (op.kind == OpKind::RepeatEnd) {
            depth--;
        }
        out << std::string(2 * depth, ' ');
        switch (op.kind) {
            case OpKind::PrepZ:
            case OpKind::H:
            case OpKind::S:
            case OpKind::X:
            case OpKind::Y:
            case OpKind::Z:
                out << kind_name(op.kind) << " " << op.a;
                break;
            case OpKind::CNOT:
            case OpKind::SWAP:
                out << kind_name(op.kind) << " " << op.a << " " << op.b;
                break;
            case OpKind::MeasZ:
                out << "MEASZ " << op.a << " -> " << op.b;
                break;
            case OpKind::Noise:
                out << "NOISE " << noise_name(op.noise) << " " << op.a;
                if (op.noise == NoiseKind::Cnot) {
                    out << " " << op.b;
                }
                break;
            case OpKind::Decode: {
                const DecodeSpec &d = decodes[op.a];
                out << "DECODE " << decoder_name(d.decoder) << " " << d.level << " " << mode_name(d.mode) << " "
                    << d.detect_level << " " << d.in_base << " -> " << d.out_base << " " << d.flag;
                break;
            }
            case OpKind::Xor:
                out << "XOR " << op.c << " " << op.a << " " << op.b;
                break;
            case OpKind::XIf:
            case OpKind::ZIf:
                out << kind_name(op.kind) << " " << op.a;
                for (uint32_t q : list(op)) {
                    out << " " << q;
                }
                break;
            case OpKind::RepeatBegin:
                out << "REPEAT " << op.a << " {";
                depth++;
                break;
            case OpKind::RepeatEnd:
                out << "} UNTIL";
                for (uint32_t s : list(op)) {
                    out << " " << s;
                }
                break;
        }
        out << "\n";
    }
    return out.str();
}

Circuit parse_circuit(const std::string &text) {
    Circuit c;
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    std::vector<size_t> stack;
    auto fail = [&](const std::string &msg) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": " + msg);
    };
    auto num = [&](std::istringstream &ls) {
        long long v;
        if (!(ls >> v) || v < 0 || v > 0xFFFFFFFFLL) {
            fail("expected a non-negative integer");
        }
        return static_cast<uint32_t>(v);
    };
    auto arrow = [&](std::istringstream &ls) {
        std::string a;
        if (!(ls >> a) || a != "->") {
            fail("expected '->'");
        }
    };
    auto rest = [&](std::istringstream &ls, Op &op) {
        long long v;
        op.list_begin = static_cast<uint32_t>(c.lists.size());
        while (ls >> v) {
            if (v < 0) {
                fail("negative index");
            }
            c.lists.push_back(static_cast<uint32_t>(v));
        }
        if (!ls.eof()) {
            fail("expected integers");
        }
        op.list_size = static_cast<uint32_t>(c.lists.size() - op.list_begin);
    };
    auto done = [&](std::istringstream &ls) {
        std::string extra;
        if (ls >> extra) {
            fail("unexpected '" + extra + "'");
        }
    };
    bool have_qubits = false, have_slots = false;
    std::vector<size_t> op_lines;
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) {
            continue;
        }
        Op op;
        if (word == "QUBITS") {
            c.num_qubits = num(ls);
            have_qubits = true;
            done(ls);
            continue;
        }
        if (word == "SLOTS") {
            c.num_slots = num(ls);
            have_slots = true;
            done(ls);
            continue;
        }
        if (word == "PREPZ" || word == "H" || word == "S" || word == "X" || word == "Y" || word == "Z") {
            op.kind = word == "PREPZ" ? OpKind::PrepZ
                      : word == "H"   ? OpKind::H
                      : word == "S"   ? OpKind::S
                      : word == "X"   ? OpKind::X
                      : word == "Y"   ? OpKind::Y
                                      : OpKind::Z;
            op.a = num(ls);
        } else if (word == "CNOT" || word == "SWAP") {
            op.kind = word == "CNOT" ? OpKind::CNOT : OpKind::SWAP;
            op.a = num(ls);
            op.b = num(ls);
        } else if (word == "MEASZ") {
            op.kind = OpKind::MeasZ;
            op.a = num(ls);
            arrow(ls);
            op.b = num(ls);
        } else if (word == "NOISE") {
            op.kind = OpKind::Noise;
            std::string k;
            ls >> k;
            if (k == "prep") {
                op.noise = NoiseKind::Prep;
            } else if (k == "meas") {
                op.noise = NoiseKind::Meas;
            } else if (k == "flip") {
                op.noise = NoiseKind::Flip;
            } else if (k == "cnot") {
                op.noise = NoiseKind::Cnot;
            } else {
                fail("unknown noise kind '" + k + "'");
            }
            op.a = num(ls);
            if (op.noise == NoiseKind::Cnot) {
                op.b = num(ls);
            }
        } else if (word == "DECODE") {
            op.kind = OpKind::Decode;
            DecodeSpec d;
            std::string name, mode;
            ls >> name;
            try {
                d.decoder = parse_decoder_kind(name);
            } catch (const std::invalid_argument &e) {
                fail(e.what());
            }
            d.level = static_cast<int>(num(ls));
            ls >> mode;
            try {
                d.mode = parse_decode_mode(mode);
            } catch (const std::invalid_argument &e) {
                fail(e.what());
            }
            d.detect_level = static_cast<int>(num(ls));
            d.in_base = num(ls);
            arrow(ls);
            d.out_base = num(ls);
            d.flag = num(ls);
            op.a = static_cast<uint32_t>(c.decodes.size());
            c.decodes.push_back(d);
        } else if (word == "XOR") {
            op.kind = OpKind::Xor;
            op.c = num(ls);
            op.a = num(ls);
            op.b = num(ls);
        } else if (word == "XIF" || word == "ZIF") {
            op.kind = word == "XIF" ? OpKind::XIf : OpKind::ZIf;
            op.a = num(ls);
            rest(ls, op);
        } else if (word == "REPEAT") {
            op.kind = OpKind::RepeatBegin;
            op.a = num(ls);
            std::string brace;
            if (!(ls >> brace) || brace != "{") {
                fail("expected '{'");
            }
            stack.push_back(c.ops.size());
        } else if (word == "}") {
            std::string until;
            if (!(ls >> until) || until != "UNTIL") {
                fail("expected 'UNTIL'");
            }
            if (stack.empty()) {
                fail("'}' without REPEAT");
            }
            op.kind = OpKind::RepeatEnd;
            op.a = static_cast<uint32_t>(stack.back());
            c.ops[stack.back()].b = static_cast<uint32_t>(c.ops.size());
            stack.pop_back();
            rest(ls, op);
        } else {
            fail("unknown instruction '" + word + "'");
        }
        if (op.kind != OpKind::XIf && op.kind != OpKind::ZIf && op.kind != OpKind::RepeatEnd) {
            done(ls);
        }
        c.ops.push_back(op);
        op_lines.push_back(line_no);
    }
    if (!stack.empty()) {
        throw std::invalid_argument("unterminated REPEAT");
    }
    if (!have_qubits || !have_slots) {
        throw std::invalid_argument("missing QUBITS or SLOTS header");
    }
    try {
        c.validate();
    } catch (const std::invalid_argument &e) {
        // Report the source line instead of the op index.
        std::string msg = e.what();
        size_t op = 0;
        if (std::sscanf(msg.c_str(), "op %zu:", &op) == 1 && op < op_lines.size()) {
            msg = "line " + std::to_string(op_lines[op]) + msg.substr(msg.find(':'));
        }
        throw std::invalid_argument(msg);
    }
    return c;
}

void CircuitBuilder::push(Op op) {
    c_.ops.push_back(op);
}

uint32_t CircuitBuilder::push_list(std::span<const uint32_t> items) {
    uint32_t begin = static_cast<uint32_t>(c_.lists.size());
    c_.lists.insert(c_.lists.end(), items.begin(), items.end());
    return begin;
}

uint32_t CircuitBuilder::alloc() {
    uint32_t q;
    if (!free_.empty()) {
        q = free_.back();
        free_.pop_back();
    } else {
        q = c_.num_qubits++;
    }
    prep(q);
    return q;
}

std::vector<uint32_t> CircuitBuilder::alloc(size_t n) {
    std::vector<uint32_t> out(n);
    for (auto &q : out) {
        q = alloc();
    }
    return out;
}

void CircuitBuilder::release(uint32_t q) {
    free_.push_back(q);
}

void CircuitBuilder::release(std::span<const uint32_t> qs) {
    // Reverse order so the next allocations come back in the same order.
    for (size_t i = qs.size(); i-- > 0;) {
        free_.push_back(qs[i]);
    }
}

uint32_t CircuitBuilder::new_slot() {
    return c_.num_slots++;
}

uint32_t CircuitBuilder::new_slots(size_t n) {
    uint32_t base = c_.num_slots;
    c_.num_slots += static_cast<uint32_t>(n);
    return base;
}

void CircuitBuilder::prep(uint32_t q) {
    push({OpKind::PrepZ, NoiseKind::Prep, q});
    if (noisy) {
        push({OpKind::Noise, NoiseKind::Prep, q});
    }
}

void CircuitBuilder::h(uint32_t q) {
    push({OpKind::H, NoiseKind::Prep, q});
}
void CircuitBuilder::s(uint32_t q) {
    push({OpKind::S, NoiseKind::Prep, q});
}
void CircuitBuilder::x(uint32_t q) {
    push({OpKind::X, NoiseKind::Prep, q});
}
void CircuitBuilder::y(uint32_t q) {
    push({OpKind::Y, NoiseKind::Prep, q});
}
void CircuitBuilder::z(uint32_t q) {
    push({OpKind::Z, NoiseKind::Prep, q});
}

void CircuitBuilder::cnot(uint32_t c, uint32_t t) {
    push({OpKind::CNOT, NoiseKind::Prep, c, t});
    if (noisy) {
        push({OpKind::Noise, NoiseKind::Cnot, c, t});
    }
}

void CircuitBuilder::swap(uint32_t a, uint32_t b) {
    push({OpKind::SWAP, NoiseKind::Prep, a, b});
    if (noisy && noisy_swaps) {
        push({OpKind::Noise, NoiseKind::Cnot, a, b});
    }
}

void CircuitBuilder::measure(uint32_t q, uint32_t slot) {
    if (noisy) {
        push({OpKind::Noise, NoiseKind::Meas, q});
    }
    push({OpKind::MeasZ, NoiseKind::Prep, q, slot});
}

uint32_t CircuitBuilder::measure(uint32_t q) {
    uint32_t s = new_slot();
    measure(q, s);
    return s;
}

uint32_t CircuitBuilder::measure_all(std::span<const uint32_t> qs) {
    uint32_t base = new_slots(qs.size());
    for (size_t i = 0; i < qs.size(); i++) {
        measure(qs[i], base + static_cast<uint32_t>(i));
    }
    return base;
}

void CircuitBuilder::flip_noise(uint32_t q) {
    push({OpKind::Noise, NoiseKind::Flip, q});
}

void CircuitBuilder::decode(const DecodeSpec &spec) {
    Op op{OpKind::Decode};
    op.a = static_cast<uint32_t>(c_.decodes.size());
    c_.decodes.push_back(spec);
    push(op);
}

void CircuitBuilder::xor_slots(uint32_t dst, uint32_t a, uint32_t b) {
    Op op{OpKind::Xor};
    op.a = a;
    op.b = b;
    op.c = dst;
    push(op);
}

void CircuitBuilder::x_if(uint32_t slot, std::span<const uint32_t> qs) {
    Op op{OpKind::XIf};
    op.a = slot;
    op.list_begin = push_list(qs);
    op.list_size = static_cast<uint32_t>(qs.size());
    push(op);
}

void CircuitBuilder::z_if(uint32_t slot, std::span<const uint32_t> qs) {
    Op op{OpKind::ZIf};
    op.a = slot;
    op.list_begin = push_list(qs);
    op.list_size = static_cast<uint32_t>(qs.size());
    push(op);
}

void CircuitBuilder::begin_repeat(uint32_t max_attempts) {
    open_repeats_.push_back(c_.ops.size());
    Op op{OpKind::RepeatBegin};
    op.a = max_attempts;
    push(op);
}

void CircuitBuilder::end_repeat(std::span<const uint32_t> must_be_zero) {
    if (open_repeats_.empty()) {
        throw std::logic_error("end_repeat without begin_repeat");
    }
    size_t begin = open_repeats_.back();
    open_repeats_.pop_back();
    c_.ops[begin].b = static_cast<uint32_t>(c_.ops.size());
    Op op{OpKind::RepeatEnd};
    op.a = static_cast<uint32_t>(begin);
    op.list_begin = push_list(must_be_zero);
    op.list_size = static_cast<uint32_t>(must_be_zero.size());
    push(op);
}

Circuit CircuitBuilder::finish() {
    if (!open_repeats_.empty()) {
        throw std::logic_error("unterminated repeat block");
    }
    c_.validate();
    return c_;
}

}  // namespace mhc
