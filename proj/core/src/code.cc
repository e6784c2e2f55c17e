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

#include "mhc/code.h"

#include <cstdio>
#include <stdexcept>

namespace mhc {

std::string CodeParams::bracket() const {
    return "[[" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(d) + "]]";
}

CodeParams CodeParams::for_level(int level) {
    if (level < 1 || level > kMaxCodeLevel) {
        throw std::invalid_argument(
            "code level must be in 1.." + std::to_string(kMaxCodeLevel) + ", got " + std::to_string(level));
    }
    return CodeParams{level, ipow(6, level), ipow(4, level), ipow(2, level)};
}

namespace {

uint64_t mixed_radix(const QubitAddress &addr, int level, int radix) {
    if (level < 1 || level > kMaxCodeLevel) {
        throw std::invalid_argument("bad level " + std::to_string(level));
    }
    if (addr.digits.size() != static_cast<size_t>(level)) {
        throw std::invalid_argument(
            "address has " + std::to_string(addr.digits.size()) + " digits, level is " + std::to_string(level));
    }
    uint64_t r = 0;
    for (int d : addr.digits) {
        if (d < 1 || d > radix) {
            throw std::invalid_argument("address digit " + std::to_string(d) + " outside 1.." + std::to_string(radix));
        }
        r = r * radix + static_cast<uint64_t>(d - 1);
    }
    return r;
}

QubitAddress unmix(uint64_t flat, int level, int radix) {
    if (level < 1 || level > kMaxCodeLevel || flat >= ipow(radix, level)) {
        throw std::invalid_argument("flat index " + std::to_string(flat) + " out of range");
    }
    QubitAddress a;
    a.digits.resize(level);
    for (int i = level - 1; i >= 0; i--) {
        a.digits[i] = static_cast<int>(flat % radix) + 1;
        flat /= radix;
    }
    return a;
}

}  // namespace

uint64_t flat_index(const QubitAddress &addr, int level) {
    return mixed_radix(addr, level, 6);
}
QubitAddress physical_address(uint64_t flat, int level) {
    return unmix(flat, level, 6);
}
uint64_t logical_flat_index(const QubitAddress &addr, int level) {
    return mixed_radix(addr, level, 4);
}
QubitAddress logical_address(uint64_t flat, int level) {
    return unmix(flat, level, 4);
}

size_t PauliOperator::weight() const {
    size_t w = 0;
    for (size_t i = 0; i < x.num_words(); i++) {
        w += std::popcount(x.data()[i] | z.data()[i]);
    }
    return w;
}

std::string PauliOperator::str() const {
    std::string s(num_qubits(), 'I');
    for (size_t q = 0; q < num_qubits(); q++) {
        s[q] = "IXZY"[x.get(q) | (z.get(q) << 1)];
    }
    return s;
}

namespace {

// Copies `src` (over `src_n` qubits) into a fresh operator over `n` qubits at `offset`.
PauliOperator embed(const PauliOperator &src, size_t n, size_t offset) {
    PauliOperator out(n);
    for (uint32_t q : src.x.ones()) {
        out.x.set(offset + q);
    }
    for (uint32_t q : src.z.ones()) {
        out.z.set(offset + q);
    }
    return out;
}

PauliOperator product_over_blocks(const PauliOperator &inner, size_t n, size_t block_size, const int *blocks, int count) {
    PauliOperator out(n);
    for (int i = 0; i < count; i++) {
        PauliOperator part = embed(inner, n, static_cast<size_t>(blocks[i]) * block_size);
        out.x ^= part.x;
        out.z ^= part.z;
    }
    return out;
}

OperatorTable level_one() {
    OperatorTable t;
    t.params = CodeParams::for_level(1);
    PauliOperator sz(6), sx(6);
    for (int q = 0; q < 6; q++) {
        sz.z.set(q);
        sx.x.set(q);
    }
    t.stabilizers = {sz, sx};
    t.stabilizer_level = {1, 1};
    for (int q = 0; q < 4; q++) {
        PauliOperator lz(6), lx(6);
        lz.z.set(kZPairs[q][0]);
        lz.z.set(kZPairs[q][1]);
        lx.x.set(kXPairs[q][0]);
        lx.x.set(kXPairs[q][1]);
        t.logical_z.push_back(lz);
        t.logical_x.push_back(lx);
    }
    return t;
}

}  // namespace

OperatorTable build_code(int level) {
    CodeParams params = CodeParams::for_level(level);
    OperatorTable t = level_one();
    for (int m = 2; m <= level; m++) {
        const OperatorTable &inner = t;
        OperatorTable next;
        next.params = CodeParams::for_level(m);
        size_t n = next.params.n;
        size_t block = inner.params.n;
        // Six copies of every inner generator, one per sub-block.
        for (size_t j = 0; j < 6; j++) {
            for (size_t g = 0; g < inner.stabilizers.size(); g++) {
                next.stabilizers.push_back(embed(inner.stabilizers[g], n, j * block));
                next.stabilizer_level.push_back(inner.stabilizer_level[g]);
            }
        }
        // New generators: the weight-6 check applied to each inner logical qubit.
        static constexpr int all_six[6] = {0, 1, 2, 3, 4, 5};
        for (const auto *ops : {&inner.logical_z, &inner.logical_x}) {
            for (const PauliOperator &op : *ops) {
                next.stabilizers.push_back(product_over_blocks(op, n, block, all_six, 6));
                next.stabilizer_level.push_back(m);
            }
        }
        // Logical (q, t): the inner logical t on the two sub-blocks paired with q.
        next.logical_z.resize(next.params.k);
        next.logical_x.resize(next.params.k);
        for (int q = 0; q < 4; q++) {
            for (size_t tt = 0; tt < inner.params.k; tt++) {
                size_t idx = static_cast<size_t>(q) * inner.params.k + tt;
                next.logical_z[idx] = product_over_blocks(inner.logical_z[tt], n, block, kZPairs[q], 2);
                next.logical_x[idx] = product_over_blocks(inner.logical_x[tt], n, block, kXPairs[q], 2);
            }
        }
        t = std::move(next);
    }
    t.params = params;
    return t;
}

std::vector<uint64_t> logical_support(int level, const QubitAddress &logical, Basis basis) {
    logical_flat_index(logical, level);  // validates
    const auto &pairs = basis == Basis::Z ? kZPairs : kXPairs;
    std::vector<uint64_t> out{0};
    for (int d : logical.digits) {
        std::vector<uint64_t> next;
        next.reserve(out.size() * 2);
        for (uint64_t prefix : out) {
            for (int side = 0; side < 2; side++) {
                next.push_back(prefix * 6 + static_cast<uint64_t>(pairs[d - 1][side]));
            }
        }
        out = std::move(next);
    }
    return out;
}

std::vector<uint64_t> logical_support(const OperatorTable &table, const QubitAddress &logical, Basis basis) {
    uint64_t idx = logical_flat_index(logical, table.params.level);
    const PauliOperator &op = basis == Basis::Z ? table.logical_z[idx] : table.logical_x[idx];
    std::vector<uint64_t> out;
    for (uint32_t q : (basis == Basis::Z ? op.z : op.x).ones()) {
        out.push_back(q);
    }
    return out;
}

}  // namespace mhc
