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

#ifndef MHC_CODE_H
#define MHC_CODE_H

#include <cstdint>
#include <string>
#include <vector>

#include "mhc/bits.h"

namespace mhc {

/// Highest level accepted by build_code. Level 5 is already 7776 qubits with
/// 6752 dense generators; beyond that the operator table stops fitting in memory.
inline constexpr int kMaxCodeLevel = 5;

/// Integer power for the small bases used throughout (4 and 6).
constexpr uint64_t ipow(uint64_t base, int exp) {
    uint64_t r = 1;
    for (int i = 0; i < exp; i++) {
        r *= base;
    }
    return r;
}

/// Parameters of the [[6^L, 4^L, 2^L]] code.
struct CodeParams {
    int level = 0;
    uint64_t n = 0;
    uint64_t k = 0;
    uint64_t d = 0;

    double rate() const {
        return static_cast<double>(k) / static_cast<double>(n);
    }
    /// "[[n,k,d]]" form.
    std::string bracket() const;

    /// Throws std::invalid_argument unless 1 <= level <= kMaxCodeLevel.
    static CodeParams for_level(int level);
};

/// A qubit label, outermost (level-L) digit first. Digits are 1-based as in
/// Q_{i,j,k}: physical digits range over 1..6, logical digits over 1..4.
struct QubitAddress {
    std::vector<int> digits;

    bool operator==(const QubitAddress &) const = default;
};

/// Mixed-radix index of a physical address: (d_1 - 1) * 6^(L-1) + ... + (d_L - 1).
/// Throws std::invalid_argument on a digit outside 1..6 or a wrong digit count.
uint64_t flat_index(const QubitAddress &addr, int level);
QubitAddress physical_address(uint64_t flat, int level);

/// Same convention for logical addresses in base 4.
uint64_t logical_flat_index(const QubitAddress &addr, int level);
QubitAddress logical_address(uint64_t flat, int level);

enum class Basis { Z, X };

/// A Pauli operator without phase, as X and Z support vectors.
struct PauliOperator {
    BitVec x;
    BitVec z;

    PauliOperator() = default;
    explicit PauliOperator(size_t n) : x(n), z(n) {
    }

    size_t num_qubits() const {
        return x.size();
    }
    size_t weight() const;
    bool commutes_with(const PauliOperator &other) const {
        return x.dot(other.z) == z.dot(other.x);
    }
    /// One character per qubit from {I, X, Y, Z}.
    std::string str() const;

    bool operator==(const PauliOperator &) const = default;
};

/// Stabilizer generators and logical operators of the level-L code.
/// Immutable after construction.
struct OperatorTable {
    CodeParams params;
    /// Level-1 generators first, then each higher level in turn.
    std::vector<PauliOperator> stabilizers;
    /// Concatenation level at which each generator was introduced.
    std::vector<int> stabilizer_level;
    /// Indexed by logical flat index.
    std::vector<PauliOperator> logical_z;
    std::vector<PauliOperator> logical_x;
};

/// Builds the level-L code by lifting the level-(L-1) operators one level.
OperatorTable build_code(int level);

/// Physical flat indices of the logical Z or X operator at `logical` (ascending).
/// The result is the 2^L vertices of a hypercube: one of two allowed values per digit.
std::vector<uint64_t> logical_support(int level, const QubitAddress &logical, Basis basis);
std::vector<uint64_t> logical_support(const OperatorTable &table, const QubitAddress &logical, Basis basis);

/// Physical positions (0-based, within a block) of the logical Z / X pair for
/// logical position q in 0..3 of the [[6,4,2]] code.
inline constexpr int kZPairs[4][2] = {{0, 1}, {1, 2}, {3, 4}, {4, 5}};
inline constexpr int kXPairs[4][2] = {{1, 2}, {0, 1}, {4, 5}, {3, 4}};

}  // namespace mhc

#endif
