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

#include <set>
#include <stdexcept>

#include "gtest/gtest.h"

using namespace mhc;

TEST(code_params, sizes) {
    for (int L = 1; L <= kMaxCodeLevel; L++) {
        CodeParams p = CodeParams::for_level(L);
        EXPECT_EQ(p.n, ipow(6, L));
        EXPECT_EQ(p.k, ipow(4, L));
        EXPECT_EQ(p.d, ipow(2, L));
    }
    CodeParams p3 = CodeParams::for_level(3);
    EXPECT_EQ(p3.bracket(), "[[216,64,8]]");
    EXPECT_NEAR(p3.rate(), 64.0 / 216.0, 1e-15);
    EXPECT_THROW(CodeParams::for_level(0), std::invalid_argument);
    EXPECT_THROW(CodeParams::for_level(kMaxCodeLevel + 1), std::invalid_argument);
}

TEST(code_addressing, flat_index) {
    EXPECT_EQ(flat_index({{1, 1, 1}}, 3), 0u);
    EXPECT_EQ(flat_index({{6, 6, 6}}, 3), 215u);
    EXPECT_EQ(flat_index({{2, 3}}, 2), 8u);
    for (uint64_t f = 0; f < 216; f++) {
        EXPECT_EQ(flat_index(physical_address(f, 3), 3), f);
    }
    for (uint64_t f = 0; f < 64; f++) {
        EXPECT_EQ(logical_flat_index(logical_address(f, 3), 3), f);
    }
    EXPECT_THROW(flat_index({{7, 1}}, 2), std::invalid_argument);
    EXPECT_THROW(flat_index({{1, 1}}, 3), std::invalid_argument);
    EXPECT_THROW(logical_flat_index({{5}}, 1), std::invalid_argument);
    EXPECT_THROW(physical_address(36, 2), std::invalid_argument);
}

TEST(code_table, level_one) {
    OperatorTable t = build_code(1);
    ASSERT_EQ(t.stabilizers.size(), 2u);
    EXPECT_EQ(t.stabilizers[0].str(), "ZZZZZZ");
    EXPECT_EQ(t.stabilizers[1].str(), "XXXXXX");
    EXPECT_EQ(t.logical_z[0].str(), "ZZIIII");
    EXPECT_EQ(t.logical_x[0].str(), "IXXIII");
    EXPECT_FALSE(t.logical_z[0].commutes_with(t.logical_x[0]));
}

TEST(code_table, level_three_counts) {
    OperatorTable t = build_code(3);
    EXPECT_EQ(t.params.n, 216u);
    EXPECT_EQ(t.params.k, 64u);
    EXPECT_EQ(t.stabilizers.size(), 152u);
    EXPECT_THROW(build_code(0), std::invalid_argument);
}

class CodeLevels : public ::testing::TestWithParam<int> {};

TEST_P(CodeLevels, commutation_pattern) {
    int L = GetParam();
    OperatorTable t = build_code(L);
    size_t n = t.params.n;
    size_t k = t.params.k;
    ASSERT_EQ(t.stabilizers.size(), n - k);
    for (size_t a = 0; a < t.stabilizers.size(); a++) {
        for (size_t b = a + 1; b < t.stabilizers.size(); b++) {
            ASSERT_TRUE(t.stabilizers[a].commutes_with(t.stabilizers[b])) << a << " " << b;
        }
        for (size_t i = 0; i < k; i++) {
            ASSERT_TRUE(t.stabilizers[a].commutes_with(t.logical_z[i]));
            ASSERT_TRUE(t.stabilizers[a].commutes_with(t.logical_x[i]));
        }
    }
    for (size_t i = 0; i < k; i++) {
        for (size_t j = 0; j < k; j++) {
            ASSERT_EQ(t.logical_z[i].commutes_with(t.logical_x[j]), i != j) << i << " " << j;
            ASSERT_TRUE(t.logical_z[i].commutes_with(t.logical_z[j]));
            ASSERT_TRUE(t.logical_x[i].commutes_with(t.logical_x[j]));
        }
    }
}

TEST_P(CodeLevels, generator_weights) {
    int L = GetParam();
    OperatorTable t = build_code(L);
    for (size_t i = 0; i < t.stabilizers.size(); i++) {
        int m = t.stabilizer_level[i];
        EXPECT_EQ(t.stabilizers[i].weight(), 6 * ipow(2, m - 1));
        // Pure Z or pure X type.
        EXPECT_TRUE(t.stabilizers[i].x.none() || t.stabilizers[i].z.none());
    }
    for (size_t i = 0; i < t.params.k; i++) {
        EXPECT_EQ(t.logical_z[i].weight(), ipow(2, L));
        EXPECT_EQ(t.logical_x[i].weight(), ipow(2, L));
    }
}

TEST_P(CodeLevels, logical_support_in_stabilizer_union) {
    int L = GetParam();
    OperatorTable t = build_code(L);
    BitVec z_union(t.params.n), x_union(t.params.n);
    for (const auto &g : t.stabilizers) {
        for (uint32_t q : g.z.ones()) {
            z_union.set(q);
        }
        for (uint32_t q : g.x.ones()) {
            x_union.set(q);
        }
    }
    for (size_t i = 0; i < t.params.k; i++) {
        for (uint32_t q : t.logical_z[i].z.ones()) {
            EXPECT_TRUE(z_union.get(q));
        }
        for (uint32_t q : t.logical_x[i].x.ones()) {
            EXPECT_TRUE(x_union.get(q));
        }
    }
}

// Each support must be a product set: two allowed values per digit position.
TEST_P(CodeLevels, logical_support_is_hypercube) {
    int L = GetParam();
    OperatorTable t = build_code(L);
    for (uint64_t f = 0; f < t.params.k; f++) {
        QubitAddress a = logical_address(f, L);
        for (Basis basis : {Basis::Z, Basis::X}) {
            auto support = logical_support(L, a, basis);
            ASSERT_EQ(support.size(), ipow(2, L));
            std::vector<std::set<int>> values(L);
            for (uint64_t q : support) {
                QubitAddress p = physical_address(q, L);
                for (int d = 0; d < L; d++) {
                    values[d].insert(p.digits[d]);
                }
            }
            size_t product = 1;
            for (const auto &v : values) {
                EXPECT_EQ(v.size(), 2u);
                product *= v.size();
            }
            EXPECT_EQ(product, support.size());
            const PauliOperator &op = basis == Basis::Z ? t.logical_z[f] : t.logical_x[f];
            const BitVec &bits = basis == Basis::Z ? op.z : op.x;
            auto ones = bits.ones();
            std::vector<uint64_t> from_table(ones.begin(), ones.end());
            EXPECT_EQ(std::vector<uint64_t>(support.begin(), support.end()), from_table);
            EXPECT_EQ(logical_support(t, a, basis), support);
        }
    }
}

INSTANTIATE_TEST_SUITE_P(levels, CodeLevels, ::testing::Values(1, 2, 3, 4));

TEST(code_support, examples) {
    // Logical 1 at level 1 in Z is qubits 1 and 2.
    EXPECT_EQ(logical_support(1, {{1}}, Basis::Z), (std::vector<uint64_t>{0, 1}));
    EXPECT_EQ(logical_support(1, {{1}}, Basis::X), (std::vector<uint64_t>{1, 2}));

    // Hand expansion at level 3 of logical (1,1,1) in Z: every digit picks from {1,2}.
    std::vector<uint64_t> expect;
    for (int i : {1, 2}) {
        for (int j : {1, 2}) {
            for (int k : {1, 2}) {
                expect.push_back(flat_index({{i, j, k}}, 3));
            }
        }
    }
    EXPECT_EQ(logical_support(3, {{1, 1, 1}}, Basis::Z), expect);
    EXPECT_THROW(logical_support(2, {{5, 1}}, Basis::Z), std::invalid_argument);
}
