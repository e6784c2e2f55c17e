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

#include "mhc/tableau.h"

#include <gtest/gtest.h>

#include <cmath>

#include "mhc/simulate.h"
#include "support/circuits.h"
#include "support/statevector.h"

namespace mhc {
namespace {

PauliOperator pauli(const std::string &s) {
    PauliOperator p(s.size());
    for (size_t i = 0; i < s.size(); i++) {
        p.x.set(i, s[i] == 'X' || s[i] == 'Y');
        p.z.set(i, s[i] == 'Z' || s[i] == 'Y');
    }
    return p;
}

TEST(Tableau, FreshQubitMeasuresZero) {
    Tableau t(3);
    Rng rng(1);
    for (size_t q = 0; q < 3; q++) {
        EXPECT_TRUE(t.is_deterministic_z(q));
        EXPECT_FALSE(t.measure_z(q, rng));
    }
}

TEST(Tableau, HadamardGivesFairCoin) {
    Rng rng(2);
    int ones = 0;
    for (int i = 0; i < 4000; i++) {
        Tableau t(1);
        t.h(0);
        EXPECT_FALSE(t.is_deterministic_z(0));
        ones += t.measure_z(0, rng);
    }
    // 4000 fair coins: sigma ~ 32.
    EXPECT_NEAR(ones, 2000, 160);
}

TEST(Tableau, RemeasureRepeats) {
    Rng rng(3);
    for (int i = 0; i < 100; i++) {
        Tableau t(2);
        t.h(0);
        t.cnot(0, 1);
        bool a = t.measure_z(0, rng);
        EXPECT_EQ(t.measure_z(0, rng), a);
        EXPECT_EQ(t.measure_z(1, rng), a);
    }
}

TEST(Tableau, BellCorrelation) {
    Rng rng(4);
    for (int i = 0; i < 200; i++) {
        Tableau t(2);
        t.h(0);
        t.cnot(0, 1);
        EXPECT_EQ(t.expectation(pauli("ZZ")), 1);
        EXPECT_EQ(t.expectation(pauli("XX")), 1);
        EXPECT_EQ(t.expectation(pauli("YY")), -1);
        EXPECT_EQ(t.expectation(pauli("ZI")), 0);
        bool a = t.measure_z(1, rng);
        EXPECT_EQ(t.measure_z(0, rng), a);
    }
}

TEST(Tableau, GhzOutcomesAllEqual) {
    Rng rng(5);
    for (int i = 0; i < 100; i++) {
        Tableau t(6);
        t.h(0);
        for (size_t q = 0; q < 5; q++) {
            t.cnot(q, q + 1);
        }
        EXPECT_EQ(t.expectation(pauli("ZZZZZZ")), 1);
        EXPECT_EQ(t.expectation(pauli("XXXXXX")), 1);
        bool first = t.measure_z(0, rng);
        for (size_t q = 1; q < 6; q++) {
            EXPECT_EQ(t.measure_z(q, rng), first);
        }
    }
}

TEST(Tableau, PauliSigns) {
    Tableau t(1);
    t.x(0);
    EXPECT_EQ(t.expectation(pauli("Z")), -1);
    t.h(0);
    EXPECT_EQ(t.expectation(pauli("X")), -1);
    t.s(0);
    EXPECT_EQ(t.expectation(pauli("Y")), -1);
    t.y(0);
    EXPECT_EQ(t.expectation(pauli("Y")), -1);
    t.z(0);
    EXPECT_EQ(t.expectation(pauli("Y")), 1);
}

TEST(Tableau, ResetReturnsToZero) {
    Rng rng(6);
    for (int i = 0; i < 50; i++) {
        Tableau t(2);
        t.h(0);
        t.cnot(0, 1);
        t.reset_z(0, rng);
        EXPECT_EQ(t.expectation(pauli("ZI")), 1);
        EXPECT_TRUE(t.check_invariants());
    }
}

TEST(Tableau, InvariantsHoldUnderRandomGates) {
    Rng rng(7);
    Tableau t(8);
    for (int i = 0; i < 2000; i++) {
        size_t a = rng.below(8), b = (a + 1 + rng.below(7)) % 8;
        switch (rng.below(6)) {
            case 0:
                t.h(a);
                break;
            case 1:
                t.s(a);
                break;
            case 2:
                t.cnot(a, b);
                break;
            case 3:
                t.swap(a, b);
                break;
            case 4:
                t.measure_z(a, rng);
                break;
            default:
                t.y(a);
        }
        ASSERT_TRUE(t.check_invariants()) << "after step " << i;
    }
}

// Amplitude-level comparison: every stabilizer row is an eigenoperator of
// the dense state with the row's sign.
TEST(Tableau, StabilizersMatchStateVector) {
    Rng rng(8);
    for (int trial = 0; trial < 40; trial++) {
        size_t n = 1 + rng.below(6);
        Tableau t(n);
        oracle::StateVector sv(n);
        for (int g = 0; g < 40; g++) {
            size_t a = rng.below(n), b = n > 1 ? (a + 1 + rng.below(n - 1)) % n : a;
            int kind = static_cast<int>(rng.below(n > 1 ? 6 : 4));
            if (kind == 0) {
                t.h(a), sv.h(a);
            } else if (kind == 1) {
                t.s(a), sv.s(a);
            } else if (kind == 2) {
                t.x(a), sv.x(a);
            } else if (kind == 3) {
                t.y(a), sv.y(a);
            } else if (kind == 4) {
                t.cnot(a, b), sv.cnot(a, b);
            } else {
                t.swap(a, b), sv.swap(a, b);
            }
        }
        for (size_t r = 0; r < n; r++) {
            PauliOperator p = t.row(n + r);
            int sign = t.row_sign(n + r) ? -1 : 1;
            // <psi| P |psi> computed densely.
            oracle::StateVector probe = sv;
            for (size_t q = 0; q < n; q++) {
                bool px = p.x.get(q), pz = p.z.get(q);
                if (px && pz) {
                    probe.y(q);
                } else if (px) {
                    probe.x(q);
                } else if (pz) {
                    probe.z(q);
                }
            }
            std::complex<double> e = 0;
            for (size_t i = 0; i < sv.amplitudes().size(); i++) {
                e += std::conj(sv.amplitudes()[i]) * probe.amplitudes()[i];
            }
            EXPECT_NEAR(e.real(), sign, 1e-9) << "trial " << trial << " row " << r;
            EXPECT_NEAR(e.imag(), 0, 1e-9);
        }
    }
}

// Sampled records must lie in the exact support and match every
// single-slot marginal.
TEST(Tableau, RandomCircuitStatisticsMatchStateVector) {
    Rng rng(9);
    for (int trial = 0; trial < 25; trial++) {
        uint32_t n = 2 + static_cast<uint32_t>(rng.below(5));
        Circuit c = oracle::random_clifford_circuit(rng, n, 30);
        auto exact = oracle::record_distribution(c);
        TableauSimulator sim(c, NoiseModel::none());
        const int samples = 2000;
        std::vector<double> ones(c.num_slots, 0);
        for (int s = 0; s < samples; s++) {
            RunRecord r = sim.run(1000 * static_cast<uint64_t>(trial) + static_cast<uint64_t>(s));
            ASSERT_TRUE(exact.count(r.slots)) << c.to_text();
            for (size_t j = 0; j < r.slots.size(); j++) {
                ones[j] += r.slots[j];
            }
        }
        for (size_t j = 0; j < c.num_slots; j++) {
            double p = 0;
            for (const auto &[rec, w] : exact) {
                p += rec[j] ? w : 0;
            }
            EXPECT_NEAR(ones[j] / samples, p, 0.05) << "slot " << j;
        }
    }
}

}  // namespace
}  // namespace mhc
