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

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <sstream>

#include "mhc/experiments.h"
#include "mhc/rng.h"

using namespace mhc;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

RunOptions fixed_run(uint64_t trials, uint64_t seed) {
    RunOptions o;
    o.policy = TrialPolicy::fixed(trials);
    o.seed = seed;
    return o;
}

double rel(double got, double want) {
    if (want == 0) {
        return std::abs(got);
    }
    return std::abs(got - want) / std::abs(want);
}

}  // namespace

TEST(CnotStats, MatchesHighPrecision) {
    const double p10s[] = {1e-9, 1e-6, 1e-4, 3e-3, 0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999,
                           2e-5, 7e-4, 0.033, 0.2, 0.4, 0.6, 0.95, 0.3, 0.15, 0.8, 0.07, 1e-3};
    const uint64_t ks[] = {4, 16, 64, 256};
    int cases = 0;
    for (double p10 : p10s) {
        for (uint64_t k : ks) {
            double d10 = 0.1 * std::sqrt(p10 * (1 - p10));
            CnotStats s = convert_cnot_stats(p10, d10, k);
            Big bp10(p10), bd10(d10), bk(k);
            Big p1 = 1 - pow(1 - bp10, Big(1) / 10);
            Big d1 = (bd10 / 10) * pow(1 - bp10, Big(1) / 10 - 1);
            Big pc = 1 - pow(1 - p1, 1 / bk);
            Big dc = (d1 / bk) * pow(1 - p1, 1 / bk - 1);
            EXPECT_LT(rel(s.p1, p1.convert_to<double>()), 1e-12) << p10 << " " << k;
            EXPECT_LT(rel(s.d1, d1.convert_to<double>()), 1e-12) << p10 << " " << k;
            EXPECT_LT(rel(s.p_cnot, pc.convert_to<double>()), 1e-12) << p10 << " " << k;
            EXPECT_LT(rel(s.d_cnot, dc.convert_to<double>()), 1e-12) << p10 << " " << k;
            cases++;
        }
    }
    EXPECT_EQ(cases, 100);
}

TEST(CnotStats, Examples) {
    CnotStats zero = convert_cnot_stats(0, 0, 16);
    EXPECT_EQ(zero.p1, 0);
    EXPECT_EQ(zero.p_cnot, 0);

    CnotStats s = convert_cnot_stats(0.1, 0.01, 16);
    EXPECT_NEAR(s.p1, 1 - std::pow(0.9, 0.1), 1e-15);
    EXPECT_NEAR(s.p_cnot, 1 - std::pow(1 - s.p1, 1.0 / 16), 1e-15);

    // First order: p_cnot ~ p10 / (10 K).
    for (uint64_t k : {4, 16, 64, 256}) {
        CnotStats t = convert_cnot_stats(1e-4, 0, k);
        EXPECT_LT(rel(t.p_cnot, 1e-4 / (10.0 * k)), 0.01);
    }

    EXPECT_THROW(convert_cnot_stats(1.0, 0, 16), std::invalid_argument);
    EXPECT_THROW(convert_cnot_stats(-0.1, 0, 16), std::invalid_argument);
    EXPECT_THROW(convert_cnot_stats(0.1, 0, 0), std::invalid_argument);
}

TEST(CnotStats, InverseRoundTrip) {
    for (double p10 : {1e-8, 1e-5, 0.001, 0.02, 0.3, 0.7, 0.99}) {
        for (uint64_t k : {4, 16, 64}) {
            CnotStats s = convert_cnot_stats(p10, 0, k);
            EXPECT_LT(rel(p10_from_p1(s.p1), p10), 1e-12);
            EXPECT_LT(rel(p1_from_p_cnot(s.p_cnot, k), s.p1), 1e-12);
        }
    }
}

TEST(FitExponent, ExactPowerLaw) {
    std::vector<RatePoint> pts;
    for (double p : {1e-3, 2e-3, 4e-3, 8e-3, 1.6e-2, 0.1, 0.2}) {
        pts.push_back({p, 3.5 * std::pow(p, 2.7)});
    }
    // The two high points are off the window.
    pts[5].p_fail = 0.5;
    pts[6].p_fail = 0.6;
    FitResult f = fit_exponent(pts);
    EXPECT_EQ(f.points_used, 5);
    EXPECT_NEAR(f.exponent, 2.7, 1e-10);
    EXPECT_NEAR(f.prefactor, 3.5, 1e-8);
    EXPECT_LT(f.residual, 1e-10);
}

TEST(FitExponent, NoisyData) {
    Rng rng(11);
    for (int rep = 0; rep < 50; rep++) {
        double alpha = 1 + 3 * rng.uniform();
        std::vector<RatePoint> pts;
        for (int i = 0; i < 5; i++) {
            double p = 1e-3 * std::pow(2.0, i);
            double noise = 1 + 0.1 * (rng.uniform() - 0.5);
            pts.push_back({p, std::pow(p, alpha) * noise});
        }
        EXPECT_NEAR(fit_exponent(pts).exponent, alpha, 0.2);
    }
}

TEST(FitExponent, Errors) {
    EXPECT_THROW(fit_exponent({{0.1, 0.2}}), std::invalid_argument);
    EXPECT_THROW(fit_exponent({{0.1, 0.2}, {0.2, 0.0}}), std::invalid_argument);
    EXPECT_THROW(fit_exponent({{0.0, 0.2}, {0.2, 0.3}}), std::invalid_argument);
}

TEST(Threshold, SyntheticPowerLaws) {
    double c1 = 2.0, c2 = 900.0;
    std::vector<RatePoint> a, b;
    for (int i = 0; i < 8; i++) {
        double p = 0.01 * std::pow(1.5, i);
        a.push_back({p, c1 * p * p});
    }
    for (int i = 0; i < 6; i++) {
        double p = 0.012 * std::pow(1.7, i);
        b.push_back({p, c2 * std::pow(p, 4)});
    }
    ThresholdResult t = estimate_threshold(a, b, 0);
    ASSERT_TRUE(t.crossed);
    EXPECT_NEAR(t.threshold, std::sqrt(c1 / c2), 1e-6);
}

TEST(Threshold, NoCrossing) {
    std::vector<RatePoint> a{{0.01, 1e-3}, {0.02, 4e-3}}, b{{0.01, 1e-5}, {0.02, 1e-4}};
    EXPECT_FALSE(estimate_threshold(a, b).crossed);
    std::vector<RatePoint> far{{0.5, 0.1}, {0.6, 0.2}};
    EXPECT_FALSE(estimate_threshold(a, far).crossed);
}

TEST(Threshold, BootstrapSpread) {
    std::vector<RatePoint> a, b;
    for (int i = 0; i < 6; i++) {
        double p = 0.03 + 0.01 * i;
        a.push_back({p, 20 * p * p, 20000});
        b.push_back({p, 8000 * std::pow(p, 4), 20000});
    }
    ThresholdResult t = estimate_threshold(a, b, 200, 5);
    ASSERT_TRUE(t.crossed);
    EXPECT_NEAR(t.threshold, 0.05, 1e-9);
    EXPECT_EQ(t.resamples, 200);
    EXPECT_GT(t.stderr_, 0);
    EXPECT_LT(t.stderr_, 0.005);
    EXPECT_LE(t.ci_low, t.threshold);
    EXPECT_GE(t.ci_high, t.threshold);
    // Same seed, same answer.
    ThresholdResult u = estimate_threshold(a, b, 200, 5);
    EXPECT_EQ(t.stderr_, u.stderr_);
}

TEST(RateGrid, Parse) {
    auto lin = parse_rate_grid("0.02:0.08:7", false);
    ASSERT_EQ(lin.size(), 7u);
    EXPECT_NEAR(lin[1], 0.03, 1e-15);
    EXPECT_EQ(lin.back(), 0.08);
    auto lg = parse_rate_grid("0.001:0.1:3", true);
    ASSERT_EQ(lg.size(), 3u);
    EXPECT_NEAR(lg[1], 0.01, 1e-15);
    EXPECT_EQ(parse_rate_grid("0.5:0.5:1", false), std::vector<double>{0.5});
    for (const char *bad : {"0.1:0.2", "0.1:0.2:0", "0.3:0.2:4", "0:0.1:3x", "a:b:c", "0.1:1.5:3", "1:2:3:4"}) {
        EXPECT_THROW(parse_rate_grid(bad, false), std::invalid_argument) << bad;
    }
    EXPECT_THROW(parse_rate_grid("0:0.1:3", true), std::invalid_argument);
}

TEST(Csv, Format) {
    ExperimentResult r;
    r.level = 3;
    r.decoder = DecoderKind::MinDistance;
    r.error_rate = 0.05;
    r.trials = 1000;
    r.failures = 37;
    r.discarded = 2;
    r.seed = 7;
    std::ostringstream out;
    write_csv_header(out);
    write_csv_row(out, r);
    EXPECT_EQ(out.str(),
              "level,decoder,rate,trials,failures,p_fail,stderr,discarded,seed\n"
              "3,md,0.05,1000,37,3.700000e-02,5.969171e-03,2,7\n");
    EXPECT_DOUBLE_EQ(r.stderr_(), std::sqrt(0.037 * 0.963 / 1000));
}

TEST(BitFlip, ZeroNoise) {
    for (auto kind : {DecoderKind::Hard, DecoderKind::Soft, DecoderKind::MinDistance}) {
        for (int level : {1, 2, 3}) {
            auto r = run_bitflip(level, kind, 0.0, fixed_run(200, 3));
            EXPECT_EQ(r.trials, 200u);
            EXPECT_EQ(r.failures, 0u);
        }
    }
}

TEST(BitFlip, DeterministicAndJobIndependent) {
    RunOptions o;
    o.policy = {0, 20000, 150};
    o.seed = 99;
    auto a = run_bitflip(2, DecoderKind::MinDistance, 0.06, o);
    auto b = run_bitflip(2, DecoderKind::MinDistance, 0.06, o);
    o.jobs = 3;
    auto c = run_bitflip(2, DecoderKind::MinDistance, 0.06, o);
    EXPECT_EQ(a.trials, b.trials);
    EXPECT_EQ(a.failures, b.failures);
    EXPECT_EQ(a.trials, c.trials);
    EXPECT_EQ(a.failures, c.failures);
    EXPECT_GE(a.failures, 150u);
    EXPECT_EQ(a.trials % 64, 0u);
}

TEST(BitFlip, TrialPolicy) {
    auto r = run_bitflip(1, DecoderKind::Hard, 0.1, fixed_run(100, 1));
    EXPECT_EQ(r.trials, 100u);
    RunOptions o;
    o.policy = {1000, 5000, 10};
    auto s = run_bitflip(1, DecoderKind::Hard, 0.1, o);
    EXPECT_GE(s.trials, 1000u);
    EXPECT_LE(s.trials, 1064u);
    EXPECT_THROW(run_bitflip(1, DecoderKind::Hard, 0.1, fixed_run(0, 1)), std::invalid_argument);
    EXPECT_THROW(run_bitflip(1, DecoderKind::Hard, 1.5, fixed_run(10, 1)), std::invalid_argument);
}

// Level 1: failure iff the flip pattern decodes to a nonzero logical. With
// the hard decoder an odd pattern is a detection, resolved by a coin.
TEST(BitFlip, LevelOneHardExact) {
    double p = 0.05;
    double want = 0;
    for (unsigned e = 0; e < 64; e++) {
        int w = std::popcount(e);
        double pe = std::pow(p, w) * std::pow(1 - p, 6 - w);
        if (w % 2) {
            // Random guess among 16 logical values.
            want += pe * 15.0 / 16.0;
        } else if (c642::encode(e) != 0) {
            want += pe;
        }
    }
    auto r = run_bitflip(1, DecoderKind::Hard, p, fixed_run(64 * 1500, 4));
    EXPECT_NEAR(r.p_fail(), want, 4 * r.stderr_() + 1e-9);
}

// Level 2, md: leading-order failure rate from exhaustive enumeration of
// weight-2 and weight-3 patterns, each averaged over tie-break seeds.
TEST(BitFlip, LevelTwoWeightEnumeration) {
    const int n = 36;
    MinDistanceDecoder dec(2, {});
    auto fail_fraction = [&](const std::vector<uint8_t> &bits) {
        int fails = 0;
        const int seeds = 8;
        for (int s = 0; s < seeds; s++) {
            Rng rng(1000 + s);
            DecodeResult r = dec.decode(bits, rng);
            fails += std::any_of(r.logical.begin(), r.logical.end(), [](uint8_t b) {
                return b != 0;
            });
        }
        return static_cast<double>(fails) / seeds;
    };
    double a1 = 0, a2 = 0, a3 = 0;
    std::vector<uint8_t> bits(n, 0);
    for (int i = 0; i < n; i++) {
        bits[i] = 1;
        a1 += fail_fraction(bits);
        for (int j = i + 1; j < n; j++) {
            bits[j] = 1;
            a2 += fail_fraction(bits);
            for (int k = j + 1; k < n; k++) {
                bits[k] = 1;
                a3 += fail_fraction(bits);
                bits[k] = 0;
            }
            bits[j] = 0;
        }
        bits[i] = 0;
    }
    EXPECT_EQ(a1, 0);
    EXPECT_GT(a2, 0);

    double p = 0.004;
    double want = a2 * std::pow(p, 2) * std::pow(1 - p, n - 2) + a3 * std::pow(p, 3) * std::pow(1 - p, n - 3);
    // Weight >= 4 is bounded by the probability of seeing four flips.
    double tail = 58905 * std::pow(p, 4);
    RunOptions o;
    o.policy = {0, 400000, 400};
    o.seed = 2024;
    auto r = run_bitflip(2, DecoderKind::MinDistance, p, o);
    EXPECT_NEAR(r.p_fail(), want + tail / 2, 4 * r.stderr_() + tail / 2)
        << "weight-2 sum " << a2 << ", weight-3 sum " << a3;
}

TEST(BitFlip, Monotone) {
    RunOptions o;
    o.policy = {0, 50000, 200};
    o.seed = 8;
    double prev = 0, prev_err = 0;
    for (double p : {0.01, 0.02, 0.04, 0.08}) {
        auto r = run_bitflip(2, DecoderKind::Hard, p, o);
        EXPECT_GE(r.p_fail() + 3 * std::hypot(r.stderr_(), prev_err), prev) << p;
        prev = r.p_fail();
        prev_err = r.stderr_();
    }
}

TEST(Cnot, ZeroNoise) {
    for (int level : {1, 2}) {
        auto r = run_cnot(level, 0.0, fixed_run(256, 1));
        EXPECT_EQ(r.trials, 256u);
        EXPECT_EQ(r.failures, 0u);
        EXPECT_EQ(r.discarded, 0u);
        ASSERT_TRUE(r.cnot);
        EXPECT_EQ(r.cnot->p_cnot, 0);
    }
}

TEST(Cnot, LevelOneSlope) {
    RunOptions o;
    o.policy = {0, 200000, 200};
    o.seed = 17;
    std::vector<RatePoint> pts;
    for (double p : {1e-4, 3e-4, 1e-3}) {
        auto r = run_cnot(1, p, o);
        ASSERT_TRUE(r.cnot);
        EXPECT_GT(r.failures, 0u);
        pts.push_back({p, r.cnot->p_cnot});
    }
    FitResult f = fit_exponent(pts);
    EXPECT_NEAR(f.exponent, 1.0, 0.3);
}

TEST(Cnot, DeterministicAndJobIndependent) {
    RunOptions o;
    o.policy = TrialPolicy::fixed(640);
    o.seed = 3;
    auto a = run_cnot(2, 3e-3, o);
    o.jobs = 2;
    auto b = run_cnot(2, 3e-3, o);
    EXPECT_EQ(a.failures, b.failures);
    EXPECT_EQ(a.trials, b.trials);
    EXPECT_GT(a.failures, 0u);
}

TEST(Cnot, DiscardsExcluded) {
    RunOptions o;
    o.policy = TrialPolicy::fixed(128);
    o.gadgets.max_attempts = 1;
    auto r = run_cnot(1, 0.02, o);
    EXPECT_GT(r.discarded, 0u);
    EXPECT_EQ(r.trials + r.discarded, 128u);
}

TEST(Points, FromRows) {
    ExperimentResult a, b, c;
    a.level = b.level = c.level = 2;
    a.error_rate = 0.02;
    b.error_rate = 0.01;
    c.error_rate = 0.03;
    a.trials = b.trials = c.trials = 100;
    a.failures = 10;
    b.failures = 5;
    c.failures = 0;
    auto pts = to_points({a, b, c}, 2, DecoderKind::MinDistance);
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_EQ(pts[0].rate, 0.01);
    EXPECT_EQ(pts[1].p_fail, 0.1);
    EXPECT_TRUE(to_points({a}, 3, DecoderKind::MinDistance).empty());
}
