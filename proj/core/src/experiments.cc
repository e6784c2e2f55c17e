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

#include "mhc/experiments.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <memory>
#include <mutex>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

#include "mhc/code.h"
#include "mhc/frame.h"
#include "mhc/rng.h"

namespace mhc {

namespace {

constexpr uint64_t kBatch = 64;

struct BatchCounts {
    uint64_t attempted = 0;
    uint64_t failures = 0;
    uint64_t discarded = 0;
};

// Runs batches until the policy says stop. Batch b always uses the same
// seeds, and batches are merged in index order, so the totals do not depend
// on the number of workers. Workers past the stopping batch are wasted.
template <typename Worker>
void sample(
    const TrialPolicy &policy, int jobs, const std::function<std::unique_ptr<Worker>()> &make_worker,
    ExperimentResult &result, const std::function<void(const ExperimentResult &)> &progress) {
    policy.validate();
    auto done = [&]() {
        uint64_t attempted = result.trials + result.discarded;
        if (attempted >= policy.max_trials) {
            return true;
        }
        return attempted >= policy.min_trials && policy.target_failures > 0 &&
               result.failures >= policy.target_failures;
    };
    auto lanes_for = [&](uint64_t batch) {
        uint64_t start = batch * kBatch;
        return start >= policy.max_trials ? uint64_t{0} : std::min(kBatch, policy.max_trials - start);
    };
    auto merge = [&](const BatchCounts &c) {
        result.trials += c.attempted - c.discarded;
        result.failures += c.failures;
        result.discarded += c.discarded;
        if (progress) {
            progress(result);
        }
    };

    jobs = std::max(jobs, 1);
    std::vector<std::unique_ptr<Worker>> workers;
    for (int w = 0; w < jobs; w++) {
        workers.push_back(make_worker());
    }
    if (jobs == 1) {
        for (uint64_t b = 0; !done(); b++) {
            merge(workers[0]->run(b, lanes_for(b)));
        }
        return;
    }

    const uint64_t per_worker = 4;
    uint64_t next = 0;
    while (!done()) {
        uint64_t round = per_worker * static_cast<uint64_t>(jobs);
        std::vector<BatchCounts> counts(round);
        std::vector<std::thread> threads;
        std::exception_ptr error;
        std::mutex error_mutex;
        for (int w = 0; w < jobs; w++) {
            threads.emplace_back([&, w]() {
                try {
                    for (uint64_t i = static_cast<uint64_t>(w); i < round; i += static_cast<uint64_t>(jobs)) {
                        uint64_t b = next + i;
                        counts[i] = workers[w]->run(b, lanes_for(b));
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    error = std::current_exception();
                }
            });
        }
        for (auto &t : threads) {
            t.join();
        }
        if (error) {
            std::rethrow_exception(error);
        }
        for (uint64_t i = 0; i < round && !done(); i++) {
            merge(counts[i]);
        }
        next += round;
    }
}

uint64_t lane_mask(uint64_t lanes) {
    return lanes >= 64 ? ~uint64_t{0} : ((uint64_t{1} << lanes) - 1);
}

// X-type stabilizer supports: a Z measurement of the ideal |0...0>_L gives
// a uniformly random element of their span.
const std::vector<BitVec> &x_stabilizers(int level) {
    static std::mutex mutex;
    static std::vector<std::unique_ptr<std::vector<BitVec>>> cache(kMaxCodeLevel + 1);
    std::lock_guard<std::mutex> lock(mutex);
    auto &slot = cache.at(static_cast<size_t>(level));
    if (!slot) {
        OperatorTable table = build_code(level);
        slot = std::make_unique<std::vector<BitVec>>();
        for (const auto &s : table.stabilizers) {
            if (!s.x.none()) {
                slot->push_back(s.x);
            }
        }
    }
    return *slot;
}

class BitFlipWorker {
   public:
    BitFlipWorker(int level, DecoderKind decoder, double p_flip, const DecoderConfig &config, uint64_t seed)
        : level_(level),
          decoder_(decoder),
          p_(p_flip),
          seed_(seed),
          n_(ipow(6, level)),
          stabilizers_(x_stabilizers(level)),
          suite_(config),
          outcomes_(n_) {
    }

    BatchCounts run(uint64_t batch, uint64_t lanes) {
        Rng ref_rng(seed_, StreamTag::Reference, batch);
        Rng noise_rng(seed_, StreamTag::Noise, batch);
        Rng dec_rng(seed_, StreamTag::Decoder, batch);
        std::bernoulli_distribution flip(p_);
        BatchCounts c;
        c.attempted = lanes;
        BitVec word(n_);
        for (uint64_t t = 0; t < lanes; t++) {
            word = BitVec(n_);
            for (const auto &s : stabilizers_) {
                if (ref_rng.coin()) {
                    word ^= s;
                }
            }
            for (size_t j = 0; j < n_; j++) {
                outcomes_[j] = static_cast<uint8_t>(word.get(j) ^ (p_ > 0 && flip(noise_rng.engine())));
            }
            DecodeResult r = suite_.decode(decoder_, outcomes_, level_, DecodeMode::Correct, 1, dec_rng);
            bool failed = r.detected || std::any_of(r.logical.begin(), r.logical.end(), [](uint8_t b) {
                              return b != 0;
                          });
            c.failures += failed;
        }
        return c;
    }

   private:
    int level_;
    DecoderKind decoder_;
    double p_;
    uint64_t seed_;
    size_t n_;
    const std::vector<BitVec> &stabilizers_;
    DecoderSuite suite_;
    std::vector<uint8_t> outcomes_;
};

class CnotWorker {
   public:
    CnotWorker(const BuiltCircuit &built, double p_circ, const DecoderConfig &config, uint64_t seed)
        : built_(built), sim_(built.circuit, NoiseModel::circuit_level(p_circ), config), seed_(seed) {
    }

    BatchCounts run(uint64_t batch, uint64_t lanes) {
        sim_.run(derive_seed(seed_, static_cast<uint64_t>(StreamTag::Noise), batch),
                 derive_seed(seed_, static_cast<uint64_t>(StreamTag::Decoder), batch));
        uint64_t mask = lane_mask(lanes);
        uint64_t failed = 0;
        for (uint32_t s : built_.result_slots) {
            failed |= sim_.slot(s);
        }
        uint64_t discarded = sim_.discarded() & mask;
        BatchCounts c;
        c.attempted = lanes;
        c.discarded = static_cast<uint64_t>(std::popcount(discarded));
        c.failures = static_cast<uint64_t>(std::popcount(failed & mask & ~discarded));
        return c;
    }

   private:
    const BuiltCircuit &built_;
    FrameSimulator sim_;
    uint64_t seed_;
};

void check_level(int level) {
    if (level < 1 || level > kMaxCodeLevel) {
        throw std::invalid_argument("level must be in 1.." + std::to_string(kMaxCodeLevel));
    }
}

void check_probability(double p, const char *name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must be in [0,1]");
    }
}

// Log-log crossing of two curves given as sorted (log rate, log p) pairs.
struct LogCurve {
    std::vector<double> x, y;

    double at(double v) const {
        auto it = std::upper_bound(x.begin(), x.end(), v);
        if (it == x.begin()) {
            return y.front();
        }
        if (it == x.end()) {
            return y.back();
        }
        size_t i = static_cast<size_t>(it - x.begin());
        double t = (v - x[i - 1]) / (x[i] - x[i - 1]);
        return y[i - 1] + t * (y[i] - y[i - 1]);
    }
};

std::optional<double> log_crossing(const LogCurve &a, const LogCurve &b) {
    double lo = std::max(a.x.front(), b.x.front());
    double hi = std::min(a.x.back(), b.x.back());
    if (lo > hi) {
        return std::nullopt;
    }
    std::vector<double> grid{lo, hi};
    for (const auto *c : {&a, &b}) {
        for (double v : c->x) {
            if (v > lo && v < hi) {
                grid.push_back(v);
            }
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    double prev_g = a.at(grid[0]) - b.at(grid[0]);
    if (prev_g == 0) {
        return grid[0];
    }
    for (size_t i = 1; i < grid.size(); i++) {
        double g = a.at(grid[i]) - b.at(grid[i]);
        if (g == 0) {
            return grid[i];
        }
        if ((g > 0) != (prev_g > 0)) {
            // Both curves are linear on [grid[i-1], grid[i]], so g is too.
            return grid[i - 1] + (grid[i] - grid[i - 1]) * prev_g / (prev_g - g);
        }
        prev_g = g;
    }
    return std::nullopt;
}

std::vector<RatePoint> sorted_points(std::vector<RatePoint> pts) {
    std::sort(pts.begin(), pts.end(), [](const RatePoint &a, const RatePoint &b) {
        return a.rate < b.rate;
    });
    return pts;
}

LogCurve to_log(const std::vector<RatePoint> &pts) {
    LogCurve c;
    for (const auto &p : pts) {
        c.x.push_back(std::log(p.rate));
        c.y.push_back(std::log(p.p_fail));
    }
    return c;
}

void check_curve(const std::vector<RatePoint> &pts) {
    if (pts.empty()) {
        throw std::invalid_argument("empty curve");
    }
    for (size_t i = 0; i < pts.size(); i++) {
        if (!(pts[i].rate > 0) || !(pts[i].p_fail > 0)) {
            throw std::invalid_argument("curve points must have positive rate and failure probability");
        }
        if (i > 0 && pts[i].rate == pts[i - 1].rate) {
            throw std::invalid_argument("duplicate rate in curve");
        }
    }
}

// One parametric resample of a curve.
std::vector<RatePoint> resample(const std::vector<RatePoint> &pts, Rng &rng) {
    std::vector<RatePoint> out = pts;
    for (auto &p : out) {
        if (p.trials == 0) {
            continue;
        }
        double q = p.cnot_pairs ? p10_from_p1(p1_from_p_cnot(p.p_fail, p.cnot_pairs)) : p.p_fail;
        q = std::clamp(q, 0.0, 1.0);
        std::binomial_distribution<uint64_t> dist(p.trials, q);
        uint64_t k = dist(rng.engine());
        // Keep logs finite; a zero count maps to half a failure, a full count
        // to half a success.
        double kk = std::clamp(static_cast<double>(k), 0.5, static_cast<double>(p.trials) - 0.5);
        double f = kk / static_cast<double>(p.trials);
        p.p_fail = p.cnot_pairs ? convert_cnot_stats(f, 0, p.cnot_pairs).p_cnot : f;
    }
    return out;
}

}  // namespace

std::string experiment_kind_name(ExperimentKind kind) {
    return kind == ExperimentKind::BitFlip ? "bitflip" : "cnot";
}

ExperimentKind parse_experiment_kind(const std::string &name) {
    if (name == "bitflip") {
        return ExperimentKind::BitFlip;
    }
    if (name == "cnot") {
        return ExperimentKind::Cnot;
    }
    throw std::invalid_argument("unknown experiment kind '" + name + "'");
}

double ExperimentResult::stderr_() const {
    if (trials == 0) {
        return 0.0;
    }
    double p = p_fail();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

void TrialPolicy::validate() const {
    if (max_trials == 0) {
        throw std::invalid_argument("trial cap must be at least 1");
    }
    if (min_trials > max_trials) {
        throw std::invalid_argument("minimum trials exceed the trial cap");
    }
}

ExperimentResult run_bitflip(int level, DecoderKind decoder, double p_flip, const RunOptions &opt) {
    check_level(level);
    check_probability(p_flip, "p_flip");
    DecoderConfig config = opt.decoder;
    if (decoder == DecoderKind::Soft && opt.soft_prior_from_rate) {
        config.prior_error = std::clamp(p_flip, 1e-12, 0.5);
    }
    config.validate(level);

    ExperimentResult result;
    result.kind = ExperimentKind::BitFlip;
    result.level = level;
    result.decoder = decoder;
    result.error_rate = p_flip;
    result.seed = opt.seed;
    std::function<std::unique_ptr<BitFlipWorker>()> make = [&]() {
        return std::make_unique<BitFlipWorker>(level, decoder, p_flip, config, opt.seed);
    };
    sample<BitFlipWorker>(opt.policy, opt.jobs, make, result, opt.progress);
    return result;
}

ExperimentResult run_cnot(int level, double p_circ, const RunOptions &opt) {
    check_level(level);
    check_probability(p_circ, "p_circ");
    opt.decoder.validate(level);
    BuiltCircuit built = build_cnot_experiment(level, opt.gadgets, opt.rounds);

    ExperimentResult result;
    result.kind = ExperimentKind::Cnot;
    result.level = level;
    result.decoder = opt.gadgets.ect_decoder;
    result.error_rate = p_circ;
    result.seed = opt.seed;
    std::function<std::unique_ptr<CnotWorker>()> make = [&]() {
        return std::make_unique<CnotWorker>(built, p_circ, opt.decoder, opt.seed);
    };
    sample<CnotWorker>(opt.policy, opt.jobs, make, result, opt.progress);
    if (result.trials > 0 && result.failures < result.trials) {
        result.cnot = convert_cnot_stats(result.p_fail(), result.stderr_(), cnot_pairs(level), opt.rounds);
    }
    return result;
}

CnotStats convert_cnot_stats(double p10, double d10, uint64_t k, int rounds) {
    if (!(p10 >= 0.0 && p10 < 1.0)) {
        throw std::invalid_argument("p10 must be in [0,1)");
    }
    if (!(d10 >= 0.0) || k == 0 || rounds < 1) {
        throw std::invalid_argument("bad error bar, pair count or round count");
    }
    double r = 1.0 / rounds;
    double kk = 1.0 / static_cast<double>(k);
    CnotStats s;
    s.p1 = -std::expm1(r * std::log1p(-p10));
    s.d1 = d10 * r * std::exp((r - 1.0) * std::log1p(-p10));
    s.p_cnot = -std::expm1(kk * std::log1p(-s.p1));
    s.d_cnot = s.d1 * kk * std::exp((kk - 1.0) * std::log1p(-s.p1));
    return s;
}

double p10_from_p1(double p1, int rounds) {
    return -std::expm1(rounds * std::log1p(-p1));
}

double p1_from_p_cnot(double p_cnot, uint64_t k) {
    return -std::expm1(static_cast<double>(k) * std::log1p(-p_cnot));
}

uint64_t cnot_pairs(int level) {
    return ipow(4, level);
}

FitResult fit_exponent(std::vector<RatePoint> points, int window) {
    points = sorted_points(std::move(points));
    if (window > 0 && points.size() > static_cast<size_t>(window)) {
        points.resize(static_cast<size_t>(window));
    }
    if (points.size() < 2) {
        throw std::invalid_argument("need at least two points to fit");
    }
    check_curve(points);
    LogCurve c = to_log(points);
    double n = static_cast<double>(points.size());
    double mx = 0, my = 0;
    for (size_t i = 0; i < points.size(); i++) {
        mx += c.x[i];
        my += c.y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < points.size(); i++) {
        sxx += (c.x[i] - mx) * (c.x[i] - mx);
        sxy += (c.x[i] - mx) * (c.y[i] - my);
    }
    FitResult f;
    f.exponent = sxy / sxx;
    double intercept = my - f.exponent * mx;
    f.prefactor = std::exp(intercept);
    f.points_used = static_cast<int>(points.size());
    double ss = 0;
    for (size_t i = 0; i < points.size(); i++) {
        double e = c.y[i] - (intercept + f.exponent * c.x[i]);
        ss += e * e;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

ThresholdResult estimate_threshold(
    const std::vector<RatePoint> &curve_a, const std::vector<RatePoint> &curve_b, int resamples, uint64_t seed) {
    auto a = sorted_points(curve_a);
    auto b = sorted_points(curve_b);
    check_curve(a);
    check_curve(b);
    ThresholdResult out;
    auto x = log_crossing(to_log(a), to_log(b));
    if (!x) {
        return out;
    }
    out.crossed = true;
    out.threshold = std::exp(*x);
    out.ci_low = out.ci_high = out.threshold;

    std::vector<double> samples;
    for (int r = 0; r < resamples; r++) {
        Rng rng(seed, StreamTag::Bootstrap, static_cast<uint64_t>(r));
        auto ra = resample(a, rng);
        auto rb = resample(b, rng);
        auto rx = log_crossing(to_log(ra), to_log(rb));
        if (rx) {
            samples.push_back(std::exp(*rx));
        } else {
            out.resamples_without_crossing++;
        }
    }
    out.resamples = resamples;
    if (samples.size() >= 2) {
        double mean = 0;
        for (double s : samples) {
            mean += s;
        }
        mean /= static_cast<double>(samples.size());
        double var = 0;
        for (double s : samples) {
            var += (s - mean) * (s - mean);
        }
        out.stderr_ = std::sqrt(var / static_cast<double>(samples.size() - 1));
        std::sort(samples.begin(), samples.end());
        auto q = [&](double f) {
            size_t i = static_cast<size_t>(std::floor(f * static_cast<double>(samples.size() - 1)));
            return samples[i];
        };
        out.ci_low = q(0.025);
        out.ci_high = q(0.975);
    }
    return out;
}

std::vector<double> parse_rate_grid(const std::string &text, bool log_spacing) {
    size_t c1 = text.find(':');
    size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos) {
        throw std::invalid_argument("rate grid must look like start:stop:count, got '" + text + "'");
    }
    double start, stop;
    long long count;
    size_t used = 0;
    try {
        std::string s0 = text.substr(0, c1), s1 = text.substr(c1 + 1, c2 - c1 - 1), s2 = text.substr(c2 + 1);
        start = std::stod(s0, &used);
        if (used != s0.size()) {
            throw std::invalid_argument(s0);
        }
        stop = std::stod(s1, &used);
        if (used != s1.size()) {
            throw std::invalid_argument(s1);
        }
        count = std::stoll(s2, &used);
        if (used != s2.size()) {
            throw std::invalid_argument(s2);
        }
    } catch (const std::exception &) {
        throw std::invalid_argument("bad number in rate grid '" + text + "'");
    }
    if (count < 1) {
        throw std::invalid_argument("rate grid needs at least one point");
    }
    check_probability(start, "grid start");
    check_probability(stop, "grid stop");
    if (start > stop) {
        throw std::invalid_argument("rate grid start exceeds stop");
    }
    if (log_spacing && start <= 0) {
        throw std::invalid_argument("log-spaced grids need a positive start");
    }
    std::vector<double> out;
    if (count == 1) {
        out.push_back(start);
        return out;
    }
    for (long long i = 0; i < count; i++) {
        double t = static_cast<double>(i) / static_cast<double>(count - 1);
        double v = log_spacing ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                               : start + t * (stop - start);
        out.push_back(v);
    }
    out.back() = stop;
    return out;
}

void write_csv_header(std::ostream &out) {
    out << "level,decoder,rate,trials,failures,p_fail,stderr,discarded,seed\n";
}

void write_csv_row(std::ostream &out, const ExperimentResult &r) {
    char buf[256];
    std::snprintf(
        buf, sizeof(buf), "%d,%s,%.6g,%llu,%llu,%.6e,%.6e,%llu,%llu\n", r.level, decoder_name(r.decoder).c_str(),
        r.error_rate, static_cast<unsigned long long>(r.trials), static_cast<unsigned long long>(r.failures),
        r.p_fail(), r.stderr_(), static_cast<unsigned long long>(r.discarded),
        static_cast<unsigned long long>(r.seed));
    out << buf;
}

std::vector<RatePoint> to_points(const std::vector<ExperimentResult> &rows, int level, DecoderKind decoder) {
    std::vector<RatePoint> out;
    for (const auto &r : rows) {
        if (r.level != level || r.decoder != decoder || r.failures == 0) {
            continue;
        }
        RatePoint p;
        p.rate = r.error_rate;
        p.trials = r.trials;
        if (r.kind == ExperimentKind::Cnot) {
            if (!r.cnot) {
                continue;
            }
            p.p_fail = r.cnot->p_cnot;
            p.cnot_pairs = cnot_pairs(level);
        } else {
            p.p_fail = r.p_fail();
        }
        out.push_back(p);
    }
    return sorted_points(std::move(out));
}

}  // namespace mhc
