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

#ifndef MHC_EXPERIMENTS_H
#define MHC_EXPERIMENTS_H

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mhc/builders.h"
#include "mhc/decoders.h"

namespace mhc {

enum class ExperimentKind { BitFlip, Cnot };

std::string experiment_kind_name(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string &name);

/// Per-trial CNOT statistics derived from the ten-round failure rate.
struct CnotStats {
    double p1 = 0;
    double d1 = 0;
    double p_cnot = 0;
    double d_cnot = 0;
};

struct ExperimentResult {
    ExperimentKind kind = ExperimentKind::BitFlip;
    int level = 1;
    DecoderKind decoder = DecoderKind::MinDistance;
    /// p_flip for bit-flip runs, p_circ for CNOT runs.
    double error_rate = 0;
    uint64_t trials = 0;
    uint64_t failures = 0;
    /// Trials whose preparation ran out of attempts. Not counted in `trials`.
    uint64_t discarded = 0;
    uint64_t seed = 0;
    /// CNOT runs only.
    std::optional<CnotStats> cnot;

    double p_fail() const {
        return trials ? static_cast<double>(failures) / static_cast<double>(trials) : 0.0;
    }
    double stderr_() const;
};

/// When to stop sampling a cell. Sampling goes in batches of 64 and stops
/// once at least `min_trials` were run and either `target_failures` were seen
/// or `max_trials` was reached. A fixed count is min = max.
struct TrialPolicy {
    uint64_t min_trials = 0;
    uint64_t max_trials = 1000000;
    uint64_t target_failures = 100;

    static TrialPolicy fixed(uint64_t trials) {
        return {trials, trials, 0};
    }
    void validate() const;
};

struct RunOptions {
    TrialPolicy policy;
    uint64_t seed = 0;
    /// Worker threads. Results do not depend on this.
    int jobs = 1;
    DecoderConfig decoder;
    GadgetOptions gadgets;
    /// Logical CNOT rounds in the CNOT experiment.
    int rounds = 10;
    /// Bit-flip runs with the soft decoder use p_flip as its prior instead
    /// of decoder.prior_error.
    bool soft_prior_from_rate = true;
    /// Called after each merged batch with the running totals.
    std::function<void(const ExperimentResult &)> progress;
};

/// Code-capacity benchmark: an ideal Z measurement of the logical all-zero
/// state with independent bit flips, decoded with `decoder`. A trial fails
/// if any decoded logical bit is 1.
ExperimentResult run_bitflip(int level, DecoderKind decoder, double p_flip, const RunOptions &opt);

/// Ten rounds of transversal CNOT with error-correcting teleportation, under
/// circuit-level noise of strength p_circ. Also fills `cnot`.
ExperimentResult run_cnot(int level, double p_circ, const RunOptions &opt);

/// Throws std::invalid_argument unless 0 <= p10 < 1, d10 >= 0 and k >= 1.
CnotStats convert_cnot_stats(double p10, double d10, uint64_t k, int rounds = 10);

/// Inverse of the p_1 step: the ten-round failure rate for a per-round rate.
double p10_from_p1(double p1, int rounds = 10);
/// Inverse of the p_CNOT step.
double p1_from_p_cnot(double p_cnot, uint64_t k);

/// Logical CNOT pairs in one round at `level`: 4^level.
uint64_t cnot_pairs(int level);

struct RatePoint {
    double rate = 0;
    double p_fail = 0;
    /// Used only for bootstrap resampling; 0 means "treat as exact".
    uint64_t trials = 0;
    /// Nonzero for CNOT curves: p_fail is p_CNOT for this many pairs, and
    /// resampling happens on the underlying ten-round rate.
    uint64_t cnot_pairs = 0;
};

struct FitResult {
    double exponent = 0;
    double prefactor = 0;
    int points_used = 0;
    /// Root-mean-square residual in natural-log units.
    double residual = 0;
};

/// Least-squares line through (log rate, log p_fail) of the `window` lowest
/// rates (all points if fewer, window <= 0 means all). Throws
/// std::invalid_argument on fewer than two points or non-positive values.
FitResult fit_exponent(std::vector<RatePoint> points, int window = 5);

struct ThresholdResult {
    bool crossed = false;
    double threshold = 0;
    /// Bootstrap spread; zero when no resampling was done.
    double stderr_ = 0;
    double ci_low = 0;
    double ci_high = 0;
    int resamples = 0;
    /// Resamples in which the curves did not cross.
    int resamples_without_crossing = 0;
};

/// Lowest rate at which the two curves cross, using piecewise-linear
/// interpolation in log-log space over the shared rate range. Error bars
/// come from `resamples` parametric binomial resamples of each point.
ThresholdResult estimate_threshold(
    const std::vector<RatePoint> &curve_a, const std::vector<RatePoint> &curve_b, int resamples = 200,
    uint64_t seed = 0);

/// `start:stop:count` with linear or logarithmic spacing.
std::vector<double> parse_rate_grid(const std::string &text, bool log_spacing);

void write_csv_header(std::ostream &out);
void write_csv_row(std::ostream &out, const ExperimentResult &r);

/// Rows of one (level, decoder) curve in rate order. CNOT rows give p_CNOT
/// points; rows without failures are skipped.
std::vector<RatePoint> to_points(const std::vector<ExperimentResult> &rows, int level, DecoderKind decoder);

}  // namespace mhc

#endif
