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

#include "cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "mhc/bits.h"
#include "mhc/builders.h"
#include "mhc/code.h"
#include "mhc/experiments.h"
#include "mhc/rng.h"

namespace mhc::cli {

namespace {

using nlohmann::json;

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    uint64_t seed = 0;
    int jobs = 1;
    std::string output;
    std::string json_output;

    uint64_t trials = 0;
    uint64_t min_trials = 0;
    uint64_t max_trials = 1000000;
    uint64_t target_failures = 100;

    int level = 1;
    int fit_level = 0;
    std::vector<int> levels{2, 3};
    std::string decoder = "md";
    std::vector<std::string> decoders{"md"};
    std::string mode = "correct";
    double rate = 0.01;
    std::string rates = "0.02:0.08:7";
    bool log_grid = false;
    std::string kind = "bitflip";
    int rounds = 10;
    std::string circuit = "ft-zero";
    bool operators = false;
    std::string input = "-";
    int window = 5;
    int resamples = 200;

    // Decoder and gadget knobs.
    std::vector<std::string> n_th;
    std::vector<std::string> m_th;
    int detect_level = 1;
    double prior = 0.01;
    std::string ect_decoder = "md";
    uint32_t max_attempts = 1000;
    int level3_detect = 1;
    int level4_detect = 2;
};

void add_seed(CLI::App *app, Config &c) {
    app->add_option("--seed", c.seed, "Master seed")->capture_default_str();
}

void add_output(CLI::App *app, Config &c, bool with_json) {
    app->add_option("-o,--output", c.output, "Output file (default: stdout, or $MHC_OUTPUT_DIR/<command>.csv)");
    if (with_json) {
        app->add_option("--json", c.json_output, "JSON summary file (default: $MHC_OUTPUT_DIR/<command>.json if set)");
    }
}

void add_trials(CLI::App *app, Config &c) {
    app->add_option("--trials", c.trials, "Fixed trial count per cell (0: adaptive)")->capture_default_str();
    app->add_option("--min-trials", c.min_trials, "Adaptive: minimum trials")->capture_default_str();
    app->add_option("--max-trials", c.max_trials, "Adaptive: trial cap")->capture_default_str();
    app->add_option("--target-failures", c.target_failures, "Adaptive: stop after this many failures")
        ->capture_default_str();
    app->add_option("-j,--jobs", c.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
}

void add_decoder_knobs(CLI::App *app, Config &c) {
    app->add_option("--n-th", c.n_th, "Candidate-product cap per level, as LEVEL=VALUE")->delimiter(',');
    app->add_option("--m-th", c.m_th, "Candidate-sum cap per level, as LEVEL=VALUE")->delimiter(',');
    app->add_option("--detect-level", c.detect_level, "Detection depth L_D for md detection")
        ->capture_default_str();
    app->add_option("--prior", c.prior, "Prior error probability for the soft decoder")->capture_default_str();
}

void add_gadget_knobs(CLI::App *app, Config &c) {
    app->add_option("--ect-decoder", c.ect_decoder, "Decoder for teleportation outcomes (hard, md)")
        ->capture_default_str();
    app->add_option("--max-attempts", c.max_attempts, "Repeat-until-success attempt bound")->capture_default_str();
    app->add_option("--level3-detect", c.level3_detect, "Detection depth inside the level-3 encoder")
        ->capture_default_str();
    app->add_option("--level4-detect", c.level4_detect, "Detection depth inside the level-4 encoder")
        ->capture_default_str();
}

std::map<int, uint64_t> parse_caps(const std::vector<std::string> &items, const char *what) {
    std::map<int, uint64_t> out;
    for (const auto &item : items) {
        if (item.empty()) {
            continue;
        }
        size_t eq = item.find('=');
        try {
            if (eq == std::string::npos) {
                throw std::invalid_argument(item);
            }
            size_t used = 0;
            int level = std::stoi(item.substr(0, eq), &used);
            if (used != eq) {
                throw std::invalid_argument(item);
            }
            std::string v = item.substr(eq + 1);
            uint64_t value = std::stoull(v, &used);
            if (used != v.size() || v.find('-') != std::string::npos) {
                throw std::invalid_argument(item);
            }
            out[level] = value;
        } catch (const std::exception &) {
            throw ValidationError(std::string(what) + " entries must look like LEVEL=VALUE, got '" + item + "'");
        }
    }
    return out;
}

DecoderConfig decoder_config(const Config &c) {
    DecoderConfig d;
    d.product_cap = parse_caps(c.n_th, "--n-th");
    d.sum_cap = parse_caps(c.m_th, "--m-th");
    d.detect_level = c.detect_level;
    d.prior_error = c.prior;
    d.seed = c.seed;
    return d;
}

GadgetOptions gadget_options(const Config &c) {
    GadgetOptions g;
    g.max_attempts = c.max_attempts;
    g.ect_decoder = parse_decoder_kind(c.ect_decoder);
    if (g.ect_decoder == DecoderKind::Soft) {
        throw ValidationError("the teleportation decoder must be hard or md");
    }
    g.level3_detect_level = c.level3_detect;
    g.level4_detect_level = c.level4_detect;
    if (c.max_attempts == 0) {
        throw ValidationError("--max-attempts must be at least 1");
    }
    return g;
}

RunOptions run_options(const Config &c) {
    RunOptions o;
    o.policy = c.trials ? TrialPolicy::fixed(c.trials) : TrialPolicy{c.min_trials, c.max_trials, c.target_failures};
    o.policy.validate();
    o.seed = c.seed;
    o.jobs = c.jobs;
    o.decoder = decoder_config(c);
    o.gadgets = gadget_options(c);
    o.rounds = c.rounds;
    return o;
}

void check_level(int level) {
    if (level < 1 || level > kMaxCodeLevel) {
        throw ValidationError("level must be in 1.." + std::to_string(kMaxCodeLevel));
    }
}

/// Output sink: a file (resolved against $MHC_OUTPUT_DIR when relative) or a
/// fallback stream. Opened before any work so a bad path fails fast.
class Sink {
   public:
    Sink(const std::string &path, const std::string &default_name, std::ostream &fallback) : stream_(&fallback) {
        const char *dir = std::getenv("MHC_OUTPUT_DIR");
        std::filesystem::path p;
        if (!path.empty()) {
            p = path;
            if (p.is_relative() && dir && *dir) {
                p = std::filesystem::path(dir) / p;
            }
        } else if (!default_name.empty() && dir && *dir) {
            p = std::filesystem::path(dir) / default_name;
        }
        if (!p.empty()) {
            file_.open(p, std::ios::out | std::ios::trunc);
            if (!file_) {
                throw ValidationError("cannot write output file '" + p.string() + "'");
            }
            stream_ = &file_;
            path_ = p.string();
        }
    }
    std::ostream &stream() {
        return *stream_;
    }
    bool is_file() const {
        return !path_.empty();
    }

   private:
    std::ofstream file_;
    std::ostream *stream_;
    std::string path_;
};

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

std::string summary_line(const ExperimentResult &r) {
    std::ostringstream s;
    s << experiment_kind_name(r.kind) << " level=" << r.level << " decoder=" << decoder_name(r.decoder)
      << " rate=" << fmt("%.6g", r.error_rate) << " trials=" << r.trials << " failures=" << r.failures
      << " p_fail=" << fmt("%.4e", r.p_fail()) << " stderr=" << fmt("%.2e", r.stderr_())
      << " discarded=" << r.discarded;
    if (r.cnot) {
        s << " p_cnot=" << fmt("%.4e", r.cnot->p_cnot) << " d_cnot=" << fmt("%.2e", r.cnot->d_cnot);
    }
    return s.str();
}

json row_json(const ExperimentResult &r) {
    json j{{"kind", experiment_kind_name(r.kind)},
           {"level", r.level},
           {"decoder", decoder_name(r.decoder)},
           {"rate", r.error_rate},
           {"trials", r.trials},
           {"failures", r.failures},
           {"p_fail", r.p_fail()},
           {"stderr", r.stderr_()},
           {"discarded", r.discarded},
           {"seed", r.seed}};
    if (r.cnot) {
        j["p1"] = r.cnot->p1;
        j["d1"] = r.cnot->d1;
        j["p_cnot"] = r.cnot->p_cnot;
        j["d_cnot"] = r.cnot->d_cnot;
    }
    return j;
}

json fit_json(int level, DecoderKind d, const std::vector<RatePoint> &pts, int window) {
    json j{{"level", level}, {"decoder", decoder_name(d)}};
    try {
        FitResult f = fit_exponent(pts, window);
        j["exponent"] = f.exponent;
        j["prefactor"] = f.prefactor;
        j["points_used"] = f.points_used;
        j["residual"] = f.residual;
    } catch (const std::invalid_argument &e) {
        j["error"] = e.what();
    }
    return j;
}

json threshold_json(int la, int lb, DecoderKind d, const ThresholdResult &t) {
    json j{{"levels", {la, lb}}, {"decoder", decoder_name(d)}, {"crossed", t.crossed}};
    if (t.crossed) {
        j["threshold"] = t.threshold;
        j["stderr"] = t.stderr_;
        j["ci_low"] = t.ci_low;
        j["ci_high"] = t.ci_high;
        j["resamples"] = t.resamples;
        j["resamples_without_crossing"] = t.resamples_without_crossing;
    }
    return j;
}

std::vector<ExperimentResult> read_csv(std::istream &in, ExperimentKind kind, int rounds) {
    std::vector<ExperimentResult> rows;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty() || line.rfind("level,", 0) == 0) {
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            f.push_back(cell);
        }
        if (f.size() != 9) {
            throw ValidationError("line " + std::to_string(lineno) + ": expected 9 CSV fields");
        }
        ExperimentResult r;
        try {
            r.kind = kind;
            r.level = std::stoi(f[0]);
            r.decoder = parse_decoder_kind(f[1]);
            r.error_rate = std::stod(f[2]);
            r.trials = std::stoull(f[3]);
            r.failures = std::stoull(f[4]);
            r.discarded = std::stoull(f[7]);
            r.seed = std::stoull(f[8]);
        } catch (const std::exception &e) {
            throw ValidationError("line " + std::to_string(lineno) + ": " + e.what());
        }
        if (r.failures > r.trials) {
            throw ValidationError("line " + std::to_string(lineno) + ": failures exceed trials");
        }
        if (kind == ExperimentKind::Cnot && r.trials > 0 && r.failures < r.trials) {
            r.cnot = convert_cnot_stats(r.p_fail(), r.stderr_(), cnot_pairs(r.level), rounds);
        }
        rows.push_back(r);
    }
    return rows;
}

std::vector<ExperimentResult> load_rows(const Config &c, std::istream &in) {
    ExperimentKind kind = parse_experiment_kind(c.kind);
    if (c.input == "-") {
        return read_csv(in, kind, c.rounds);
    }
    std::ifstream f(c.input);
    if (!f) {
        throw ValidationError("cannot read '" + c.input + "'");
    }
    return read_csv(f, kind, c.rounds);
}

// Curves present in a set of rows, in first-seen order.
std::vector<std::pair<int, DecoderKind>> groups(const std::vector<ExperimentResult> &rows) {
    std::vector<std::pair<int, DecoderKind>> out;
    for (const auto &r : rows) {
        std::pair<int, DecoderKind> g{r.level, r.decoder};
        if (std::find(out.begin(), out.end(), g) == out.end()) {
            out.push_back(g);
        }
    }
    return out;
}

int cmd_codegen(const Config &c, std::ostream &out) {
    check_level(c.level);
    CodeParams p = CodeParams::for_level(c.level);
    out << p.bracket() << " rate=" << fmt("%.4f", p.rate()) << "\n";
    if (c.operators) {
        OperatorTable t = build_code(c.level);
        for (size_t i = 0; i < t.stabilizers.size(); i++) {
            out << "S" << i << " L" << t.stabilizer_level[i] << " " << t.stabilizers[i].str() << "\n";
        }
        for (size_t i = 0; i < t.logical_z.size(); i++) {
            out << "Z" << i << " " << t.logical_z[i].str() << "\n";
        }
        for (size_t i = 0; i < t.logical_x.size(); i++) {
            out << "X" << i << " " << t.logical_x[i].str() << "\n";
        }
    }
    return kOk;
}

int cmd_decode(const Config &c, std::istream &in, std::ostream &out) {
    check_level(c.level);
    DecoderKind kind = parse_decoder_kind(c.decoder);
    DecodeMode mode = parse_decode_mode(c.mode);
    DecoderConfig cfg = decoder_config(c);
    cfg.validate(c.level);
    DecoderSuite suite(cfg);
    std::string line;
    uint64_t index = 0;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        auto bits = parse_bits(line);
        Rng rng(c.seed, StreamTag::Decoder, index++);
        DecodeResult r = suite.decode(kind, bits, c.level, mode, c.detect_level, rng);
        out << (r.detected ? std::string("F") : format_bits(r.logical)) << "\n";
    }
    return kOk;
}

int cmd_emit(const Config &c, std::ostream &out) {
    GadgetOptions g = gadget_options(c);
    BuiltCircuit built;
    if (c.circuit == "zero-642") {
        built = build_zero_encoder_642(false);
    } else if (c.circuit == "arbitrary-642") {
        built = build_zero_encoder_642(true);
    } else {
        check_level(c.level);
        if (c.circuit == "ft-zero") {
            built = build_ft_zero_encoder(c.level, g);
        } else if (c.circuit == "edx") {
            built = build_ed_gadget(Basis::X, c.level, g);
        } else if (c.circuit == "edz") {
            built = build_ed_gadget(Basis::Z, c.level, g);
        } else if (c.circuit == "ect") {
            built = build_ect(c.level, g);
        } else if (c.circuit == "cnot") {
            built = build_cnot_experiment(c.level, g, c.rounds);
        } else {
            throw ValidationError("unknown circuit '" + c.circuit + "'");
        }
    }
    Sink sink(c.output, "", out);
    sink.stream() << built.circuit.to_text();
    return kOk;
}

int cmd_sim(const Config &c, ExperimentKind kind, std::ostream &out, std::ostream &err) {
    check_level(c.level);
    RunOptions o = run_options(c);
    Sink sink(c.output, kind == ExperimentKind::BitFlip ? "sim-bitflip.csv" : "sim-cnot.csv", out);
    ExperimentResult r = kind == ExperimentKind::BitFlip
                             ? run_bitflip(c.level, parse_decoder_kind(c.decoder), c.rate, o)
                             : run_cnot(c.level, c.rate, o);
    write_csv_header(sink.stream());
    write_csv_row(sink.stream(), r);
    (sink.is_file() ? out : err) << summary_line(r) << "\n";
    return kOk;
}

int cmd_sweep(const Config &c, std::ostream &out, std::ostream &err) {
    ExperimentKind kind = parse_experiment_kind(c.kind);
    if (c.levels.empty()) {
        throw ValidationError("--levels is empty");
    }
    for (int l : c.levels) {
        check_level(l);
    }
    std::vector<DecoderKind> decoders;
    if (kind == ExperimentKind::Cnot) {
        decoders.push_back(parse_decoder_kind(c.ect_decoder));
    } else {
        for (const auto &d : c.decoders) {
            decoders.push_back(parse_decoder_kind(d));
        }
    }
    if (decoders.empty()) {
        throw ValidationError("--decoders is empty");
    }
    std::vector<double> grid = parse_rate_grid(c.rates, c.log_grid);
    RunOptions base = run_options(c);

    Sink sink(c.output, "sweep.csv", out);
    Sink summary(c.json_output, c.json_output.empty() ? "sweep.json" : "", out);
    std::ostream &log = sink.is_file() ? out : err;
    write_csv_header(sink.stream());

    std::vector<ExperimentResult> rows;
    for (size_t di = 0; di < decoders.size(); di++) {
        for (int level : c.levels) {
            for (size_t ri = 0; ri < grid.size(); ri++) {
                RunOptions o = base;
                uint64_t cell = (static_cast<uint64_t>(level) << 32) | (di << 16) | ri;
                o.seed = derive_seed(c.seed, 0x63656C6CULL, cell);
                ExperimentResult r = kind == ExperimentKind::BitFlip ? run_bitflip(level, decoders[di], grid[ri], o)
                                                                     : run_cnot(level, grid[ri], o);
                write_csv_row(sink.stream(), r);
                sink.stream().flush();
                log << summary_line(r) << "\n";
                rows.push_back(r);
            }
        }
    }

    if (summary.is_file()) {
        json j{{"command", "sweep"}, {"kind", c.kind}, {"seed", c.seed}, {"rates", grid}};
        j["rows"] = json::array();
        for (const auto &r : rows) {
            j["rows"].push_back(row_json(r));
        }
        j["fits"] = json::array();
        j["thresholds"] = json::array();
        std::vector<int> levels = c.levels;
        std::sort(levels.begin(), levels.end());
        for (DecoderKind d : decoders) {
            for (int l : levels) {
                j["fits"].push_back(fit_json(l, d, to_points(rows, l, d), c.window));
            }
            for (size_t i = 0; i + 1 < levels.size(); i++) {
                auto a = to_points(rows, levels[i], d), b = to_points(rows, levels[i + 1], d);
                ThresholdResult t;
                if (!a.empty() && !b.empty()) {
                    t = estimate_threshold(a, b, c.resamples, c.seed);
                }
                j["thresholds"].push_back(threshold_json(levels[i], levels[i + 1], d, t));
            }
        }
        summary.stream() << j.dump(2) << "\n";
    }
    return kOk;
}

int cmd_fit(const Config &c, std::istream &in, std::ostream &out) {
    auto rows = load_rows(c, in);
    Sink summary(c.json_output, "", out);
    json fits = json::array();
    int fitted = 0;
    for (auto [level, d] : groups(rows)) {
        if (c.fit_level > 0 && level != c.fit_level) {
            continue;
        }
        auto pts = to_points(rows, level, d);
        json j = fit_json(level, d, pts, c.window);
        fits.push_back(j);
        if (j.contains("error")) {
            out << "level=" << level << " decoder=" << decoder_name(d) << " error: " << j["error"].get<std::string>()
                << "\n";
            continue;
        }
        fitted++;
        out << "level=" << level << " decoder=" << decoder_name(d)
            << " exponent=" << fmt("%.4f", j["exponent"].get<double>())
            << " prefactor=" << fmt("%.4e", j["prefactor"].get<double>())
            << " points=" << j["points_used"].get<int>() << " residual=" << fmt("%.3e", j["residual"].get<double>())
            << "\n";
    }
    if (summary.is_file()) {
        summary.stream() << json{{"command", "fit"}, {"fits", fits}}.dump(2) << "\n";
    }
    if (fitted == 0) {
        throw ValidationError("no curve with at least two points to fit");
    }
    return kOk;
}

int cmd_threshold(const Config &c, std::istream &in, std::ostream &out) {
    auto rows = load_rows(c, in);
    std::vector<int> levels = c.levels;
    if (levels.size() != 2) {
        throw ValidationError("--levels needs exactly two levels");
    }
    DecoderKind d = parse_decoder_kind(c.decoder);
    auto a = to_points(rows, levels[0], d), b = to_points(rows, levels[1], d);
    if (a.empty() || b.empty()) {
        throw ValidationError("no usable points for one of the levels");
    }
    ThresholdResult t = estimate_threshold(a, b, c.resamples, c.seed);
    Sink summary(c.json_output, "", out);
    if (summary.is_file()) {
        summary.stream() << threshold_json(levels[0], levels[1], d, t).dump(2) << "\n";
    }
    if (!t.crossed) {
        out << "no crossing between level " << levels[0] << " and level " << levels[1] << "\n";
        return kNoCrossing;
    }
    out << "threshold=" << fmt("%.6g", t.threshold) << " stderr=" << fmt("%.3g", t.stderr_) << " ci=["
        << fmt("%.6g", t.ci_low) << "," << fmt("%.6g", t.ci_high) << "] resamples=" << t.resamples << "\n";
    return kOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err) {
    Config c;
    CLI::App app{"Many-hypercube code tools: code generation, decoding, circuits and Monte Carlo experiments", "mhc"};
    app.set_config("--config", "", "INI config file; [section] per command, flags override it");
    bool show_config = false;
    app.add_flag("--show-config", show_config, "Print the effective configuration with defaults and exit")
        ->configurable(false);
    app.require_subcommand(1);
    app.fallthrough();

    auto *codegen = app.add_subcommand("codegen", "Print code parameters, optionally the operators");
    codegen->add_option("-l,--level", c.level, "Concatenation level")->capture_default_str();
    codegen->add_flag("--operators", c.operators, "Also print stabilizers and logical operators");

    auto *decode = app.add_subcommand("decode", "Decode measurement bit strings read from stdin, one per line");
    decode->add_option("-l,--level", c.level, "Concatenation level")->capture_default_str();
    decode->add_option("-d,--decoder", c.decoder, "hard, soft or md")->capture_default_str();
    decode->add_option("--mode", c.mode, "correct or detect")->capture_default_str();
    add_seed(decode, c);
    add_decoder_knobs(decode, c);

    auto *emit = app.add_subcommand("emit-circuit", "Write a built circuit in text form");
    emit->add_option("--circuit", c.circuit, "zero-642, arbitrary-642, ft-zero, edx, edz, ect or cnot")
        ->capture_default_str();
    emit->add_option("-l,--level", c.level, "Concatenation level")->capture_default_str();
    emit->add_option("--rounds", c.rounds, "CNOT rounds (cnot circuit)")->capture_default_str();
    add_gadget_knobs(emit, c);
    add_output(emit, c, false);

    auto *bitflip = app.add_subcommand("sim-bitflip", "Bit-flip (code capacity) failure rate of one cell");
    bitflip->add_option("-l,--level", c.level, "Concatenation level")->capture_default_str();
    bitflip->add_option("-d,--decoder", c.decoder, "hard, soft or md")->capture_default_str();
    bitflip->add_option("-p,--rate", c.rate, "Bit-flip probability")->capture_default_str();
    add_seed(bitflip, c);
    add_trials(bitflip, c);
    add_decoder_knobs(bitflip, c);
    add_output(bitflip, c, false);

    auto *cnot = app.add_subcommand("sim-cnot", "Circuit-level logical CNOT failure rate of one cell");
    cnot->add_option("-l,--level", c.level, "Concatenation level")->capture_default_str();
    cnot->add_option("-p,--rate", c.rate, "Circuit error probability p_circ")->capture_default_str();
    cnot->add_option("--rounds", c.rounds, "CNOT rounds per trial")->capture_default_str();
    add_seed(cnot, c);
    add_trials(cnot, c);
    add_decoder_knobs(cnot, c);
    add_gadget_knobs(cnot, c);
    add_output(cnot, c, false);

    auto *sweep = app.add_subcommand("sweep", "Run a grid of cells and write CSV plus a JSON summary");
    sweep->add_option("--kind", c.kind, "bitflip or cnot")->capture_default_str();
    sweep->add_option("--levels", c.levels, "Levels, comma separated")->delimiter(',')->capture_default_str();
    sweep->add_option("--decoder,--decoders", c.decoders, "Decoders for bit-flip sweeps, comma separated")
        ->delimiter(',')
        ->default_str("md");
    sweep->add_option("--rates", c.rates, "Rate grid start:stop:count")->capture_default_str();
    sweep->add_flag("--log", c.log_grid, "Logarithmic grid spacing");
    sweep->add_option("--rounds", c.rounds, "CNOT rounds per trial")->capture_default_str();
    sweep->add_option("--window", c.window, "Points per exponent fit")->capture_default_str();
    sweep->add_option("--resamples", c.resamples, "Bootstrap resamples for thresholds")->capture_default_str();
    add_seed(sweep, c);
    add_trials(sweep, c);
    add_decoder_knobs(sweep, c);
    add_gadget_knobs(sweep, c);
    add_output(sweep, c, true);

    auto *fit = app.add_subcommand("fit", "Fit power-law exponents to sweep CSV");
    fit->add_option("-i,--input", c.input, "CSV file, - for stdin")->capture_default_str();
    fit->add_option("--kind", c.kind, "bitflip or cnot (cnot fits p_CNOT)")->capture_default_str();
    fit->add_option("-l,--level", c.fit_level, "Only this level (0: all)")->capture_default_str();
    fit->add_option("--window", c.window, "Lowest-rate points used")->capture_default_str();
    fit->add_option("--rounds", c.rounds, "CNOT rounds used for conversion")->capture_default_str();
    fit->add_option("--json", c.json_output, "JSON output file");

    auto *threshold = app.add_subcommand("threshold", "Crossing of two level curves in sweep CSV");
    threshold->add_option("-i,--input", c.input, "CSV file, - for stdin")->capture_default_str();
    threshold->add_option("--kind", c.kind, "bitflip or cnot")->capture_default_str();
    threshold->add_option("--levels", c.levels, "Two levels, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    threshold->add_option("-d,--decoder", c.decoder, "Decoder column to use")->capture_default_str();
    threshold->add_option("--resamples", c.resamples, "Bootstrap resamples")->capture_default_str();
    threshold->add_option("--rounds", c.rounds, "CNOT rounds used for conversion")->capture_default_str();
    add_seed(threshold, c);
    threshold->add_option("--json", c.json_output, "JSON output file");

    // The subcommand requirement would reject a bare --show-config.
    bool wants_show = std::find(args.begin(), args.end(), "--show-config") != args.end();
    if (wants_show) {
        app.require_subcommand(0, 1);
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }

    if (show_config) {
        out << app.config_to_str(true, true);
        return kOk;
    }

    try {
        if (*codegen) {
            return cmd_codegen(c, out);
        }
        if (*decode) {
            return cmd_decode(c, in, out);
        }
        if (*emit) {
            return cmd_emit(c, out);
        }
        if (*bitflip) {
            return cmd_sim(c, ExperimentKind::BitFlip, out, err);
        }
        if (*cnot) {
            return cmd_sim(c, ExperimentKind::Cnot, out, err);
        }
        if (*sweep) {
            return cmd_sweep(c, out, err);
        }
        if (*fit) {
            return cmd_fit(c, in, out);
        }
        if (*threshold) {
            return cmd_threshold(c, in, out);
        }
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception &e) {
        err << "runtime error: " << e.what() << "\n";
        return kRuntime;
    }
    return kValidation;
}

}  // namespace mhc::cli
