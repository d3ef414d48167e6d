// Acceptance suite: one self-contained check per shipping criterion, each
// printing a single PASS/FAIL line. Exit status is nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <vector>

#include "test_util.hpp"
#include "wzp/active_learning.hpp"
#include "wzp/events.hpp"
#include "wzp/io_util.hpp"
#include "wzp/metrics.hpp"
#include "wzp/pipeline.hpp"
#include "wzp/smoothing.hpp"
#include "wzp/synthgen.hpp"
#include "wzp/timestamp_ocr.hpp"

using namespace wzp;

namespace {

struct Failure {
    std::string detail;
};

void require(bool ok, const std::string& detail) {
    if (!ok) throw Failure{detail};
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const DigitMaskSet& masks() {
    static const DigitMaskSet set = DigitMaskSet::builtin();
    return set;
}

// ---- criterion 1: OCR exactness at scale ---------------------------------

std::string criterion_ocr_exactness() {
    const int l = 100000;
    const std::int64_t start = 1, period = 66;
    std::vector<std::int64_t> values(static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i) values[static_cast<std::size_t>(i)] = start + period * i;
    const TimestampBatch batch = render_timestamp_batch(values, 7, masks());

    const auto t0 = std::chrono::steady_clock::now();
    const TimestampResult result = convert_timestamps(batch, masks());
    const double elapsed = seconds_since(t0);

    bool crossed_boundary = false;
    for (int i = 0; i < l; ++i) {
        const std::string expected = std::to_string(values[static_cast<std::size_t>(i)]);
        if (result.values[static_cast<std::size_t>(i)] != expected) {
            throw Failure{"mismatch at frame " + std::to_string(i) + ": got " +
                          result.values[static_cast<std::size_t>(i)] + ", want " + expected};
        }
        if (expected.size() == 7 && i > 0 &&
            std::to_string(values[static_cast<std::size_t>(i - 1)]).size() == 6) {
            crossed_boundary = true;
        }
    }
    require(crossed_boundary, "sequence never crossed the 6-to-7 digit boundary");
    require(result.synthesized_count() == 0, "batch path must not synthesize");
    require(elapsed < 10.0, "conversion took " + std::to_string(elapsed) + " s (limit 10)");

    std::ostringstream note;
    note << "100000/100000 exact, " << std::fixed << std::setprecision(2) << elapsed << " s";
    return note.str();
}

// ---- criterion 2: per-frame fallback equivalence on clean input -----------

std::string criterion_oracle_equivalence() {
    std::mt19937 rng(1002);
    double batch_total = 0.0, per_frame_total = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int l = 5 + static_cast<int>(rng() % 46);
        std::vector<std::int64_t> values(static_cast<std::size_t>(l));
        std::int64_t t = rng() % 1000000;
        const std::int64_t period = 1 + rng() % 200;
        for (auto& v : values) {
            v = t;
            t += period;
        }
        const TimestampBatch strips = render_timestamp_batch(values, 7, masks());

        auto t0 = std::chrono::steady_clock::now();
        const TimestampResult batch = convert_timestamps(strips, masks());
        batch_total += seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        const TimestampResult per_frame = convert_timestamps_per_frame(strips, masks());
        per_frame_total += seconds_since(t0);

        require(batch.values == per_frame.values,
                "value mismatch on trial " + std::to_string(trial));
        require(per_frame.synthesized_count() == 0, "clean input must not synthesize");
    }
    require(per_frame_total > batch_total,
            "per-frame fallback was not slower (batch " + std::to_string(batch_total) +
                " s, per-frame " + std::to_string(per_frame_total) + " s)");

    std::ostringstream note;
    note << "1000 specs equal; batch " << std::fixed << std::setprecision(3) << batch_total
         << " s vs per-frame " << per_frame_total << " s ("
         << std::setprecision(2) << per_frame_total / batch_total << "x)";
    return note.str();
}

// ---- criterion 3: QC fault injection and synthesis accuracy ---------------

std::string criterion_qc_fault_injection() {
    std::mt19937 rng(1003);
    int blank_trials = 0, digit_trials = 0;
    double worst_error = 0.0;
    for (int trial = 0; trial < 60; ++trial) {
        SyntheticVideoSpec spec;
        spec.frame_count = 8 + static_cast<int>(rng() % 20);
        spec.width = 160;
        spec.height = 120;
        spec.start_timestamp = 100000 + rng() % 100000;  // constant 6-digit width
        spec.period = 1 + rng() % 100;

        const bool blank = trial % 2 == 0;
        // Interior frame, and for digit corruption a non-final slot, so the
        // per-frame path sees a structural hole.
        const int victim = 1 + static_cast<int>(rng() % (spec.frame_count - 2));
        spec.corruptions = {blank
                                ? CorruptionEntry{victim, CorruptionKind::BlankTimestamp, 0}
                                : CorruptionEntry{victim, CorruptionKind::CorruptDigit,
                                                  static_cast<int>(rng() % 3)}};

        const std::vector<Image> frames = generate_frames(spec, masks());
        std::vector<Image> strips;
        for (const Image& f : frames) {
            Frame wrapped;
            wrapped.pixels = f;
            strips.push_back(extract_timestamp_strip(wrapped, spec.timestamp_rect));
        }
        const TimestampBatch ts = TimestampBatch::from_images(strips);

        bool raised_expected = false;
        try {
            convert_timestamps(ts, masks());
        } catch (const TimestampDetectionCountError&) {
            raised_expected = blank;
        } catch (const NonDecreasingTimestampLenError&) {
            raised_expected = !blank;
        }
        require(raised_expected, std::string("expected ") +
                                     (blank ? "TimestampDetectionCountError" :
                                              "NonDecreasingTimestampLenError") +
                                     " on trial " + std::to_string(trial));
        (blank ? blank_trials : digit_trials)++;

        const TimestampResult fallback = convert_timestamps_per_frame(ts, masks());
        const GroundTruth truth = ground_truth_of(spec);
        require(fallback.synthesized_flags[static_cast<std::size_t>(victim)] == 1,
                "victim frame not flagged");
        const double tolerance = std::max<double>(1.0, static_cast<double>(spec.period) / 2.0);
        const double error =
            std::abs(static_cast<double>(std::stoll(fallback.values[static_cast<std::size_t>(victim)]) -
                                         truth.timestamps[static_cast<std::size_t>(victim)]));
        worst_error = std::max(worst_error, error);
        require(error <= tolerance, "synthesized value off by " + std::to_string(error) +
                                        " (tolerance " + std::to_string(tolerance) + ")");
    }

    std::ostringstream note;
    note << blank_trials << " blank + " << digit_trials
         << " digit corruptions raised the right QC error; worst synthesis error " << worst_error;
    return note.str();
}

// ---- criterion 4: metric reproduction and F-beta monotonicity -------------

std::string criterion_metrics() {
    const MetricsReport r = compute_report({.tp = 0, .fp = 0, .tn = 950, .fn = 50});
    require(std::abs(r.accuracy - 0.95) <= 1e-12, "accuracy != 0.95");
    require(r.recall == 0.0, "recall != 0");
    require(r.f0_5 == 0.0, "f0.5 != 0");
    require(r.degenerate.f0_5, "f0.5 not flagged degenerate");

    std::mt19937 rng(1004);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 10000; ++trial) {
        const double p = uni(rng), rec = uni(rng);
        const double f05 = compute_fbeta(p, rec, 0.5);
        const double f1 = compute_fbeta(p, rec, 1.0);
        const double f2 = compute_fbeta(p, rec, 2.0);
        if (p > rec && rec > 0.0) {
            require(f05 > f1 && f1 > f2, "monotonicity violated for P > R");
        } else if (rec > p && p > 0.0) {
            require(f05 < f1 && f1 < f2, "monotonicity violated for P < R");
        }
    }
    return "pathological 95%-accuracy case reproduced; F-beta order held on 10000 pairs";
}

// ---- criterion 5: smoothing relabels low-confidence frames ----------------

std::string criterion_smoothing() {
    for (int r = 1; r <= 3; ++r) {
        for (const WeightProfile profile : {WeightProfile::Uniform, WeightProfile::Triangular}) {
            ProbabilityMatrix rows(static_cast<std::size_t>(2 * r + 3), 2);
            for (std::size_t i = 0; i < rows.rows(); ++i) {
                rows.row(i)[0] = 0.05;
                rows.row(i)[1] = 0.95;
            }
            const std::size_t center = rows.rows() / 2;
            rows.row(center)[0] = 0.5;
            rows.row(center)[1] = 0.5;

            const ProbabilityMatrix smoothed = smooth_probabilities(rows, {r, profile});
            smoothed.validate_simplex(1e-9);
            const std::vector<int> labels = labels_from_probabilities(smoothed);
            require(labels[center] == 1,
                    "center frame not relabeled at r=" + std::to_string(r) +
                        (profile == WeightProfile::Uniform ? " uniform" : " triangular"));
        }
    }
    return "isolated uniform frame relabeled for r in {1,2,3}, both weight profiles";
}

// ---- helpers for the end-to-end criteria ----------------------------------

AppConfig pipeline_config(const std::filesystem::path& out_dir) {
    AppConfig config;
    config.output_dir = out_dir;
    config.ingest.frame_width = 160;
    config.ingest.frame_height = 120;
    config.ingest.input_width = 80;
    config.ingest.input_height = 60;
    config.ingest.batch_size = 64;
    config.ingest.decoder_command = test::tool_path("wzp-synthgen") + " --spec {input} --out -";
    config.smoothing = {0, WeightProfile::Uniform};
    config.processors = 2;
    return config;
}

SyntheticVideoSpec long_spec(std::mt19937& rng, int frames) {
    SyntheticVideoSpec spec;
    spec.frame_count = frames;
    spec.width = 160;
    spec.height = 120;
    spec.start_timestamp = 1 + rng() % 1000000;
    spec.period = 30 + rng() % 50;
    int cursor = 40 + static_cast<int>(rng() % 60);
    while (cursor + 80 < frames - 40) {
        const int len = 40 + static_cast<int>(rng() % 120);
        const int end = std::min(cursor + len, frames - 41);
        spec.events.push_back({1, cursor, end});
        cursor = end + 40 + static_cast<int>(rng() % 80);
    }
    return spec;
}

std::string write_spec(const std::filesystem::path& dir, const std::string& name,
                       const SyntheticVideoSpec& spec) {
    const auto path = dir / (name + ".json");
    atomic_write_file(path, spec.to_json());
    return path.string();
}

// ---- criterion 6: end-to-end event recovery -------------------------------

std::string criterion_event_recovery() {
    std::mt19937 rng(1006);
    test::TempDir dir;

    std::vector<SyntheticVideoSpec> specs;
    std::vector<std::string> spec_files;
    int total_events = 0;
    for (int v = 0; v < 10; ++v) {
        const SyntheticVideoSpec spec = long_spec(rng, 1500 + static_cast<int>(rng() % 300));
        specs.push_back(spec);
        spec_files.push_back(write_spec(dir.path, "video" + std::to_string(v), spec));
        total_events += static_cast<int>(spec.events.size());
    }
    require(total_events >= 10, "fixture generated too few events");

    for (const int radius : {0, 3}) {
        AppConfig config = pipeline_config(dir / ("out_r" + std::to_string(radius)));
        config.inputs = spec_files;
        config.smoothing = {radius, WeightProfile::Triangular};
        RunSummary summary;
        const int code = run_app(config, &summary);
        require(code == kExitSuccess, "run_app exit " + std::to_string(code) +
                                          " at radius " + std::to_string(radius));

        for (int v = 0; v < 10; ++v) {
            const SyntheticVideoSpec& spec = specs[static_cast<std::size_t>(v)];
            const GroundTruth truth = ground_truth_of(spec);
            const ParsedEventsCsv parsed = parse_events_csv(
                config.output_dir / ("video" + std::to_string(v) + "_events.csv"));
            require(parsed.events.size() == spec.events.size(),
                    "video " + std::to_string(v) + ": " + std::to_string(parsed.events.size()) +
                        " events, planned " + std::to_string(spec.events.size()));
            for (std::size_t e = 0; e < parsed.events.size(); ++e) {
                const Event& got = parsed.events[e];
                const EventPlanEntry& plan = spec.events[e];
                if (radius == 0) {
                    require(got.start_frame == plan.start_frame && got.end_frame == plan.end_frame,
                            "exact bounds violated at r=0");
                } else {
                    require(std::abs(got.start_frame - plan.start_frame) <= radius &&
                                std::abs(got.end_frame - plan.end_frame) <= radius,
                            "bounds drifted more than r frames at r=" + std::to_string(radius));
                }
                require(got.start_timestamp ==
                                std::to_string(
                                    truth.timestamps[static_cast<std::size_t>(got.start_frame)]) &&
                            got.end_timestamp ==
                                std::to_string(
                                    truth.timestamps[static_cast<std::size_t>(got.end_frame)]),
                        "timestamp bounds do not match ground truth");
            }
        }
    }

    std::ostringstream note;
    note << "10 videos, " << total_events << " planned events recovered exactly at r=0 and within "
         << "r frames at r=3";
    return note.str();
}

// ---- criterion 7: concurrency determinism and bounded buffers -------------

std::string criterion_concurrency_determinism() {
    std::mt19937 rng(1007);
    test::TempDir dir;

    std::vector<std::string> spec_files;
    for (int v = 0; v < 4; ++v) {
        SyntheticVideoSpec spec = long_spec(rng, 300);
        spec.ambiguous_frames.insert(150 + v);
        spec_files.push_back(write_spec(dir.path, "det" + std::to_string(v), spec));
    }

    std::vector<std::string> reference;
    int runs = 0;
    for (const int processors : {1, 2, 4}) {
        for (const int batch : {1, 16, 64}) {
            test::TempDir out;
            AppConfig config = pipeline_config(out.path);
            config.inputs = spec_files;
            config.processors = processors;
            config.ingest.batch_size = batch;
            config.smoothing = {4, WeightProfile::Triangular};
            config.max_inflight_batches = 3;

            RunSummary summary;
            require(run_app(config, &summary) == kExitSuccess, "pipeline run failed");
            for (const VideoReport& r : summary.reports) {
                require(r.frame_count == 300, "frame count drifted");
                require(r.frame_buffer_high_water <= static_cast<std::size_t>(3 * batch),
                        "frame buffer exceeded its bound");
                require(r.batch_buffer_high_water <= 3, "batch buffer exceeded its bound");
            }

            std::vector<std::string> bytes;
            for (int v = 0; v < 4; ++v) {
                bytes.push_back(
                    read_file(out.path / ("det" + std::to_string(v) + "_events.csv")));
            }
            if (reference.empty()) {
                reference = bytes;
            } else {
                require(bytes == reference,
                        "CSV bytes differ at processors=" + std::to_string(processors) +
                            " batch=" + std::to_string(batch));
            }
            ++runs;
        }
    }
    return std::to_string(runs) + " runs byte-identical across processors {1,2,4} x batch "
           "{1,16,64}; buffers stayed within bounds";
}

// ---- criterion 8: active-learning loop ------------------------------------

std::string criterion_active_learning() {
    // Separable 1-D toy set with a perfect oracle.
    std::vector<double> positions;
    std::vector<int> truth;
    for (int i = 0; i < 2000; ++i) {
        const double x = static_cast<double>(i) / 1999.0;
        if (x > 0.58 && x < 0.62) continue;
        positions.push_back(x);
        truth.push_back(x >= 0.62 ? 1 : 0);
    }

    class PerfectOracle : public LabelOracle {
    public:
        PerfectOracle(const std::vector<int>& t) : truth_(t) {}
        std::optional<int> label_of(int id) override {
            return truth_[static_cast<std::size_t>(id)];
        }

    private:
        const std::vector<int>& truth_;
    } oracle(truth);

    ThresholdTrainer trainer(positions);
    RoundState state;
    std::vector<int> seed_labels;
    for (int id = 0; id < static_cast<int>(positions.size()); id += 100) {
        state.labeled.push_back(id);
        seed_labels.push_back(truth[static_cast<std::size_t>(id)]);
    }
    trainer.train(state.labeled, seed_labels);
    for (int id = 0; id < static_cast<int>(positions.size()); ++id) {
        if (id % 100 != 0) state.unlabeled.push_back(id);
    }

    std::vector<std::size_t> uncertain;
    for (int round = 0; round < 5; ++round) {
        state = run_active_learning_round(state, trainer, oracle,
                                          {.budget = 600, .convergence_threshold = 0.9});
        uncertain.push_back(state.history.back().uncertain_count);
    }
    for (std::size_t i = 1; i < uncertain.size(); ++i) {
        require(uncertain[i] <= uncertain[i - 1],
                "uncertain count increased at round " + std::to_string(i));
    }
    require(uncertain.back() == 0, "uncertain count never reached 0");

    // Partition and budget-monotonicity properties on random inputs.
    std::mt19937 rng(1008);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> probs(1 + rng() % 400);
        for (auto& v : probs) v = uni(rng);
        const ConfidenceBins bins = bin_confidences(probs);
        require(bins.total() == probs.size(), "binning dropped or duplicated samples");
        std::size_t sum = 0;
        for (const auto c : bins.counts()) sum += c;
        require(sum == probs.size(), "bin counts do not sum to the sample count");

        const std::size_t b1 = rng() % 300, b2 = b1 + rng() % 150;
        const std::vector<int> s1 = select_for_labeling(bins, b1);
        const std::vector<int> s2 = select_for_labeling(bins, b2);
        std::set<int> wide(s2.begin(), s2.end());
        for (int id : s1) require(wide.contains(id), "selection not monotone in budget");
    }

    std::ostringstream note;
    note << "uncertain counts per round:";
    for (std::size_t c : uncertain) note << " " << c;
    note << "; partition and monotonicity held on 200 random inputs";
    return note.str();
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<std::string()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "OCR exactness on 100k timestamps", criterion_ocr_exactness},
        {2, "batch/per-frame oracle equivalence", criterion_oracle_equivalence},
        {3, "QC fault injection and synthesis", criterion_qc_fault_injection},
        {4, "metric reproduction and F-beta order", criterion_metrics},
        {5, "smoothing relabels uncertain frames", criterion_smoothing},
        {6, "end-to-end event recovery", criterion_event_recovery},
        {7, "concurrency determinism, bounded buffers", criterion_concurrency_determinism},
        {8, "active-learning loop convergence", criterion_active_learning},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        try {
            const std::string note = c.run();
            std::printf("PASS  criterion %d (%s): %s\n", c.id, c.name, note.c_str());
        } catch (const Failure& f) {
            std::printf("FAIL  criterion %d (%s): %s\n", c.id, c.name, f.detail.c_str());
            ++failures;
        } catch (const std::exception& e) {
            std::printf("FAIL  criterion %d (%s): unexpected error: %s\n", c.id, c.name, e.what());
            ++failures;
        }
        std::fflush(stdout);
    }
    if (failures > 0) {
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
