#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "wzp/classify.hpp"
#include "wzp/events.hpp"
#include "wzp/ingest.hpp"
#include "wzp/smoothing.hpp"

namespace wzp {

struct AppConfig {
    std::vector<std::string> inputs;
    std::filesystem::path output_dir = ".";
    std::filesystem::path masks_dir;  // empty: bundled mask set
    std::string classifier_kind = "probe";
    double probe_confidence = 0.95;
    std::filesystem::path scripted_rows_path;
    std::string model_command;  // for the ipc classifier
    IngestConfig ingest;
    ClassCatalog catalog;
    SmoothingConfig smoothing{15, WeightProfile::Triangular};
    int min_event_len = 1;
    int processors = 2;
    std::filesystem::path summary_path;
    int max_inflight_batches = 4;  // bound on every inter-stage buffer
    bool strict_timestamps = false;

    void validate() const;  // throws ParameterError (CLI maps it to exit 64)
};

std::unique_ptr<Classifier> make_classifier(const AppConfig& config);
DigitMaskSet load_masks(const AppConfig& config);

struct VideoReport {
    std::string video_id;
    bool ok = false;
    std::string error;
    int frame_count = 0;
    double wall_seconds = 0.0;
    double fps = 0.0;
    std::vector<Event> events;
    TimestampResult timestamps;
    bool ocr_fallback_used = false;
    int synthesized_count = 0;
    std::size_t frame_buffer_high_water = 0;
    std::size_t batch_buffer_high_water = 0;
    std::filesystem::path csv_path;
};

// Runs the full per-video pipeline: decode -> strip extraction + preprocess
// -> batch -> classify (concurrent stages over bounded channels), then batch
// timestamp OCR with the per-frame fallback on QC failure, smoothing, argmax
// labels, event extraction and the CSV export. Per-frame results are keyed by
// frame index, so the output does not depend on internal scheduling.
VideoReport process_video(const std::string& video_path, const AppConfig& config,
                          Classifier& classifier, const DigitMaskSet& masks);

struct RunSummary {
    std::vector<VideoReport> reports;  // in input order
    long long total_frames = 0;
    double wall_seconds = 0.0;
    double aggregate_fps = 0.0;
    int succeeded = 0;
    int failed = 0;

    std::string to_json() const;
};

// Exit status values of run_app (and the CLI).
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitTotalFailure = 1;
inline constexpr int kExitPartialFailure = 2;
inline constexpr int kExitUsage = 64;

// Schedules the input videos across `processors` concurrent workers, writes
// one events CSV per successful video plus the optional run summary. Returns
// 0 when every video succeeded, 2 on partial failure, 1 when all failed.
int run_app(const AppConfig& config, RunSummary* summary_out = nullptr);

std::string video_id_from_path(const std::string& path);

}  // namespace wzp
