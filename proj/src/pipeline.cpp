#include "wzp/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <thread>

#include <nlohmann/json.hpp>

#include "wzp/channel.hpp"
#include "wzp/io_util.hpp"

namespace wzp {

void AppConfig::validate() const {
    if (inputs.empty()) throw ParameterError("at least one input video is required");
    if (processors < 1) throw ParameterError("processor count must be at least 1");
    if (min_event_len < 1) throw ParameterError("minimum event length must be at least 1");
    if (max_inflight_batches < 1) throw ParameterError("buffer bound must be at least 1");
    if (classifier_kind != "probe" && classifier_kind != "scripted" && classifier_kind != "ipc") {
        throw ParameterError("classifier must be one of probe, scripted, ipc");
    }
    if (classifier_kind == "scripted" && scripted_rows_path.empty()) {
        throw ParameterError("the scripted classifier needs a rows file");
    }
    if (classifier_kind == "ipc" && model_command.empty()) {
        throw ParameterError("the ipc classifier needs a model runner command");
    }
    if (smoothing.radius < 0) throw ParameterError("smoothing radius must be non-negative");
    catalog.validate();
    ingest.validate();
}

std::unique_ptr<Classifier> make_classifier(const AppConfig& config) {
    if (config.classifier_kind == "probe") {
        return std::make_unique<ProbeClassifier>(config.catalog, config.probe_confidence);
    }
    if (config.classifier_kind == "scripted") {
        return std::make_unique<ScriptedClassifier>(
            ScriptedClassifier::from_csv(config.scripted_rows_path, config.catalog.size()));
    }
    return std::make_unique<IpcClassifier>(config.model_command, config.catalog.size());
}

DigitMaskSet load_masks(const AppConfig& config) {
    return config.masks_dir.empty() ? DigitMaskSet::builtin() : DigitMaskSet::load(config.masks_dir);
}

std::string video_id_from_path(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

VideoReport process_video(const std::string& video_path, const AppConfig& config,
                          Classifier& classifier, const DigitMaskSet& masks) {
    VideoReport report;
    report.video_id = video_id_from_path(video_path);
    const auto start_time = std::chrono::steady_clock::now();

    const int batch_size = config.ingest.batch_size;
    BoundedChannel<Frame> frame_channel(
        static_cast<std::size_t>(config.max_inflight_batches) * batch_size);
    BoundedChannel<FrameBatch> batch_channel(static_cast<std::size_t>(config.max_inflight_batches));

    std::exception_ptr reader_error;
    std::exception_ptr preprocess_error;

    // Stage 1: decoder subprocess -> raw frames.
    std::thread reader([&] {
        try {
            FrameStream stream(video_path, config.ingest, report.video_id);
            while (std::optional<Frame> frame = stream.next()) {
                if (!frame_channel.push(std::move(*frame))) break;
            }
        } catch (...) {
            reader_error = std::current_exception();
        }
        frame_channel.close();
    });

    // Stage 2: strip extraction (from the raw frame), crop + rescale, batch.
    ImageStack strips;
    std::thread preprocessor([&] {
        try {
            Batcher batcher(batch_size);
            int expected = 0;
            while (std::optional<Frame> frame = frame_channel.pop()) {
                if (frame->index != expected++) {
                    throw PipelineError("frame order violated in preprocess stage");
                }
                const Image strip = extract_timestamp_strip(*frame, config.ingest.timestamp_rect);
                if (strips.count == 0) {
                    strips = ImageStack(0, strip.height, strip.width, strip.channels);
                }
                strips.data.insert(strips.data.end(), strip.data.begin(), strip.data.end());
                strips.count += 1;

                Frame prepped = preprocess_frame(*frame, config.ingest);
                frame->pixels = Image();  // raw pixels are no longer needed
                if (std::optional<FrameBatch> full = batcher.push(std::move(prepped))) {
                    if (!batch_channel.push(std::move(*full))) return;
                }
            }
            if (std::optional<FrameBatch> tail = batcher.finish()) {
                batch_channel.push(std::move(*tail));
            }
        } catch (...) {
            preprocess_error = std::current_exception();
        }
        batch_channel.close();
    });

    // Stage 3 (this thread): classification, rows keyed by frame order.
    ProbabilityMatrix probabilities;
    std::exception_ptr classify_error;
    try {
        while (std::optional<FrameBatch> batch = batch_channel.pop()) {
            if (batch->first_index() != static_cast<int>(probabilities.rows())) {
                throw PipelineError("batch order violated in classify stage");
            }
            probabilities.append_rows(classify_batch(classifier, *batch));
        }
    } catch (...) {
        classify_error = std::current_exception();
    }
    // Whatever ended the classify loop, unblock the upstream stages: a stage
    // that died leaves its producer stuck on a full channel otherwise.
    frame_channel.close();
    batch_channel.close();

    preprocessor.join();
    reader.join();

    report.frame_buffer_high_water = frame_channel.high_water();
    report.batch_buffer_high_water = batch_channel.high_water();

    const auto finish = [&](bool ok, const std::string& error) {
        report.ok = ok;
        report.error = error;
        report.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
        report.fps = report.wall_seconds > 0.0 ? report.frame_count / report.wall_seconds : 0.0;
        return report;
    };

    try {
        if (reader_error) std::rethrow_exception(reader_error);
        if (preprocess_error) std::rethrow_exception(preprocess_error);
        if (classify_error) std::rethrow_exception(classify_error);

        report.frame_count = strips.count;
        if (report.frame_count == 0) {
            throw PipelineError("video stream produced no frames");
        }

        // Timestamp OCR: batch algorithm first; either QC error engages the
        // per-frame fallback, which synthesizes the unreadable values.
        const TimestampBatch ts_batch = TimestampBatch::from_stack(std::move(strips));
        try {
            report.timestamps = convert_timestamps(ts_batch, masks,
                                                   ConvertOptions{config.strict_timestamps});
        } catch (const TimestampDetectionCountError&) {
            report.ocr_fallback_used = true;
        } catch (const NonDecreasingTimestampLenError&) {
            report.ocr_fallback_used = true;
        }
        if (report.ocr_fallback_used) {
            report.timestamps = convert_timestamps_per_frame(ts_batch, masks);
            report.synthesized_count = report.timestamps.synthesized_count();
        }

        const ProbabilityMatrix smoothed = smooth_probabilities(probabilities, config.smoothing);
        const std::vector<int> labels = labels_from_probabilities(smoothed);
        report.events = extract_events(labels, smoothed, report.timestamps, config.catalog,
                                       config.min_event_len);

        std::filesystem::create_directories(config.output_dir);
        report.csv_path = config.output_dir / (report.video_id + "_events.csv");
        write_events_csv(report.events, report.video_id, report.csv_path);
    } catch (const std::exception& e) {
        return finish(false, e.what());
    }
    return finish(true, {});
}

std::string RunSummary::to_json() const {
    nlohmann::json j;
    j["total_videos"] = reports.size();
    j["succeeded"] = succeeded;
    j["failed"] = failed;
    j["total_frames"] = total_frames;
    j["wall_seconds"] = wall_seconds;
    j["aggregate_fps"] = aggregate_fps;
    j["videos"] = nlohmann::json::array();
    for (const VideoReport& r : reports) {
        nlohmann::json v;
        v["video_id"] = r.video_id;
        v["ok"] = r.ok;
        if (!r.ok) v["error"] = r.error;
        v["frames"] = r.frame_count;
        v["fps"] = r.fps;
        v["events"] = r.events.size();
        v["ocr_fallback_used"] = r.ocr_fallback_used;
        v["synthesized_timestamps"] = r.synthesized_count;
        if (r.ok) v["csv"] = r.csv_path.string();
        j["videos"].push_back(std::move(v));
    }
    return j.dump(2);
}

int run_app(const AppConfig& config, RunSummary* summary_out) {
    config.validate();
    const DigitMaskSet masks = load_masks(config);

    RunSummary summary;
    summary.reports.resize(config.inputs.size());
    const auto start_time = std::chrono::steady_clock::now();

    // Each worker owns one classifier instance and processes whole videos.
    std::atomic<std::size_t> next_input{0};
    const int workers = std::min<int>(config.processors, static_cast<int>(config.inputs.size()));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            std::unique_ptr<Classifier> classifier = make_classifier(config);
            while (true) {
                const std::size_t i = next_input.fetch_add(1);
                if (i >= config.inputs.size()) break;
                try {
                    summary.reports[i] = process_video(config.inputs[i], config, *classifier, masks);
                } catch (const std::exception& e) {
                    VideoReport failed;
                    failed.video_id = video_id_from_path(config.inputs[i]);
                    failed.error = e.what();
                    summary.reports[i] = std::move(failed);
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();

    summary.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
    for (const VideoReport& r : summary.reports) {
        if (r.ok) {
            ++summary.succeeded;
            summary.total_frames += r.frame_count;
        } else {
            ++summary.failed;
        }
    }
    summary.aggregate_fps =
        summary.wall_seconds > 0.0 ? summary.total_frames / summary.wall_seconds : 0.0;

    if (!config.summary_path.empty()) {
        atomic_write_file(config.summary_path, summary.to_json());
    }

    const int exit_code = summary.failed == 0 ? kExitSuccess
                          : summary.succeeded == 0 ? kExitTotalFailure
                                                   : kExitPartialFailure;
    if (summary_out) *summary_out = std::move(summary);
    return exit_code;
}

}  // namespace wzp
