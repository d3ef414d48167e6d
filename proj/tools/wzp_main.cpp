#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wzp/pipeline.hpp"

namespace {

wzp::Rect parse_rect(const std::string& text) {
    wzp::Rect r;
    char comma;
    std::istringstream in(text);
    if (!(in >> r.x >> comma >> r.y >> comma >> r.w >> comma >> r.h) || !in.eof()) {
        throw wzp::ParameterError("expected x,y,w,h but got '" + text + "'");
    }
    return r;
}

std::pair<int, int> parse_size(const std::string& text) {
    int w = 0, h = 0;
    char x;
    std::istringstream in(text);
    if (!(in >> w >> x >> h) || x != 'x' || !in.eof()) {
        throw wzp::ParameterError("expected WxH but got '" + text + "'");
    }
    return {w, h};
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> names;
    std::stringstream ss(text);
    std::string name;
    while (std::getline(ss, name, ',')) names.push_back(name);
    return names;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Batch video scene-event extractor: decodes videos, reads burned-in "
                 "timestamps, classifies frames, smooths the probabilities and exports "
                 "time-bounded scene events as CSV."};

    wzp::AppConfig config;
    std::string tsrect, croprect, framesize, classnames, targetclass, weights;
    std::string inputsize;

    app.add_option("--inputpath", config.inputs, "Input video path (repeatable)")
        ->envname("WZP_INPUTPATH");
    app.add_option("--outputpath", config.output_dir, "Directory for the event CSV files")
        ->envname("WZP_OUTPUTPATH");
    app.add_option("--masksdir", config.masks_dir,
                   "Directory holding 0.pgm..9.pgm digit masks (default: bundled set)")
        ->envname("WZP_MASKSDIR");
    app.add_option("--classifier", config.classifier_kind, "probe | scripted | ipc")
        ->envname("WZP_CLASSIFIER");
    app.add_option("--batchsize", config.ingest.batch_size, "Frames per inference batch")
        ->envname("WZP_BATCHSIZE");
    app.add_option("--processors", config.processors, "Concurrent video processors")
        ->envname("WZP_PROCESSORS");
    app.add_option("--smoothradius", config.smoothing.radius, "Probability smoothing radius")
        ->envname("WZP_SMOOTHRADIUS");
    app.add_option("--weights", weights, "Smoothing weight profile: uniform | triangular")
        ->envname("WZP_WEIGHTS");
    app.add_option("--mineventlen", config.min_event_len, "Minimum event length in frames")
        ->envname("WZP_MINEVENTLEN");
    app.add_option("--tsrect", tsrect, "Timestamp rectangle x,y,w,h")->envname("WZP_TSRECT");
    app.add_option("--croprect", croprect, "Crop rectangle x,y,w,h (default: full frame)")
        ->envname("WZP_CROPRECT");
    app.add_option("--framesize", framesize, "Decoded frame size WxH")->envname("WZP_FRAMESIZE");
    app.add_option("--inputsize", inputsize, "Classifier input size WxH")
        ->envname("WZP_INPUTSIZE");
    app.add_option("--decodercmd", config.ingest.decoder_command,
                   "Decoder command template with {input} {width} {height} {pixfmt} slots")
        ->envname("WZP_DECODERCMD");
    app.add_option("--classnames", classnames, "Comma-separated class names")
        ->envname("WZP_CLASSNAMES");
    app.add_option("--targetclass", targetclass, "Name of the event class of interest")
        ->envname("WZP_TARGETCLASS");
    app.add_option("--summary", config.summary_path, "Write a JSON run summary here")
        ->envname("WZP_SUMMARY");
    app.add_option("--probeconfidence", config.probe_confidence,
                   "Confidence emitted by the probe classifier")
        ->envname("WZP_PROBECONFIDENCE");
    app.add_option("--scriptedrows", config.scripted_rows_path,
                   "CSV of per-frame probability rows for the scripted classifier")
        ->envname("WZP_SCRIPTEDROWS");
    app.add_option("--modelcmd", config.model_command,
                   "Model runner command template for the ipc classifier ({k} slot)")
        ->envname("WZP_MODELCMD");
    app.add_option("--channelcap", config.max_inflight_batches,
                   "Bound on in-flight batches between pipeline stages")
        ->envname("WZP_CHANNELCAP");
    app.add_flag("--strict-timestamps", config.strict_timestamps,
                 "Also require numerically non-decreasing timestamps in batch OCR")
        ->envname("WZP_STRICT_TIMESTAMPS");

    try {
        app.parse(argc, argv);

        if (!tsrect.empty()) config.ingest.timestamp_rect = parse_rect(tsrect);
        if (!croprect.empty()) config.ingest.crop_rect = parse_rect(croprect);
        if (!framesize.empty()) {
            const auto [w, h] = parse_size(framesize);
            config.ingest.frame_width = w;
            config.ingest.frame_height = h;
        }
        if (!inputsize.empty()) {
            const auto [w, h] = parse_size(inputsize);
            config.ingest.input_width = w;
            config.ingest.input_height = h;
        }
        if (!weights.empty()) config.smoothing.profile = wzp::weight_profile_from_name(weights);
        if (!classnames.empty()) config.catalog.names = split_names(classnames);
        if (!targetclass.empty()) config.catalog.target_class = config.catalog.index_of(targetclass);

        config.validate();
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return wzp::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return wzp::kExitUsage;
    }

    try {
        wzp::RunSummary summary;
        const int code = wzp::run_app(config, &summary);
        for (const wzp::VideoReport& r : summary.reports) {
            if (r.ok) {
                std::cout << r.video_id << ": " << r.frame_count << " frames, "
                          << r.events.size() << " events, " << static_cast<long>(r.fps) << " fps"
                          << (r.ocr_fallback_used
                                  ? ", OCR fallback synthesized " +
                                        std::to_string(r.synthesized_count) + " timestamps"
                                  : "")
                          << " -> " << r.csv_path.string() << "\n";
            } else {
                std::cout << r.video_id << ": FAILED: " << r.error << "\n";
            }
        }
        std::cout << summary.succeeded << "/" << summary.reports.size() << " videos, "
                  << summary.total_frames << " frames, aggregate "
                  << static_cast<long>(summary.aggregate_fps) << " fps\n";
        return code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return wzp::kExitTotalFailure;
    }
}
