#include "wzp/ingest.hpp"

#include <cstring>

#include "wzp/kernels.hpp"

namespace wzp {

Rect IngestConfig::effective_crop() const {
    if (crop_rect.w == 0 && crop_rect.h == 0) return Rect{0, 0, frame_width, frame_height};
    return crop_rect;
}

void IngestConfig::validate() const {
    if (frame_width <= 0 || frame_height <= 0) throw ParameterError("frame size must be positive");
    if (batch_size < 1) throw ParameterError("batch size must be at least 1");
    if (input_width <= 0 || input_height <= 0) {
        throw ParameterError("classifier input size must be positive");
    }
    if (!timestamp_rect.inside(frame_width, frame_height)) {
        throw GeometryError("timestamp rectangle outside frame bounds");
    }
    if (timestamp_rect.w % timestamp_rect.h != 0) {
        throw GeometryError("timestamp rectangle width must be a multiple of its height");
    }
    const Rect crop = effective_crop();
    if (!crop.inside(frame_width, frame_height)) {
        throw GeometryError("crop rectangle outside frame bounds");
    }
}

FrameStream::FrameStream(const std::string& video_path, const IngestConfig& config,
                         std::string video_id)
    : video_id_(std::move(video_id)),
      frame_bytes_(static_cast<std::size_t>(config.frame_width) * config.frame_height * 3),
      width_(config.frame_width),
      height_(config.frame_height) {
    const std::vector<std::string> argv = expand_command_template(
        config.decoder_command, video_path, config.frame_width, config.frame_height, "rgb24");
    proc_ = std::make_unique<Subprocess>(argv);
}

std::optional<Frame> FrameStream::next() {
    if (done_) return std::nullopt;

    Frame frame;
    frame.index = next_index_;
    frame.video_id = video_id_;
    frame.pixels = Image(height_, width_, 3);

    const std::size_t got = proc_->read_stdout_exact(frame.pixels.data.data(), frame_bytes_);
    if (got == frame_bytes_) {
        ++next_index_;
        return frame;
    }

    // Stream ended: decide between a clean end, a decoder failure and a
    // truncated frame.
    done_ = true;
    const int exit_code = proc_->wait();
    if (exit_code != 0) {
        throw DecoderError("decoder exited with code " + std::to_string(exit_code) + " after " +
                               std::to_string(next_index_) + " frames: " + proc_->stderr_output(),
                           exit_code, proc_->stderr_output());
    }
    if (got != 0) {
        throw StreamCorruptionError("decoder output ended mid-frame after " +
                                    std::to_string(next_index_) + " complete frames (" +
                                    std::to_string(got) + " trailing bytes)");
    }
    return std::nullopt;
}

Image extract_timestamp_strip(const Frame& frame, const Rect& rect) {
    if (!rect.inside(frame.pixels.width, frame.pixels.height)) {
        throw GeometryError("timestamp rectangle outside frame bounds");
    }
    Image strip(rect.h, rect.w, 3);
    const int row_bytes = rect.w * 3;
    for (int y = 0; y < rect.h; ++y) {
        std::memcpy(strip.row(y), frame.pixels.row(rect.y + y) + static_cast<std::size_t>(rect.x) * 3,
                    static_cast<std::size_t>(row_bytes));
    }
    return strip;
}

Frame preprocess_frame(const Frame& frame, const IngestConfig& config) {
    const Rect crop = config.effective_crop();
    if (!crop.inside(frame.pixels.width, frame.pixels.height) || crop.w == 0 || crop.h == 0) {
        throw GeometryError("crop rectangle outside frame bounds");
    }

    Image cropped(crop.h, crop.w, 3);
    for (int y = 0; y < crop.h; ++y) {
        std::memcpy(cropped.row(y), frame.pixels.row(crop.y + y) + static_cast<std::size_t>(crop.x) * 3,
                    static_cast<std::size_t>(crop.w) * 3);
    }

    Frame out;
    out.index = frame.index;
    out.video_id = frame.video_id;
    if (crop.w == config.input_width && crop.h == config.input_height) {
        out.pixels = std::move(cropped);
        return out;
    }
    out.pixels = Image(config.input_height, config.input_width, 3);
    kernels::resize_bilinear_omp(cropped.data.data(), crop.h, crop.w, 3, out.pixels.data.data(),
                                 config.input_height, config.input_width);
    return out;
}

Batcher::Batcher(int batch_size) : batch_size_(batch_size) {
    if (batch_size < 1) throw ParameterError("batch size must be at least 1");
}

std::optional<FrameBatch> Batcher::push(Frame frame) {
    current_.frames.push_back(std::move(frame));
    if (current_.size() == batch_size_) {
        FrameBatch full = std::move(current_);
        current_ = FrameBatch{};
        return full;
    }
    return std::nullopt;
}

std::optional<FrameBatch> Batcher::finish() {
    if (current_.frames.empty()) return std::nullopt;
    FrameBatch tail = std::move(current_);
    current_ = FrameBatch{};
    return tail;
}

}  // namespace wzp
