#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wzp/geometry.hpp"
#include "wzp/image.hpp"
#include "wzp/subprocess.hpp"

namespace wzp {

inline constexpr const char* kDefaultDecoderTemplate =
    "ffmpeg -nostdin -loglevel error -i {input} -f rawvideo -pix_fmt {pixfmt} "
    "-s {width}x{height} pipe:1";

struct IngestConfig {
    // Whitespace-separated command producing raw 8-bit interleaved RGB frames
    // on stdout; {input}, {width}, {height} and {pixfmt} are substituted. Any
    // program honoring the byte contract works.
    std::string decoder_command = kDefaultDecoderTemplate;
    int frame_width = 480;
    int frame_height = 360;
    Rect timestamp_rect{0, 0, 112, 16};
    Rect crop_rect{0, 0, 0, 0};  // zero width/height means the full frame
    int input_width = 224;       // classifier input size
    int input_height = 224;
    int batch_size = 64;

    Rect effective_crop() const;
    void validate() const;  // throws ParameterError / GeometryError
};

// One decoded frame: 8-bit interleaved RGB plus its position in the video.
struct Frame {
    int index = 0;
    std::string video_id;
    Image pixels;
};

// Consecutive preprocessed frames in index order; only the final batch of a
// video may be smaller than the configured size.
struct FrameBatch {
    std::vector<Frame> frames;

    int first_index() const { return frames.empty() ? 0 : frames.front().index; }
    int size() const { return static_cast<int>(frames.size()); }
};

// Spawns the decoder and yields frames assembled from its stdout, in decode
// order. The stream ends cleanly only on a frame boundary with the decoder
// exiting zero; otherwise StreamCorruptionError or DecoderError is raised.
class FrameStream {
public:
    FrameStream(const std::string& video_path, const IngestConfig& config, std::string video_id);

    std::optional<Frame> next();
    int frames_read() const { return next_index_; }

private:
    std::string video_id_;
    std::size_t frame_bytes_;
    int width_;
    int height_;
    int next_index_ = 0;
    bool done_ = false;
    std::unique_ptr<Subprocess> proc_;
};

// The exact pixel sub-rectangle of a raw frame, cut before any preprocessing.
Image extract_timestamp_strip(const Frame& frame, const Rect& rect);

// Crop, then bilinear-rescale to the classifier input size.
Frame preprocess_frame(const Frame& frame, const IngestConfig& config);

// Groups consecutive frames into batches of batch_size (final one may be
// short). push() returns a full batch when one completes; finish() returns
// the trailing partial batch if any.
class Batcher {
public:
    explicit Batcher(int batch_size);

    std::optional<FrameBatch> push(Frame frame);
    std::optional<FrameBatch> finish();

private:
    int batch_size_;
    FrameBatch current_;
};

}  // namespace wzp
