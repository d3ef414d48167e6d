#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "wzp/digit_masks.hpp"
#include "wzp/geometry.hpp"
#include "wzp/image.hpp"
#include "wzp/timestamp_ocr.hpp"

namespace wzp {

enum class CorruptionKind {
    BlankTimestamp,  // zero the whole timestamp strip region
    CorruptDigit,    // invert one pixel inside a digit slot, defeating exact matching
};

struct CorruptionEntry {
    int frame = 0;
    CorruptionKind kind = CorruptionKind::BlankTimestamp;
    int digit_position = 0;  // only for CorruptDigit
};

struct EventPlanEntry {
    int class_index = 0;
    int start_frame = 0;
    int end_frame = 0;  // inclusive
};

// Everything needed to render a deterministic test video with ground truth.
struct SyntheticVideoSpec {
    int frame_count = 0;
    int width = 0;
    int height = 0;
    std::int64_t start_timestamp = 0;
    std::int64_t period = 1;  // timestamp increment per frame, > 0
    Rect timestamp_rect{0, 0, 112, 16};
    std::vector<EventPlanEntry> events;
    std::set<int> ambiguous_frames;
    std::vector<CorruptionEntry> corruptions;

    int max_digits() const { return timestamp_rect.w / timestamp_rect.h; }
    void validate(int mask_height) const;  // throws SpecError

    std::string to_json() const;
    static SyntheticVideoSpec from_json(const std::string& text);
    static SyntheticVideoSpec load(const std::filesystem::path& file);
};

struct GroundTruth {
    std::vector<std::int64_t> timestamps;
    std::vector<int> labels;

    std::string to_json() const;
};

// Renders a timestamp value into an h x (n * h) strip, digits left-aligned
// from the mask set, remaining slots all-background. Values wider than n
// digits raise GeometryError.
GrayBinaryImage render_timestamp_strip(std::int64_t value, int max_digits,
                                       const DigitMaskSet& masks);

// Packs rendered strips for a whole value sequence (OCR test helper).
TimestampBatch render_timestamp_batch(std::span<const std::int64_t> values, int max_digits,
                                      const DigitMaskSet& masks);

// Planned class of one frame (0 outside every event interval).
int planned_label(const SyntheticVideoSpec& spec, int frame_index);

// Renders a single frame: background pattern, burned-in timestamp strip,
// scene-class marker (or ambiguity marker), with this frame's corruptions
// applied. 8-bit interleaved RGB.
Image render_video_frame(const SyntheticVideoSpec& spec, const DigitMaskSet& masks,
                         int frame_index);

// Renders all frames into memory. Only sensible for small specs; long videos
// should stream through generate_synthetic_video instead.
std::vector<Image> generate_frames(const SyntheticVideoSpec& spec, const DigitMaskSet& masks);

// Streams the raw RGB24 byte sequence of the whole video (the ingest wire
// format) and returns the ground truth.
GroundTruth generate_synthetic_video(const SyntheticVideoSpec& spec, const DigitMaskSet& masks,
                                     std::ostream& raw_out);
GroundTruth generate_to_file(const SyntheticVideoSpec& spec, const DigitMaskSet& masks,
                             const std::filesystem::path& path);
GroundTruth ground_truth_of(const SyntheticVideoSpec& spec);

// Applies a corruption plan to already-rendered frames.
void inject_corruption(std::vector<Image>& frames, std::span<const CorruptionEntry> plan,
                       const Rect& timestamp_rect);

}  // namespace wzp
