#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wzp/digit_masks.hpp"
#include "wzp/image.hpp"

namespace wzp {

// A stack of timestamp strip images cut from frames, in frame order. Strips
// may be color or already binary; the width must be an integer multiple of
// the digit height, giving max_digits() slots per strip.
struct TimestampBatch {
    ImageStack strips;

    int count() const { return strips.count; }
    int digit_height() const { return strips.height; }
    int strip_width() const { return strips.width; }
    int max_digits() const { return strips.width / strips.height; }

    static TimestampBatch from_stack(ImageStack stack);
    static TimestampBatch from_images(const std::vector<Image>& strips);
};

// The nonzero scan of the (l x 10 x n) match-truth tensor: three equal-length
// sequences ordered lexicographically by (frame, digit value, position). No
// two entries share a (frame, position) pair when the masks are distinct.
struct MatchSet {
    std::vector<int> frames;
    std::vector<int> digits;
    std::vector<int> positions;

    std::size_t size() const { return frames.size(); }
};

struct TimestampResult {
    std::vector<std::string> values;
    std::vector<std::uint8_t> synthesized_flags;  // 1 where the fallback fabricated the value

    int synthesized_count() const;
};

// Tests each h x h tile of each binarized strip for pixel equality with all
// ten masks. Requires masks.digit_height() == batch.digit_height().
MatchSet match_digits(const TimestampBatch& binary_batch, const DigitMaskSet& masks);

struct ConvertOptions {
    // Additionally verify that the recovered values are numerically
    // non-decreasing. Off by default: the batch QC checks below are the
    // faithful behavior, and they cannot see a corrupt frame whose shortened
    // value still sorts correctly.
    bool strict_monotonic = false;
};

// Batch conversion of timestamp strips to decimal strings. Binarizes, matches
// every tile against every mask, groups frames by digit count, reorders each
// frame's digits by position, and joins them. Raises
// TimestampDetectionCountError when any frame produced zero matches, and
// NonDecreasingTimestampLenError when a shorter timestamp appears after a
// longer one (evidence of a dropped digit).
TimestampResult convert_timestamps(const TimestampBatch& batch, const DigitMaskSet& masks,
                                   const ConvertOptions& options = {});

// Per-frame fallback: each strip is matched independently, unreadable frames
// (a hole or ambiguity in the digit prefix, or no matches at all) receive
// synthesized replacement values and a raised flag. Never raises the two QC
// errors; raises UnsynthesizableError when no frame is readable.
TimestampResult convert_timestamps_per_frame(const TimestampBatch& batch,
                                             const DigitMaskSet& masks);

// Fills the gaps of a sparse, strictly increasing (frame, value) sequence:
// interior gaps by linear interpolation between the nearest readable
// neighbors, edge gaps by extrapolation at the median inter-frame period.
// With a single anchor the anchor value is repeated. Output is non-decreasing.
std::vector<std::int64_t> synthesize_missing(
    const std::vector<std::pair<int, std::int64_t>>& readable, int total);

}  // namespace wzp
