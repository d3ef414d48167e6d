#include "wzp/timestamp_ocr.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "wzp/kernels.hpp"

namespace wzp {

TimestampBatch TimestampBatch::from_stack(ImageStack stack) {
    if (stack.count > 0) {
        if (stack.height <= 0 || stack.width <= 0) {
            throw ShapeError("timestamp strips must be non-empty");
        }
        if (stack.width % stack.height != 0) {
            throw ShapeError("strip width " + std::to_string(stack.width) +
                             " is not a multiple of digit height " + std::to_string(stack.height));
        }
    }
    return TimestampBatch{std::move(stack)};
}

TimestampBatch TimestampBatch::from_images(const std::vector<Image>& strips) {
    return from_stack(ImageStack::from_images(strips));
}

int TimestampResult::synthesized_count() const {
    return static_cast<int>(std::count(synthesized_flags.begin(), synthesized_flags.end(),
                                       static_cast<std::uint8_t>(1)));
}

MatchSet match_digits(const TimestampBatch& batch, const DigitMaskSet& masks) {
    if (batch.strips.channels != 1) {
        throw ParameterError("match_digits expects a binarized (single channel) batch");
    }
    if (batch.count() > 0 && masks.digit_height() != batch.digit_height()) {
        throw ParameterError("mask height " + std::to_string(masks.digit_height()) +
                             " does not match strip height " + std::to_string(batch.digit_height()));
    }

    const int l = batch.count();
    const int h = batch.digit_height();
    const int w = batch.strip_width();
    const int n = l > 0 ? batch.max_digits() : 0;

    MatchSet out;
    if (l == 0) return out;

    // Truth tensor in (frame, digit, slot) order, then a row-major nonzero
    // scan; the scan order is what makes the MatchSet canonical.
    std::vector<std::uint8_t> truth(static_cast<std::size_t>(l) * 10 * n);
    kernels::match_digit_tiles_omp(batch.strips.data.data(), l, h, w, masks.packed(), truth.data());

    std::size_t idx = 0;
    for (int f = 0; f < l; ++f) {
        for (int d = 0; d < 10; ++d) {
            for (int p = 0; p < n; ++p, ++idx) {
                if (truth[idx]) {
                    out.frames.push_back(f);
                    out.digits.push_back(d);
                    out.positions.push_back(p);
                }
            }
        }
    }
    return out;
}

namespace {

// Numeric comparison of non-negative decimal strings without parsing.
bool decimal_less(const std::string& a, const std::string& b) {
    const auto strip = [](const std::string& s) {
        std::size_t i = s.find_first_not_of('0');
        return i == std::string::npos ? std::string("0") : s.substr(i);
    };
    const std::string sa = strip(a), sb = strip(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    return sa < sb;
}

struct LengthGroups {
    std::vector<int> unique_lengths;  // ascending (C_u)
    std::vector<int> first_indices;   // first occurrence per length (C_u^i)
    std::vector<int> occurrences;     // frames per length (C_u^c)
};

// Unique-with-first-index-and-counts over the per-frame match counts, values
// sorted ascending.
LengthGroups group_by_length(const std::vector<int>& counts_per_frame) {
    LengthGroups g;
    std::vector<int> order(counts_per_frame.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return counts_per_frame[a] < counts_per_frame[b]; });
    for (int idx : order) {
        const int len = counts_per_frame[idx];
        if (g.unique_lengths.empty() || g.unique_lengths.back() != len) {
            g.unique_lengths.push_back(len);
            g.first_indices.push_back(idx);
            g.occurrences.push_back(1);
        } else {
            g.occurrences.back() += 1;
            if (idx < g.first_indices.back()) g.first_indices.back() = idx;
        }
    }
    return g;
}

}  // namespace

TimestampResult convert_timestamps(const TimestampBatch& batch, const DigitMaskSet& masks,
                                   const ConvertOptions& options) {
    const int l = batch.count();
    if (l < 1) throw InputError("convert_timestamps requires at least one strip");

    const TimestampBatch binary = TimestampBatch::from_stack(binarize_stack(batch.strips));
    const MatchSet matches = match_digits(binary, masks);

    // Per-frame digit counts for the frames that matched at all (F_u, F_u^c).
    std::vector<int> matched_frames;
    std::vector<int> matched_counts;
    for (std::size_t i = 0; i < matches.size(); ++i) {
        if (matched_frames.empty() || matched_frames.back() != matches.frames[i]) {
            matched_frames.push_back(matches.frames[i]);
            matched_counts.push_back(1);
        } else {
            matched_counts.back() += 1;
        }
    }

    const LengthGroups groups = group_by_length(matched_counts);

    // QC 1: every frame must have contributed at least one digit.
    const long grouped_total =
        std::accumulate(groups.occurrences.begin(), groups.occurrences.end(), 0L);
    if (grouped_total != l) {
        throw TimestampDetectionCountError(
            "detected digits for " + std::to_string(grouped_total) + " of " + std::to_string(l) +
            " timestamps; at least one strip produced no matches");
    }

    // QC 2: the first occurrence of each ascending length must come later
    // than the first occurrence of the previous one, or a digit was dropped.
    for (std::size_t i = 1; i < groups.first_indices.size(); ++i) {
        if (groups.first_indices[i] < groups.first_indices[i - 1]) {
            throw NonDecreasingTimestampLenError(
                "a " + std::to_string(groups.unique_lengths[i - 1]) +
                "-digit timestamp appears after a " + std::to_string(groups.unique_lengths[i]) +
                "-digit one; a digit was likely dropped");
        }
    }

    // Group-wise reconstruction. QC guarantees that frames sharing a length
    // occupy a contiguous block of the match arrays, in ascending length
    // order, starting at that length's first-occurrence index.
    TimestampResult result;
    result.values.assign(l, {});
    result.synthesized_flags.assign(l, 0);

    std::size_t right = 0;
    for (std::size_t g = 0; g < groups.unique_lengths.size(); ++g) {
        const int len = groups.unique_lengths[g];
        const int frames_in_group = groups.occurrences[g];
        const std::size_t left = right;
        right = left + static_cast<std::size_t>(len) * frames_in_group;

        for (int j = 0; j < frames_in_group; ++j) {
            const std::size_t base = left + static_cast<std::size_t>(j) * len;

            // Order this frame's digits by their slot position.
            std::vector<int> order(len);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                return matches.positions[base + a] < matches.positions[base + b];
            });
            for (int k = 1; k < len; ++k) {
                if (matches.positions[base + order[k]] == matches.positions[base + order[k - 1]]) {
                    throw Error("ambiguous double match at one digit slot");
                }
            }

            std::string value(len, '0');
            for (int k = 0; k < len; ++k) {
                value[k] = static_cast<char>('0' + matches.digits[base + order[k]]);
            }
            result.values[groups.first_indices[g] + j] = std::move(value);
        }
    }

    if (options.strict_monotonic) {
        for (int f = 1; f < l; ++f) {
            if (decimal_less(result.values[f], result.values[f - 1])) {
                throw MonotonicityError("timestamp value " + result.values[f] + " at frame " +
                                        std::to_string(f) + " is smaller than its predecessor " +
                                        result.values[f - 1]);
            }
        }
    }
    return result;
}

namespace {

struct FrameRead {
    bool readable = false;
    std::string value;
};

// The per-timestamp variant of the conversion algorithm: one strip goes
// through the same binarize-and-match machinery as a batch of one. The frame
// is readable only when its digit prefix is an unbroken run of slots each
// matching exactly one mask, with nothing matching after it.
FrameRead read_single_strip(const TimestampBatch& single, const DigitMaskSet& masks) {
    const int n = single.max_digits();
    const TimestampBatch binary = TimestampBatch::from_stack(binarize_stack(single.strips));
    const MatchSet matches = match_digits(binary, masks);

    std::vector<int> slot_digit(static_cast<std::size_t>(n), -1);  // -1 none, -2 ambiguous
    for (std::size_t i = 0; i < matches.size(); ++i) {
        int& slot = slot_digit[static_cast<std::size_t>(matches.positions[i])];
        slot = slot == -1 ? matches.digits[i] : -2;
    }

    int prefix = 0;
    while (prefix < n && slot_digit[static_cast<std::size_t>(prefix)] >= 0) ++prefix;

    FrameRead out;
    if (prefix == 0) return out;  // zero matches in the leading slot
    for (int p = prefix; p < n; ++p) {
        if (slot_digit[static_cast<std::size_t>(p)] != -1) return out;  // hole or ambiguity
    }
    out.readable = true;
    out.value.resize(static_cast<std::size_t>(prefix));
    for (int p = 0; p < prefix; ++p) {
        out.value[static_cast<std::size_t>(p)] =
            static_cast<char>('0' + slot_digit[static_cast<std::size_t>(p)]);
    }
    return out;
}

}  // namespace

TimestampResult convert_timestamps_per_frame(const TimestampBatch& batch,
                                             const DigitMaskSet& masks) {
    const int l = batch.count();
    if (l < 1) throw InputError("convert_timestamps_per_frame requires at least one strip");
    if (batch.count() > 0 && masks.digit_height() != batch.digit_height()) {
        throw ParameterError("mask height does not match strip height");
    }

    const int h = batch.digit_height();
    const int w = batch.strip_width();

    TimestampResult result;
    result.values.assign(l, {});
    result.synthesized_flags.assign(l, 0);

    TimestampBatch single{ImageStack(1, h, w, batch.strips.channels)};
    std::vector<int> unreadable;
    for (int f = 0; f < l; ++f) {
        std::memcpy(single.strips.frame(0), batch.strips.frame(f), single.strips.frame_bytes());
        FrameRead read = read_single_strip(single, masks);
        if (read.readable) {
            result.values[f] = std::move(read.value);
        } else {
            unreadable.push_back(f);
            result.synthesized_flags[f] = 1;
        }
    }

    if (!unreadable.empty()) {
        std::vector<std::pair<int, std::int64_t>> readable;
        readable.reserve(l - unreadable.size());
        for (int f = 0; f < l; ++f) {
            if (result.synthesized_flags[f]) continue;
            if (result.values[f].size() > 18) {
                throw InputError("timestamp too wide for synthesis arithmetic: " + result.values[f]);
            }
            readable.emplace_back(f, std::stoll(result.values[f]));
        }
        const std::vector<std::int64_t> filled = synthesize_missing(readable, l);
        for (int f : unreadable) result.values[f] = std::to_string(filled[f]);
    }
    return result;
}

std::vector<std::int64_t> synthesize_missing(
    const std::vector<std::pair<int, std::int64_t>>& readable, int total) {
    if (readable.empty()) {
        throw UnsynthesizableError("no readable timestamps to anchor synthesis on");
    }
    for (std::size_t i = 0; i < readable.size(); ++i) {
        if (readable[i].first < 0 || readable[i].first >= total) {
            throw InputError("readable frame index out of range");
        }
        if (i > 0) {
            if (readable[i].first <= readable[i - 1].first) {
                throw InputError("readable frame indices must be increasing");
            }
            if (readable[i].second <= readable[i - 1].second) {
                throw MonotonicityError("readable timestamp values are not strictly increasing: " +
                                        std::to_string(readable[i - 1].second) + " then " +
                                        std::to_string(readable[i].second));
            }
        }
    }

    std::vector<std::int64_t> out(total, 0);
    for (const auto& [frame, value] : readable) out[frame] = value;

    if (readable.size() == 1) {
        // No period is estimable from one anchor; repeat it.
        std::fill(out.begin(), out.end(), readable.front().second);
        return out;
    }

    // Median per-frame period across consecutive readable pairs.
    std::vector<double> periods;
    periods.reserve(readable.size() - 1);
    for (std::size_t i = 1; i < readable.size(); ++i) {
        periods.push_back(static_cast<double>(readable[i].second - readable[i - 1].second) /
                          (readable[i].first - readable[i - 1].first));
    }
    std::sort(periods.begin(), periods.end());
    double period = periods.size() % 2 == 1
                        ? periods[periods.size() / 2]
                        : 0.5 * (periods[periods.size() / 2 - 1] + periods[periods.size() / 2]);
    if (period <= 0.0) period = 1.0;

    // Interior gaps: linear interpolation between the flanking anchors.
    for (std::size_t i = 1; i < readable.size(); ++i) {
        const auto [fa, va] = readable[i - 1];
        const auto [fb, vb] = readable[i];
        for (int f = fa + 1; f < fb; ++f) {
            const double v = va + static_cast<double>(vb - va) * (f - fa) / (fb - fa);
            out[f] = std::llround(v);
        }
    }

    // Edge gaps: extrapolate at the median period, clamped at zero.
    const auto [first_frame, first_value] = readable.front();
    for (int f = first_frame - 1; f >= 0; --f) {
        const double v = first_value - period * (first_frame - f);
        out[f] = v < 0.0 ? 0 : std::llround(v);
    }
    const auto [last_frame, last_value] = readable.back();
    for (int f = last_frame + 1; f < total; ++f) {
        out[f] = std::llround(last_value + period * (f - last_frame));
    }
    return out;
}

}  // namespace wzp
