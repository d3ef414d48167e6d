#include "wzp/synthgen.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "wzp/scene_marker.hpp"

namespace wzp {

using nlohmann::json;

void SyntheticVideoSpec::validate(int mask_height) const {
    if (frame_count <= 0) throw SpecError("frame_count must be positive");
    if (width <= 0 || height <= 0) throw SpecError("frame dimensions must be positive");
    if (period <= 0) throw SpecError("timestamp period must be positive");
    if (start_timestamp < 0) throw SpecError("start timestamp must be non-negative");
    if (!timestamp_rect.inside(width, height)) {
        throw SpecError("timestamp rectangle does not fit inside the frame");
    }
    if (timestamp_rect.h != mask_height) {
        throw SpecError("timestamp rectangle height " + std::to_string(timestamp_rect.h) +
                        " does not match digit height " + std::to_string(mask_height));
    }
    if (timestamp_rect.w % timestamp_rect.h != 0) {
        throw SpecError("timestamp rectangle width must be a multiple of its height");
    }
    const std::int64_t last = start_timestamp + period * (frame_count - 1);
    if (std::to_string(last).size() > static_cast<std::size_t>(max_digits())) {
        throw SpecError("final timestamp " + std::to_string(last) + " does not fit in " +
                        std::to_string(max_digits()) + " digit slots");
    }
    const int side = marker::render_side(height);
    if (timestamp_rect.y + timestamp_rect.h > height - side &&
        timestamp_rect.x + timestamp_rect.w > width - side) {
        throw SpecError("timestamp rectangle overlaps the scene marker corner");
    }

    int prev_end = -1;
    for (const auto& ev : events) {
        if (ev.start_frame > ev.end_frame || ev.start_frame < 0 || ev.end_frame >= frame_count) {
            throw SpecError("event interval out of range");
        }
        if (ev.start_frame <= prev_end) throw SpecError("event intervals must be disjoint and sorted");
        if (ev.class_index < 0 || ev.class_index >= marker::kMaxClasses) {
            throw SpecError("event class index out of marker table range");
        }
        prev_end = ev.end_frame;
    }
    for (int f : ambiguous_frames) {
        if (f < 0 || f >= frame_count) throw SpecError("ambiguous frame index out of range");
    }
    for (const auto& c : corruptions) {
        if (c.frame < 0 || c.frame >= frame_count) throw SpecError("corruption frame out of range");
        if (c.kind == CorruptionKind::CorruptDigit &&
            (c.digit_position < 0 || c.digit_position >= max_digits())) {
            throw SpecError("corruption digit position out of range");
        }
    }
}

std::string SyntheticVideoSpec::to_json() const {
    json j;
    j["frame_count"] = frame_count;
    j["width"] = width;
    j["height"] = height;
    j["start_timestamp"] = start_timestamp;
    j["period"] = period;
    j["timestamp_rect"] = {{"x", timestamp_rect.x},
                           {"y", timestamp_rect.y},
                           {"width", timestamp_rect.w},
                           {"height", timestamp_rect.h}};
    j["events"] = json::array();
    for (const auto& ev : events) {
        j["events"].push_back({{"class_index", ev.class_index},
                               {"start_frame", ev.start_frame},
                               {"end_frame", ev.end_frame}});
    }
    j["ambiguous_frames"] = ambiguous_frames;
    j["corruptions"] = json::array();
    for (const auto& c : corruptions) {
        json e{{"frame", c.frame},
               {"kind", c.kind == CorruptionKind::BlankTimestamp ? "blank_timestamp" : "corrupt_digit"}};
        if (c.kind == CorruptionKind::CorruptDigit) e["position"] = c.digit_position;
        j["corruptions"].push_back(e);
    }
    return j.dump(2);
}

SyntheticVideoSpec SyntheticVideoSpec::from_json(const std::string& text) {
    SyntheticVideoSpec spec;
    try {
        const json j = json::parse(text);
        spec.frame_count = j.at("frame_count").get<int>();
        spec.width = j.at("width").get<int>();
        spec.height = j.at("height").get<int>();
        spec.start_timestamp = j.at("start_timestamp").get<std::int64_t>();
        spec.period = j.at("period").get<std::int64_t>();
        if (j.contains("timestamp_rect")) {
            const json& r = j["timestamp_rect"];
            spec.timestamp_rect = {r.at("x").get<int>(), r.at("y").get<int>(),
                                   r.at("width").get<int>(), r.at("height").get<int>()};
        }
        for (const json& e : j.value("events", json::array())) {
            spec.events.push_back({e.at("class_index").get<int>(), e.at("start_frame").get<int>(),
                                   e.at("end_frame").get<int>()});
        }
        for (const json& f : j.value("ambiguous_frames", json::array())) {
            spec.ambiguous_frames.insert(f.get<int>());
        }
        for (const json& c : j.value("corruptions", json::array())) {
            CorruptionEntry entry;
            entry.frame = c.at("frame").get<int>();
            const std::string kind = c.at("kind").get<std::string>();
            if (kind == "blank_timestamp") {
                entry.kind = CorruptionKind::BlankTimestamp;
            } else if (kind == "corrupt_digit") {
                entry.kind = CorruptionKind::CorruptDigit;
                entry.digit_position = c.at("position").get<int>();
            } else {
                throw SpecError("unknown corruption kind '" + kind + "'");
            }
            spec.corruptions.push_back(entry);
        }
    } catch (const json::exception& e) {
        throw SpecError(std::string("bad synthetic video spec: ") + e.what());
    }
    return spec;
}

SyntheticVideoSpec SyntheticVideoSpec::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw SpecError("cannot open spec file " + file.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json(text);
}

std::string GroundTruth::to_json() const {
    json j;
    j["timestamps"] = timestamps;
    j["labels"] = labels;
    return j.dump();
}

GrayBinaryImage render_timestamp_strip(std::int64_t value, int max_digits,
                                       const DigitMaskSet& masks) {
    if (value < 0) throw ParameterError("timestamp values are non-negative");
    const int h = masks.digit_height();
    const std::string text = std::to_string(value);
    if (text.size() > static_cast<std::size_t>(max_digits)) {
        throw GeometryError("value " + text + " does not fit in " + std::to_string(max_digits) +
                            " digit slots");
    }
    GrayBinaryImage strip(h, max_digits * h, 1, 0);
    for (std::size_t i = 0; i < text.size(); ++i) {
        const GrayBinaryImage glyph = masks.mask(text[i] - '0');
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < h; ++x) {
                strip.at(y, static_cast<int>(i) * h + x) = glyph.at(y, x);
            }
        }
    }
    return strip;
}

TimestampBatch render_timestamp_batch(std::span<const std::int64_t> values, int max_digits,
                                      const DigitMaskSet& masks) {
    const int h = masks.digit_height();
    ImageStack stack(static_cast<int>(values.size()), h, max_digits * h, 1);
    for (std::size_t i = 0; i < values.size(); ++i) {
        stack.set_frame(static_cast<int>(i), render_timestamp_strip(values[i], max_digits, masks));
    }
    return TimestampBatch::from_stack(std::move(stack));
}

int planned_label(const SyntheticVideoSpec& spec, int frame_index) {
    for (const auto& ev : spec.events) {
        if (frame_index >= ev.start_frame && frame_index <= ev.end_frame) return ev.class_index;
    }
    return 0;
}

namespace {

void fill_rect_rgb(Image& frame, const Rect& r, std::uint8_t red, std::uint8_t green,
                   std::uint8_t blue) {
    for (int y = r.y; y < r.y + r.h; ++y) {
        for (int x = r.x; x < r.x + r.w; ++x) {
            frame.at(y, x, 0) = red;
            frame.at(y, x, 1) = green;
            frame.at(y, x, 2) = blue;
        }
    }
}

void apply_corruption(Image& frame, const CorruptionEntry& entry, const Rect& ts_rect) {
    const int h = ts_rect.h;
    switch (entry.kind) {
        case CorruptionKind::BlankTimestamp:
            fill_rect_rgb(frame, ts_rect, 0, 0, 0);
            break;
        case CorruptionKind::CorruptDigit: {
            // One inverted pixel in the slot center is enough to defeat
            // pixel-exact matching.
            const int y = ts_rect.y + h / 2;
            const int x = ts_rect.x + entry.digit_position * h + h / 2;
            for (int c = 0; c < 3; ++c) frame.at(y, x, c) = 255 - frame.at(y, x, c);
            break;
        }
    }
}

}  // namespace

Image render_video_frame(const SyntheticVideoSpec& spec, const DigitMaskSet& masks,
                         int frame_index) {
    Image frame(spec.height, spec.width, 3);

    // Deterministic low-contrast background, below the binarization threshold
    // so it never collides with a digit mask.
    for (int y = 0; y < spec.height; ++y) {
        std::uint8_t* row = frame.row(y);
        for (int x = 0; x < spec.width; ++x) {
            const std::uint8_t shade = static_cast<std::uint8_t>(40 + ((x + y + frame_index) % 41));
            row[x * 3 + 0] = shade;
            row[x * 3 + 1] = shade;
            row[x * 3 + 2] = static_cast<std::uint8_t>(shade + 10);
        }
    }

    // Burned-in timestamp, white on black.
    const std::int64_t ts = spec.start_timestamp + spec.period * frame_index;
    const GrayBinaryImage strip = render_timestamp_strip(ts, spec.max_digits(), masks);
    for (int y = 0; y < strip.height; ++y) {
        for (int x = 0; x < strip.width; ++x) {
            const std::uint8_t v = strip.at(y, x);
            for (int c = 0; c < 3; ++c) frame.at(spec.timestamp_rect.y + y, spec.timestamp_rect.x + x, c) = v;
        }
    }

    // Scene-class marker (ambiguity marker wins where both are planned).
    const int side = marker::render_side(spec.height);
    const Rect marker_rect{spec.width - side, spec.height - side, side, side};
    std::array<std::uint8_t, 3> color = spec.ambiguous_frames.contains(frame_index)
                                            ? marker::kAmbiguityColor
                                            : marker::class_color(planned_label(spec, frame_index));
    fill_rect_rgb(frame, marker_rect, color[0], color[1], color[2]);

    for (const auto& c : spec.corruptions) {
        if (c.frame == frame_index) apply_corruption(frame, c, spec.timestamp_rect);
    }
    return frame;
}

std::vector<Image> generate_frames(const SyntheticVideoSpec& spec, const DigitMaskSet& masks) {
    spec.validate(masks.digit_height());
    std::vector<Image> frames;
    frames.reserve(static_cast<std::size_t>(spec.frame_count));
    for (int i = 0; i < spec.frame_count; ++i) frames.push_back(render_video_frame(spec, masks, i));
    return frames;
}

GroundTruth ground_truth_of(const SyntheticVideoSpec& spec) {
    GroundTruth truth;
    truth.timestamps.reserve(static_cast<std::size_t>(spec.frame_count));
    truth.labels.reserve(static_cast<std::size_t>(spec.frame_count));
    for (int i = 0; i < spec.frame_count; ++i) {
        truth.timestamps.push_back(spec.start_timestamp + spec.period * i);
        truth.labels.push_back(planned_label(spec, i));
    }
    return truth;
}

GroundTruth generate_synthetic_video(const SyntheticVideoSpec& spec, const DigitMaskSet& masks,
                                     std::ostream& raw_out) {
    spec.validate(masks.digit_height());
    for (int i = 0; i < spec.frame_count; ++i) {
        const Image frame = render_video_frame(spec, masks, i);
        raw_out.write(reinterpret_cast<const char*>(frame.data.data()),
                      static_cast<std::streamsize>(frame.size_bytes()));
    }
    raw_out.flush();
    if (!raw_out) throw ExportError("failed writing raw video stream");
    return ground_truth_of(spec);
}

GroundTruth generate_to_file(const SyntheticVideoSpec& spec, const DigitMaskSet& masks,
                             const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ExportError("cannot open " + path.string() + " for writing");
    return generate_synthetic_video(spec, masks, out);
}

void inject_corruption(std::vector<Image>& frames, std::span<const CorruptionEntry> plan,
                       const Rect& timestamp_rect) {
    for (const auto& entry : plan) {
        if (entry.frame < 0 || entry.frame >= static_cast<int>(frames.size())) {
            throw PlanError("corruption plan frame " + std::to_string(entry.frame) +
                            " out of range");
        }
        if (entry.kind == CorruptionKind::CorruptDigit &&
            (entry.digit_position < 0 ||
             entry.digit_position >= timestamp_rect.w / timestamp_rect.h)) {
            throw PlanError("corruption plan digit position out of range");
        }
        apply_corruption(frames[static_cast<std::size_t>(entry.frame)], entry, timestamp_rect);
    }
}

}  // namespace wzp
