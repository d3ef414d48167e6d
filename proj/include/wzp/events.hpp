#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "wzp/classify.hpp"
#include "wzp/timestamp_ocr.hpp"

namespace wzp {

// A maximal detected scene interval, bounded by frame indices and the
// extracted timestamps of those frames.
struct Event {
    int event_id = 0;  // sequential per video, starting at 1
    std::string class_name;
    int start_frame = 0;
    int end_frame = 0;  // inclusive
    std::string start_timestamp;
    std::string end_timestamp;
    int frame_count = 0;
    double mean_confidence = 0.0;  // mean smoothed target-class probability

    bool operator==(const Event&) const = default;
};

// Scans the label sequence for maximal runs of the target class of length at
// least min_len. mean_confidence is taken from the smoothed probabilities the
// labels were derived from.
std::vector<Event> extract_events(std::span<const int> labels, const ProbabilityMatrix& smoothed,
                                  const TimestampResult& timestamps, const ClassCatalog& catalog,
                                  int min_len = 1);

// RFC 4180 CSV with a header row, LF line endings, written atomically
// (temp file + rename). mean_confidence is printed with 6 decimal places.
inline constexpr const char* kEventsCsvHeader =
    "video_id,event_id,class_name,start_frame,end_frame,start_timestamp,end_timestamp,"
    "frame_count,mean_confidence";

void write_events_csv(const std::vector<Event>& events, const std::string& video_id,
                      const std::filesystem::path& out_path);

// Parses a file written by write_events_csv (round-trip checks, reports).
struct ParsedEventsCsv {
    std::string video_id;
    std::vector<Event> events;
};
ParsedEventsCsv parse_events_csv(const std::filesystem::path& path);

}  // namespace wzp
