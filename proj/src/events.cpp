#include "wzp/events.hpp"

#include <cstdio>
#include <sstream>

#include "wzp/io_util.hpp"

namespace wzp {

std::vector<Event> extract_events(std::span<const int> labels, const ProbabilityMatrix& smoothed,
                                  const TimestampResult& timestamps, const ClassCatalog& catalog,
                                  int min_len) {
    if (labels.size() != timestamps.values.size() || labels.size() != smoothed.rows()) {
        throw InputError("labels, probabilities and timestamps must have equal length");
    }
    if (min_len < 1) throw ParameterError("minimum event length must be at least 1");
    catalog.validate();

    std::vector<Event> events;
    const int l = static_cast<int>(labels.size());
    const int target = catalog.target_class;
    int i = 0;
    while (i < l) {
        if (labels[static_cast<std::size_t>(i)] != target) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < l && labels[static_cast<std::size_t>(j + 1)] == target) ++j;
        const int run_len = j - i + 1;
        if (run_len >= min_len) {
            Event ev;
            ev.event_id = static_cast<int>(events.size()) + 1;
            ev.class_name = catalog.target_name();
            ev.start_frame = i;
            ev.end_frame = j;
            ev.start_timestamp = timestamps.values[static_cast<std::size_t>(i)];
            ev.end_timestamp = timestamps.values[static_cast<std::size_t>(j)];
            ev.frame_count = run_len;
            double sum = 0.0;
            for (int f = i; f <= j; ++f) {
                sum += smoothed.row(static_cast<std::size_t>(f))[static_cast<std::size_t>(target)];
            }
            ev.mean_confidence = sum / run_len;
            events.push_back(std::move(ev));
        }
        i = j + 1;
    }
    return events;
}

namespace {

// Quote a field only when RFC 4180 requires it.
std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += "\"\"";
        else quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

}  // namespace

void write_events_csv(const std::vector<Event>& events, const std::string& video_id,
                      const std::filesystem::path& out_path) {
    std::string body(kEventsCsvHeader);
    body += '\n';
    char confidence[32];
    for (const Event& ev : events) {
        std::snprintf(confidence, sizeof(confidence), "%.6f", ev.mean_confidence);
        body += csv_field(video_id);
        body += ',' + std::to_string(ev.event_id);
        body += ',' + csv_field(ev.class_name);
        body += ',' + std::to_string(ev.start_frame);
        body += ',' + std::to_string(ev.end_frame);
        body += ',' + csv_field(ev.start_timestamp);
        body += ',' + csv_field(ev.end_timestamp);
        body += ',' + std::to_string(ev.frame_count);
        body += ',';
        body += confidence;
        body += '\n';
    }
    atomic_write_file(out_path, body);
}

ParsedEventsCsv parse_events_csv(const std::filesystem::path& path) {
    std::stringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line) || line != kEventsCsvHeader) {
        throw InputError(path.string() + ": missing or unexpected CSV header");
    }
    ParsedEventsCsv parsed;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 9) throw InputError(path.string() + ": malformed CSV row");
        parsed.video_id = f[0];
        Event ev;
        ev.event_id = std::stoi(f[1]);
        ev.class_name = f[2];
        ev.start_frame = std::stoi(f[3]);
        ev.end_frame = std::stoi(f[4]);
        ev.start_timestamp = f[5];
        ev.end_timestamp = f[6];
        ev.frame_count = std::stoi(f[7]);
        ev.mean_confidence = std::stod(f[8]);
        parsed.events.push_back(std::move(ev));
    }
    return parsed;
}

}  // namespace wzp
