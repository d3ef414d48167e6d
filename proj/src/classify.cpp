#include "wzp/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "wzp/scene_marker.hpp"

namespace wzp {

void ClassCatalog::validate() const {
    if (size() < 2) throw ParameterError("class catalog needs at least 2 classes");
    std::set<std::string> unique(names.begin(), names.end());
    if (unique.size() != names.size()) throw ParameterError("class names must be unique");
    if (target_class < 0 || target_class >= size()) {
        throw ParameterError("target class index out of range");
    }
}

int ClassCatalog::index_of(const std::string& name) const {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ParameterError("unknown class name '" + name + "'");
    return static_cast<int>(it - names.begin());
}

ProbabilityMatrix::ProbabilityMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

void ProbabilityMatrix::append_row(std::span<const double> row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw InputError("probability row has wrong length");
    values_.insert(values_.end(), row.begin(), row.end());
    ++rows_;
}

void ProbabilityMatrix::append_rows(const ProbabilityMatrix& other) {
    for (std::size_t i = 0; i < other.rows(); ++i) append_row(other.row(i));
}

void ProbabilityMatrix::validate_simplex(double tolerance) const {
    for (std::size_t i = 0; i < rows_; ++i) {
        double sum = 0.0;
        for (double v : row(i)) {
            if (v < 0.0 || v > 1.0) {
                throw InputError("probability outside [0,1] in row " + std::to_string(i));
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > tolerance) {
            throw InputError("row " + std::to_string(i) + " sums to " + std::to_string(sum));
        }
    }
}

ProbabilityMatrix classify_batch(Classifier& classifier, const FrameBatch& batch) {
    if (batch.frames.empty()) throw InputError("classify_batch requires a nonempty batch");
    const std::string range = "frames [" + std::to_string(batch.first_index()) + ", " +
                              std::to_string(batch.first_index() + batch.size() - 1) + "]";
    ProbabilityMatrix rows;
    try {
        rows = classifier.classify(batch);
    } catch (const InferenceError&) {
        throw;
    } catch (const std::exception& e) {
        throw InferenceError("classifier backend failed on " + range + ": " + e.what());
    }
    if (rows.rows() != static_cast<std::size_t>(batch.size())) {
        throw InferenceError("classifier returned " + std::to_string(rows.rows()) +
                             " rows for " + range);
    }
    try {
        rows.validate_simplex();
    } catch (const InputError& e) {
        throw InferenceError(std::string("classifier violated the simplex contract on ") + range +
                             ": " + e.what());
    }
    return rows;
}

ProbeClassifier::ProbeClassifier(ClassCatalog catalog, double confidence)
    : catalog_(std::move(catalog)), confidence_(confidence) {
    catalog_.validate();
    if (confidence <= 1.0 / catalog_.size() || confidence > 1.0) {
        throw ParameterError("probe confidence must lie in (1/k, 1]");
    }
}

ProbabilityMatrix ProbeClassifier::classify(const FrameBatch& batch) {
    const int k = catalog_.size();
    ProbabilityMatrix out(batch.frames.size(), static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < batch.frames.size(); ++i) {
        const int decoded = marker::decode(marker::sample_mean(batch.frames[i].pixels), k);
        auto row = out.row(i);
        if (decoded == k) {
            std::fill(row.begin(), row.end(), 1.0 / k);
            continue;
        }
        const int cls = decoded < 0 ? 0 : decoded;  // unreadable marker: documented fallback
        const double rest = (1.0 - confidence_) / (k - 1);
        std::fill(row.begin(), row.end(), rest);
        row[static_cast<std::size_t>(cls)] = confidence_;
    }
    return out;
}

ScriptedClassifier::ScriptedClassifier(ProbabilityMatrix rows) : rows_(std::move(rows)) {
    rows_.validate_simplex();
}

ProbabilityMatrix ScriptedClassifier::classify(const FrameBatch& batch) {
    ProbabilityMatrix out;
    for (const Frame& frame : batch.frames) {
        if (frame.index < 0 || static_cast<std::size_t>(frame.index) >= rows_.rows()) {
            throw InferenceError("no scripted row for frame " + std::to_string(frame.index));
        }
        out.append_row(rows_.row(static_cast<std::size_t>(frame.index)));
    }
    return out;
}

ScriptedClassifier ScriptedClassifier::from_csv(const std::filesystem::path& path,
                                                int num_classes) {
    std::ifstream in(path);
    if (!in) throw AssetError("cannot open scripted rows file " + path.string());
    ProbabilityMatrix rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (static_cast<int>(row.size()) != num_classes) {
            throw AssetError("scripted row has " + std::to_string(row.size()) + " values, expected " +
                             std::to_string(num_classes));
        }
        rows.append_row(row);
    }
    return ScriptedClassifier(std::move(rows));
}

void append_le32(std::vector<std::uint8_t>& buf, std::uint32_t v) {
    buf.push_back(static_cast<std::uint8_t>(v & 0xff));
    buf.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    buf.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    buf.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

std::uint32_t read_le32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::vector<std::uint8_t> encode_inference_request(const FrameBatch& batch) {
    if (batch.frames.empty()) throw InputError("cannot encode an empty batch");
    const Image& first = batch.frames.front().pixels;
    std::vector<std::uint8_t> buf;
    buf.reserve(16 + batch.frames.size() * first.size_bytes());
    append_le32(buf, static_cast<std::uint32_t>(batch.frames.size()));
    append_le32(buf, static_cast<std::uint32_t>(first.height));
    append_le32(buf, static_cast<std::uint32_t>(first.width));
    append_le32(buf, static_cast<std::uint32_t>(first.channels));
    for (const Frame& frame : batch.frames) {
        if (!frame.pixels.same_shape(first)) {
            throw ShapeError("frames in one request must share a shape");
        }
        buf.insert(buf.end(), frame.pixels.data.begin(), frame.pixels.data.end());
    }
    return buf;
}

IpcClassifier::IpcClassifier(const std::string& runner_command, int num_classes)
    : num_classes_(num_classes) {
    if (num_classes < 2) throw ParameterError("model runner needs at least 2 classes");
    std::string cmd = runner_command;
    std::size_t pos;
    while ((pos = cmd.find("{k}")) != std::string::npos) {
        cmd.replace(pos, 3, std::to_string(num_classes));
    }
    std::vector<std::string> argv;
    std::stringstream ss(cmd);
    std::string token;
    while (ss >> token) argv.push_back(token);
    if (argv.empty()) throw ParameterError("model runner command is empty");
    runner_ = std::make_unique<Subprocess>(argv, /*pipe_stdin=*/true);
}

IpcClassifier::~IpcClassifier() {
    if (runner_) runner_->close_stdin();
}

ProbabilityMatrix IpcClassifier::classify(const FrameBatch& batch) {
    const std::vector<std::uint8_t> request = encode_inference_request(batch);
    runner_->write_stdin(request.data(), request.size());

    std::uint8_t header[8];
    if (runner_->read_stdout_exact(header, sizeof(header)) != sizeof(header)) {
        throw InferenceError("model runner closed the stream mid-response: " +
                             runner_->stderr_output());
    }
    const std::uint32_t count = read_le32(header);
    const std::uint32_t k = read_le32(header + 4);
    if (count != static_cast<std::uint32_t>(batch.size()) ||
        k != static_cast<std::uint32_t>(num_classes_)) {
        throw InferenceError("model runner response header mismatch");
    }

    std::vector<std::uint8_t> payload(static_cast<std::size_t>(count) * k * 4);
    if (runner_->read_stdout_exact(payload.data(), payload.size()) != payload.size()) {
        throw InferenceError("model runner response truncated");
    }
    ProbabilityMatrix out(count, k);
    for (std::size_t i = 0; i < static_cast<std::size_t>(count) * k; ++i) {
        const std::uint32_t bits = read_le32(payload.data() + i * 4);
        float f;
        static_assert(sizeof(f) == 4);
        std::memcpy(&f, &bits, 4);
        out.data()[i] = static_cast<double>(f);
    }
    return out;
}

}  // namespace wzp
