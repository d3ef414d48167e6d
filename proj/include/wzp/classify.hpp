#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "wzp/image.hpp"
#include "wzp/ingest.hpp"

namespace wzp {

struct ClassCatalog {
    std::vector<std::string> names{"not_work_zone", "work_zone"};
    int target_class = 1;

    int size() const { return static_cast<int>(names.size()); }
    const std::string& target_name() const { return names[static_cast<std::size_t>(target_class)]; }
    void validate() const;  // k >= 2, unique names, target in range
    int index_of(const std::string& name) const;
};

// Per-frame class probability distributions, row-major l x k. Every row sums
// to 1 within 1e-6.
class ProbabilityMatrix {
public:
    ProbabilityMatrix() = default;
    ProbabilityMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::span<double> row(std::size_t i) { return {values_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {values_.data() + i * cols_, cols_}; }
    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }

    void append_row(std::span<const double> row);
    void append_rows(const ProbabilityMatrix& other);
    void validate_simplex(double tolerance = 1e-6) const;  // throws InputError

    bool operator==(const ProbabilityMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

class Classifier {
public:
    virtual ~Classifier() = default;
    virtual int num_classes() const = 0;
    virtual ProbabilityMatrix classify(const FrameBatch& batch) = 0;
};

// Contract wrapper around Classifier::classify: checks one row per frame and
// the row-simplex property, and tags failures with the frame range.
ProbabilityMatrix classify_batch(Classifier& classifier, const FrameBatch& batch);

// Deterministic test double: reads the synthetic scene marker from each
// preprocessed frame and emits `confidence` on that class, (1-c)/(k-1)
// elsewhere. Ambiguity-marked frames yield the uniform distribution; frames
// with no readable marker fall back to class 0 at the same confidence.
class ProbeClassifier : public Classifier {
public:
    ProbeClassifier(ClassCatalog catalog, double confidence);

    int num_classes() const override { return catalog_.size(); }
    ProbabilityMatrix classify(const FrameBatch& batch) override;

private:
    ClassCatalog catalog_;
    double confidence_;
};

// Replays preloaded rows keyed by frame index.
class ScriptedClassifier : public Classifier {
public:
    explicit ScriptedClassifier(ProbabilityMatrix rows);

    int num_classes() const override { return static_cast<int>(rows_.cols()); }
    ProbabilityMatrix classify(const FrameBatch& batch) override;

    // One CSV line of k probabilities per frame.
    static ScriptedClassifier from_csv(const std::filesystem::path& path, int num_classes);

private:
    ProbabilityMatrix rows_;
};

// Wire format of the model-runner IPC: all integers little-endian 32-bit.
// Request:  frame count, height, width, channels, then the raw frame bytes.
// Response: frame count, k, then frame-major float32 probabilities.
std::vector<std::uint8_t> encode_inference_request(const FrameBatch& batch);
void append_le32(std::vector<std::uint8_t>& buf, std::uint32_t v);
std::uint32_t read_le32(const std::uint8_t* p);

// Adapter speaking the protocol above to an external model-runner process
// over its stdin/stdout. One runner is spawned per classifier instance.
class IpcClassifier : public Classifier {
public:
    // Template slots: {k} is substituted with the class count.
    IpcClassifier(const std::string& runner_command, int num_classes);
    ~IpcClassifier() override;

    int num_classes() const override { return num_classes_; }
    ProbabilityMatrix classify(const FrameBatch& batch) override;

private:
    int num_classes_;
    std::unique_ptr<Subprocess> runner_;
};

}  // namespace wzp
