#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wzp {

// Stratified confidence bins over top-class probabilities: the mandatory
// [0, 0.5] bin plus five ranges above it, (0.5, 0.6] .. (0.9, 1.0]. Each
// scored sample lands in exactly one bin.
struct ConfidenceBins {
    static constexpr int kBinCount = 6;
    static constexpr std::array<double, kBinCount> kUpperBounds{0.5, 0.6, 0.7, 0.8, 0.9, 1.0};

    std::array<std::vector<int>, kBinCount> members;

    std::array<std::size_t, kBinCount> counts() const;
    std::size_t total() const;
    static const char* bin_name(int bin);
};

int bin_index_for(double max_prob);  // throws InputError outside [0, 1]

ConfidenceBins bin_confidences(std::span<const int> sample_ids,
                               std::span<const double> max_probs);
// ids 0..n-1
ConfidenceBins bin_confidences(std::span<const double> max_probs);

// The mandatory bin is always selected; higher bins are added whole, in
// ascending order, while the next one fits within the remaining budget. Bins
// are never split. Returns the selected ids in bin order.
std::vector<int> select_for_labeling(const ConfidenceBins& bins, std::size_t budget);

// Highest bin index the budget reaches (the selection frontier).
int selection_frontier(const ConfidenceBins& bins, std::size_t budget);

// Supplies true labels for selected samples; nullopt aborts the round.
class LabelOracle {
public:
    virtual ~LabelOracle() = default;
    virtual std::optional<int> label_of(int sample_id) = 0;
};

// Reads a `sample_id,label` CSV (optional header line).
class FileOracle : public LabelOracle {
public:
    explicit FileOracle(const std::filesystem::path& csv_path);
    std::optional<int> label_of(int sample_id) override;

private:
    std::map<int, int> labels_;
};

// One sample id per line, for handing a labeling request to an external tool.
void write_selection_request(const std::filesystem::path& path, std::span<const int> ids);
std::vector<int> read_selection_request(const std::filesystem::path& path);

// Accumulates labeled samples and scores the rest. A real implementation
// wraps model training; ThresholdTrainer below is the desk-scale one.
class Trainer {
public:
    virtual ~Trainer() = default;
    virtual void train(std::span<const int> sample_ids, std::span<const int> labels) = 0;
    virtual std::vector<double> score_max_prob(std::span<const int> sample_ids) = 0;
};

// 1-D two-class learner: the boundary sits midway between the highest labeled
// class-0 point and the lowest labeled class-1 point, and confidence ramps
// linearly from 0.5 at the boundary to 1.0 at the labeled margin.
class ThresholdTrainer : public Trainer {
public:
    explicit ThresholdTrainer(std::vector<double> sample_positions);

    void train(std::span<const int> sample_ids, std::span<const int> labels) override;
    std::vector<double> score_max_prob(std::span<const int> sample_ids) override;

    double boundary() const { return boundary_; }

private:
    std::vector<double> positions_;
    double boundary_ = 0.0;
    double margin_ = 0.0;
    bool fitted_ = false;
    double max_class0_ = 0.0;
    double min_class1_ = 0.0;
    bool seen_class0_ = false;
    bool seen_class1_ = false;
};

struct RoundRecord {
    int round_number = 0;
    std::array<std::size_t, ConfidenceBins::kBinCount> bin_counts{};
    double min_confidence = 0.0;
    std::size_t uncertain_count = 0;  // samples in bins at or below the frontier
    std::size_t selected_count = 0;
};

struct RoundState {
    int round_number = 0;
    std::vector<int> labeled;
    std::vector<int> unlabeled;
    std::vector<RoundRecord> history;
    bool converged = false;
};

struct ActiveLearningConfig {
    std::size_t budget = 0;                 // beyond the mandatory bin
    double convergence_threshold = 0.9;     // on the minimum top-class confidence
};

// One round of uncertainty sampling: score the unlabeled pool, bin, select,
// query the oracle, move the selection into the labeled set, retrain, and
// record history. Sets `converged` when the minimum confidence exceeds the
// threshold or the uncertain count stopped decreasing. Throws OracleError on
// oracle failure, leaving the caller's state unchanged.
RoundState run_active_learning_round(RoundState state, Trainer& trainer, LabelOracle& oracle,
                                     const ActiveLearningConfig& config);

}  // namespace wzp
