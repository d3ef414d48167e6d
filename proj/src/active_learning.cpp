#include "wzp/active_learning.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wzp/errors.hpp"
#include "wzp/io_util.hpp"

namespace wzp {

std::array<std::size_t, ConfidenceBins::kBinCount> ConfidenceBins::counts() const {
    std::array<std::size_t, kBinCount> c{};
    for (int b = 0; b < kBinCount; ++b) c[static_cast<std::size_t>(b)] = members[static_cast<std::size_t>(b)].size();
    return c;
}

std::size_t ConfidenceBins::total() const {
    std::size_t t = 0;
    for (const auto& m : members) t += m.size();
    return t;
}

const char* ConfidenceBins::bin_name(int bin) {
    static const char* names[kBinCount] = {"[0.0,0.5]",  "(0.5,0.6]", "(0.6,0.7]",
                                           "(0.7,0.8]", "(0.8,0.9]", "(0.9,1.0]"};
    return names[bin];
}

int bin_index_for(double max_prob) {
    if (max_prob < 0.0 || max_prob > 1.0) {
        throw InputError("confidence " + std::to_string(max_prob) + " outside [0,1]");
    }
    for (int b = 0; b < ConfidenceBins::kBinCount; ++b) {
        if (max_prob <= ConfidenceBins::kUpperBounds[static_cast<std::size_t>(b)]) return b;
    }
    return ConfidenceBins::kBinCount - 1;
}

ConfidenceBins bin_confidences(std::span<const int> sample_ids,
                               std::span<const double> max_probs) {
    if (sample_ids.size() != max_probs.size()) {
        throw InputError("ids and confidences have different lengths");
    }
    ConfidenceBins bins;
    for (std::size_t i = 0; i < sample_ids.size(); ++i) {
        bins.members[static_cast<std::size_t>(bin_index_for(max_probs[i]))].push_back(sample_ids[i]);
    }
    return bins;
}

ConfidenceBins bin_confidences(std::span<const double> max_probs) {
    std::vector<int> ids(max_probs.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    return bin_confidences(ids, max_probs);
}

std::vector<int> select_for_labeling(const ConfidenceBins& bins, std::size_t budget) {
    std::vector<int> selected = bins.members[0];
    std::size_t remaining = budget;
    for (int b = 1; b < ConfidenceBins::kBinCount; ++b) {
        const auto& bin = bins.members[static_cast<std::size_t>(b)];
        if (bin.size() > remaining) break;
        remaining -= bin.size();
        selected.insert(selected.end(), bin.begin(), bin.end());
    }
    return selected;
}

int selection_frontier(const ConfidenceBins& bins, std::size_t budget) {
    int frontier = 0;
    std::size_t remaining = budget;
    for (int b = 1; b < ConfidenceBins::kBinCount; ++b) {
        const auto& bin = bins.members[static_cast<std::size_t>(b)];
        if (bin.size() > remaining) break;
        remaining -= bin.size();
        frontier = b;
    }
    return frontier;
}

FileOracle::FileOracle(const std::filesystem::path& csv_path) {
    std::ifstream in(csv_path);
    if (!in) throw OracleError("cannot open oracle file " + csv_path.string());
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first && line.find("sample_id") != std::string::npos) {
            first = false;
            continue;
        }
        first = false;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) {
            throw OracleError("malformed oracle line '" + line + "'");
        }
        try {
            labels_[std::stoi(line.substr(0, comma))] = std::stoi(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw OracleError("malformed oracle line '" + line + "'");
        }
    }
}

std::optional<int> FileOracle::label_of(int sample_id) {
    const auto it = labels_.find(sample_id);
    if (it == labels_.end()) return std::nullopt;
    return it->second;
}

void write_selection_request(const std::filesystem::path& path, std::span<const int> ids) {
    std::string body;
    for (int id : ids) {
        body += std::to_string(id);
        body += '\n';
    }
    atomic_write_file(path, body);
}

std::vector<int> read_selection_request(const std::filesystem::path& path) {
    std::istringstream in(read_file(path));
    std::vector<int> ids;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) ids.push_back(std::stoi(line));
    }
    return ids;
}

ThresholdTrainer::ThresholdTrainer(std::vector<double> sample_positions)
    : positions_(std::move(sample_positions)) {}

void ThresholdTrainer::train(std::span<const int> sample_ids, std::span<const int> labels) {
    if (sample_ids.size() != labels.size()) throw InputError("ids and labels differ in length");
    for (std::size_t i = 0; i < sample_ids.size(); ++i) {
        const int id = sample_ids[i];
        if (id < 0 || static_cast<std::size_t>(id) >= positions_.size()) {
            throw InputError("unknown sample id " + std::to_string(id));
        }
        const double x = positions_[static_cast<std::size_t>(id)];
        if (labels[i] == 0) {
            max_class0_ = seen_class0_ ? std::max(max_class0_, x) : x;
            seen_class0_ = true;
        } else {
            min_class1_ = seen_class1_ ? std::min(min_class1_, x) : x;
            seen_class1_ = true;
        }
    }
    if (seen_class0_ && seen_class1_) {
        boundary_ = 0.5 * (max_class0_ + min_class1_);
        margin_ = 0.5 * (min_class1_ - max_class0_);
        fitted_ = true;
    }
}

std::vector<double> ThresholdTrainer::score_max_prob(std::span<const int> sample_ids) {
    std::vector<double> probs(sample_ids.size(), 0.5);
    if (!fitted_) return probs;  // untrained model: maximally uncertain
    for (std::size_t i = 0; i < sample_ids.size(); ++i) {
        const double x = positions_[static_cast<std::size_t>(sample_ids[i])];
        if (margin_ <= 0.0) {
            probs[i] = x == boundary_ ? 0.5 : 1.0;
            continue;
        }
        const double d = std::abs(x - boundary_) / margin_;
        probs[i] = 0.5 + 0.5 * std::min(1.0, d);
    }
    return probs;
}

RoundState run_active_learning_round(RoundState state, Trainer& trainer, LabelOracle& oracle,
                                     const ActiveLearningConfig& config) {
    if (state.unlabeled.empty()) {
        state.converged = true;
        return state;
    }

    const std::vector<double> probs = trainer.score_max_prob(state.unlabeled);
    const ConfidenceBins bins = bin_confidences(state.unlabeled, probs);
    const auto counts = bins.counts();
    const int frontier = selection_frontier(bins, config.budget);
    std::size_t uncertain = 0;
    for (int b = 0; b <= frontier; ++b) uncertain += counts[static_cast<std::size_t>(b)];
    const double min_confidence = *std::min_element(probs.begin(), probs.end());

    const std::vector<int> selected = select_for_labeling(bins, config.budget);

    std::vector<int> labels;
    labels.reserve(selected.size());
    for (int id : selected) {
        const std::optional<int> label = oracle.label_of(id);
        if (!label) {
            throw OracleError("oracle could not label sample " + std::to_string(id) +
                              "; round aborted");
        }
        labels.push_back(*label);
    }

    trainer.train(selected, labels);

    {
        std::vector<int> sorted_sel = selected;
        std::sort(sorted_sel.begin(), sorted_sel.end());
        std::vector<int> still_unlabeled;
        still_unlabeled.reserve(state.unlabeled.size() - selected.size());
        for (int id : state.unlabeled) {
            if (std::binary_search(sorted_sel.begin(), sorted_sel.end(), id)) {
                state.labeled.push_back(id);
            } else {
                still_unlabeled.push_back(id);
            }
        }
        state.unlabeled = std::move(still_unlabeled);
    }

    RoundRecord record;
    record.round_number = state.round_number;
    record.bin_counts = counts;
    record.min_confidence = min_confidence;
    record.uncertain_count = uncertain;
    record.selected_count = selected.size();

    const bool stalled =
        !state.history.empty() && uncertain >= state.history.back().uncertain_count;
    state.converged = min_confidence > config.convergence_threshold || stalled;

    state.history.push_back(record);
    ++state.round_number;
    return state;
}

}  // namespace wzp
