#include <doctest.h>

#include <fstream>
#include <numeric>
#include <random>
#include <set>

#include "test_util.hpp"
#include "wzp/active_learning.hpp"
#include "wzp/errors.hpp"

using namespace wzp;

namespace {

// Separable 1-D toy problem: class 1 above the gap, class 0 below it.
struct ToyProblem {
    std::vector<double> positions;
    std::vector<int> truth;

    explicit ToyProblem(int n = 2000, double gap_low = 0.58, double gap_high = 0.62) {
        for (int i = 0; i < n; ++i) {
            const double x = static_cast<double>(i) / (n - 1);
            if (x > gap_low && x < gap_high) continue;  // keep the margin empty
            positions.push_back(x);
            truth.push_back(x >= gap_high ? 1 : 0);
        }
    }

    int size() const { return static_cast<int>(positions.size()); }
};

class PerfectOracle : public LabelOracle {
public:
    explicit PerfectOracle(const ToyProblem& toy) : toy_(toy) {}
    std::optional<int> label_of(int id) override {
        return toy_.truth[static_cast<std::size_t>(id)];
    }

private:
    const ToyProblem& toy_;
};

class FailingOracle : public LabelOracle {
public:
    std::optional<int> label_of(int) override { return std::nullopt; }
};

RoundState seeded_state(const ToyProblem& toy, ThresholdTrainer& trainer) {
    RoundState state;
    // Hand-labeled seed set: a coarse grid across the whole pool.
    std::vector<int> seed_labels;
    for (int id = 0; id < toy.size(); id += 100) {
        state.labeled.push_back(id);
        seed_labels.push_back(toy.truth[static_cast<std::size_t>(id)]);
    }
    trainer.train(state.labeled, seed_labels);
    for (int id = 0; id < toy.size(); ++id) {
        if (id % 100 != 0) state.unlabeled.push_back(id);
    }
    return state;
}

}  // namespace

TEST_SUITE("active_learning") {

TEST_CASE("binning follows the stratified boundaries") {
    CHECK(bin_index_for(0.5) == 0);   // the closed upper bound of the mandatory bin
    CHECK(bin_index_for(0.0) == 0);
    CHECK(bin_index_for(0.61) == 2);
    CHECK(bin_index_for(0.6) == 1);
    CHECK(bin_index_for(1.0) == 5);
    CHECK_THROWS_AS(bin_index_for(-0.1), InputError);
    CHECK_THROWS_AS(bin_index_for(1.1), InputError);
}

TEST_CASE("bin counts for a small scored set") {
    const std::vector<double> probs{0.3, 0.55, 0.95};
    const ConfidenceBins bins = bin_confidences(probs);
    CHECK(bins.counts() == std::array<std::size_t, 6>{1, 1, 0, 0, 0, 1});
    CHECK(bins.total() == 3);
}

TEST_CASE("binning is a partition of the scored samples") {
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng() % 500;
        std::vector<double> probs(n);
        for (auto& v : probs) v = uni(rng);
        const ConfidenceBins bins = bin_confidences(probs);
        CHECK(bins.total() == n);
        std::set<int> seen;
        for (const auto& members : bins.members) {
            for (int id : members) CHECK(seen.insert(id).second);
        }
        CHECK(seen.size() == n);
    }
}

TEST_CASE("the mandatory bin is always selected, even with zero budget") {
    std::vector<double> probs(10, 0.2);
    const ConfidenceBins bins = bin_confidences(probs);
    const std::vector<int> selected = select_for_labeling(bins, 0);
    CHECK(selected.size() == 10);
}

TEST_CASE("whole next bin joins the selection when it fits the budget") {
    // 50k in the mandatory bin and 30k in (0.5,0.6]: a 30k budget reaches
    // exactly one bin higher.
    std::vector<double> probs;
    for (int i = 0; i < 50000; ++i) probs.push_back(0.4);
    for (int i = 0; i < 30000; ++i) probs.push_back(0.55);
    for (int i = 0; i < 10000; ++i) probs.push_back(0.65);
    const ConfidenceBins bins = bin_confidences(probs);
    const std::vector<int> selected = select_for_labeling(bins, 30000);
    CHECK(selected.size() == 80000);
    CHECK(selection_frontier(bins, 30000) == 1);
}

TEST_CASE("bins are never split") {
    std::vector<double> probs;
    for (int i = 0; i < 5; ++i) probs.push_back(0.55);  // bin 1
    for (int i = 0; i < 4; ++i) probs.push_back(0.65);  // bin 2
    const ConfidenceBins bins = bin_confidences(probs);
    // Budget 5 takes bin 1 whole; bin 2 (4 samples) exceeds the remaining 0.
    const std::vector<int> selected = select_for_labeling(bins, 5);
    CHECK(selected.size() == 5);
    // Budget 8 still cannot split bin 2.
    CHECK(select_for_labeling(bins, 8).size() == 5);
    CHECK(select_for_labeling(bins, 9).size() == 9);
}

TEST_CASE("selection is monotone in the budget") {
    std::mt19937 rng(62);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> probs(200);
        for (auto& v : probs) v = uni(rng);
        const ConfidenceBins bins = bin_confidences(probs);
        const std::size_t b1 = rng() % 200;
        const std::size_t b2 = b1 + rng() % 100;
        const std::vector<int> s1 = select_for_labeling(bins, b1);
        const std::vector<int> s2 = select_for_labeling(bins, b2);
        const std::set<int> set2(s2.begin(), s2.end());
        for (int id : s1) CHECK(set2.contains(id));
    }
}

TEST_CASE("zero unlabeled samples converge immediately, state unchanged") {
    ThresholdTrainer trainer({0.1, 0.9});
    ToyProblem toy(10);
    PerfectOracle oracle(toy);
    RoundState state;
    state.labeled = {0, 1};
    const RoundState out = run_active_learning_round(state, trainer, oracle,
                                                     {.budget = 10, .convergence_threshold = 0.9});
    CHECK(out.converged);
    CHECK(out.round_number == 0);
    CHECK(out.labeled == state.labeled);
    CHECK(out.history.empty());
}

TEST_CASE("uniformly confident pools converge with nothing selected") {
    struct ConfidentTrainer : Trainer {
        void train(std::span<const int>, std::span<const int>) override {}
        std::vector<double> score_max_prob(std::span<const int> ids) override {
            return std::vector<double>(ids.size(), 0.95);
        }
    } trainer;
    ToyProblem toy(100);
    PerfectOracle oracle(toy);
    RoundState state;
    for (int i = 0; i < toy.size(); ++i) state.unlabeled.push_back(i);

    const RoundState out =
        run_active_learning_round(state, trainer, oracle, {.budget = 0, .convergence_threshold = 0.9});
    CHECK(out.converged);
    CHECK(out.history.back().selected_count == 0);
    CHECK(out.history.back().min_confidence == doctest::Approx(0.95));
}

TEST_CASE("oracle failure aborts the round and leaves state untouched") {
    ToyProblem toy(50);
    ThresholdTrainer trainer(toy.positions);
    RoundState state = seeded_state(toy, trainer);
    const std::size_t labeled_before = state.labeled.size();
    FailingOracle oracle;
    CHECK_THROWS_AS(
        run_active_learning_round(state, trainer, oracle, {.budget = 10}), OracleError);
    CHECK(state.labeled.size() == labeled_before);
    CHECK(state.history.empty());
}

TEST_CASE("uncertainty shrinks on the separable toy problem") {
    ToyProblem toy;
    ThresholdTrainer trainer(toy.positions);
    PerfectOracle oracle(toy);
    RoundState state = seeded_state(toy, trainer);

    std::vector<std::size_t> uncertain_counts;
    for (int round = 0; round < 5; ++round) {
        state = run_active_learning_round(state, trainer, oracle,
                                          {.budget = 600, .convergence_threshold = 0.9});
        uncertain_counts.push_back(state.history.back().uncertain_count);
    }
    for (std::size_t i = 1; i < uncertain_counts.size(); ++i) {
        CHECK(uncertain_counts[i] <= uncertain_counts[i - 1]);
    }
    CHECK(uncertain_counts.back() == 0);
    CHECK(state.converged);

    // Labeled growth is monotone and duplicate-free.
    std::set<int> unique(state.labeled.begin(), state.labeled.end());
    CHECK(unique.size() == state.labeled.size());
}

TEST_CASE("file oracle reads the sample_id,label CSV") {
    test::TempDir dir;
    const auto csv = dir / "labels.csv";
    {
        std::ofstream out(csv);
        out << "sample_id,label\n3,1\n17,0\n";
    }
    FileOracle oracle(csv);
    CHECK(oracle.label_of(3) == 1);
    CHECK(oracle.label_of(17) == 0);
    CHECK(!oracle.label_of(99).has_value());
}

TEST_CASE("selection request files hold one id per line") {
    test::TempDir dir;
    const auto path = dir / "request.txt";
    const std::vector<int> ids{5, 2, 99};
    write_selection_request(path, ids);
    CHECK(read_selection_request(path) == ids);
}

}  // TEST_SUITE
