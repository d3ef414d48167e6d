#include <doctest.h>

#include <random>

#include "wzp/smoothing.hpp"

using namespace wzp;

namespace {

ProbabilityMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    ProbabilityMatrix m;
    for (const auto& r : rows) m.append_row(r);
    return m;
}

ProbabilityMatrix random_simplex_rows(std::mt19937& rng, std::size_t l, std::size_t k) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    ProbabilityMatrix m(l, k);
    for (std::size_t i = 0; i < l; ++i) {
        double sum = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            m.row(i)[c] = uni(rng) + 1e-9;
            sum += m.row(i)[c];
        }
        for (std::size_t c = 0; c < k; ++c) m.row(i)[c] /= sum;
    }
    return m;
}

}  // namespace

TEST_SUITE("smoothing") {

TEST_CASE("constant input is a fixed point") {
    const ProbabilityMatrix constant = from_rows({{0.3, 0.7}, {0.3, 0.7}, {0.3, 0.7}, {0.3, 0.7}});
    for (const WeightProfile p : {WeightProfile::Uniform, WeightProfile::Triangular}) {
        const ProbabilityMatrix out = smooth_probabilities(constant, {2, p});
        for (std::size_t i = 0; i < out.rows(); ++i) {
            CHECK(out.row(i)[0] == doctest::Approx(0.3));
            CHECK(out.row(i)[1] == doctest::Approx(0.7));
        }
    }
}

TEST_CASE("uniform radius-1 window averages three rows") {
    const ProbabilityMatrix in = from_rows({{1, 0}, {0, 1}, {1, 0}});
    const ProbabilityMatrix out = smooth_probabilities(in, {1, WeightProfile::Uniform});
    CHECK(out.row(1)[0] == doctest::Approx(2.0 / 3.0));
    CHECK(out.row(1)[1] == doctest::Approx(1.0 / 3.0));
    // edge rows renormalize over the two valid entries
    CHECK(out.row(0)[0] == doctest::Approx(0.5));
    CHECK(out.row(2)[0] == doctest::Approx(0.5));
}

TEST_CASE("radius 0 is the identity") {
    std::mt19937 rng(31);
    const ProbabilityMatrix in = random_simplex_rows(rng, 17, 3);
    CHECK(smooth_probabilities(in, {0, WeightProfile::Triangular}) == in);
}

TEST_CASE("smoothing preserves the simplex") {
    std::mt19937 rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        const ProbabilityMatrix in =
            random_simplex_rows(rng, 1 + rng() % 40, 2 + rng() % 3);
        for (const WeightProfile p : {WeightProfile::Uniform, WeightProfile::Triangular}) {
            const SmoothingConfig cfg{static_cast<int>(rng() % 5), p};
            smooth_probabilities(in, cfg).validate_simplex(1e-9);
        }
    }
}

TEST_CASE("an isolated uniform frame is relabeled to match its neighbors") {
    // The behavior the smoothing exists for: a low-confidence frame flanked
    // by confident neighbors takes their class.
    for (int r = 1; r <= 3; ++r) {
        for (const WeightProfile p : {WeightProfile::Uniform, WeightProfile::Triangular}) {
            std::vector<std::vector<double>> rows(static_cast<std::size_t>(2 * r + 3),
                                                  {0.05, 0.95});
            const std::size_t center = rows.size() / 2;
            rows[center] = {0.5, 0.5};
            const ProbabilityMatrix smoothed =
                smooth_probabilities(from_rows(rows), {r, p});
            const std::vector<int> labels = labels_from_probabilities(smoothed);
            CHECK(labels[center] == 1);
        }
    }
}

TEST_CASE("labels are the per-row argmax with ties toward the lowest index") {
    const ProbabilityMatrix in = from_rows({{0.2, 0.8}, {0.5, 0.5}, {0.8, 0.2}});
    CHECK(labels_from_probabilities(in) == std::vector<int>{1, 0, 0});
}

TEST_CASE("labels are stable when smoothing leaves rows unchanged") {
    std::mt19937 rng(33);
    const ProbabilityMatrix in = random_simplex_rows(rng, 9, 2);
    const ProbabilityMatrix same = smooth_probabilities(in, {0, WeightProfile::Uniform});
    CHECK(labels_from_probabilities(in) == labels_from_probabilities(same));
}

TEST_CASE("triangular weights are symmetric and peak at the center") {
    const SmoothingConfig cfg{3, WeightProfile::Triangular};
    const std::vector<double> w = cfg.weights();
    CHECK(w == std::vector<double>{1, 2, 3, 4, 3, 2, 1});
}

}  // TEST_SUITE
