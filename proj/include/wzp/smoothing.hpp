#pragma once

#include <string>
#include <vector>

#include "wzp/classify.hpp"

namespace wzp {

enum class WeightProfile { Uniform, Triangular };

struct SmoothingConfig {
    int radius = 0;
    WeightProfile profile = WeightProfile::Triangular;

    // Symmetric positive window of length 2 * radius + 1.
    std::vector<double> weights() const;
};

WeightProfile weight_profile_from_name(const std::string& name);

// Weighted mean of rows i-r..i+r per row, truncated and renormalized at the
// sequence edges. radius 0 is the identity. Output rows stay on the simplex.
ProbabilityMatrix smooth_probabilities(const ProbabilityMatrix& probs, const SmoothingConfig& cfg);

// Per-row argmax; ties break toward the lowest class index.
std::vector<int> labels_from_probabilities(const ProbabilityMatrix& probs);

}  // namespace wzp
