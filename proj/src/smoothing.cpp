#include "wzp/smoothing.hpp"

#include "wzp/kernels.hpp"

namespace wzp {

std::vector<double> SmoothingConfig::weights() const {
    if (radius < 0) throw ParameterError("smoothing radius must be non-negative");
    std::vector<double> w(static_cast<std::size_t>(2 * radius + 1));
    for (int d = -radius; d <= radius; ++d) {
        w[static_cast<std::size_t>(d + radius)] =
            profile == WeightProfile::Uniform ? 1.0 : static_cast<double>(radius + 1 - std::abs(d));
    }
    return w;
}

WeightProfile weight_profile_from_name(const std::string& name) {
    if (name == "uniform") return WeightProfile::Uniform;
    if (name == "triangular") return WeightProfile::Triangular;
    throw ParameterError("unknown weight profile '" + name + "' (use uniform or triangular)");
}

ProbabilityMatrix smooth_probabilities(const ProbabilityMatrix& probs, const SmoothingConfig& cfg) {
    if (cfg.radius == 0 || probs.rows() == 0) return probs;
    const std::vector<double> weights = cfg.weights();
    ProbabilityMatrix out(probs.rows(), probs.cols());
    kernels::smooth_rows_omp(probs.data(), static_cast<int>(probs.rows()),
                             static_cast<int>(probs.cols()), cfg.radius, weights.data(),
                             out.data());
    return out;
}

std::vector<int> labels_from_probabilities(const ProbabilityMatrix& probs) {
    std::vector<int> labels(probs.rows());
    for (std::size_t i = 0; i < probs.rows(); ++i) {
        const auto row = probs.row(i);
        int best = 0;
        for (std::size_t c = 1; c < row.size(); ++c) {
            if (row[c] > row[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
        }
        labels[i] = best;
    }
    return labels;
}

}  // namespace wzp
