#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace wzp {

// Binary confusion counts relative to one target class.
struct ConfusionCounts {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t tn = 0;
    std::int64_t fn = 0;

    std::int64_t total() const { return tp + fp + tn + fn; }
};

// Which measures hit a 0/0 convention and were mapped to 0.
struct DegenerateFlags {
    bool precision = false;
    bool recall = false;
    bool f1 = false;
    bool f0_5 = false;
    bool f2 = false;

    bool any() const { return precision || recall || f1 || f0_5 || f2; }
};

struct MetricsReport {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double f0_5 = 0.0;
    double f2 = 0.0;
    std::int64_t misclassifications = 0;
    ConfusionCounts counts;
    DegenerateFlags degenerate;

    // Flat key=value lines for CLI output.
    std::string to_text() const;
};

ConfusionCounts confusion_from_labels(std::span<const int> y_true, std::span<const int> y_pred,
                                      int target_class);

// F_beta = (1 + beta^2) * P * R / (beta^2 * P + R); 0/0 maps to 0 and flags
// degenerate. beta < 1 weights precision more, beta > 1 weights recall more.
double compute_fbeta(double precision, double recall, double beta, bool* degenerate = nullptr);

MetricsReport compute_report(const ConfusionCounts& counts);

}  // namespace wzp
