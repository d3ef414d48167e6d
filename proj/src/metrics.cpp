#include "wzp/metrics.hpp"

#include <sstream>

#include "wzp/errors.hpp"

namespace wzp {

ConfusionCounts confusion_from_labels(std::span<const int> y_true, std::span<const int> y_pred,
                                      int target_class) {
    if (y_true.size() != y_pred.size()) {
        throw InputError("label sequences have different lengths");
    }
    if (y_true.empty()) throw InputError("label sequences are empty");
    ConfusionCounts c;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const bool truth = y_true[i] == target_class;
        const bool pred = y_pred[i] == target_class;
        if (truth && pred) ++c.tp;
        else if (!truth && pred) ++c.fp;
        else if (truth && !pred) ++c.fn;
        else ++c.tn;
    }
    return c;
}

double compute_fbeta(double precision, double recall, double beta, bool* degenerate) {
    if (beta <= 0.0) throw ParameterError("beta must be positive");
    if (precision < 0.0 || precision > 1.0 || recall < 0.0 || recall > 1.0) {
        throw InputError("precision and recall must lie in [0,1]");
    }
    if (degenerate) *degenerate = false;
    const double b2 = beta * beta;
    const double denom = b2 * precision + recall;
    if (denom == 0.0) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }
    return (1.0 + b2) * precision * recall / denom;
}

MetricsReport compute_report(const ConfusionCounts& counts) {
    const std::int64_t total = counts.total();
    if (total <= 0) throw InputError("confusion counts are empty");
    if (counts.tp < 0 || counts.fp < 0 || counts.tn < 0 || counts.fn < 0) {
        throw InputError("confusion counts must be non-negative");
    }

    MetricsReport r;
    r.counts = counts;
    r.accuracy = static_cast<double>(counts.tp + counts.tn) / static_cast<double>(total);
    r.misclassifications = counts.fp + counts.fn;

    if (counts.tp + counts.fp == 0) {
        r.precision = 0.0;
        r.degenerate.precision = true;
    } else {
        r.precision = static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fp);
    }
    if (counts.tp + counts.fn == 0) {
        r.recall = 0.0;
        r.degenerate.recall = true;
    } else {
        r.recall = static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fn);
    }

    r.f1 = compute_fbeta(r.precision, r.recall, 1.0, &r.degenerate.f1);
    r.f0_5 = compute_fbeta(r.precision, r.recall, 0.5, &r.degenerate.f0_5);
    r.f2 = compute_fbeta(r.precision, r.recall, 2.0, &r.degenerate.f2);
    return r;
}

std::string MetricsReport::to_text() const {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(6);
    out << "accuracy=" << accuracy << '\n'
        << "precision=" << precision << '\n'
        << "recall=" << recall << '\n'
        << "f1=" << f1 << '\n'
        << "f0.5=" << f0_5 << '\n'
        << "f2=" << f2 << '\n'
        << "tp=" << counts.tp << '\n'
        << "fp=" << counts.fp << '\n'
        << "tn=" << counts.tn << '\n'
        << "fn=" << counts.fn << '\n'
        << "misclassifications=" << misclassifications << '\n';
    out << "degenerate=";
    bool first = true;
    const std::pair<const char*, bool> flags[] = {
        {"precision", degenerate.precision}, {"recall", degenerate.recall},
        {"f1", degenerate.f1},               {"f0.5", degenerate.f0_5},
        {"f2", degenerate.f2},
    };
    for (const auto& [name, set] : flags) {
        if (!set) continue;
        if (!first) out << ',';
        out << name;
        first = false;
    }
    if (first) out << "none";
    out << '\n';
    return out.str();
}

}  // namespace wzp
