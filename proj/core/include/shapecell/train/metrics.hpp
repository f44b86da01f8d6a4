#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace shapecell::train {

struct Metrics {
    double accuracy = 0;
    double macro_precision = 0;
    double macro_recall = 0;
    double macro_f1 = 0;
    std::int64_t k = 0;
    std::vector<std::int64_t> confusion;  // K*K row-major, rows = truth
    std::vector<double> per_class_precision, per_class_recall, per_class_f1;

    std::int64_t confusion_at(std::int64_t truth, std::int64_t pred) const {
        return confusion[static_cast<std::size_t>(truth * k + pred)];
    }
};

// Confusion-matrix metrics with macro (unweighted per-class mean)
// averaging; a class with precision+recall = 0 contributes F1 = 0, and
// macro-F1 averages per-class F1 values, never macro-P/macro-R.
Metrics compute_metrics(const std::vector<std::int64_t>& predictions,
                        const std::vector<std::int64_t>& labels, std::int64_t k);

// Plain-text confusion matrix with class-name headers.
std::string format_confusion(const Metrics& m, const std::vector<std::string>& class_names);

}  // namespace shapecell::train
