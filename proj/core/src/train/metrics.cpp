#include "shapecell/train/metrics.hpp"

#include <iomanip>
#include <sstream>

#include "shapecell/errors.hpp"

namespace shapecell::train {

Metrics compute_metrics(const std::vector<std::int64_t>& predictions,
                        const std::vector<std::int64_t>& labels, std::int64_t k) {
    if (predictions.empty()) throw InvalidInputError("compute_metrics: empty input");
    if (predictions.size() != labels.size())
        throw InvalidInputError("compute_metrics: " + std::to_string(predictions.size()) +
                                " predictions vs " + std::to_string(labels.size()) + " labels");
    if (k < 1) throw InvalidInputError("compute_metrics: class count must be >= 1");

    Metrics m;
    m.k = k;
    m.confusion.assign(static_cast<std::size_t>(k * k), 0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const std::int64_t t = labels[i], p = predictions[i];
        if (t < 0 || t >= k || p < 0 || p >= k)
            throw InvalidInputError("compute_metrics: label/prediction out of range [0," +
                                    std::to_string(k) + ")");
        ++m.confusion[static_cast<std::size_t>(t * k + p)];
    }

    std::int64_t correct = 0;
    for (std::int64_t c = 0; c < k; ++c) correct += m.confusion_at(c, c);
    m.accuracy = static_cast<double>(correct) / static_cast<double>(labels.size());

    double psum = 0, rsum = 0, fsum = 0;
    for (std::int64_t c = 0; c < k; ++c) {
        std::int64_t row = 0, col = 0;
        for (std::int64_t j = 0; j < k; ++j) {
            row += m.confusion_at(c, j);
            col += m.confusion_at(j, c);
        }
        const auto diag = static_cast<double>(m.confusion_at(c, c));
        const double prec = col > 0 ? diag / static_cast<double>(col) : 0.0;
        const double rec = row > 0 ? diag / static_cast<double>(row) : 0.0;
        const double f1 = prec + rec > 0 ? 2 * prec * rec / (prec + rec) : 0.0;
        m.per_class_precision.push_back(prec);
        m.per_class_recall.push_back(rec);
        m.per_class_f1.push_back(f1);
        psum += prec;
        rsum += rec;
        fsum += f1;
    }
    m.macro_precision = psum / static_cast<double>(k);
    m.macro_recall = rsum / static_cast<double>(k);
    m.macro_f1 = fsum / static_cast<double>(k);
    return m;
}

std::string format_confusion(const Metrics& m, const std::vector<std::string>& class_names) {
    std::ostringstream os;
    os << std::setw(12) << "true\\pred";
    for (std::int64_t c = 0; c < m.k; ++c) {
        const std::string name = c < static_cast<std::int64_t>(class_names.size())
                                     ? class_names[static_cast<std::size_t>(c)]
                                     : "c" + std::to_string(c);
        os << std::setw(8) << name;
    }
    os << "\n";
    for (std::int64_t t = 0; t < m.k; ++t) {
        const std::string name = t < static_cast<std::int64_t>(class_names.size())
                                     ? class_names[static_cast<std::size_t>(t)]
                                     : "c" + std::to_string(t);
        os << std::setw(12) << name;
        for (std::int64_t p = 0; p < m.k; ++p) os << std::setw(8) << m.confusion_at(t, p);
        os << "\n";
    }
    return os.str();
}

}  // namespace shapecell::train
