#pragma once

#include <iosfwd>
#include <vector>

#include "shapecell/data/batch.hpp"
#include "shapecell/data/split.hpp"
#include "shapecell/models/dual_branch.hpp"
#include "shapecell/train/config.hpp"
#include "shapecell/train/metrics.hpp"

namespace shapecell::train {

struct EpochLog {
    std::int64_t epoch = 0;  // 1-based in logs
    double lr = 0;
    double train_loss = 0;
    double val_acc = 0;
    double val_macro_f1 = 0;
};

struct TrainResult {
    std::vector<EpochLog> log;
    Metrics test_metrics;
    double best_val_acc = 0;
    std::int64_t best_epoch = 0;  // 1-based; 0 when no val split exists
    models::DualBranchModel model;  // carries the selected (best-val) weights
};

struct EvalResult {
    Metrics metrics;
    std::vector<std::int64_t> predictions;
};

// Deterministic eval-mode pass; per-sample results are independent of
// batch grouping.
EvalResult evaluate(const models::DualBranchModel& model,
                    const std::vector<data::LoadedSample>& cache, std::int64_t batch_size);

std::vector<std::int64_t> argmax_rows(const nn::Tensor& logits);

// Full recipe: seeded shuffling and augmentation, cosine-warmup SGD,
// per-epoch validation, best-val weight selection, final test metrics.
// Aborts with NumericalError when the loss turns non-finite.
TrainResult train_model(const data::DatasetSplit& split, const TrainConfig& cfg,
                        std::ostream* progress = nullptr);

// CSV rows for the per-epoch log, `epoch,lr,train_loss,val_acc,val_macro_f1`.
std::string format_log_csv(const std::vector<EpochLog>& log);

}  // namespace shapecell::train
