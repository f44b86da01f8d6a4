#include "shapecell/train/trainer.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "shapecell/errors.hpp"
#include "shapecell/nn/ops.hpp"
#include "shapecell/nn/tape.hpp"
#include "shapecell/train/schedule.hpp"
#include "shapecell/train/sgd.hpp"

namespace shapecell::train {

std::vector<std::int64_t> argmax_rows(const nn::Tensor& logits) {
    const std::int64_t n = logits.dim(0), k = logits.dim(1);
    std::vector<std::int64_t> out(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        const float* row = logits.data() + i * k;
        std::int64_t best = 0;
        for (std::int64_t j = 1; j < k; ++j)
            if (row[j] > row[best]) best = j;
        out[static_cast<std::size_t>(i)] = best;
    }
    return out;
}

EvalResult evaluate(const models::DualBranchModel& model,
                    const std::vector<data::LoadedSample>& cache, std::int64_t batch_size) {
    nn::NoGradGuard no_grad;
    const bool dual = model.config().mode == models::ModelMode::dual;
    Rng dummy = Rng::seeded(0, 0);
    EvalResult res;
    std::vector<std::int64_t> labels;
    const auto n = static_cast<std::int64_t>(cache.size());
    for (std::int64_t at = 0; at < n; at += batch_size) {
        std::vector<std::size_t> idx;
        for (std::int64_t i = at; i < std::min(n, at + batch_size); ++i)
            idx.push_back(static_cast<std::size_t>(i));
        auto batch = data::make_batch(cache, idx, model.config().input_size, dual, false, 0, 0);
        auto logits = model.forward(batch.images, batch.masks, false, dummy);
        for (auto p : argmax_rows(logits)) res.predictions.push_back(p);
        labels.insert(labels.end(), batch.labels.begin(), batch.labels.end());
    }
    res.metrics = compute_metrics(res.predictions, labels, model.config().class_count);
    return res;
}

namespace {

void require_masks(const std::vector<data::LabeledSample>& samples) {
    for (const auto& s : samples)
        if (s.mask_path.empty())
            throw DataError("dual mode needs a masks/ tree: no mask for " +
                            s.image_path.string() +
                            " (generate one with the segment command)");
}

std::vector<std::vector<float>> snapshot(
    const std::vector<std::pair<std::string, nn::Tensor>>& params) {
    std::vector<std::vector<float>> out;
    for (const auto& [name, p] : params) out.push_back(p.values());
    return out;
}

void restore(std::vector<std::pair<std::string, nn::Tensor>>& params,
             const std::vector<std::vector<float>>& state) {
    for (std::size_t i = 0; i < params.size(); ++i) params[i].second.values() = state[i];
}

}  // namespace

TrainResult train_model(const data::DatasetSplit& split, const TrainConfig& cfg,
                        std::ostream* progress) {
    validate(cfg);
    if (split.train.empty()) throw DataError("training split is empty");
    const bool dual = cfg.mode == models::ModelMode::dual;
    if (dual) {
        require_masks(split.train);
        require_masks(split.val);
        require_masks(split.test);
    }

    auto train_cache = data::load_all(split.train);
    auto val_cache = data::load_all(split.val);
    auto test_cache = data::load_all(split.test);

    TrainResult res;
    res.model = models::DualBranchModel(cfg.model_config());
    Rng init_rng = Rng::seeded(cfg.seed, 0xC0DE);
    res.model.init(init_rng);
    auto params = res.model.parameters();
    SgdOptimizer opt(params, cfg.momentum, cfg.weight_decay);

    const auto n_train = static_cast<std::int64_t>(train_cache.size());
    const std::int64_t steps_per_epoch = (n_train + cfg.batch_size - 1) / cfg.batch_size;
    Rng shuffle_rng = Rng::seeded(cfg.seed, 0x5807);
    Rng dropout_rng = Rng::seeded(cfg.seed, 0xD80);

    std::vector<std::size_t> order(static_cast<std::size_t>(n_train));
    std::iota(order.begin(), order.end(), 0u);

    std::vector<std::vector<float>> best_state = snapshot(params);
    double best_val = -1.0;
    std::int64_t global_step = 0;

    for (std::int64_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        double loss_sum = 0.0;
        double epoch_lr = lr_at(global_step, cfg, steps_per_epoch);
        for (std::int64_t at = 0, batch_i = 0; at < n_train; at += cfg.batch_size, ++batch_i) {
            std::vector<std::size_t> idx(order.begin() + at,
                                         order.begin() + std::min(n_train, at + cfg.batch_size));
            auto batch = data::make_batch(train_cache, idx, cfg.input_size, dual, true, cfg.seed,
                                          epoch);
            auto logits = res.model.forward(batch.images, batch.masks, true, dropout_rng);
            auto loss = nn::softmax_cross_entropy(logits, batch.labels);
            const double lv = loss[0];
            const double lr = lr_at(global_step, cfg, steps_per_epoch);
            if (!std::isfinite(lv)) {
                nn::TapeT<float>::active().clear();
                throw NumericalError("non-finite training loss at epoch " +
                                     std::to_string(epoch + 1) + ", batch " +
                                     std::to_string(batch_i + 1) + ", lr " + std::to_string(lr));
            }
            nn::backward(loss);
            opt.step(lr);
            ++global_step;
            loss_sum += lv * static_cast<double>(idx.size());
        }

        EpochLog row;
        row.epoch = epoch + 1;
        row.lr = epoch_lr;
        row.train_loss = loss_sum / static_cast<double>(n_train);
        if (!val_cache.empty()) {
            auto ev = evaluate(res.model, val_cache, cfg.batch_size);
            row.val_acc = ev.metrics.accuracy;
            row.val_macro_f1 = ev.metrics.macro_f1;
        }
        res.log.push_back(row);

        const bool is_best = val_cache.empty() || row.val_acc > best_val;
        if (is_best) {
            best_val = row.val_acc;
            best_state = snapshot(params);
            res.best_epoch = val_cache.empty() ? 0 : epoch + 1;
            res.best_val_acc = row.val_acc;
        }
        if (progress)
            *progress << "epoch " << (epoch + 1) << "/" << cfg.epochs << "  lr " << row.lr
                      << "  loss " << row.train_loss << "  val_acc " << row.val_acc << "\n";
    }

    restore(params, best_state);
    if (!test_cache.empty()) {
        res.test_metrics = evaluate(res.model, test_cache, cfg.batch_size).metrics;
    } else {
        res.test_metrics.k = cfg.class_count;
        res.test_metrics.confusion.assign(static_cast<std::size_t>(cfg.class_count * cfg.class_count), 0);
    }
    return res;
}

std::string format_log_csv(const std::vector<EpochLog>& log) {
    std::string out = "epoch,lr,train_loss,val_acc,val_macro_f1\n";
    char buf[160];
    for (const auto& r : log) {
        std::snprintf(buf, sizeof(buf), "%lld,%.8e,%.6f,%.6f,%.6f\n",
                      static_cast<long long>(r.epoch), r.lr, r.train_loss, r.val_acc,
                      r.val_macro_f1);
        out += buf;
    }
    return out;
}

}  // namespace shapecell::train
