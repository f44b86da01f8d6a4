#include "shapecell/models/state.hpp"

#include <cmath>
#include <map>

#include "shapecell/errors.hpp"
#include "shapecell/nn/checkpoint.hpp"

namespace shapecell::models {

namespace {

constexpr const char* kMetaName = "__meta__";

// Layout: mode, class_count, input_size, reduction, dropout, then the two
// resolved backbone width lists, each length-prefixed.
nn::Tensor encode_meta(const ModelConfig& cfg) {
    const auto raw = cfg.resolved_raw_widths();
    const auto shape = cfg.resolved_shape_widths();
    std::vector<float> v = {cfg.mode == ModelMode::dual ? 0.0f : 1.0f,
                            static_cast<float>(cfg.class_count),
                            static_cast<float>(cfg.input_size),
                            static_cast<float>(cfg.reduction),
                            static_cast<float>(cfg.dropout)};
    v.push_back(static_cast<float>(raw.size()));
    for (auto w : raw) v.push_back(static_cast<float>(w));
    v.push_back(static_cast<float>(shape.size()));
    for (auto w : shape) v.push_back(static_cast<float>(w));
    const auto n = static_cast<std::int64_t>(v.size());  // read before the move
    return nn::Tensor::from_data(nn::Shape{n}, std::move(v));
}

ModelConfig decode_meta(const nn::Tensor& meta) {
    const auto get = [&meta](std::int64_t i) {
        if (i >= meta.numel()) throw DataError("malformed checkpoint metadata");
        return static_cast<std::int64_t>(std::lround(meta[i]));
    };
    if (meta.numel() < 7) throw DataError("malformed checkpoint metadata");
    ModelConfig cfg;
    cfg.mode = meta[0] == 0.0f ? ModelMode::dual : ModelMode::rgb_only;
    cfg.class_count = get(1);
    cfg.input_size = get(2);
    cfg.reduction = get(3);
    cfg.dropout = static_cast<double>(meta[4]);
    std::int64_t at = 5;
    const std::int64_t n_raw = get(at++);
    for (std::int64_t i = 0; i < n_raw; ++i) cfg.raw_widths.push_back(get(at++));
    const std::int64_t n_shape = get(at++);
    for (std::int64_t i = 0; i < n_shape; ++i) cfg.shape_widths.push_back(get(at++));
    if (at != meta.numel() || cfg.raw_widths.empty())
        throw DataError("malformed checkpoint metadata");
    return cfg;
}

}  // namespace

void save_model(const std::string& path, const DualBranchModel& model) {
    std::vector<std::pair<std::string, nn::Tensor>> entries;
    entries.emplace_back(kMetaName, encode_meta(model.config()));
    for (const auto& [name, t] : model.parameters()) entries.emplace_back(name, t.clone_values());
    nn::save_checkpoint(path, entries);
}

void load_weights(DualBranchModel& model,
                  const std::vector<std::pair<std::string, nn::Tensor>>& entries) {
    std::map<std::string, nn::Tensor> by_name;
    for (const auto& [name, t] : entries)
        if (name != kMetaName) by_name.emplace(name, t);
    auto params = model.parameters();
    if (by_name.size() != params.size())
        throw DataError("checkpoint holds " + std::to_string(by_name.size()) +
                        " arrays but the model has " + std::to_string(params.size()) +
                        " parameters");
    for (auto& [name, p] : params) {
        auto it = by_name.find(name);
        if (it == by_name.end()) throw DataError("checkpoint is missing parameter '" + name + "'");
        if (it->second.shape() != p.shape())
            throw DataError("shape mismatch for '" + name + "': checkpoint " +
                            nn::shape_to_string(it->second.shape()) + " vs model " +
                            nn::shape_to_string(p.shape()));
        p.values() = it->second.values();
        p.set_requires_grad(true);
    }
}

DualBranchModel load_model(const std::string& path) {
    auto entries = nn::load_checkpoint(path);
    const nn::Tensor* meta = nullptr;
    for (const auto& [name, t] : entries)
        if (name == kMetaName) meta = &t;
    if (!meta) throw DataError("checkpoint lacks architecture metadata: " + path);
    DualBranchModel model(decode_meta(*meta));
    load_weights(model, entries);
    return model;
}

}  // namespace shapecell::models
