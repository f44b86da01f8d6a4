#include "shapecell/train/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "shapecell/errors.hpp"

namespace shapecell::train {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const std::int64_t x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' needs an integer, got '" + v + "'");
    }
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const std::uint64_t x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' needs an unsigned integer, got '" + v + "'");
    }
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' needs a number, got '" + v + "'");
    }
}

}  // namespace

TrainConfig parse_train_config_text(const std::string& text) {
    TrainConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              " is not 'key = value': " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) + " has an empty " +
                              (key.empty() ? "key" : "value"));

        if (key == "epochs") cfg.epochs = parse_int(key, value);
        else if (key == "batch_size") cfg.batch_size = parse_int(key, value);
        else if (key == "momentum") cfg.momentum = parse_double(key, value);
        else if (key == "weight_decay") cfg.weight_decay = parse_double(key, value);
        else if (key == "warmup_lr") cfg.warmup_lr = parse_double(key, value);
        else if (key == "max_lr") cfg.max_lr = parse_double(key, value);
        else if (key == "min_lr") cfg.min_lr = parse_double(key, value);
        else if (key == "warmup_epochs") cfg.warmup_epochs = parse_int(key, value);
        else if (key == "seed") cfg.seed = parse_uint(key, value);
        else if (key == "mode") cfg.mode = models::model_mode_from_string(value);
        else if (key == "class_count") cfg.class_count = parse_int(key, value);
        else if (key == "input_size") cfg.input_size = parse_int(key, value);
        else if (key == "raw_backbone") cfg.raw_backbone = models::backbone_kind_from_string(value);
        else if (key == "shape_backbone")
            cfg.shape_backbone = models::backbone_kind_from_string(value);
        else if (key == "reduction") cfg.reduction = parse_int(key, value);
        else if (key == "dropout") cfg.dropout = parse_double(key, value);
        else if (key == "train_ratio") cfg.train_ratio = parse_double(key, value);
        else if (key == "val_ratio") cfg.val_ratio = parse_double(key, value);
        else if (key == "test_ratio") cfg.test_ratio = parse_double(key, value);
        else throw ConfigError("unknown config key '" + key + "'");
    }
    validate(cfg);
    return cfg;
}

TrainConfig parse_train_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_train_config_text(buf.str());
}

void validate(const TrainConfig& cfg) {
    if (cfg.epochs < 1) throw ConfigError("epochs must be >= 1");
    if (cfg.batch_size < 1) throw ConfigError("batch_size must be >= 1");
    if (cfg.momentum < 0 || cfg.momentum >= 1) throw ConfigError("momentum must be in [0,1)");
    if (cfg.weight_decay < 0) throw ConfigError("weight_decay must be >= 0");
    if (!(0 < cfg.min_lr && cfg.min_lr <= cfg.warmup_lr && cfg.warmup_lr <= cfg.max_lr))
        throw ConfigError("need 0 < min_lr <= warmup_lr <= max_lr");
    if (cfg.warmup_epochs < 0 || cfg.warmup_epochs >= cfg.epochs)
        throw ConfigError("warmup_epochs must be in [0, epochs)");
    if (cfg.class_count < 2) throw ConfigError("class_count must be >= 2");
    if (cfg.input_size < 4) throw ConfigError("input_size must be >= 4");
    if (cfg.reduction < 1) throw ConfigError("reduction must be >= 1");
    if (cfg.dropout < 0 || cfg.dropout >= 1) throw ConfigError("dropout must be in [0,1)");
    if (cfg.train_ratio <= 0 || cfg.val_ratio <= 0 || cfg.test_ratio <= 0)
        throw ConfigError("split ratios must be positive");
    if (std::abs(cfg.train_ratio + cfg.val_ratio + cfg.test_ratio - 1.0) > 1e-9)
        throw ConfigError("split ratios must sum to 1");
}

std::string to_text(const TrainConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "epochs = " << cfg.epochs << "\n";
    os << "batch_size = " << cfg.batch_size << "\n";
    os << "momentum = " << cfg.momentum << "\n";
    os << "weight_decay = " << cfg.weight_decay << "\n";
    os << "warmup_lr = " << cfg.warmup_lr << "\n";
    os << "max_lr = " << cfg.max_lr << "\n";
    os << "min_lr = " << cfg.min_lr << "\n";
    os << "warmup_epochs = " << cfg.warmup_epochs << "\n";
    os << "seed = " << cfg.seed << "\n";
    os << "mode = " << models::to_string(cfg.mode) << "\n";
    os << "class_count = " << cfg.class_count << "\n";
    os << "input_size = " << cfg.input_size << "\n";
    os << "raw_backbone = "
       << (cfg.raw_backbone == models::BackboneKind::conv_small ? "conv_small" : "conv_large")
       << "\n";
    os << "shape_backbone = "
       << (cfg.shape_backbone == models::BackboneKind::conv_small ? "conv_small" : "conv_large")
       << "\n";
    os << "reduction = " << cfg.reduction << "\n";
    os << "dropout = " << cfg.dropout << "\n";
    os << "train_ratio = " << cfg.train_ratio << "\n";
    os << "val_ratio = " << cfg.val_ratio << "\n";
    os << "test_ratio = " << cfg.test_ratio << "\n";
    return os.str();
}

}  // namespace shapecell::train
