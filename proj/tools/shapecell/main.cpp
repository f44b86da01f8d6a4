#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shapecell/data/batch.hpp"
#include "shapecell/data/dataset.hpp"
#include "shapecell/data/split.hpp"
#include "shapecell/data/synth.hpp"
#include "shapecell/errors.hpp"
#include "shapecell/imaging/png_io.hpp"
#include "shapecell/imaging/segment.hpp"
#include "shapecell/models/gradcheck_suite.hpp"
#include "shapecell/models/state.hpp"
#include "shapecell/train/ablation.hpp"
#include "shapecell/train/config.hpp"
#include "shapecell/train/trainer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace shapecell;

namespace {

std::string format_metrics(const train::Metrics& m, const std::vector<std::string>& names) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "accuracy %.4f  macro_precision %.4f  macro_recall %.4f  macro_f1 %.4f\n",
                  m.accuracy, m.macro_precision, m.macro_recall, m.macro_f1);
    return std::string(buf) + train::format_confusion(m, names);
}

json metrics_to_json(const train::Metrics& m, const std::vector<std::string>& names) {
    json j;
    j["accuracy"] = m.accuracy;
    j["macro_precision"] = m.macro_precision;
    j["macro_recall"] = m.macro_recall;
    j["macro_f1"] = m.macro_f1;
    j["classes"] = names;
    json rows = json::array();
    for (std::int64_t t = 0; t < m.k; ++t) {
        json row = json::array();
        for (std::int64_t p = 0; p < m.k; ++p) row.push_back(m.confusion_at(t, p));
        rows.push_back(row);
    }
    j["confusion"] = rows;
    j["per_class_precision"] = m.per_class_precision;
    j["per_class_recall"] = m.per_class_recall;
    j["per_class_f1"] = m.per_class_f1;
    return j;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw DataError("cannot write " + path.string());
    os << text;
    if (!os) throw DataError("failed writing " + path.string());
}

int cmd_segment(const std::string& input, const std::string& output, bool hull_tree) {
    const fs::path in(input);
    std::vector<fs::path> files;
    fs::path base;
    if (fs::is_regular_file(in)) {
        files.push_back(in);
        base = in.parent_path();
    } else if (fs::is_directory(in)) {
        base = in;
        for (const auto& e : fs::recursive_directory_iterator(in)) {
            if (!e.is_regular_file()) continue;
            std::string ext = e.path().extension().string();
            std::transform(ext.begin(), ext.end(), ext.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            if (ext != ".png") continue;
            // A masks/ subtree holds outputs of this very pipeline.
            bool in_masks = false;
            for (const auto& part : fs::relative(e.path(), in))
                if (part == "masks") in_masks = true;
            if (!in_masks) files.push_back(e.path());
        }
        std::sort(files.begin(), files.end());
    } else {
        throw DataError("input does not exist: " + input);
    }
    if (files.empty()) throw DataError("no PNG images under " + input);

    const fs::path out(output);
    fs::create_directories(out);
    std::size_t ok = 0;
    for (const auto& f : files) {
        const fs::path rel = fs::relative(f, base).parent_path();
        const std::string stem = f.stem().string();
        try {
            const auto img = imaging::read_png(f.string());
            const auto seg = imaging::segment_cell(img);
            fs::create_directories(out / rel);
            if (hull_tree) {
                imaging::write_mask_png((out / rel / (stem + ".png")).string(), seg.hull);
            } else {
                imaging::write_mask_png((out / rel / (stem + "_hull.png")).string(), seg.hull);
                imaging::write_mask_png((out / rel / (stem + "_nucleus.png")).string(),
                                        seg.nucleus);
                imaging::write_mask_png((out / rel / (stem + "_cytoplasm.png")).string(),
                                        seg.cytoplasm);
            }
            std::cout << f.string() << " threshold=" << seg.otsu_threshold
                      << " hull=" << seg.hull.foreground_count()
                      << " nucleus=" << seg.nucleus.foreground_count()
                      << " cytoplasm=" << seg.cytoplasm.foreground_count() << "\n";
            ++ok;
        } catch (const std::exception& e) {
            std::cerr << "error: " << f.string() << ": " << e.what() << "\n";
        }
    }
    std::cout << "segmented " << ok << " of " << files.size() << " images\n";
    if (ok == 0) throw DataError("all " + std::to_string(files.size()) + " inputs failed");
    return 0;
}

int cmd_synth(const std::string& out, int per_class, std::uint64_t seed, int size) {
    data::make_synthetic_dataset(out, per_class, seed, size);
    const auto ds = data::scan_dataset(out);
    std::cout << "wrote " << ds.samples.size() << " images in " << ds.class_names.size()
              << " classes (with truth masks) under " << out << "\n";
    return 0;
}

train::TrainConfig load_config(const std::string& config_path, const std::string& mode) {
    train::TrainConfig cfg;
    if (!config_path.empty()) cfg = train::parse_train_config(config_path);
    if (!mode.empty()) cfg.mode = models::model_mode_from_string(mode);
    train::validate(cfg);
    return cfg;
}

void check_class_count(const train::TrainConfig& cfg, const data::Dataset& ds) {
    if (cfg.class_count != static_cast<std::int64_t>(ds.class_names.size()))
        throw ConfigError("config class_count is " + std::to_string(cfg.class_count) +
                          " but the dataset has " + std::to_string(ds.class_names.size()) +
                          " classes");
}

int cmd_train(const std::string& data_dir, const std::string& config_path,
              const std::string& mode, const std::string& out_dir) {
    const auto cfg = load_config(config_path, mode);
    const auto ds = data::scan_dataset(data_dir);
    check_class_count(cfg, ds);
    if (cfg.mode == models::ModelMode::dual && !ds.has_masks)
        throw DataError("dual mode needs a masks/ tree under " + data_dir +
                        " (generate one with the segment command)");
    const auto split = data::stratified_split(ds, cfg.split_ratios(), cfg.seed);

    const fs::path out(out_dir);
    fs::create_directories(out);
    write_text(out / "config.txt", train::to_text(cfg));
    data::write_split_manifest(out / "split.tsv", split);

    auto result = train::train_model(split, cfg, &std::cout);

    write_text(out / "log.csv", train::format_log_csv(result.log));
    models::save_model((out / "best.ckpt").string(), result.model);
    json report;
    report["mode"] = models::to_string(cfg.mode);
    report["seed"] = cfg.seed;
    report["epochs"] = cfg.epochs;
    report["best_epoch"] = result.best_epoch;
    report["best_val_acc"] = result.best_val_acc;
    report["test"] = metrics_to_json(result.test_metrics, ds.class_names);
    write_text(out / "report.json", report.dump(2) + "\n");

    std::cout << "best epoch " << result.best_epoch << " (val_acc " << result.best_val_acc
              << ")\ntest metrics:\n"
              << format_metrics(result.test_metrics, ds.class_names);
    std::cout << "artifacts: " << (out / "config.txt").string() << ", "
              << (out / "split.tsv").string() << ", " << (out / "log.csv").string() << ", "
              << (out / "best.ckpt").string() << ", " << (out / "report.json").string() << "\n";
    return 0;
}

int cmd_eval(const std::string& data_dir, const std::string& checkpoint,
             const std::string& split_name, const std::string& config_path) {
    auto model = models::load_model(checkpoint);
    // The split is recomputed from the training config; by default the
    // config.txt written next to the checkpoint at training time.
    std::string cfg_path = config_path;
    if (cfg_path.empty()) {
        const fs::path sibling = fs::path(checkpoint).parent_path() / "config.txt";
        if (fs::is_regular_file(sibling)) cfg_path = sibling.string();
    }
    train::TrainConfig cfg;
    if (!cfg_path.empty()) cfg = train::parse_train_config(cfg_path);
    const auto ds = data::scan_dataset(data_dir);
    if (model.config().class_count != static_cast<std::int64_t>(ds.class_names.size()))
        throw DataError("checkpoint expects " + std::to_string(model.config().class_count) +
                        " classes but the dataset has " + std::to_string(ds.class_names.size()));
    const auto split = data::stratified_split(ds, cfg.split_ratios(), cfg.seed);
    const std::vector<data::LabeledSample>* list = nullptr;
    if (split_name == "train") list = &split.train;
    else if (split_name == "val") list = &split.val;
    else if (split_name == "test") list = &split.test;
    else throw ConfigError("unknown split '" + split_name + "' (expected train, val, or test)");
    if (list->empty()) throw DataError("split '" + split_name + "' is empty");
    if (model.config().mode == models::ModelMode::dual)
        for (const auto& s : *list)
            if (s.mask_path.empty())
                throw DataError("dual-mode eval needs masks; missing for " +
                                s.image_path.string());

    const auto cache = data::load_all(*list);
    const auto ev = train::evaluate(model, cache, cfg.batch_size);
    std::cout << "split " << split_name << " (" << cache.size() << " samples)\n"
              << format_metrics(ev.metrics, ds.class_names);
    return 0;
}

int cmd_ablate(const std::string& data_dir, const std::string& config_path,
               const std::string& seeds_csv, const std::string& out_dir) {
    auto cfg = load_config(config_path, "");
    std::vector<std::uint64_t> seeds;
    std::string token;
    std::istringstream ss(seeds_csv);
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        try {
            seeds.push_back(std::stoull(token));
        } catch (const std::exception&) {
            throw ConfigError("bad seed '" + token + "' in --seeds");
        }
    }
    if (seeds.empty()) throw ConfigError("--seeds needs at least one seed");
    const auto ds = data::scan_dataset(data_dir);
    check_class_count(cfg, ds);

    const auto report = train::ablate(ds, cfg, seeds, &std::cout);
    const std::string table = train::format_ablation(report);
    std::cout << table;
    if (!out_dir.empty()) {
        const fs::path out(out_dir);
        fs::create_directories(out);
        json j;
        j["seeds"] = seeds;
        j["median_rgb_acc"] = report.median_rgb_acc;
        j["median_dual_acc"] = report.median_dual_acc;
        j["median_delta"] = report.median_delta;
        json runs = json::array();
        for (const auto& r : report.runs) {
            json run;
            run["seed"] = r.seed;
            run["mode"] = models::to_string(r.mode);
            run["test"] = metrics_to_json(r.test, ds.class_names);
            runs.push_back(run);
        }
        j["runs"] = runs;
        write_text(out / "ablation.json", j.dump(2) + "\n");
        write_text(out / "ablation.txt", table);
        std::cout << "artifacts: " << (out / "ablation.json").string() << ", "
                  << (out / "ablation.txt").string() << "\n";
    }
    return 0;
}

int cmd_gradcheck(const std::string& fault) {
    models::FaultInjection inj = models::FaultInjection::none;
    if (fault == "sigmoid") inj = models::FaultInjection::sigmoid_backward;
    else if (!fault.empty()) throw ConfigError("unknown fault '" + fault + "'");
    const auto checks = models::run_gradcheck_suite(inj);
    std::vector<std::string> failed;
    for (const auto& c : checks) {
        std::printf("%-22s max_rel_err %.3e  (tol %.0e, %lld values)  %s\n", c.name.c_str(),
                    c.report.max_rel_err, c.tolerance,
                    static_cast<long long>(c.report.checked), c.report.passed ? "PASS" : "FAIL");
        if (!c.report.passed) failed.push_back(c.name);
    }
    if (!failed.empty()) {
        std::string msg = "gradient check failed for:";
        for (const auto& f : failed) msg += " " + f;
        throw NumericalError(msg);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shape-aware erythroid cell classification pipeline"};
    app.require_subcommand(1);
    int exit_code = 0;
    std::function<int()> action;

    auto* seg = app.add_subcommand("segment", "segment cells into hull/nucleus/cytoplasm masks");
    {
        auto opts = std::make_shared<std::pair<std::string, std::string>>();
        auto hull_tree = std::make_shared<bool>(false);
        seg->add_option("--input", opts->first, "input PNG file or directory")->required();
        seg->add_option("--output", opts->second, "output directory")->required();
        seg->add_flag("--hull-tree", *hull_tree,
                      "write only hull masks, keeping input names (for a dataset masks/ tree)");
        seg->callback([opts, hull_tree, &action] {
            action = [opts, hull_tree] { return cmd_segment(opts->first, opts->second, *hull_tree); };
        });
    }

    auto* synth = app.add_subcommand("synth", "generate a synthetic labeled cell dataset");
    {
        struct SynthOpts {
            std::string out;
            int per_class = 200;
            std::uint64_t seed = 42;
            int size = 64;
        };
        auto opts = std::make_shared<SynthOpts>();
        synth->add_option("--out", opts->out, "output dataset directory")->required();
        synth->add_option("--per-class", opts->per_class, "images per class");
        synth->add_option("--seed", opts->seed, "generator seed");
        synth->add_option("--size", opts->size, "image side in pixels");
        synth->callback([opts, &action] {
            action = [opts] { return cmd_synth(opts->out, opts->per_class, opts->seed, opts->size); };
        });
    }

    auto* tr = app.add_subcommand("train", "train a classifier and write artifacts");
    {
        struct TrainOpts {
            std::string data, config, mode, out;
        };
        auto opts = std::make_shared<TrainOpts>();
        tr->add_option("--data", opts->data, "dataset root")->required();
        tr->add_option("--config", opts->config, "training config file");
        tr->add_option("--mode", opts->mode, "dual or rgb_only (overrides config)");
        tr->add_option("--out", opts->out, "output directory for artifacts")->required();
        tr->callback([opts, &action] {
            action = [opts] { return cmd_train(opts->data, opts->config, opts->mode, opts->out); };
        });
    }

    auto* ev = app.add_subcommand("eval", "evaluate a checkpoint on a dataset split");
    {
        struct EvalOpts {
            std::string data, checkpoint, split = "test", config;
        };
        auto opts = std::make_shared<EvalOpts>();
        ev->add_option("--data", opts->data, "dataset root")->required();
        ev->add_option("--checkpoint", opts->checkpoint, "model checkpoint")->required();
        ev->add_option("--split", opts->split, "train, val, or test");
        ev->add_option("--config", opts->config,
                       "training config (default: config.txt beside the checkpoint)");
        ev->callback([opts, &action] {
            action = [opts] {
                return cmd_eval(opts->data, opts->checkpoint, opts->split, opts->config);
            };
        });
    }

    auto* ab = app.add_subcommand("ablate", "compare dual vs rgb_only over multiple seeds");
    {
        struct AblateOpts {
            std::string data, config, seeds = "1,2,3", out;
        };
        auto opts = std::make_shared<AblateOpts>();
        ab->add_option("--data", opts->data, "dataset root (with masks/)")->required();
        ab->add_option("--config", opts->config, "training config file");
        ab->add_option("--seeds", opts->seeds, "comma-separated seeds");
        ab->add_option("--out", opts->out, "directory for the comparison report");
        ab->callback([opts, &action] {
            action = [opts] { return cmd_ablate(opts->data, opts->config, opts->seeds, opts->out); };
        });
    }

    auto* gc = app.add_subcommand("gradcheck", "finite-difference check of every op");
    {
        struct GcOpts {
            std::string size = "tiny", fault;
        };
        auto opts = std::make_shared<GcOpts>();
        gc->add_option("--size", opts->size, "check size (tiny)")
            ->check(CLI::IsMember({"tiny"}));
        gc->add_option("--inject-fault", opts->fault,
                       "test fixture: corrupt an op's backward (sigmoid)");
        gc->callback([opts, &action] { action = [opts] { return cmd_gradcheck(opts->fault); }; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        exit_code = action();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const imaging::SegmentationError& e) {
        std::cerr << "segmentation error (" << e.stage() << "): " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidInputError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
