#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "run_config.hpp"
#include "yeastloc/bayes.hpp"
#include "yeastloc/chart.hpp"
#include "yeastloc/dataset_io.hpp"
#include "yeastloc/error.hpp"
#include "yeastloc/mlp.hpp"
#include "yeastloc/pipeline.hpp"
#include "yeastloc/synth.hpp"

namespace yeastloc::cli {

namespace {

namespace fs = std::filesystem;

// Raised for command-level failures that map to exit 1.
class CommandFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DataOptions {
    std::string data_dir;
    std::string state_vectors;
    std::string feature_defs;
    std::string feature_table;
    std::string bins;
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string allow_duplicates;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--data-dir", data_dir, "Directory holding the four dataset files");
        cmd.add_option("--state-vectors", state_vectors, "State-vector file");
        cmd.add_option("--feature-defs", feature_defs, "Feature-definition file");
        cmd.add_option("--feature-table", feature_table, "Feature-vector table");
        cmd.add_option("--bins", bins, "Bin-assignment file");
        cmd.add_option("--config", config, "Run configuration (falls back to $YEASTLOC_CONFIG)");
        cmd.add_option("--seed", seed, "Overrides the network and shuffle seeds");
        cmd.add_option("--allow-duplicates", allow_duplicates, "Duplicate protein ids: keep-first")
            ->check(CLI::IsMember({"keep-first"}));
    }

    DatasetPaths paths() const {
        DatasetPaths p = data_dir.empty() ? DatasetPaths{} : DatasetPaths::in_directory(data_dir);
        if (!state_vectors.empty()) p.state_vectors = state_vectors;
        if (!feature_defs.empty()) p.feature_defs = feature_defs;
        if (!feature_table.empty()) p.feature_table = feature_table;
        if (!bins.empty()) p.bins = bins;
        for (const auto* f : {&p.state_vectors, &p.feature_defs, &p.feature_table, &p.bins}) {
            if (f->empty()) throw ConfigError("all four dataset files are required (or --data-dir)");
        }
        return p;
    }

    Dataset load() const {
        return load_dataset(paths(), allow_duplicates.empty() ? DuplicatePolicy::Reject : DuplicatePolicy::KeepFirst);
    }

    // Config from --config, then $YEASTLOC_CONFIG, then defaults. Without an
    // explicit feature_order, every non-redundant feature of the dataset is used.
    PipelineConfig pipeline(const Dataset& d) const {
        RunConfig rc;
        std::string path = config;
        if (path.empty()) {
            if (const char* env = std::getenv("YEASTLOC_CONFIG"); env != nullptr) path = env;
        }
        if (!path.empty()) rc = load_run_config(path);
        if (!rc.feature_order_set) {
            for (const auto& f : d.features) {
                if (f.status != FeatureStatus::Redundant) rc.pipeline.feature_order.push_back(f.name);
            }
        }
        if (seed) rc.pipeline.mlp.seed = rc.pipeline.train.seed = *seed;
        return rc.pipeline;
    }
};

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError(path, 0, "cannot open file for writing");
    out << text;
    if (!out) throw FileError(path, 0, "write failed");
}

Mlp load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError(path, 0, "cannot open model file");
    try {
        return deserialize(in);
    } catch (const ParseError& e) {
        throw FileError(path, 0, e.what());
    }
}

void require_usable(const Dataset& d, const PipelineConfig& cfg) {
    const auto report = validate_dataset(d, cfg.feature_order);
    if (!report.ok()) throw CommandFailure("dataset is incomplete: " + report.issues.front().describe());
}

std::string fixed(double x, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    return buf;
}

EngineKind engine_kind(const std::string& name) { return name == "nn" ? EngineKind::NeuralNet : EngineKind::Bayes; }

// --- commands -------------------------------------------------------------

int cmd_validate(const DataOptions& opts, std::ostream& out) {
    const Dataset d = opts.load();
    const PipelineConfig cfg = opts.pipeline(d);
    const auto report = validate_dataset(d, cfg.feature_order);
    for (const auto& issue : report.issues) out << issue.describe() << '\n';
    return report.ok() ? kExitOk : kExitDomain;
}

struct SynthOptions {
    SynthSpec spec;
    bool non_strict = false;
    std::string out_dir = ".";
};

int cmd_synth(SynthOptions opts, std::ostream& out) {
    opts.spec.strictly_positive = !opts.non_strict;
    const Dataset d = generate(opts.spec);
    fs::create_directories(opts.out_dir);
    const auto paths = DatasetPaths::in_directory(opts.out_dir);
    save_dataset(paths, d);
    out << "wrote " << d.proteins.size() << " proteins, " << d.features.size() << " features to " << opts.out_dir
        << '\n';
    return kExitOk;
}

struct TrainOptions {
    std::string model = "model.txt";
    std::string history;
    std::optional<std::size_t> max_epochs;
};

int cmd_train(const DataOptions& data, const TrainOptions& opts, std::ostream& out, std::ostream& err) {
    const Dataset d = data.load();
    PipelineConfig cfg = data.pipeline(d);
    if (opts.max_epochs) cfg.train.max_epochs = *opts.max_epochs;
    cfg.validate();
    if (cfg.feature_order.empty()) throw CommandFailure("feature_order is empty; nothing to train on");
    require_usable(d, cfg);

    const auto pairs = build_training_pairs(d, cfg);
    const TrainResult result = train_emulator(pairs, cfg);
    write_text_file(opts.model, serialize(result.model));
    std::ostringstream hist;
    write_mse_history(hist, result.epoch_mse);
    write_text_file(opts.history.empty() ? opts.model + ".history" : opts.history, hist.str());

    char buf[160];
    std::snprintf(buf, sizeof buf, "pairs %zu epochs %zu final_mse %.9e %s\n", pairs.size(), result.epoch_mse.size(),
                  result.epoch_mse.back(), result.status == TrainStatus::Converged ? "converged" : "not-converged");
    out << buf;
    if (result.status != TrainStatus::Converged) {
        err << "warning: did not converge within " << cfg.train.max_epochs << " epochs\n";
    }
    return kExitOk;
}

struct PredictOptions {
    std::string model;
    std::string protein;
    std::string engine = "nn";
    bool trace = false;
    std::string chart;
    std::string chart_out;
};

int cmd_predict(const DataOptions& data, const PredictOptions& opts, std::ostream& out) {
    const Dataset d = data.load();
    const PipelineConfig cfg = data.pipeline(d);
    const ProteinRecord* p = d.find_protein(opts.protein);
    if (p == nullptr) throw CommandFailure("unknown protein " + opts.protein);

    LocalizationTrace trace;
    if (opts.engine == "bayes") {
        trace = localize(*p, cfg.feature_order, d, cfg.bayes);
    } else {
        if (opts.model.empty()) throw ConfigError("--engine nn requires --model");
        trace = predict_nn(load_model(opts.model), *p, cfg, d);
    }

    out << trace.protein << '\t' << to_char(trace.predicted);
    for (double x : trace.final_state.values()) out << '\t' << fixed(x, 6);
    out << '\n';
    if (opts.trace) write_trace(out, trace);
    if (opts.chart == "ascii") {
        render_ascii_chart(out, trace.final_state.values());
    } else if (opts.chart == "svg") {
        const std::string path = opts.chart_out.empty() ? trace.protein + ".svg" : opts.chart_out;
        std::ostringstream svg;
        render_svg_chart(svg, trace.final_state.values(), trace.protein + " (" + to_char(trace.predicted) + ")");
        write_text_file(path, svg.str());
    }
    return kExitOk;
}

struct EngineOptions {
    std::string engine = "bayes";
    std::string model;
};

int cmd_evaluate(const DataOptions& data, const EngineOptions& opts, std::ostream& out) {
    const Dataset d = data.load();
    const PipelineConfig cfg = data.pipeline(d);
    require_usable(d, cfg);
    EvalReport report;
    if (opts.engine == "nn") {
        if (opts.model.empty()) throw ConfigError("--engine nn requires --model");
        const Mlp m = load_model(opts.model);
        report = evaluate(d, cfg, nn_predictor(m, d, cfg));
    } else {
        report = evaluate(d, cfg, bayes_predictor(d, cfg));
    }
    write_report(out, report);
    return kExitOk;
}

int cmd_crossval(const DataOptions& data, const EngineOptions& opts, std::ostream& out) {
    const Dataset d = data.load();
    const PipelineConfig cfg = data.pipeline(d);
    require_usable(d, cfg);
    const auto cv = cross_validate(d, cfg, engine_kind(opts.engine));
    out << "#\tsubset\tproteins\tcorrect\taccuracy\n";
    for (std::size_t f = 0; f < cv.folds.size(); ++f) {
        const auto& r = cv.folds[f];
        out << "fold\t" << f << '\t' << r.n_proteins << '\t' << r.n_correct << '\t' << fixed(r.accuracy, 6) << '\n';
    }
    out << "mean\t" << fixed(cv.mean_accuracy, 6) << '\t' << fixed(error_limit_pct(cv.mean_accuracy), 3) << '\n';
    return kExitOk;
}

struct AblateOptions {
    std::vector<std::string> features;
    bool all = false;
};

int cmd_ablate(const DataOptions& data, const EngineOptions& engine, const AblateOptions& opts, std::ostream& out) {
    const Dataset d = data.load();
    const PipelineConfig cfg = data.pipeline(d);
    std::vector<std::string> targets = opts.features;
    if (opts.all) targets = cfg.feature_order;
    if (targets.empty()) throw ConfigError("ablate needs --feature or --all");
    std::vector<std::string> every = cfg.feature_order;
    for (const auto& t : targets) {
        if (std::find(every.begin(), every.end(), t) == every.end()) every.push_back(t);
    }
    require_usable(d, PipelineConfig{every, cfg.bayes, cfg.mlp, cfg.train, cfg.train_subsets, cfg.test_subsets});
    for (const auto& feature : targets) {
        const double delta = ablate_feature(d, cfg, feature, engine_kind(engine.engine));
        // -0.0 prints as "0.0".
        out << feature << '\t' << fixed(delta == 0.0 ? 0.0 : delta, 1) << '\n';
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Predict yeast protein subcellular localization from binned feature vectors"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "yeastloc 1.0");

    DataOptions data;
    auto* validate = app.add_subcommand("validate", "Check a dataset for missing assignments and table entries");
    data.add_to(*validate);

    SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic Bayes-consistent dataset");
    synth_cmd->add_option("--seed", synth.spec.seed, "Generator seed");
    synth_cmd->add_option("--proteins", synth.spec.n_proteins, "Number of proteins (>= 7)");
    synth_cmd->add_option("--features", synth.spec.n_features, "Number of features");
    synth_cmd->add_option("--bins-per-feature", synth.spec.bins_per_feature, "Bins per feature");
    synth_cmd->add_option("--concentration", synth.spec.prior_concentration, "Prior concentration");
    synth_cmd->add_flag("--non-strict", synth.non_strict, "Allow zero priors and fractions");
    synth_cmd->add_option("--out", synth.out_dir, "Output directory");

    TrainOptions train;
    auto* train_cmd = app.add_subcommand("train", "Train the network emulator on the training subsets");
    data.add_to(*train_cmd);
    train_cmd->add_option("--model", train.model, "Model output path");
    train_cmd->add_option("--history", train.history, "Epoch-MSE history path (default <model>.history)");
    train_cmd->add_option("--max-epochs", train.max_epochs, "Override max_epochs");

    PredictOptions predict;
    auto* predict_cmd = app.add_subcommand("predict", "Localize one protein");
    data.add_to(*predict_cmd);
    predict_cmd->add_option("--model", predict.model, "Model file (nn engine)");
    predict_cmd->add_option("--protein", predict.protein, "Protein id")->required();
    predict_cmd->add_option("--engine", predict.engine, "nn or bayes")->check(CLI::IsMember({"nn", "bayes"}));
    predict_cmd->add_flag("--trace", predict.trace, "Print one line per applied feature");
    predict_cmd->add_option("--chart", predict.chart, "ascii or svg")->check(CLI::IsMember({"ascii", "svg"}));
    predict_cmd->add_option("--chart-out", predict.chart_out, "SVG output path (default <protein>.svg)");

    EngineOptions engine;
    auto add_engine = [&](CLI::App* cmd) {
        cmd->add_option("--engine", engine.engine, "bayes or nn")->check(CLI::IsMember({"nn", "bayes"}));
    };
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Score labeled proteins in the test subsets");
    data.add_to(*evaluate_cmd);
    add_engine(evaluate_cmd);
    evaluate_cmd->add_option("--model", engine.model, "Model file (nn engine)");

    auto* crossval_cmd = app.add_subcommand("crossval", "Seven-fold cross-validation");
    data.add_to(*crossval_cmd);
    add_engine(crossval_cmd);

    AblateOptions ablate;
    auto* ablate_cmd = app.add_subcommand("ablate", "Cross-validated accuracy change per feature, in percent");
    data.add_to(*ablate_cmd);
    add_engine(ablate_cmd);
    ablate_cmd->add_option("--feature", ablate.features, "Feature to ablate (repeatable)");
    ablate_cmd->add_flag("--all", ablate.all, "Ablate every feature of the configured order");

    std::vector<const char*> argv{"yeastloc"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitIo;
    }

    try {
        if (*validate) return cmd_validate(data, out);
        if (*synth_cmd) return cmd_synth(synth, out);
        if (*train_cmd) return cmd_train(data, train, out, err);
        if (*predict_cmd) return cmd_predict(data, predict, out);
        if (*evaluate_cmd) return cmd_evaluate(data, engine, out);
        if (*crossval_cmd) return cmd_crossval(data, engine, out);
        if (*ablate_cmd) return cmd_ablate(data, engine, ablate, out);
    } catch (const FileError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitIo;
}

}  // namespace yeastloc::cli
