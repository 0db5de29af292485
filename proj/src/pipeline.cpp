#include "yeastloc/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <numeric>
#include <ostream>
#include <random>

#include "yeastloc/error.hpp"

namespace yeastloc {

void PipelineConfig::validate() const {
    std::set<std::string> names;
    for (const auto& f : feature_order) {
        if (!names.insert(f).second) throw DomainError("feature " + f + " appears twice in feature_order");
    }
    for (const auto* subsets : {&train_subsets, &test_subsets}) {
        for (int s : *subsets) {
            if (s < 0 || s >= kNumSubsets) throw DomainError("subset " + std::to_string(s) + " outside 0..6");
        }
    }
    for (int s : train_subsets) {
        if (test_subsets.contains(s)) throw DomainError("subset " + std::to_string(s) + " is both train and test");
    }
    bayes.validate();
    mlp.validate();
    train.validate();
}

namespace {

MlpInput make_input(const StateVector& state, const Probabilities& fv) {
    MlpInput in{};
    std::copy(state.values().begin(), state.values().end(), in.begin());
    std::copy(fv.begin(), fv.end(), in.begin() + kNumCompartments);
    return in;
}

}  // namespace

std::vector<TrainingPair> build_training_pairs(const Dataset& d, const PipelineConfig& cfg) {
    cfg.validate();
    std::vector<TrainingPair> pairs;
    for (const auto& p : d.proteins) {
        if (!cfg.train_subsets.contains(p.subset)) continue;
        const auto chain = resolve_chain(d, p, cfg.feature_order);
        const auto trace = localize(p, cfg.feature_order, d, cfg.bayes);
        for (std::size_t k = 0; k < trace.steps.size(); ++k) {
            TrainingPair pair;
            pair.input = make_input(trace.steps[k].input, chain[k].feature_vector);
            pair.target = trace.steps[k].output.values();
            pair.protein = p.id;
            pair.feature = trace.steps[k].feature;
            pair.step = k;
            pairs.push_back(std::move(pair));
        }
    }
    return pairs;
}

TrainResult train_emulator(const std::vector<TrainingPair>& pairs, const PipelineConfig& cfg) {
    if (pairs.empty()) throw DomainError("no training pairs");
    cfg.mlp.validate();
    cfg.train.validate();

    TrainResult result{Mlp::init(cfg.mlp), {}, TrainStatus::MaxEpochsReached};
    Velocity velocity = make_velocity(result.model);
    std::vector<std::size_t> order(pairs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 shuffle_rng(cfg.train.seed);

    for (std::size_t epoch = 0; epoch < cfg.train.max_epochs; ++epoch) {
        if (cfg.train.shuffle) std::shuffle(order.begin(), order.end(), shuffle_rng);
        double total = 0.0;
        for (std::size_t i : order) {
            total += train_step(result.model, pairs[i].input, pairs[i].target, cfg.train, velocity);
        }
        const double epoch_mse = total / static_cast<double>(pairs.size());
        result.epoch_mse.push_back(epoch_mse);
        if (epoch_mse < cfg.train.mse_threshold) {
            result.status = TrainStatus::Converged;
            break;
        }
    }
    return result;
}

LocalizationTrace predict_nn(const Mlp& m, const ProteinRecord& p, const PipelineConfig& cfg, const Dataset& d) {
    const auto chain = resolve_chain(d, p, cfg.feature_order);
    LocalizationTrace trace;
    trace.protein = p.id;
    StateVector state = apply_pseudo_count(p.prior, cfg.bayes);
    for (const auto& link : chain) {
        const MlpOutput out = m.forward(make_input(state, link.feature_vector));
        StateVector next = normalize(out);
        trace.steps.push_back(TraceStep{link.feature, link.bin, state, next});
        state = next;
    }
    trace.final_state = state;
    trace.predicted = argmax_compartment(state);
    return trace;
}

Predictor bayes_predictor(const Dataset& d, const PipelineConfig& cfg) {
    return [&d, cfg](const ProteinRecord& p) { return localize(p, cfg.feature_order, d, cfg.bayes).predicted; };
}

Predictor nn_predictor(const Mlp& m, const Dataset& d, const PipelineConfig& cfg) {
    return [&m, &d, cfg](const ProteinRecord& p) { return predict_nn(m, p, cfg, d).predicted; };
}

EvalReport evaluate(const Dataset& d, const PipelineConfig& cfg, const Predictor& predict) {
    EvalReport report;
    for (const auto& p : d.proteins) {
        if (!p.label || !cfg.test_subsets.contains(p.subset)) continue;
        const Compartment predicted = predict(p);
        const bool hit = predicted == *p.label;
        report.confusion.add(*p.label, predicted);
        auto& fold = report.per_fold[p.subset];
        ++fold.n_proteins;
        ++report.n_proteins;
        if (hit) {
            ++fold.n_correct;
            ++report.n_correct;
        }
    }
    if (report.n_proteins == 0) throw DomainError("no labeled proteins in the test subsets");
    report.accuracy = static_cast<double>(report.n_correct) / static_cast<double>(report.n_proteins);
    report.error_limit = error_limit_pct(report.accuracy);
    return report;
}

void write_report(std::ostream& out, const EvalReport& r) {
    char buf[128];
    out << "#\tproteins\tcorrect\taccuracy\terror_limit_pct\n";
    std::snprintf(buf, sizeof buf, "overall\t%zu\t%zu\t%.6f\t%.3f\n", r.n_proteins, r.n_correct, r.accuracy,
                  r.error_limit);
    out << buf;
    out << "true\\pred";
    for (Compartment c : kAllCompartments) out << '\t' << to_char(c);
    out << "\tsensitivity\n";
    for (Compartment t : kAllCompartments) {
        out << to_char(t);
        for (Compartment p : kAllCompartments) out << '\t' << r.confusion.at(t, p);
        if (const auto s = sensitivity(r.confusion, t)) {
            std::snprintf(buf, sizeof buf, "\t%.6f\n", *s);
            out << buf;
        } else {
            out << "\tn/a\n";
        }
    }
    for (const auto& [subset, stats] : r.per_fold) {
        out << "subset\t" << subset << '\t' << stats.n_proteins << '\t' << stats.n_correct << '\n';
    }
}

void write_mse_history(std::ostream& out, const std::vector<double>& epoch_mse) {
    char buf[64];
    for (std::size_t i = 0; i < epoch_mse.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu\t%.9e\n", i + 1, epoch_mse[i]);
        out << buf;
    }
}

namespace {

EvalReport run_fold(const Dataset& d, const PipelineConfig& base, EngineKind engine, int fold) {
    PipelineConfig cfg = base;
    cfg.test_subsets = {fold};
    cfg.train_subsets.clear();
    for (int s = 0; s < kNumSubsets; ++s) {
        if (s != fold) cfg.train_subsets.insert(s);
    }
    if (engine == EngineKind::Bayes) return evaluate(d, cfg, bayes_predictor(d, cfg));
    const auto trained = train_emulator(build_training_pairs(d, cfg), cfg);
    return evaluate(d, cfg, nn_predictor(trained.model, d, cfg));
}

}  // namespace

CrossValidation cross_validate(const Dataset& d, const PipelineConfig& cfg, EngineKind engine) {
    cfg.validate();
    std::array<bool, kNumSubsets> labeled{};
    for (const auto& p : d.proteins) {
        if (p.label && p.subset >= 0 && p.subset < kNumSubsets) labeled[p.subset] = true;
    }
    for (int s = 0; s < kNumSubsets; ++s) {
        if (!labeled[s]) throw DomainError("subset " + std::to_string(s) + " has no labeled proteins");
    }

    CrossValidation cv;
    if (engine == EngineKind::NeuralNet) {
        // Folds own their networks, so they train independently.
        std::vector<std::future<EvalReport>> jobs;
        for (int f = 0; f < kNumSubsets; ++f) {
            jobs.push_back(std::async(std::launch::async, run_fold, std::cref(d), std::cref(cfg), engine, f));
        }
        for (auto& job : jobs) cv.folds.push_back(job.get());
    } else {
        for (int f = 0; f < kNumSubsets; ++f) cv.folds.push_back(run_fold(d, cfg, engine, f));
    }
    double sum = 0.0;
    for (const auto& r : cv.folds) sum += r.accuracy;
    cv.mean_accuracy = sum / static_cast<double>(cv.folds.size());
    return cv;
}

double ablate_feature(const Dataset& d, const PipelineConfig& cfg, const std::string& feature, EngineKind engine) {
    if (d.find_feature(feature) == nullptr) throw DomainError("unknown feature " + feature);
    PipelineConfig with = cfg;
    PipelineConfig without = cfg;
    auto it = std::find(cfg.feature_order.begin(), cfg.feature_order.end(), feature);
    if (it != cfg.feature_order.end()) {
        if (cfg.feature_order.size() == 1) throw DomainError("cannot remove the only feature " + feature);
        std::erase(without.feature_order, feature);
    } else {
        with.feature_order.push_back(feature);
    }
    const double acc_with = cross_validate(d, with, engine).mean_accuracy;
    const double acc_without = cross_validate(d, without, engine).mean_accuracy;
    return 100.0 * acc_with - 100.0 * acc_without;
}

}  // namespace yeastloc
