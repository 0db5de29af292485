#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "yeastloc/bayes.hpp"
#include "yeastloc/metrics.hpp"
#include "yeastloc/mlp.hpp"
#include "yeastloc/model.hpp"

namespace yeastloc {

struct TrainingPair {
    MlpInput input{};    // current state (5) then feature vector (5)
    MlpOutput target{};  // state after the exact update
    std::string protein;
    std::string feature;
    std::size_t step = 0;
};

struct PipelineConfig {
    std::vector<std::string> feature_order;
    BayesConfig bayes;
    MlpConfig mlp;
    TrainConfig train;
    std::set<int> train_subsets{0, 1, 2, 3, 4, 5};
    std::set<int> test_subsets{6};

    // Unique feature names, subsets within 0..6 and disjoint, nested configs valid.
    void validate() const;
};

// Teacher-forced pairs: one per chain step for every protein in train_subsets,
// labeled or not. Targets are the exact engine's outputs.
std::vector<TrainingPair> build_training_pairs(const Dataset& d, const PipelineConfig& cfg);

enum class TrainStatus { Converged, MaxEpochsReached };

struct TrainResult {
    Mlp model;
    std::vector<double> epoch_mse;
    TrainStatus status = TrainStatus::MaxEpochsReached;
};

TrainResult train_emulator(const std::vector<TrainingPair>& pairs, const PipelineConfig& cfg);

// Chains the network from the pseudo-counted prior; each output is renormalized
// before it becomes the next state.
LocalizationTrace predict_nn(const Mlp& m, const ProteinRecord& p, const PipelineConfig& cfg, const Dataset& d);

using Predictor = std::function<Compartment(const ProteinRecord&)>;

Predictor bayes_predictor(const Dataset& d, const PipelineConfig& cfg);
Predictor nn_predictor(const Mlp& m, const Dataset& d, const PipelineConfig& cfg);

struct FoldStats {
    std::size_t n_proteins = 0;
    std::size_t n_correct = 0;
};

struct EvalReport {
    std::size_t n_proteins = 0;
    std::size_t n_correct = 0;
    double accuracy = 0.0;
    double error_limit = 0.0;  // percent
    ConfusionMatrix confusion;
    std::map<int, FoldStats> per_fold;
};

// Scores labeled proteins of cfg.test_subsets. Throws DomainError when there are none.
EvalReport evaluate(const Dataset& d, const PipelineConfig& cfg, const Predictor& predict);

void write_report(std::ostream& out, const EvalReport& r);
void write_mse_history(std::ostream& out, const std::vector<double>& epoch_mse);

enum class EngineKind { Bayes, NeuralNet };

struct CrossValidation {
    std::vector<EvalReport> folds;  // index = held-out subset
    double mean_accuracy = 0.0;     // unweighted over folds
};

// Seven folds: train on six subsets (NN engine only), evaluate on the seventh.
CrossValidation cross_validate(const Dataset& d, const PipelineConfig& cfg, EngineKind engine);

// 100 * (CV accuracy with the feature) - 100 * (CV accuracy without it). A feature
// in cfg.feature_order is removed; an absent one is appended.
double ablate_feature(const Dataset& d, const PipelineConfig& cfg, const std::string& feature,
                      EngineKind engine = EngineKind::Bayes);

}  // namespace yeastloc
