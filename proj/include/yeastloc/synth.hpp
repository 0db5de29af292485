#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "yeastloc/model.hpp"

namespace yeastloc {

struct SynthSpec {
    std::uint64_t seed = 1;
    int n_proteins = 200;
    int n_features = 5;
    int bins_per_feature = 3;
    double prior_concentration = 1.0;
    bool strictly_positive = true;

    void validate() const;
};

// Bayes-consistent dataset: each label is the exact engine's argmax over all
// generated features, in order. Priors are whole milliprobabilities and
// fractions have six decimals, so the files written for it reload unchanged.
Dataset generate(const SynthSpec& spec);

// Feature names of a generated dataset, in generation order.
std::vector<std::string> feature_names(const Dataset& d);

// prior * f1 * ... * fk componentwise, normalized once. Shares no code with the
// sequential engine. Throws DomainError if the product sums to zero.
StateVector brute_force_posterior(const StateVector& prior, std::span<const Probabilities> feature_vectors);

}  // namespace yeastloc
