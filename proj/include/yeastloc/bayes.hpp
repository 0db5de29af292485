#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "yeastloc/model.hpp"
#include "yeastloc/state_vector.hpp"

namespace yeastloc {

struct BayesConfig {
    double pseudo_count = 1e-4;

    // Throws DomainError unless 0 < pseudo_count < 0.01.
    void validate() const;
};

struct TraceStep {
    std::string feature;
    int bin = 0;
    StateVector input;
    StateVector output;
};

struct LocalizationTrace {
    std::string protein;
    std::vector<TraceStep> steps;
    StateVector final_state;
    Compartment predicted = Compartment::C;
};

// Replaces exact zeros with the pseudo-count and renormalizes. Vectors without
// zeros are returned unchanged.
StateVector apply_pseudo_count(const StateVector& s, const BayesConfig& cfg);

// Componentwise product with the feature vector, normalized, then pseudo-counted.
// Throws DomainError if the product is identically zero.
StateVector update(const StateVector& prior, const Probabilities& feature_vector, const BayesConfig& cfg);

// Runs the chain from the pseudo-counted prior through every feature in order.
LocalizationTrace localize(const ProteinRecord& p, const std::vector<std::string>& feature_order,
                           const Dataset& d, const BayesConfig& cfg);

// One line per step: feature, bin, then the five output probabilities (6 decimals).
void write_trace(std::ostream& out, const LocalizationTrace& trace);

}  // namespace yeastloc
