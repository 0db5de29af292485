#include "yeastloc/bayes.hpp"

#include <cstdio>
#include <ostream>

#include "yeastloc/error.hpp"

namespace yeastloc {

void BayesConfig::validate() const {
    if (!(pseudo_count > 0.0 && pseudo_count < 0.01)) throw DomainError("pseudo_count must lie in (0, 0.01)");
}

StateVector apply_pseudo_count(const StateVector& s, const BayesConfig& cfg) {
    Probabilities p = s.values();
    bool filled = false;
    for (double& x : p) {
        if (x == 0.0) {
            x = cfg.pseudo_count;
            filled = true;
        }
    }
    return filled ? normalize(p) : s;
}

StateVector update(const StateVector& prior, const Probabilities& feature_vector, const BayesConfig& cfg) {
    Probabilities w{};
    double sum = 0.0;
    for (std::size_t i = 0; i < kNumCompartments; ++i) {
        if (!(feature_vector[i] >= 0.0 && feature_vector[i] <= 1.0)) {
            throw DomainError("feature vector component outside [0, 1]");
        }
        w[i] = prior[i] * feature_vector[i];
        sum += w[i];
    }
    if (sum == 0.0) throw DomainError("feature annihilates state vector");
    return apply_pseudo_count(normalize(w), cfg);
}

LocalizationTrace localize(const ProteinRecord& p, const std::vector<std::string>& feature_order,
                           const Dataset& d, const BayesConfig& cfg) {
    const auto chain = resolve_chain(d, p, feature_order);
    LocalizationTrace trace;
    trace.protein = p.id;
    StateVector state = apply_pseudo_count(p.prior, cfg);
    trace.steps.reserve(chain.size());
    for (const auto& link : chain) {
        StateVector next = update(state, link.feature_vector, cfg);
        trace.steps.push_back(TraceStep{link.feature, link.bin, state, next});
        state = next;
    }
    trace.final_state = state;
    trace.predicted = argmax_compartment(state);
    return trace;
}

void write_trace(std::ostream& out, const LocalizationTrace& trace) {
    char buf[32];
    for (const auto& step : trace.steps) {
        out << step.feature << '\t' << step.bin;
        for (double x : step.output.values()) {
            std::snprintf(buf, sizeof buf, "%.6f", x);
            out << '\t' << buf;
        }
        out << '\n';
    }
}

}  // namespace yeastloc
