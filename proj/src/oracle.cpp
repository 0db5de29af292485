// Independent posterior for strictly positive inputs: one product pass, one
// normalization. Shares nothing with bayes.cpp.

#include "yeastloc/error.hpp"
#include "yeastloc/synth.hpp"

namespace yeastloc {

StateVector brute_force_posterior(const StateVector& prior, std::span<const Probabilities> feature_vectors) {
    Probabilities product = prior.values();
    for (const auto& fv : feature_vectors) {
        for (std::size_t i = 0; i < kNumCompartments; ++i) product[i] *= fv[i];
    }
    double total = 0.0;
    for (double x : product) total += x;
    if (!(total > 0.0)) throw DomainError("posterior product sums to zero");
    if (feature_vectors.empty()) return prior;
    return normalize(product);
}

}  // namespace yeastloc
