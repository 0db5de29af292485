#include "yeastloc/synth.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "yeastloc/bayes.hpp"
#include "yeastloc/error.hpp"

namespace yeastloc {

void SynthSpec::validate() const {
    if (n_proteins < kNumSubsets) throw DomainError("at least 7 proteins are needed so every subset is non-empty");
    if (n_features < 1) throw DomainError("at least one feature is needed");
    if (bins_per_feature < 1) throw DomainError("bins_per_feature must be >= 1");
    if (!(prior_concentration > 0.0) || !std::isfinite(prior_concentration)) {
        throw DomainError("prior_concentration must be > 0");
    }
}

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // [0, 1)
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int below(int n) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }
    double gamma(double shape) { return std::gamma_distribution<double>(shape, 1.0)(gen_); }

private:
    std::mt19937_64 gen_;
};

// Six decimals, so the value survives the feature-table text format unchanged.
double quantize6(double x) { return std::round(x * 1e6) / 1e6; }

// Largest-remainder apportionment of `total` units proportional to weights.
std::array<long, kNumCompartments> apportion(const Probabilities& weights, long total) {
    double sum = 0.0;
    for (double w : weights) sum += w;
    std::array<long, kNumCompartments> out{};
    Probabilities rem{};
    long used = 0;
    for (std::size_t i = 0; i < kNumCompartments; ++i) {
        const double share = sum > 0.0 ? weights[i] / sum * static_cast<double>(total) : 0.0;
        out[i] = static_cast<long>(std::floor(share));
        rem[i] = share - static_cast<double>(out[i]);
        used += out[i];
    }
    while (used < total) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < kNumCompartments; ++i) {
            if (rem[i] > rem[best]) best = i;
        }
        ++out[best];
        rem[best] = -1.0;
        ++used;
    }
    return out;
}

StateVector draw_prior(Rng& rng, const SynthSpec& spec) {
    Probabilities w{};
    for (double& x : w) x = rng.gamma(spec.prior_concentration);
    std::array<long, kNumCompartments> milli{};
    if (spec.strictly_positive) {
        milli = apportion(w, 1000 - static_cast<long>(kNumCompartments));
        for (long& m : milli) m += 1;
    } else {
        milli = apportion(w, 1000);
    }
    return from_milli(milli);
}

Probabilities draw_fractions(Rng& rng, const SynthSpec& spec) {
    Probabilities f{};
    for (double& x : f) x = quantize6(rng.uniform(0.05, 0.95));
    if (!spec.strictly_positive) {
        // Zero out some components, keeping at least one positive.
        const int keep = rng.below(static_cast<int>(kNumCompartments));
        for (std::size_t i = 0; i < kNumCompartments; ++i) {
            if (static_cast<int>(i) != keep && rng.uniform() < 0.25) f[i] = 0.0;
        }
    }
    return f;
}

}  // namespace

Dataset generate(const SynthSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    Dataset d;

    constexpr FeatureCategory kCategories[] = {FeatureCategory::Motif, FeatureCategory::OverallSequence,
                                               FeatureCategory::WholeGenome};
    for (int f = 0; f < spec.n_features; ++f) {
        char name[32];
        std::snprintf(name, sizeof name, "SYN%02d", f + 1);
        d.features.push_back(FeatureDef{name, kCategories[f % 3], "synthetic", 0.0, FeatureStatus::Important,
                                        spec.bins_per_feature});
    }
    for (const auto& def : d.features) {
        for (int b = 0; b < def.bin_count; ++b) d.feature_table.set(def.name, b, draw_fractions(rng, spec));
    }

    for (int i = 0; i < spec.n_proteins; ++i) {
        char id[32];
        std::snprintf(id, sizeof id, "SYN%05d", i + 1);
        ProteinRecord p;
        p.id = id;
        p.subset = i % kNumSubsets;
        p.prior = draw_prior(rng, spec);
        for (const auto& def : d.features) d.bins.insert(p.id, def.name, rng.below(def.bin_count));
        d.proteins.push_back(std::move(p));
    }

    const auto order = feature_names(d);
    const BayesConfig bayes;
    for (auto& p : d.proteins) p.label = localize(p, order, d, bayes).predicted;
    return d;
}

std::vector<std::string> feature_names(const Dataset& d) {
    std::vector<std::string> names;
    for (const auto& f : d.features) names.push_back(f.name);
    return names;
}

}  // namespace yeastloc
