#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "yeastloc/bayes.hpp"
#include "yeastloc/dataset_io.hpp"
#include "yeastloc/error.hpp"
#include "yeastloc/pipeline.hpp"
#include "yeastloc/synth.hpp"

namespace yeastloc {
namespace {

std::string dump(const Dataset& d) {
    std::ostringstream out;
    write_state_vectors(out, d.proteins);
    write_feature_defs(out, d.features);
    write_feature_table(out, d.feature_table);
    write_bin_assignments(out, d.bins);
    return out.str();
}

TEST(SynthSpec, Validation) {
    EXPECT_NO_THROW(SynthSpec{}.validate());
    SynthSpec s;
    s.n_proteins = 6;
    EXPECT_THROW(s.validate(), DomainError);
    s = SynthSpec{};
    s.n_features = 0;
    EXPECT_THROW(s.validate(), DomainError);
    s = SynthSpec{};
    s.bins_per_feature = 0;
    EXPECT_THROW(s.validate(), DomainError);
    s = SynthSpec{};
    s.prior_concentration = 0.0;
    EXPECT_THROW(s.validate(), DomainError);
}

TEST(Generate, RoundRobinSubsets) {
    SynthSpec spec;
    spec.n_proteins = 14;
    const Dataset d = generate(spec);
    std::array<int, 7> counts{};
    for (const auto& p : d.proteins) ++counts[static_cast<std::size_t>(p.subset)];
    for (int c : counts) EXPECT_EQ(c, 2);
}

TEST(Generate, DeterministicInSeed) {
    SynthSpec spec;
    spec.seed = 99;
    EXPECT_EQ(dump(generate(spec)), dump(generate(spec)));
    SynthSpec other = spec;
    other.seed = 100;
    EXPECT_NE(dump(generate(spec)), dump(generate(other)));
}

TEST(Generate, ShapeAndStrictPositivity) {
    const SynthSpec spec;
    const Dataset d = generate(spec);
    EXPECT_EQ(d.proteins.size(), 200u);
    EXPECT_EQ(d.features.size(), 5u);
    EXPECT_EQ(d.feature_table.size(), 15u);
    EXPECT_EQ(d.bins.size(), 1000u);
    for (const auto& p : d.proteins) {
        for (double x : p.prior.values()) EXPECT_GT(x, 0.0);
        EXPECT_TRUE(p.label.has_value());
    }
    for (const auto& [key, fv] : d.feature_table.entries()) {
        for (double x : fv) {
            EXPECT_GT(x, 0.05 - 1e-6);
            EXPECT_LT(x, 0.95 + 1e-6);
        }
    }
}

TEST(Generate, NonStrictModeProducesZeros) {
    SynthSpec spec;
    spec.strictly_positive = false;
    spec.n_features = 8;
    const Dataset d = generate(spec);
    bool zero_fraction = false;
    for (const auto& [key, fv] : d.feature_table.entries()) {
        for (double x : fv) zero_fraction |= x == 0.0;
    }
    EXPECT_TRUE(zero_fraction);
    EXPECT_TRUE(validate_dataset(d, feature_names(d)).ok());
}

TEST(Generate, LabelsAreTheBayesianArgmax) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SynthSpec spec;
        spec.seed = seed;
        spec.strictly_positive = seed % 2 == 0;
        spec.prior_concentration = 0.5 + static_cast<double>(seed) / 4.0;
        const Dataset d = generate(spec);
        EXPECT_TRUE(validate_dataset(d, feature_names(d)).ok());
        for (const auto& p : d.proteins) {
            EXPECT_EQ(localize(p, feature_names(d), d, BayesConfig{}).predicted, *p.label);
        }
    }
}

TEST(Generate, ReloadedFilesKeepLabelsConsistent) {
    const Dataset d = generate(SynthSpec{});
    std::stringstream sv, fd, ft, bn;
    write_state_vectors(sv, d.proteins);
    write_feature_defs(fd, d.features);
    write_feature_table(ft, d.feature_table);
    write_bin_assignments(bn, d.bins);
    Dataset back;
    back.proteins = parse_state_vectors(sv);
    back.features = parse_feature_defs(fd);
    back.feature_table = parse_feature_table(ft, &back.features);
    back.bins = parse_bin_assignments(bn);
    EXPECT_EQ(back.proteins, d.proteins);
    EXPECT_EQ(back.feature_table, d.feature_table);
    PipelineConfig cfg;
    cfg.feature_order = feature_names(back);
    cfg.test_subsets = {0, 1, 2, 3, 4, 5, 6};
    cfg.train_subsets = {};
    EXPECT_EQ(evaluate(back, cfg, bayes_predictor(back, cfg)).accuracy, 1.0);
}

TEST(BruteForcePosterior, EdgeCases) {
    const StateVector prior = normalize(Probabilities{0.1, 0.2, 0.3, 0.2, 0.2});
    EXPECT_EQ(brute_force_posterior(prior, {}), prior);
    const std::vector<Probabilities> one = {{0.5, 0.4, 0.3, 0.2, 0.1}};
    const StateVector single = brute_force_posterior(prior, one);
    const StateVector expected = normalize(Probabilities{0.05, 0.08, 0.09, 0.04, 0.02});
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(single[i], expected[i], 1e-15);
    const std::vector<Probabilities> zero = {{0, 0, 0, 0, 0}};
    EXPECT_THROW(brute_force_posterior(prior, zero), DomainError);
}

TEST(BruteForcePosterior, AgreesWithSequentialEngine) {
    std::mt19937_64 gen(1234);
    std::uniform_real_distribution<double> draw(0.05, 0.95);
    for (int n = 0; n < 1000; ++n) {
        Probabilities prior{};
        for (double& x : prior) x = draw(gen);
        const StateVector s0 = normalize(prior);
        std::vector<Probabilities> vectors(5);
        StateVector seq = s0;
        for (auto& fv : vectors) {
            for (double& x : fv) x = draw(gen);
            seq = update(seq, fv, BayesConfig{});
        }
        const StateVector oracle = brute_force_posterior(s0, vectors);
        for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(seq[i], oracle[i], 1e-9);
    }
}

}  // namespace
}  // namespace yeastloc
