#include <gtest/gtest.h>

#include <random>

#include "yeastloc/error.hpp"
#include "yeastloc/state_vector.hpp"

namespace yeastloc {
namespace {

double sum(const StateVector& s) {
    double t = 0.0;
    for (double x : s.values()) t += x;
    return t;
}

TEST(Compartment, CanonicalOrderAndSymbols) {
    ASSERT_EQ(kAllCompartments.size(), 5u);
    std::string symbols;
    for (Compartment c : kAllCompartments) symbols += to_char(c);
    EXPECT_EQ(symbols, "CNMTE");
    EXPECT_EQ(compartment_from_char('M'), Compartment::M);
    EXPECT_FALSE(compartment_from_char('X').has_value());
    EXPECT_FALSE(compartment_from_char('?').has_value());
}

TEST(FromMilli, TableTwoRow) {
    const StateVector s = from_milli({1, 997, 0, 2, 0});
    EXPECT_EQ(s[Compartment::C], 0.001);
    EXPECT_EQ(s[Compartment::N], 0.997);
    EXPECT_EQ(s[Compartment::M], 0.0);
    EXPECT_EQ(s[Compartment::T], 0.002);
    EXPECT_EQ(s[Compartment::E], 0.0);
    EXPECT_EQ(argmax_compartment(s), Compartment::N);
}

TEST(FromMilli, SingleMassAndUniform) {
    const StateVector one = from_milli({1000, 0, 0, 0, 0});
    EXPECT_EQ(one.values(), (Probabilities{1, 0, 0, 0, 0}));
    const StateVector flat = from_milli({200, 200, 200, 200, 200});
    for (double x : flat.values()) EXPECT_DOUBLE_EQ(x, 0.2);
}

TEST(FromMilli, RenormalizesOffByOneRows) {
    const StateVector s = from_milli({1, 998, 0, 2, 0});
    EXPECT_NEAR(sum(s), 1.0, 1e-12);
    EXPECT_NEAR(s[Compartment::N], 998.0 / 1001.0, 1e-15);
}

TEST(FromMilli, AllZeroIsDegenerate) {
    EXPECT_THROW(from_milli({0, 0, 0, 0, 0}), DomainError);
    try {
        from_milli({0, 0, 0, 0, 0});
    } catch (const DomainError& e) {
        EXPECT_STREQ(e.what(), "degenerate state vector");
    }
}

TEST(FromMilli, ScaleInvariant) {
    std::mt19937 gen(3);
    std::uniform_int_distribution<long> draw(0, 400);
    for (int i = 0; i < 200; ++i) {
        std::array<long, 5> raw{};
        for (long& x : raw) x = draw(gen);
        raw[i % 5] += 1;
        std::array<long, 5> scaled = raw;
        for (long& x : scaled) x *= 7;
        const auto a = from_milli(raw);
        const auto b = from_milli(scaled);
        for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(a[k], b[k], 1e-15);
    }
}

TEST(Argmax, PaperExampleAndTies) {
    EXPECT_EQ(argmax_compartment(Probabilities{0.04, 0.07, 0.8, 0.03, 0.06}), Compartment::M);
    EXPECT_EQ(argmax_compartment(Probabilities{0.2, 0.2, 0.2, 0.2, 0.2}), Compartment::C);
    EXPECT_EQ(argmax_compartment(Probabilities{0.1, 0.3, 0.1, 0.3, 0.2}), Compartment::N);
    EXPECT_EQ(argmax_compartment(Probabilities{0.0, 0.0, 0.0, 0.0, 1.0}), Compartment::E);
}

TEST(Normalize, HandDivision) {
    const StateVector s = normalize(Probabilities{0.1, 0.05, 0.02, 0.02, 0.01});
    const Probabilities expected{0.5, 0.25, 0.1, 0.1, 0.05};
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(s[i], expected[i], 1e-12);
    EXPECT_EQ(normalize(Probabilities{1, 0, 0, 0, 0}).values(), (Probabilities{1, 0, 0, 0, 0}));
    for (double x : normalize(Probabilities{2, 2, 2, 2, 2}).values()) EXPECT_DOUBLE_EQ(x, 0.2);
}

TEST(Normalize, RejectsZeroAndNegative) {
    EXPECT_THROW(normalize(Probabilities{0, 0, 0, 0, 0}), DomainError);
    EXPECT_THROW(normalize(Probabilities{0.5, -0.1, 0, 0, 0}), DomainError);
}

TEST(Normalize, PropertiesOnRandomVectors) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> draw(0.0, 10.0);
    std::bernoulli_distribution zero(0.2);
    for (int i = 0; i < 2000; ++i) {
        Probabilities v{};
        for (double& x : v) x = zero(gen) ? 0.0 : draw(gen);
        v[i % 5] += 0.5;
        const StateVector s = normalize(v);
        EXPECT_NEAR(sum(s), 1.0, 1e-9);
        for (std::size_t a = 0; a < 5; ++a) {
            EXPECT_GE(s[a], 0.0);
            for (std::size_t b = 0; b < 5; ++b) {
                if (v[b] > 0.0) EXPECT_NEAR(s[a] / s[b], v[a] / v[b], 1e-9 * (v[a] / v[b]) + 1e-300);
            }
        }
        EXPECT_EQ(argmax_compartment(s), argmax_compartment(v));
    }
}

}  // namespace
}  // namespace yeastloc
