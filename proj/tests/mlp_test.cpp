#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "yeastloc/error.hpp"
#include "yeastloc/mlp.hpp"

namespace yeastloc {
namespace {

MlpInput random_input(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> draw(0.0, 1.0);
    MlpInput x{};
    for (double& v : x) v = draw(gen);
    return x;
}

MlpOutput random_target(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> draw(0.01, 0.99);
    MlpOutput t{};
    for (double& v : t) v = draw(gen);
    return t;
}

MlpConfig hidden(std::vector<std::size_t> sizes, std::uint64_t seed = 1) {
    MlpConfig cfg;
    cfg.hidden_sizes = std::move(sizes);
    cfg.seed = seed;
    return cfg;
}

// 10-1-5 network with hand-chosen parameters; expected values below come from an
// arbitrary-precision evaluation of the same formulas.
Mlp hand_network() {
    Mlp m = Mlp::zeros(hidden({1}));
    for (std::size_t c = 0; c < 10; ++c) m.weight(0, 0, c) = 0.05 * (static_cast<double>(c) - 4.5);
    m.bias(0, 0) = 0.1;
    const double w2[5] = {0.5, -0.3, 0.2, 0.8, -0.6};
    const double b2[5] = {0.0, 0.1, -0.1, 0.2, -0.2};
    for (std::size_t r = 0; r < 5; ++r) {
        m.weight(1, r, 0) = w2[r];
        m.bias(1, r) = b2[r];
    }
    return m;
}

MlpInput hand_input() {
    MlpInput x{};
    for (std::size_t i = 0; i < 10; ++i) x[i] = static_cast<double>(i + 1) / 10.0;
    return x;
}

const MlpOutput kHandTarget{0.1, 0.6, 0.1, 0.1, 0.1};

TEST(MlpConfig, ArchitectureIsFixedAtTenToFive) {
    EXPECT_NO_THROW(MlpConfig{}.validate());
    MlpConfig bad_in;
    bad_in.input_size = 9;
    EXPECT_THROW(bad_in.validate(), DomainError);
    MlpConfig bad_out;
    bad_out.output_size = 4;
    EXPECT_THROW(bad_out.validate(), DomainError);
    EXPECT_THROW(hidden({}).validate(), DomainError);
    EXPECT_THROW(hidden({4, 0}).validate(), DomainError);
}

TEST(TrainConfig, Bounds) {
    EXPECT_NO_THROW(TrainConfig{}.validate());
    TrainConfig c;
    c.learning_rate = 0.0;
    EXPECT_THROW(c.validate(), DomainError);
    c = TrainConfig{};
    c.momentum = 1.0;
    EXPECT_THROW(c.validate(), DomainError);
    c = TrainConfig{};
    c.max_epochs = 0;
    EXPECT_THROW(c.validate(), DomainError);
}

TEST(Init, DeterministicInSeedAndWithinRange) {
    const Mlp a = Mlp::init(hidden({8}, 42));
    const Mlp b = Mlp::init(hidden({8}, 42));
    const Mlp c = Mlp::init(hidden({8}, 43));
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    EXPECT_EQ(a.num_parameters(), 133u);
    for (double w : a.parameters()) {
        EXPECT_GE(w, -0.5);
        EXPECT_LE(w, 0.5);
    }
    EXPECT_EQ(Mlp::init(hidden({4, 3})).num_parameters(), 10u * 4 + 4 + 4 * 3 + 3 + 3 * 5 + 5);
}

TEST(Forward, ZeroNetworkOutputsOneHalf) {
    const Mlp m = Mlp::zeros(MlpConfig{});
    std::mt19937_64 gen(1);
    for (int i = 0; i < 10; ++i) {
        for (double y : m.forward(random_input(gen))) EXPECT_EQ(y, 0.5);
    }
}

TEST(Forward, OutputsStayInOpenUnitInterval) {
    std::mt19937_64 gen(2);
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const Mlp m = Mlp::init(hidden({1 + s % 16}, s));
        for (double y : m.forward(random_input(gen))) {
            EXPECT_GT(y, 0.0);
            EXPECT_LT(y, 1.0);
        }
    }
}

TEST(Forward, HandEvaluatedNestedSigmoid) {
    const MlpOutput out = hand_network().forward(hand_input());
    const double expected[5] = {0.57754323003872742314, 0.47810957612681241363, 0.50626928891099586358,
                                0.66825735968112177436, 0.36002966109494994393};
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(out[i], expected[i], 1e-12);
    EXPECT_NEAR(mse(hand_network(), hand_input(), kHandTarget), 0.15969827971619336591, 1e-12);
}

TEST(TrainStep, ZeroStepLeavesParametersAndReportsMse) {
    // lr = 0 is outside TrainConfig's invariants but train_step applies it literally.
    const Mlp before = Mlp::init(MlpConfig{});
    Mlp m = before;
    TrainConfig cfg;
    cfg.learning_rate = 0.0;
    cfg.momentum = 0.0;
    std::mt19937_64 gen(4);
    const MlpInput x = random_input(gen);
    const MlpOutput t = random_target(gen);
    Velocity v = make_velocity(m);
    EXPECT_EQ(train_step(m, x, t, cfg, v), mse(before, x, t));
    EXPECT_EQ(m, before);
}

TEST(TrainStep, MatchesHandDerivedBackprop) {
    Mlp m = hand_network();
    TrainConfig cfg;
    cfg.learning_rate = 0.5;
    cfg.momentum = 0.0;
    Velocity v = make_velocity(m);
    const double e = train_step(m, hand_input(), kHandTarget, cfg, v);
    EXPECT_NEAR(e, 0.15969827971619336591, 1e-12);

    const double w1[10] = {-0.2257146624217370563,  -0.17642932484347411259, -0.12714398726521116889,
                           -0.07785864968694822518, -0.028573312108685281475, 0.02071202546957766223,
                           0.069997363047840605935, 0.11928270062610354964,  0.16856803820436649334,
                           0.21785337578262943705};
    for (std::size_t c = 0; c < 10; ++c) EXPECT_NEAR(m.weight(0, 0, c), w1[c], 1e-10);
    EXPECT_NEAR(m.bias(0, 0), 0.092853375782629437049, 1e-10);
    const double w2[5] = {0.4854265617821052501, -0.2961958387476497191, 0.18729811199261684711,
                          0.78424303115197036672, -0.60749382552692750313};
    const double b2[5] = {-0.023302872547780143767, 0.10608283944319133986, -0.1203102708452683107,
                          0.17480466645447383411, -0.21198259865231166776};
    for (std::size_t r = 0; r < 5; ++r) {
        EXPECT_NEAR(m.weight(1, r, 0), w2[r], 1e-10);
        EXPECT_NEAR(m.bias(1, r), b2[r], 1e-10);
    }
}

TEST(TrainStep, SmallStepsDecreaseErrorOnOneSample) {
    Mlp m = Mlp::init(MlpConfig{});
    TrainConfig cfg;
    cfg.learning_rate = 0.01;
    cfg.momentum = 0.0;
    std::mt19937_64 gen(6);
    const MlpInput x = random_input(gen);
    const MlpOutput t = random_target(gen);
    Velocity v = make_velocity(m);
    double previous = train_step(m, x, t, cfg, v);
    for (int i = 0; i < 100; ++i) {
        const double e = train_step(m, x, t, cfg, v);
        EXPECT_LT(e, previous);
        previous = e;
    }
}

TEST(TrainStep, ZeroMomentumIsPlainGradientDescent) {
    std::mt19937_64 gen(7);
    Mlp with = Mlp::init(hidden({6}, 3));
    Mlp plain = with;
    TrainConfig cfg;
    cfg.learning_rate = 0.3;
    cfg.momentum = 0.0;
    Velocity v = make_velocity(with);
    std::vector<double> grad(plain.num_parameters());
    for (int i = 0; i < 200; ++i) {
        const MlpInput x = random_input(gen);
        const MlpOutput t = random_target(gen);
        train_step(with, x, t, cfg, v);
        backprop(plain, x, t, grad);
        auto p = plain.parameters();
        for (std::size_t k = 0; k < p.size(); ++k) p[k] -= cfg.learning_rate * grad[k];
        ASSERT_EQ(with, plain) << "diverged at step " << i;
    }
}

TEST(TrainStep, MomentumAccumulatesPreviousDelta) {
    Mlp m = hand_network();
    TrainConfig cfg;
    cfg.learning_rate = 0.5;
    cfg.momentum = 0.8;
    Velocity v = make_velocity(m);
    train_step(m, hand_input(), kHandTarget, cfg, v);
    const Velocity first = v;
    const Mlp after_first = m;
    std::vector<double> grad(m.num_parameters());
    backprop(after_first, hand_input(), kHandTarget, grad);
    train_step(m, hand_input(), kHandTarget, cfg, v);
    for (std::size_t k = 0; k < grad.size(); ++k) {
        EXPECT_DOUBLE_EQ(v[k], -0.5 * grad[k] + 0.8 * first[k]);
        EXPECT_DOUBLE_EQ(m.parameters()[k], after_first.parameters()[k] + v[k]);
    }
}

TEST(TrainStep, NonFiniteGradientDiverges) {
    Mlp m = Mlp::init(MlpConfig{});
    Velocity v = make_velocity(m);
    MlpInput x{};
    x[0] = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(train_step(m, x, MlpOutput{0.2, 0.2, 0.2, 0.2, 0.2}, TrainConfig{}, v), TrainingDiverged);
}

TEST(GradientCheck, AgreesWithFiniteDifferences) {
    std::mt19937_64 gen(12);
    for (std::size_t h : {1u, 4u, 8u, 16u}) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const Mlp m = Mlp::init(hidden({h}, seed));
            EXPECT_LT(gradient_check(m, random_input(gen), random_target(gen)), 1e-4) << "hidden " << h;
        }
    }
    const Mlp deep = Mlp::init(hidden({6, 4}, 9));
    EXPECT_LT(gradient_check(deep, random_input(gen), random_target(gen)), 1e-4);
}

TEST(GradientCheck, ZeroNetworkAtZeroInput) {
    const Mlp m = Mlp::zeros(MlpConfig{});
    EXPECT_LT(gradient_check(m, MlpInput{}, MlpOutput{0.1, 0.2, 0.3, 0.2, 0.2}), 1e-4);
}

TEST(GradientCheck, DetectsSignFlippedGradient) {
    std::mt19937_64 gen(13);
    const Mlp m = Mlp::init(MlpConfig{});
    const GradientFn flipped = [](const Mlp& net, const MlpInput& x, const MlpOutput& t, std::span<double> g) {
        const double e = backprop(net, x, t, g);
        for (double& v : g) v = -v;
        return e;
    };
    EXPECT_GT(gradient_check(m, random_input(gen), random_target(gen), 1e-5, flipped), 0.1);
}

TEST(Serialize, RoundTripIsBitExact) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Mlp m = Mlp::init(hidden({1 + seed % 9, 1 + seed % 4}, seed * 7919));
        const std::string text = serialize(m);
        const Mlp back = deserialize_string(text);
        EXPECT_EQ(back, m);
        EXPECT_EQ(serialize(back), text);
    }
}

TEST(Serialize, Layout) {
    const std::string text = serialize(Mlp::zeros(hidden({2}, 99)));
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "yeastloc-mlp 1");
    std::getline(in, line);
    EXPECT_EQ(line, "dims 10 2 5");
    std::getline(in, line);
    EXPECT_EQ(line, "seed 99");
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 2u + 5u);
}

TEST(Deserialize, RejectsBadFiles) {
    MlpConfig cfg;
    cfg.hidden_sizes = {8};
    const std::string good = serialize(Mlp::init(cfg));
    std::string v2 = good;
    v2.replace(0, std::string("yeastloc-mlp 1").size(), "yeastloc-mlp 2");
    EXPECT_THROW(deserialize_string(v2), ParseError);
    try {
        deserialize_string(v2);
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
    }

    const std::string truncated = good.substr(0, good.size() / 2);
    const std::string cut = truncated.substr(0, truncated.rfind('\n') + 1);
    try {
        deserialize_string(cut);
        ADD_FAILURE() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("dimension"), std::string::npos);
    }

    std::string wrong_dims = good;
    wrong_dims.replace(wrong_dims.find("dims 10 8 5"), 11, "dims 9 8 5");
    EXPECT_THROW(deserialize_string(wrong_dims), ParseError);

    std::string nan = good;
    const auto pos = nan.find('\n', nan.find("seed")) + 1;
    nan.replace(pos, nan.find(' ', pos) - pos, "nan");
    EXPECT_THROW(deserialize_string(nan), ParseError);

    EXPECT_THROW(deserialize_string(good + "0.5\n"), ParseError);
}

}  // namespace
}  // namespace yeastloc
