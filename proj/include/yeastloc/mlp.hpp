#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace yeastloc {

inline constexpr std::size_t kMlpInputs = 10;
inline constexpr std::size_t kMlpOutputs = 5;

using MlpInput = std::array<double, kMlpInputs>;
using MlpOutput = std::array<double, kMlpOutputs>;

struct MlpConfig {
    std::size_t input_size = kMlpInputs;
    std::vector<std::size_t> hidden_sizes{32};
    std::size_t output_size = kMlpOutputs;
    std::uint64_t seed = 1;

    void validate() const;
    friend bool operator==(const MlpConfig&, const MlpConfig&) = default;
};

struct TrainConfig {
    double learning_rate = 0.3;
    double momentum = 0.8;
    std::size_t max_epochs = 10000;
    double mse_threshold = 1e-4;
    bool shuffle = false;
    std::uint64_t seed = 1;

    void validate() const;
};

class TrainingDiverged : public std::runtime_error {
public:
    TrainingDiverged() : std::runtime_error("training diverged") {}
};

double sigmoid(double t) noexcept;

// Fully connected sigmoid network. Parameters live in one flat buffer, layer by
// layer; within a layer each output row stores its fan-in weights followed by its bias.
class Mlp {
public:
    // Every parameter drawn uniformly from [-0.5, 0.5], deterministic in cfg.seed.
    static Mlp init(const MlpConfig& cfg);
    // Same shape as init(cfg) with every parameter zero.
    static Mlp zeros(const MlpConfig& cfg);

    const MlpConfig& config() const noexcept { return cfg_; }
    std::size_t num_layers() const noexcept { return widths_.size() - 1; }
    // widths()[0] = inputs, widths().back() = outputs.
    const std::vector<std::size_t>& widths() const noexcept { return widths_; }
    std::size_t num_parameters() const noexcept { return params_.size(); }

    std::span<double> parameters() noexcept { return params_; }
    std::span<const double> parameters() const noexcept { return params_; }

    double& weight(std::size_t layer, std::size_t row, std::size_t col);
    double weight(std::size_t layer, std::size_t row, std::size_t col) const;
    double& bias(std::size_t layer, std::size_t row);
    double bias(std::size_t layer, std::size_t row) const;

    MlpOutput forward(const MlpInput& x) const;

    friend bool operator==(const Mlp&, const Mlp&) = default;

private:
    explicit Mlp(const MlpConfig& cfg);
    std::size_t offset(std::size_t layer) const { return offsets_[layer]; }

    MlpConfig cfg_;
    std::vector<std::size_t> widths_;
    std::vector<std::size_t> offsets_;
    std::vector<double> params_;
};

// E = mean over the five outputs of (out - target)^2.
double mse(const Mlp& m, const MlpInput& x, const MlpOutput& target);

// Exact dE/dparam by backpropagation, in the layout of Mlp::parameters(). Returns E.
double backprop(const Mlp& m, const MlpInput& x, const MlpOutput& target, std::span<double> grad);

// Parameter-shaped buffer holding the previous step's delta.
using Velocity = std::vector<double>;

inline Velocity make_velocity(const Mlp& m) { return Velocity(m.num_parameters(), 0.0); }

// One online update: dw(t) = -lr * dE/dw + momentum * dw(t-1). Returns E before the
// update. Throws TrainingDiverged if a gradient or parameter becomes non-finite.
double train_step(Mlp& m, const MlpInput& x, const MlpOutput& target, const TrainConfig& cfg,
                  Velocity& velocity);

using GradientFn = std::function<double(const Mlp&, const MlpInput&, const MlpOutput&, std::span<double>)>;

// Max over parameters of |g_a - g_n| / max(|g_a| + |g_n|, 1e-12), where g_n is the
// central difference of mse() with step h. `analytic` defaults to backprop.
double gradient_check(const Mlp& m, const MlpInput& x, const MlpOutput& target, double h = 1e-5,
                      const GradientFn& analytic = backprop);

// Text model file: "yeastloc-mlp 1", "dims 10 <hidden...> 5", "seed <n>", then one
// line per neuron (weights then bias) in shortest round-trip decimal form.
std::string serialize(const Mlp& m);
void serialize(std::ostream& out, const Mlp& m);
Mlp deserialize(std::istream& in);
Mlp deserialize_string(const std::string& text);

}  // namespace yeastloc
