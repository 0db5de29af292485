#include "yeastloc/mlp.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <random>
#include <sstream>

#include "yeastloc/error.hpp"

namespace yeastloc {

void MlpConfig::validate() const {
    if (input_size != kMlpInputs) throw DomainError("network input size must be 10");
    if (output_size != kMlpOutputs) throw DomainError("network output size must be 5");
    if (hidden_sizes.empty()) throw DomainError("at least one hidden layer is required");
    for (std::size_t h : hidden_sizes) {
        if (h < 1) throw DomainError("hidden layer sizes must be >= 1");
    }
}

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw DomainError("learning rate must be > 0");
    if (!(momentum >= 0.0 && momentum < 1.0)) throw DomainError("momentum must lie in [0, 1)");
    if (max_epochs < 1) throw DomainError("max_epochs must be >= 1");
    if (!(mse_threshold > 0.0)) throw DomainError("mse_threshold must be > 0");
}

double sigmoid(double t) noexcept { return 1.0 / (1.0 + std::exp(-t)); }

Mlp::Mlp(const MlpConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    widths_.push_back(cfg_.input_size);
    widths_.insert(widths_.end(), cfg_.hidden_sizes.begin(), cfg_.hidden_sizes.end());
    widths_.push_back(cfg_.output_size);
    std::size_t total = 0;
    for (std::size_t l = 0; l + 1 < widths_.size(); ++l) {
        offsets_.push_back(total);
        total += widths_[l + 1] * (widths_[l] + 1);
    }
    params_.assign(total, 0.0);
}

Mlp Mlp::zeros(const MlpConfig& cfg) { return Mlp(cfg); }

Mlp Mlp::init(const MlpConfig& cfg) {
    Mlp m(cfg);
    // Explicit 53-bit mapping instead of uniform_real_distribution so the draw
    // sequence does not depend on the standard library implementation.
    std::mt19937_64 gen(cfg.seed);
    for (double& w : m.params_) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        w = u - 0.5;
    }
    return m;
}

double& Mlp::weight(std::size_t layer, std::size_t row, std::size_t col) {
    return params_[offsets_[layer] + row * (widths_[layer] + 1) + col];
}
double Mlp::weight(std::size_t layer, std::size_t row, std::size_t col) const {
    return params_[offsets_[layer] + row * (widths_[layer] + 1) + col];
}
double& Mlp::bias(std::size_t layer, std::size_t row) { return weight(layer, row, widths_[layer]); }
double Mlp::bias(std::size_t layer, std::size_t row) const { return weight(layer, row, widths_[layer]); }

namespace {

// activations[0] is the input; activations[l + 1] the output of layer l.
std::vector<std::vector<double>> forward_all(const Mlp& m, const MlpInput& x) {
    const auto& widths = m.widths();
    const auto params = m.parameters();
    std::vector<std::vector<double>> act(widths.size());
    act[0].assign(x.begin(), x.end());
    std::size_t off = 0;
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
        const std::size_t fan_in = widths[l];
        act[l + 1].resize(widths[l + 1]);
        for (std::size_t r = 0; r < widths[l + 1]; ++r) {
            const double* row = params.data() + off + r * (fan_in + 1);
            double z = row[fan_in];
            for (std::size_t c = 0; c < fan_in; ++c) z += row[c] * act[l][c];
            act[l + 1][r] = sigmoid(z);
        }
        off += widths[l + 1] * (fan_in + 1);
    }
    return act;
}

double squared_error(const std::vector<double>& out, const MlpOutput& target) {
    double e = 0.0;
    for (std::size_t i = 0; i < kMlpOutputs; ++i) {
        const double d = out[i] - target[i];
        e += d * d;
    }
    return e / static_cast<double>(kMlpOutputs);
}

}  // namespace

MlpOutput Mlp::forward(const MlpInput& x) const {
    const auto act = forward_all(*this, x);
    MlpOutput out{};
    std::copy(act.back().begin(), act.back().end(), out.begin());
    return out;
}

double mse(const Mlp& m, const MlpInput& x, const MlpOutput& target) {
    return squared_error(forward_all(m, x).back(), target);
}

double backprop(const Mlp& m, const MlpInput& x, const MlpOutput& target, std::span<double> grad) {
    if (grad.size() != m.num_parameters()) throw DomainError("gradient buffer has the wrong size");
    const auto& widths = m.widths();
    const auto params = m.parameters();
    const auto act = forward_all(m, x);
    const std::size_t layers = m.num_layers();

    // delta = dE/dz for the current layer's pre-activations.
    std::vector<double> delta(kMlpOutputs);
    for (std::size_t i = 0; i < kMlpOutputs; ++i) {
        const double out = act[layers][i];
        delta[i] = 2.0 / static_cast<double>(kMlpOutputs) * (out - target[i]) * out * (1.0 - out);
    }

    std::vector<std::size_t> offsets(layers);
    for (std::size_t l = 0, off = 0; l < layers; ++l) {
        offsets[l] = off;
        off += widths[l + 1] * (widths[l] + 1);
    }

    for (std::size_t l = layers; l-- > 0;) {
        const std::size_t fan_in = widths[l];
        const std::size_t off = offsets[l];
        for (std::size_t r = 0; r < widths[l + 1]; ++r) {
            double* g = grad.data() + off + r * (fan_in + 1);
            for (std::size_t c = 0; c < fan_in; ++c) g[c] = delta[r] * act[l][c];
            g[fan_in] = delta[r];
        }
        if (l == 0) break;
        std::vector<double> prev(fan_in, 0.0);
        for (std::size_t r = 0; r < widths[l + 1]; ++r) {
            const double* row = params.data() + off + r * (fan_in + 1);
            for (std::size_t c = 0; c < fan_in; ++c) prev[c] += row[c] * delta[r];
        }
        for (std::size_t c = 0; c < fan_in; ++c) prev[c] *= act[l][c] * (1.0 - act[l][c]);
        delta = std::move(prev);
    }
    return squared_error(act[layers], target);
}

double train_step(Mlp& m, const MlpInput& x, const MlpOutput& target, const TrainConfig& cfg, Velocity& velocity) {
    if (velocity.size() != m.num_parameters()) throw DomainError("velocity buffer has the wrong size");
    std::vector<double> grad(m.num_parameters());
    const double e = backprop(m, x, target, grad);
    for (double g : grad) {
        if (!std::isfinite(g)) throw TrainingDiverged();
    }
    auto params = m.parameters();
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double step = -cfg.learning_rate * grad[i] + cfg.momentum * velocity[i];
        params[i] += step;
        velocity[i] = step;
        if (!std::isfinite(params[i])) throw TrainingDiverged();
    }
    return e;
}

double gradient_check(const Mlp& m, const MlpInput& x, const MlpOutput& target, double h, const GradientFn& analytic) {
    std::vector<double> grad(m.num_parameters());
    analytic(m, x, target, grad);
    Mlp probe = m;
    auto params = probe.parameters();
    double worst = 0.0;
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double saved = params[i];
        params[i] = saved + h;
        const double plus = mse(probe, x, target);
        params[i] = saved - h;
        const double minus = mse(probe, x, target);
        params[i] = saved;
        const double numeric = (plus - minus) / (2.0 * h);
        const double denom = std::max(std::abs(grad[i]) + std::abs(numeric), 1e-12);
        worst = std::max(worst, std::abs(grad[i] - numeric) / denom);
    }
    return worst;
}

namespace {

constexpr std::string_view kMagic = "yeastloc-mlp";
constexpr int kFormatVersion = 1;

void put_double(std::ostream& out, double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    out.write(buf, res.ptr - buf);
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    for (std::string t; ss >> t;) out.push_back(t);
    return out;
}

template <typename T>
bool parse_number(const std::string& s, T& value) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

void serialize(std::ostream& out, const Mlp& m) {
    out << kMagic << ' ' << kFormatVersion << '\n';
    out << "dims";
    for (std::size_t w : m.widths()) out << ' ' << w;
    out << '\n';
    out << "seed " << m.config().seed << '\n';
    const auto& widths = m.widths();
    for (std::size_t l = 0; l < m.num_layers(); ++l) {
        for (std::size_t r = 0; r < widths[l + 1]; ++r) {
            for (std::size_t c = 0; c <= widths[l]; ++c) {
                if (c > 0) out << ' ';
                put_double(out, m.weight(l, r, c));
            }
            out << '\n';
        }
    }
}

std::string serialize(const Mlp& m) {
    std::ostringstream out;
    serialize(out, m);
    return out.str();
}

Mlp deserialize(std::istream& in) {
    std::size_t line_no = 0;
    auto next_line = [&](std::vector<std::string>& toks) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            toks = tokens(line);
            if (!toks.empty()) return true;
        }
        return false;
    };

    std::vector<std::string> toks;
    if (!next_line(toks) || toks.size() != 2 || toks[0] != kMagic) throw ParseError(line_no, "not a yeastloc model file");
    int version = 0;
    if (!parse_number(toks[1], version) || version != kFormatVersion) {
        throw ParseError(line_no, "unsupported model version " + toks[1]);
    }

    if (!next_line(toks) || toks.empty() || toks[0] != "dims" || toks.size() < 4) {
        throw ParseError(line_no, "dimension error: expected 'dims 10 <hidden...> 5'");
    }
    std::vector<std::size_t> widths;
    for (std::size_t i = 1; i < toks.size(); ++i) {
        std::size_t w = 0;
        if (!parse_number(toks[i], w) || w < 1) throw ParseError(line_no, "dimension error: bad width " + toks[i]);
        widths.push_back(w);
    }
    if (widths.front() != kMlpInputs || widths.back() != kMlpOutputs) {
        throw ParseError(line_no, "dimension error: network must map 10 inputs to 5 outputs");
    }

    MlpConfig cfg;
    cfg.hidden_sizes.assign(widths.begin() + 1, widths.end() - 1);
    if (!next_line(toks) || toks.size() != 2 || toks[0] != "seed" || !parse_number(toks[1], cfg.seed)) {
        throw ParseError(line_no, "expected 'seed <n>'");
    }

    Mlp m = Mlp::zeros(cfg);
    for (std::size_t l = 0; l < m.num_layers(); ++l) {
        for (std::size_t r = 0; r < widths[l + 1]; ++r) {
            if (!next_line(toks)) throw ParseError(line_no, "dimension error: model file is truncated");
            if (toks.size() != widths[l] + 1) {
                throw ParseError(line_no, "dimension error: expected " + std::to_string(widths[l] + 1) + " values");
            }
            for (std::size_t c = 0; c <= widths[l]; ++c) {
                double v = 0.0;
                if (!parse_number(toks[c], v)) throw ParseError(line_no, "bad number " + toks[c]);
                if (!std::isfinite(v)) throw ParseError(line_no, "non-finite parameter");
                m.weight(l, r, c) = v;
            }
        }
    }
    if (next_line(toks)) throw ParseError(line_no, "dimension error: trailing data after last layer");
    return m;
}

Mlp deserialize_string(const std::string& text) {
    std::istringstream in(text);
    return deserialize(in);
}

}  // namespace yeastloc
