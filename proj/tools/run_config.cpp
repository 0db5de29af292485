#include "run_config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <string>
#include <vector>

#include "yeastloc/error.hpp"

namespace yeastloc::cli {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        const auto comma = value.find(',', start);
        std::string item = trim(std::string_view(value).substr(
            start, comma == std::string::npos ? std::string::npos : comma - start));
        if (!item.empty()) out.push_back(std::move(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

template <typename T>
T number(const std::string& key, const std::string& value) {
    T out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ConfigError("bad value for " + key + ": '" + value + "'");
    }
    return out;
}

bool boolean(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("bad value for " + key + ": '" + value + "'");
}

std::set<int> subsets(const std::string& key, const std::string& value) {
    std::set<int> out;
    for (const auto& item : split_list(value)) out.insert(number<int>(key, item));
    return out;
}

}  // namespace

RunConfig parse_run_config(std::istream& in) {
    RunConfig rc;
    PipelineConfig& cfg = rc.pipeline;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(std::string_view(stripped).substr(0, eq));
        const std::string value = trim(std::string_view(stripped).substr(eq + 1));

        if (key == "feature_order") {
            cfg.feature_order = split_list(value);
            rc.feature_order_set = true;
        } else if (key == "hidden_sizes") {
            cfg.mlp.hidden_sizes.clear();
            for (const auto& item : split_list(value)) cfg.mlp.hidden_sizes.push_back(number<std::size_t>(key, item));
        } else if (key == "learning_rate") {
            cfg.train.learning_rate = number<double>(key, value);
        } else if (key == "momentum") {
            cfg.train.momentum = number<double>(key, value);
        } else if (key == "max_epochs") {
            cfg.train.max_epochs = number<std::size_t>(key, value);
        } else if (key == "mse_threshold") {
            cfg.train.mse_threshold = number<double>(key, value);
        } else if (key == "shuffle") {
            cfg.train.shuffle = boolean(key, value);
        } else if (key == "seed") {
            cfg.mlp.seed = cfg.train.seed = number<std::uint64_t>(key, value);
        } else if (key == "mlp_seed") {
            cfg.mlp.seed = number<std::uint64_t>(key, value);
        } else if (key == "train_seed") {
            cfg.train.seed = number<std::uint64_t>(key, value);
        } else if (key == "train_subsets") {
            cfg.train_subsets = subsets(key, value);
        } else if (key == "test_subsets") {
            cfg.test_subsets = subsets(key, value);
        } else if (key == "pseudo_count") {
            cfg.bayes.pseudo_count = number<double>(key, value);
        } else {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown config key '" + key + "'");
        }
    }
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
    return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    try {
        return parse_run_config(in);
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

}  // namespace yeastloc::cli
