#include "yeastloc/state_vector.hpp"

#include <cmath>

#include "yeastloc/error.hpp"

namespace yeastloc {

namespace {
constexpr std::array<char, kNumCompartments> kSymbols = {'C', 'N', 'M', 'T', 'E'};
constexpr std::array<std::string_view, kNumCompartments> kNames = {
    "cytoplasm", "nucleus", "mitochondria", "membrane", "secretory"};
}  // namespace

char to_char(Compartment c) noexcept { return kSymbols[index_of(c)]; }

std::string_view long_name(Compartment c) noexcept { return kNames[index_of(c)]; }

std::optional<Compartment> compartment_from_char(char ch) noexcept {
    for (std::size_t i = 0; i < kNumCompartments; ++i) {
        if (kSymbols[i] == ch) return kAllCompartments[i];
    }
    return std::nullopt;
}

StateVector::StateVector() noexcept {
    p_.fill(1.0 / static_cast<double>(kNumCompartments));
}

StateVector normalize(std::span<const double, kNumCompartments> v) {
    double sum = 0.0;
    for (double x : v) {
        if (!std::isfinite(x) || x < 0.0) throw DomainError("state vector component is negative or not finite");
        sum += x;
    }
    if (sum <= 0.0) throw DomainError("degenerate state vector");
    Probabilities p;
    for (std::size_t i = 0; i < kNumCompartments; ++i) p[i] = v[i] / sum;
    return StateVector(p);
}

StateVector from_milli(const std::array<long, kNumCompartments>& raw) {
    // Dividing by the integer total equals /1000 followed by renormalization,
    // with a single rounding per component.
    long total = 0;
    for (long x : raw) {
        if (x < 0) throw DomainError("negative milliprobability");
        total += x;
    }
    if (total == 0) throw DomainError("degenerate state vector");
    Probabilities p;
    for (std::size_t i = 0; i < kNumCompartments; ++i) {
        p[i] = static_cast<double>(raw[i]) / static_cast<double>(total);
    }
    return StateVector(p);
}

Compartment argmax_compartment(std::span<const double, kNumCompartments> v) noexcept {
    std::size_t best = 0;
    for (std::size_t i = 1; i < kNumCompartments; ++i) {
        if (v[i] > v[best]) best = i;
    }
    return kAllCompartments[best];
}

}  // namespace yeastloc
