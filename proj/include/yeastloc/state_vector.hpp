#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace yeastloc {

inline constexpr std::size_t kNumCompartments = 5;

// The five collapsed compartments, in canonical order C, N, M, T, E.
enum class Compartment : unsigned char { C = 0, N = 1, M = 2, T = 3, E = 4 };

inline constexpr std::array<Compartment, kNumCompartments> kAllCompartments = {
    Compartment::C, Compartment::N, Compartment::M, Compartment::T, Compartment::E};

constexpr std::size_t index_of(Compartment c) noexcept { return static_cast<std::size_t>(c); }

char to_char(Compartment c) noexcept;
std::string_view long_name(Compartment c) noexcept;
std::optional<Compartment> compartment_from_char(char ch) noexcept;

using Probabilities = std::array<double, kNumCompartments>;

// A probability distribution over the five compartments. Instances are only
// created through the factory functions below, so every component is >= 0
// and the components sum to 1.
class StateVector {
public:
    // Uniform distribution.
    StateVector() noexcept;

    double operator[](Compartment c) const noexcept { return p_[index_of(c)]; }
    double operator[](std::size_t i) const noexcept { return p_[i]; }
    const Probabilities& values() const noexcept { return p_; }

    friend bool operator==(const StateVector&, const StateVector&) = default;

private:
    explicit StateVector(const Probabilities& p) noexcept : p_(p) {}

    friend StateVector normalize(std::span<const double, kNumCompartments> v);
    friend StateVector from_milli(const std::array<long, kNumCompartments>& raw);

    Probabilities p_;
};

// Divides by the sum. Throws DomainError on a negative, non-finite, or all-zero input.
StateVector normalize(std::span<const double, kNumCompartments> v);

inline StateVector normalize(const Probabilities& v) { return normalize(std::span<const double, kNumCompartments>(v)); }

// Converts a row of milliprobabilities (Table-style integers) into a state vector.
StateVector from_milli(const std::array<long, kNumCompartments>& raw);

// First maximum in canonical order wins ties.
Compartment argmax_compartment(std::span<const double, kNumCompartments> v) noexcept;

inline Compartment argmax_compartment(const StateVector& s) noexcept {
    return argmax_compartment(std::span<const double, kNumCompartments>(s.values()));
}

}  // namespace yeastloc
