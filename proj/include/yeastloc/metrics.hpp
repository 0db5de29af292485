#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>

#include "yeastloc/state_vector.hpp"

namespace yeastloc {

using LabelPair = std::pair<Compartment, Compartment>;  // (true, predicted)

// Rows are true compartments, columns predicted ones, both in canonical order.
class ConfusionMatrix {
public:
    void add(Compartment truth, Compartment predicted, std::size_t n = 1);
    std::size_t at(Compartment truth, Compartment predicted) const;
    std::size_t row_total(Compartment truth) const;
    std::size_t total() const;
    std::size_t diagonal() const;

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

private:
    std::array<std::array<std::size_t, kNumCompartments>, kNumCompartments> counts_{};
};

ConfusionMatrix confusion_matrix(std::span<const LabelPair> pairs);

// Fraction of matching pairs. Throws DomainError on an empty list.
double accuracy(std::span<const LabelPair> pairs);

// 100 * (1 - acc).
double error_limit_pct(double acc);

// Diagonal over row total; nullopt when the row is empty.
std::optional<double> sensitivity(const ConfusionMatrix& cm, Compartment c);

}  // namespace yeastloc
