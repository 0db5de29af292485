#include "yeastloc/metrics.hpp"

#include "yeastloc/error.hpp"

namespace yeastloc {

void ConfusionMatrix::add(Compartment truth, Compartment predicted, std::size_t n) {
    counts_[index_of(truth)][index_of(predicted)] += n;
}

std::size_t ConfusionMatrix::at(Compartment truth, Compartment predicted) const {
    return counts_[index_of(truth)][index_of(predicted)];
}

std::size_t ConfusionMatrix::row_total(Compartment truth) const {
    std::size_t n = 0;
    for (std::size_t x : counts_[index_of(truth)]) n += x;
    return n;
}

std::size_t ConfusionMatrix::total() const {
    std::size_t n = 0;
    for (Compartment c : kAllCompartments) n += row_total(c);
    return n;
}

std::size_t ConfusionMatrix::diagonal() const {
    std::size_t n = 0;
    for (Compartment c : kAllCompartments) n += at(c, c);
    return n;
}

ConfusionMatrix confusion_matrix(std::span<const LabelPair> pairs) {
    ConfusionMatrix cm;
    for (const auto& [truth, predicted] : pairs) cm.add(truth, predicted);
    return cm;
}

double accuracy(std::span<const LabelPair> pairs) {
    if (pairs.empty()) throw DomainError("accuracy of an empty prediction list");
    std::size_t hits = 0;
    for (const auto& [truth, predicted] : pairs) hits += truth == predicted ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(pairs.size());
}

// Written as a difference of scaled terms so 0.95 and 0.90 map to exactly 5 and 10.
double error_limit_pct(double acc) { return 100.0 - 100.0 * acc; }

std::optional<double> sensitivity(const ConfusionMatrix& cm, Compartment c) {
    const std::size_t row = cm.row_total(c);
    if (row == 0) return std::nullopt;
    return static_cast<double>(cm.at(c, c)) / static_cast<double>(row);
}

}  // namespace yeastloc
