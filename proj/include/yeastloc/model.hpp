#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "yeastloc/state_vector.hpp"

namespace yeastloc {

struct ProteinRecord {
    std::string id;                    // systematic ORF name, e.g. YAL001C
    std::optional<Compartment> label;  // absent for "?" rows
    int subset = 0;                    // cross-validation fold, 0..6
    StateVector prior;

    friend bool operator==(const ProteinRecord&, const ProteinRecord&) = default;
};

inline constexpr int kNumSubsets = 7;

enum class FeatureCategory { Motif, OverallSequence, WholeGenome };
enum class FeatureStatus { Important, Included, Redundant };

std::string_view to_string(FeatureCategory c) noexcept;
std::string_view to_string(FeatureStatus s) noexcept;
// Case-insensitive. Accepts the short forms used in feature tables ("Overall", "Whole-genome").
std::optional<FeatureCategory> parse_category(std::string_view s);
std::optional<FeatureStatus> parse_status(std::string_view s);

struct FeatureDef {
    std::string name;
    FeatureCategory category = FeatureCategory::Motif;
    std::string subtype;
    double pct_change = 0.0;  // accuracy change in percentage points when the feature is used
    FeatureStatus status = FeatureStatus::Included;
    int bin_count = 1;

    friend bool operator==(const FeatureDef&, const FeatureDef&) = default;
};

// Per (feature, bin): the fraction of proteins in each compartment that fall into the bin.
class FeatureVectorTable {
public:
    using Key = std::pair<std::string, int>;

    void set(std::string feature, int bin, const Probabilities& fractions);
    const Probabilities* find(std::string_view feature, int bin) const;
    bool contains(std::string_view feature, int bin) const { return find(feature, bin) != nullptr; }
    std::size_t size() const noexcept { return entries_.size(); }

    const std::map<Key, Probabilities>& entries() const noexcept { return entries_; }

    friend bool operator==(const FeatureVectorTable&, const FeatureVectorTable&) = default;

private:
    std::map<Key, Probabilities> entries_;
};

// (protein id, feature name) -> bin index.
class BinAssignment {
public:
    using Key = std::pair<std::string, std::string>;

    // Returns false if the key already exists (the existing value is kept).
    bool insert(std::string protein, std::string feature, int bin);
    void erase(std::string_view protein, std::string_view feature);
    std::optional<int> find(std::string_view protein, std::string_view feature) const;
    std::size_t size() const noexcept { return entries_.size(); }

    const std::map<Key, int>& entries() const noexcept { return entries_; }

    friend bool operator==(const BinAssignment&, const BinAssignment&) = default;

private:
    std::map<Key, int> entries_;
};

struct Dataset {
    std::vector<ProteinRecord> proteins;
    std::vector<FeatureDef> features;
    FeatureVectorTable feature_table;
    BinAssignment bins;

    const FeatureDef* find_feature(std::string_view name) const;
    const ProteinRecord* find_protein(std::string_view id) const;
};

// One resolved step of a localization chain: which bin of which feature applies,
// and the feature vector for that bin.
struct ChainLink {
    std::string feature;
    int bin = 0;
    Probabilities feature_vector{};
};

// Resolves the feature vectors a protein passes through, in order. Throws
// DomainError naming the protein and feature when an assignment or table entry is missing.
std::vector<ChainLink> resolve_chain(const Dataset& d, const ProteinRecord& p,
                                     const std::vector<std::string>& feature_order);

// The 19 non-redundant feature names of the reference feature table (10 important, 9 included).
const std::vector<std::string>& reference_feature_order();

}  // namespace yeastloc
