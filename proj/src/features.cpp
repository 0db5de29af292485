#include <algorithm>
#include <cctype>
#include <string>

#include "yeastloc/error.hpp"
#include "yeastloc/model.hpp"

namespace yeastloc {

namespace {

std::string fold_case(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        if (ch == '_' || ch == ' ') ch = '-';
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
    return out;
}

}  // namespace

std::string_view to_string(FeatureCategory c) noexcept {
    switch (c) {
        case FeatureCategory::Motif: return "motif";
        case FeatureCategory::OverallSequence: return "overall-sequence";
        case FeatureCategory::WholeGenome: return "whole-genome";
    }
    return "motif";
}

std::string_view to_string(FeatureStatus s) noexcept {
    switch (s) {
        case FeatureStatus::Important: return "important";
        case FeatureStatus::Included: return "included";
        case FeatureStatus::Redundant: return "redundant";
    }
    return "included";
}

std::optional<FeatureCategory> parse_category(std::string_view s) {
    const std::string f = fold_case(s);
    if (f == "motif") return FeatureCategory::Motif;
    if (f == "overall" || f == "overall-sequence") return FeatureCategory::OverallSequence;
    if (f == "whole-genome" || f == "wholegenome" || f == "genome") return FeatureCategory::WholeGenome;
    return std::nullopt;
}

std::optional<FeatureStatus> parse_status(std::string_view s) {
    const std::string f = fold_case(s);
    if (f == "important") return FeatureStatus::Important;
    if (f == "included") return FeatureStatus::Included;
    if (f == "redundant") return FeatureStatus::Redundant;
    return std::nullopt;
}

void FeatureVectorTable::set(std::string feature, int bin, const Probabilities& fractions) {
    entries_[Key{std::move(feature), bin}] = fractions;
}

const Probabilities* FeatureVectorTable::find(std::string_view feature, int bin) const {
    auto it = entries_.find(Key{std::string(feature), bin});
    return it == entries_.end() ? nullptr : &it->second;
}

bool BinAssignment::insert(std::string protein, std::string feature, int bin) {
    return entries_.emplace(Key{std::move(protein), std::move(feature)}, bin).second;
}

void BinAssignment::erase(std::string_view protein, std::string_view feature) {
    entries_.erase(Key{std::string(protein), std::string(feature)});
}

std::optional<int> BinAssignment::find(std::string_view protein, std::string_view feature) const {
    auto it = entries_.find(Key{std::string(protein), std::string(feature)});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

const FeatureDef* Dataset::find_feature(std::string_view name) const {
    auto it = std::find_if(features.begin(), features.end(), [&](const FeatureDef& f) { return f.name == name; });
    return it == features.end() ? nullptr : &*it;
}

const ProteinRecord* Dataset::find_protein(std::string_view id) const {
    auto it = std::find_if(proteins.begin(), proteins.end(), [&](const ProteinRecord& p) { return p.id == id; });
    return it == proteins.end() ? nullptr : &*it;
}

std::vector<ChainLink> resolve_chain(const Dataset& d, const ProteinRecord& p,
                                     const std::vector<std::string>& feature_order) {
    std::vector<ChainLink> links;
    links.reserve(feature_order.size());
    for (const auto& feature : feature_order) {
        const auto bin = d.bins.find(p.id, feature);
        if (!bin) throw DomainError("protein " + p.id + " has no bin assignment for feature " + feature);
        const Probabilities* fv = d.feature_table.find(feature, *bin);
        if (fv == nullptr) {
            throw DomainError("no feature-table entry for feature " + feature + " bin " + std::to_string(*bin) +
                              " (protein " + p.id + ")");
        }
        links.push_back(ChainLink{feature, *bin, *fv});
    }
    return links;
}

const std::vector<std::string>& reference_feature_order() {
    // Ten "important" then nine "included" features. The reference system reports
    // using 13 features without naming them, so all 19 non-redundant ones are listed.
    static const std::vector<std::string> order = {
        "MIT1",    "GLYC", "SIGNALP", "SIG1", "NUG1", "PI",   "TMS1",    "MGAYOUNG", "KNOCKOUT", "MRLASD",
        "PLMNEW1", "FARN", "GGI",     "MIT2", "HDEL", "NUC2", "POX1", "MRCYELU",  "MRCYCSD",
    };
    return order;
}

}  // namespace yeastloc
