#pragma once

// Readers and writers for the four tab-separated dataset files:
//
//   state vectors      scid_  loc1  subset  C  N  M  T  E   (milliprobabilities)
//   feature defs       feature  category  subtype  pct_change  status  bins
//   feature table      feature  bin  C  N  M  T  E          (fractions in [0,1])
//   bin assignments    scid_  feature  bin
//
// Every file starts with a header line. Blank lines and lines starting with '#'
// are ignored. Fields may be separated by tabs or runs of spaces.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "yeastloc/model.hpp"

namespace yeastloc {

enum class DuplicatePolicy { Reject, KeepFirst };

// Largest tolerated |row sum - 1000| for a state-vector row.
inline constexpr long kMilliSumTolerance = 10;

std::vector<ProteinRecord> parse_state_vectors(std::istream& in,
                                               DuplicatePolicy duplicates = DuplicatePolicy::Reject);
std::vector<FeatureDef> parse_feature_defs(std::istream& in);
// With defs, bins at or beyond a feature's bin_count are rejected.
FeatureVectorTable parse_feature_table(std::istream& in, const std::vector<FeatureDef>* defs = nullptr);
BinAssignment parse_bin_assignments(std::istream& in);

void write_state_vectors(std::ostream& out, const std::vector<ProteinRecord>& proteins);
void write_feature_defs(std::ostream& out, const std::vector<FeatureDef>& defs);
void write_feature_table(std::ostream& out, const FeatureVectorTable& table);
void write_bin_assignments(std::ostream& out, const BinAssignment& bins);

struct DatasetPaths {
    std::filesystem::path state_vectors;
    std::filesystem::path feature_defs;
    std::filesystem::path feature_table;
    std::filesystem::path bins;

    // Conventional file names inside one directory.
    static DatasetPaths in_directory(const std::filesystem::path& dir);
};

// Thrown for unreadable files and, wrapping ParseError, for malformed ones.
class FileError : public std::runtime_error {
public:
    FileError(const std::filesystem::path& file, std::size_t line, const std::string& what);
    const std::filesystem::path& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::filesystem::path file_;
    std::size_t line_;
};

Dataset load_dataset(const DatasetPaths& paths, DuplicatePolicy duplicates = DuplicatePolicy::Reject);
void save_dataset(const DatasetPaths& paths, const Dataset& d);

struct ValidationIssue {
    enum class Kind {
        MissingAssignment,   // protein has no bin for a selected feature
        MissingTableEntry,   // assignment points at a (feature, bin) absent from the table
        UnknownFeature,      // selected feature absent from defs
        BinOutOfRange,       // assignment or table bin >= bin_count
        BadSubset,           // subset outside 0..6
    };
    Kind kind;
    std::string protein;  // empty when not protein-specific
    std::string feature;
    int bin = -1;

    std::string describe() const;
    friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const noexcept { return issues.empty(); }
};

ValidationReport validate_dataset(const Dataset& d, const std::vector<std::string>& selected_features);

}  // namespace yeastloc
