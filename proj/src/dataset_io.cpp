#include "yeastloc/dataset_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <set>
#include <string_view>
#include <unordered_set>

#include "yeastloc/error.hpp"

namespace yeastloc {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string_view> fields;
};

// Splits on tabs when the line has any, so fields may contain spaces;
// otherwise on runs of blanks.
std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    if (line.find('\t') != std::string_view::npos) {
        std::size_t start = 0;
        while (true) {
            const std::size_t tab = line.find('\t', start);
            std::string_view f = line.substr(start, tab == std::string_view::npos ? line.size() - start : tab - start);
            while (!f.empty() && f.front() == ' ') f.remove_prefix(1);
            while (!f.empty() && f.back() == ' ') f.remove_suffix(1);
            // Runs of tabs act as one separator.
            if (!f.empty()) out.push_back(f);
            if (tab == std::string_view::npos) break;
            start = tab + 1;
        }
        return out;
    }
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

// Reads the stream into owned lines, dropping comments and blanks. The string
// storage must outlive the returned views, hence the out-parameter.
std::vector<Line> read_lines(std::istream& in, std::vector<std::string>& storage) {
    std::vector<std::pair<std::size_t, std::size_t>> kept;  // (line number, storage index)
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (number == 1 && raw.starts_with("\xEF\xBB\xBF")) raw.erase(0, 3);
        const auto first = raw.find_first_not_of(" \t");
        if (first == std::string::npos || raw[first] == '#') continue;
        storage.push_back(raw);
        kept.emplace_back(number, storage.size() - 1);
    }
    std::vector<Line> lines;
    lines.reserve(kept.size());
    for (auto [n, idx] : kept) lines.push_back(Line{n, split_fields(storage[idx])});
    return lines;
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

void expect_header(const std::vector<Line>& lines, std::initializer_list<std::initializer_list<std::string_view>> columns,
                   std::string_view what) {
    if (lines.empty()) throw ParseError(0, std::string("missing ") + std::string(what) + " header");
    const Line& h = lines.front();
    bool ok = h.fields.size() == columns.size();
    if (ok) {
        std::size_t i = 0;
        for (const auto& accepted : columns) {
            const bool match = std::any_of(accepted.begin(), accepted.end(),
                                           [&](std::string_view name) { return iequals(h.fields[i], name); });
            if (!match) ok = false;
            ++i;
        }
    }
    if (!ok) {
        std::string expected;
        for (const auto& accepted : columns) {
            if (!expected.empty()) expected += ' ';
            expected += *accepted.begin();
        }
        throw ParseError(h.number, "bad " + std::string(what) + " header, expected: " + expected);
    }
}

void expect_columns(const Line& line, std::size_t n) {
    if (line.fields.size() != n) {
        throw ParseError(line.number, "expected " + std::to_string(n) + " columns, found " +
                                          std::to_string(line.fields.size()));
    }
}

long parse_long(const Line& line, std::string_view field, std::string_view what) {
    long value = 0;
    const char* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw ParseError(line.number, std::string(what) + " is not an integer: '" + std::string(field) + "'");
    }
    return value;
}

double parse_double(const Line& line, std::string_view field, std::string_view what) {
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const char* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw ParseError(line.number, std::string(what) + " is not a number: '" + std::string(field) + "'");
    }
    return value;
}

int parse_bin(const Line& line, std::string_view field) {
    const long bin = parse_long(line, field, "bin");
    if (bin < 0 || bin > 1'000'000) throw ParseError(line.number, "bin index out of range: " + std::string(field));
    return static_cast<int>(bin);
}

// Largest-remainder rounding of a distribution to integers summing to 1000.
std::array<long, kNumCompartments> to_milli(const StateVector& s) {
    std::array<long, kNumCompartments> out{};
    std::array<double, kNumCompartments> remainder{};
    long total = 0;
    for (std::size_t i = 0; i < kNumCompartments; ++i) {
        const double scaled = s[i] * 1000.0;
        out[i] = static_cast<long>(std::floor(scaled));
        remainder[i] = scaled - static_cast<double>(out[i]);
        total += out[i];
    }
    while (total < 1000) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < kNumCompartments; ++i) {
            if (remainder[i] > remainder[best]) best = i;
        }
        ++out[best];
        remainder[best] = -1.0;
        ++total;
    }
    return out;
}

void write_fixed6(std::ostream& out, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    out << buf;
}

}  // namespace

std::vector<ProteinRecord> parse_state_vectors(std::istream& in, DuplicatePolicy duplicates) {
    std::vector<std::string> storage;
    const auto lines = read_lines(in, storage);
    expect_header(lines, {{"scid_"}, {"loc1", "bcl"}, {"subset"}, {"C"}, {"N"}, {"M"}, {"T"}, {"E"}},
                  "state-vector");

    std::vector<ProteinRecord> records;
    std::unordered_set<std::string> seen;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const Line& line = lines[li];
        expect_columns(line, 8);
        ProteinRecord rec;
        rec.id = std::string(line.fields[0]);

        const std::string_view loc = line.fields[1];
        if (loc != "?") {
            if (loc.size() != 1 || !compartment_from_char(loc[0])) {
                throw ParseError(line.number, "unknown compartment label '" + std::string(loc) + "'");
            }
            rec.label = compartment_from_char(loc[0]);
        }

        const long subset = parse_long(line, line.fields[2], "subset");
        if (subset < 0 || subset >= kNumSubsets) {
            throw ParseError(line.number, "subset " + std::to_string(subset) + " outside 0..6");
        }
        rec.subset = static_cast<int>(subset);

        std::array<long, kNumCompartments> raw{};
        long sum = 0;
        for (std::size_t i = 0; i < kNumCompartments; ++i) {
            raw[i] = parse_long(line, line.fields[3 + i], "probability");
            if (raw[i] < 0) throw ParseError(line.number, "negative probability");
            sum += raw[i];
        }
        if (std::labs(sum - 1000) > kMilliSumTolerance) {
            throw ParseError(line.number, "probabilities sum to " + std::to_string(sum) + ", expected 1000");
        }
        rec.prior = from_milli(raw);

        if (!seen.insert(rec.id).second) {
            if (duplicates == DuplicatePolicy::KeepFirst) continue;
            throw ParseError(line.number, "duplicate protein id " + rec.id);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<FeatureDef> parse_feature_defs(std::istream& in) {
    std::vector<std::string> storage;
    const auto lines = read_lines(in, storage);
    expect_header(lines, {{"feature"}, {"category"}, {"subtype"}, {"pct_change"}, {"status"}, {"bins"}},
                  "feature-definition");

    std::vector<FeatureDef> defs;
    std::set<std::string, std::less<>> names;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const Line& line = lines[li];
        expect_columns(line, 6);
        FeatureDef def;
        def.name = std::string(line.fields[0]);
        const auto category = parse_category(line.fields[1]);
        if (!category) throw ParseError(line.number, "unknown category '" + std::string(line.fields[1]) + "'");
        def.category = *category;
        def.subtype = line.fields[2] == "-" ? std::string() : std::string(line.fields[2]);
        def.pct_change = parse_double(line, line.fields[3], "pct_change");
        const auto status = parse_status(line.fields[4]);
        if (!status) throw ParseError(line.number, "unknown status '" + std::string(line.fields[4]) + "'");
        def.status = *status;
        const long bins = parse_long(line, line.fields[5], "bins");
        if (bins < 1) throw ParseError(line.number, "feature " + def.name + " has bin count < 1");
        if (bins > 1'000'000) throw ParseError(line.number, "bin count too large");
        def.bin_count = static_cast<int>(bins);
        if (!names.insert(def.name).second) throw ParseError(line.number, "duplicate feature " + def.name);
        defs.push_back(std::move(def));
    }
    return defs;
}

FeatureVectorTable parse_feature_table(std::istream& in, const std::vector<FeatureDef>* defs) {
    std::vector<std::string> storage;
    const auto lines = read_lines(in, storage);
    expect_header(lines, {{"feature"}, {"bin"}, {"C"}, {"N"}, {"M"}, {"T"}, {"E"}}, "feature-table");

    FeatureVectorTable table;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const Line& line = lines[li];
        expect_columns(line, 7);
        std::string feature(line.fields[0]);
        const int bin = parse_bin(line, line.fields[1]);
        if (defs != nullptr) {
            auto it = std::find_if(defs->begin(), defs->end(), [&](const FeatureDef& f) { return f.name == feature; });
            if (it != defs->end() && bin >= it->bin_count) {
                throw ParseError(line.number, "bin " + std::to_string(bin) + " >= bin count " +
                                                  std::to_string(it->bin_count) + " of feature " + feature);
            }
        }
        Probabilities fractions{};
        for (std::size_t i = 0; i < kNumCompartments; ++i) {
            fractions[i] = parse_double(line, line.fields[2 + i], "fraction");
            if (fractions[i] < 0.0 || fractions[i] > 1.0) {
                throw ParseError(line.number, "fraction outside [0, 1]: " + std::string(line.fields[2 + i]));
            }
        }
        if (table.contains(feature, bin)) {
            throw ParseError(line.number, "duplicate entry for feature " + feature + " bin " + std::to_string(bin));
        }
        table.set(std::move(feature), bin, fractions);
    }
    return table;
}

BinAssignment parse_bin_assignments(std::istream& in) {
    std::vector<std::string> storage;
    const auto lines = read_lines(in, storage);
    expect_header(lines, {{"scid_"}, {"feature"}, {"bin"}}, "bin-assignment");

    BinAssignment bins;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const Line& line = lines[li];
        expect_columns(line, 3);
        const int bin = parse_bin(line, line.fields[2]);
        if (!bins.insert(std::string(line.fields[0]), std::string(line.fields[1]), bin)) {
            throw ParseError(line.number, "duplicate assignment for " + std::string(line.fields[0]) + " / " +
                                              std::string(line.fields[1]));
        }
    }
    return bins;
}

void write_state_vectors(std::ostream& out, const std::vector<ProteinRecord>& proteins) {
    out << "scid_\tloc1\tsubset\tC\tN\tM\tT\tE\n";
    for (const auto& p : proteins) {
        out << p.id << '\t' << (p.label ? to_char(*p.label) : '?') << '\t' << p.subset;
        for (long v : to_milli(p.prior)) out << '\t' << v;
        out << '\n';
    }
}

void write_feature_defs(std::ostream& out, const std::vector<FeatureDef>& defs) {
    out << "feature\tcategory\tsubtype\tpct_change\tstatus\tbins\n";
    for (const auto& f : defs) {
        char pct[64];
        const auto res = std::to_chars(pct, pct + sizeof pct, f.pct_change);
        *res.ptr = '\0';
        out << f.name << '\t' << to_string(f.category) << '\t' << (f.subtype.empty() ? "-" : f.subtype) << '\t'
            << pct << '\t' << to_string(f.status) << '\t' << f.bin_count << '\n';
    }
}

void write_feature_table(std::ostream& out, const FeatureVectorTable& table) {
    out << "feature\tbin\tC\tN\tM\tT\tE\n";
    for (const auto& [key, fractions] : table.entries()) {
        out << key.first << '\t' << key.second;
        for (double x : fractions) {
            out << '\t';
            write_fixed6(out, x);
        }
        out << '\n';
    }
}

void write_bin_assignments(std::ostream& out, const BinAssignment& bins) {
    out << "scid_\tfeature\tbin\n";
    for (const auto& [key, bin] : bins.entries()) out << key.first << '\t' << key.second << '\t' << bin << '\n';
}

DatasetPaths DatasetPaths::in_directory(const std::filesystem::path& dir) {
    return DatasetPaths{dir / "state_vectors.tsv", dir / "feature_defs.tsv", dir / "feature_table.tsv",
                        dir / "bins.tsv"};
}

FileError::FileError(const std::filesystem::path& file, std::size_t line, const std::string& what)
    : std::runtime_error(file.string() + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
      file_(file),
      line_(line) {}

namespace {

template <typename Parse>
auto parse_file(const std::filesystem::path& path, Parse&& parse) {
    std::ifstream in(path);
    if (!in) throw FileError(path, 0, "cannot open file");
    try {
        return parse(in);
    } catch (const ParseError& e) {
        // Strip the "line N: " prefix; FileError adds file:line itself.
        std::string msg = e.what();
        if (e.line() > 0) {
            const auto colon = msg.find(": ");
            if (colon != std::string::npos) msg = msg.substr(colon + 2);
        }
        throw FileError(path, e.line(), msg);
    } catch (const DomainError& e) {
        throw FileError(path, 0, e.what());
    }
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& write) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError(path, 0, "cannot open file for writing");
    write(out);
    if (!out) throw FileError(path, 0, "write failed");
}

}  // namespace

Dataset load_dataset(const DatasetPaths& paths, DuplicatePolicy duplicates) {
    Dataset d;
    d.proteins = parse_file(paths.state_vectors, [&](std::istream& in) { return parse_state_vectors(in, duplicates); });
    d.features = parse_file(paths.feature_defs, [](std::istream& in) { return parse_feature_defs(in); });
    d.feature_table =
        parse_file(paths.feature_table, [&](std::istream& in) { return parse_feature_table(in, &d.features); });
    d.bins = parse_file(paths.bins, [](std::istream& in) { return parse_bin_assignments(in); });
    return d;
}

void save_dataset(const DatasetPaths& paths, const Dataset& d) {
    write_file(paths.state_vectors, [&](std::ostream& out) { write_state_vectors(out, d.proteins); });
    write_file(paths.feature_defs, [&](std::ostream& out) { write_feature_defs(out, d.features); });
    write_file(paths.feature_table, [&](std::ostream& out) { write_feature_table(out, d.feature_table); });
    write_file(paths.bins, [&](std::ostream& out) { write_bin_assignments(out, d.bins); });
}

std::string ValidationIssue::describe() const {
    switch (kind) {
        case Kind::MissingAssignment:
            return "missing bin assignment: protein " + protein + " feature " + feature;
        case Kind::MissingTableEntry:
            return "missing feature-table entry: feature " + feature + " bin " + std::to_string(bin) +
                   (protein.empty() ? std::string() : " (protein " + protein + ")");
        case Kind::UnknownFeature:
            return "unknown feature: " + feature;
        case Kind::BinOutOfRange:
            return "bin out of range: feature " + feature + " bin " + std::to_string(bin) +
                   (protein.empty() ? std::string() : " (protein " + protein + ")");
        case Kind::BadSubset:
            return "subset outside 0..6: protein " + protein;
    }
    return "unknown issue";
}

ValidationReport validate_dataset(const Dataset& d, const std::vector<std::string>& selected_features) {
    using Kind = ValidationIssue::Kind;
    ValidationReport report;

    std::vector<const FeatureDef*> selected;
    for (const auto& name : selected_features) {
        const FeatureDef* def = d.find_feature(name);
        if (def == nullptr) {
            report.issues.push_back({Kind::UnknownFeature, "", name, -1});
        } else {
            selected.push_back(def);
        }
    }

    for (const auto& p : d.proteins) {
        if (p.subset < 0 || p.subset >= kNumSubsets) report.issues.push_back({Kind::BadSubset, p.id, "", -1});
        for (const FeatureDef* def : selected) {
            if (!d.bins.find(p.id, def->name)) report.issues.push_back({Kind::MissingAssignment, p.id, def->name, -1});
        }
    }

    for (const auto& [key, bin] : d.bins.entries()) {
        const auto& [protein, feature] = key;
        const FeatureDef* def = d.find_feature(feature);
        if (def != nullptr && bin >= def->bin_count) {
            report.issues.push_back({Kind::BinOutOfRange, protein, feature, bin});
        } else if (!d.feature_table.contains(feature, bin)) {
            report.issues.push_back({Kind::MissingTableEntry, protein, feature, bin});
        }
    }

    for (const auto& [key, fractions] : d.feature_table.entries()) {
        const FeatureDef* def = d.find_feature(key.first);
        if (def != nullptr && key.second >= def->bin_count) {
            report.issues.push_back({Kind::BinOutOfRange, "", key.first, key.second});
        }
    }
    return report;
}

}  // namespace yeastloc
