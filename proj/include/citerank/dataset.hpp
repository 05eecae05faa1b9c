#pragma once

// Publication records, reference-set grouping and per-paper scoring.

#include "citerank/indicators.hpp"

#include <compare>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace citerank {

struct PublicationRecord {
    std::string id;
    int year = 0;
    std::vector<std::string> categories;
    Citations citations = 0;
    std::optional<std::string> unit;

    friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

enum class InputFormat { Csv, JsonLines };

/// Reads records from CSV (header `id,year,categories,citations,unit`, columns
/// in any order, `unit` optional) or JSON lines. Categories are split on ';'
/// and trimmed; matching is case-sensitive. Blank lines are skipped.
///
/// Throws ParseError naming the 1-based line and the column, and DuplicateId
/// when an id repeats.
std::vector<PublicationRecord> parse_records(std::istream& in, InputFormat format);

/// Inverse of parse_records for the same format.
void write_records(std::ostream& out, const std::vector<PublicationRecord>& records,
                   InputFormat format);

struct ReferenceSetKey {
    int year = 0;
    std::string category;

    friend auto operator<=>(const ReferenceSetKey&, const ReferenceSetKey&) = default;
};

struct ReferenceSetMember {
    std::string paper_id;
    Citations citations = 0;
};

/// All papers sharing a publication year and subject category. Members keep
/// input order.
struct ReferenceSet {
    ReferenceSetKey key;
    std::vector<ReferenceSetMember> members;

    std::vector<Citations> citations() const;
};

using ReferenceSets = std::map<ReferenceSetKey, ReferenceSet>;

/// A paper with k categories lands in k sets.
ReferenceSets build_reference_sets(const std::vector<PublicationRecord>& records);

struct SetScore {
    ReferenceSetKey key;
    std::optional<double> p100;
    std::optional<double> p100_prime;
    double percentile = 0.0;
    bool degenerate = false;
};

struct CombinedScore {
    std::optional<double> p100;
    std::optional<double> p100_prime;
    double percentile = 0.0;

    std::optional<double> get(Indicator kind) const;
};

struct ScoreRow {
    std::string paper_id;
    std::vector<SetScore> per_set;  // ordered by key
    CombinedScore combined;

    /// True when every reference set of the paper is degenerate.
    bool degenerate() const;
};

/// Scores every paper in every set it belongs to. Degenerate sets contribute a
/// percentile only and are flagged instead of thrown. Combined P100 and P100'
/// are means over the paper's non-degenerate sets; the combined percentile is
/// the mean over all its sets. Rows are ordered by paper id.
std::vector<ScoreRow> score_all(const ReferenceSets& sets);

}  // namespace citerank
