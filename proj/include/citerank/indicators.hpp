#pragma once

// Citation-rank indicators over a single reference set.
//
// All indicators are computed once per unique citation count and looked up by
// citation, so papers with equal counts always share a value.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

namespace citerank {

using Citations = std::int64_t;

enum class Indicator { P100, P100Prime, Percentile };

std::string_view to_string(Indicator kind);

/// One row of a size-frequency distribution: a citation count and how many
/// papers hold it.
struct SizeFrequencyEntry {
    Citations citation;
    std::int64_t papers;

    friend bool operator==(const SizeFrequencyEntry&, const SizeFrequencyEntry&) = default;
};

/// Unique citation counts in ascending order with their paper frequencies.
/// Entries are strictly increasing by citation and every frequency is >= 1.
class SizeFrequency {
public:
    /// Throws EmptyReferenceSet for an empty input and InvalidCitation for a
    /// negative count.
    static SizeFrequency from_citations(std::span<const Citations> citations);

    const std::vector<SizeFrequencyEntry>& entries() const noexcept { return entries_; }
    std::size_t unique_count() const noexcept { return entries_.size(); }
    std::int64_t paper_count() const noexcept { return papers_; }
    bool degenerate() const noexcept { return entries_.size() < 2; }

    friend bool operator==(const SizeFrequency&, const SizeFrequency&) = default;

private:
    SizeFrequency(std::vector<SizeFrequencyEntry> entries, std::int64_t papers)
        : entries_(std::move(entries)), papers_(papers) {}

    std::vector<SizeFrequencyEntry> entries_;
    std::int64_t papers_ = 0;
};

SizeFrequency size_frequency(std::span<const Citations> citations);

struct RankEntry {
    Citations citation;
    std::int64_t unique_rank;      // i: position among unique citations
    std::int64_t tie_aware_rank;   // j: papers with strictly fewer citations
};

struct RankTable {
    std::vector<RankEntry> entries;
    std::int64_t i_max = 0;  // unique count - 1
    std::int64_t j_max = 0;  // n - 1
};

RankTable rank_table(const SizeFrequency& sf);

/// Indicator values keyed by citation count. Values are on the 0..100 scale
/// and kept at full precision.
struct IndicatorTable {
    Indicator kind;
    std::map<Citations, double> values;

    /// Throws std::out_of_range if the citation is not in the reference set.
    double at(Citations citation) const;
};

/// 100 * i / i_max over unique citation ranks. Throws DegenerateReferenceSet
/// when the set has a single unique count.
IndicatorTable p100(const SizeFrequency& sf);

/// 100 * j / (n - 1) where j counts papers with strictly fewer citations, so
/// tied papers share the lowest rank of their group. The top count reaches 100
/// only when a single paper holds it. Throws DegenerateReferenceSet like p100.
IndicatorTable p100_prime(const SizeFrequency& sf);

/// 100 * (papers with citations <= c) / n.
IndicatorTable percentile_cumfreq(const SizeFrequency& sf);

IndicatorTable compute(Indicator kind, const SizeFrequency& sf);

/// Class boundaries on the 0..100 scale. k boundaries define k + 1 classes,
/// numbered from 0 (lowest) upward.
class RankClassScheme {
public:
    /// Throws InvalidScheme unless boundaries are strictly increasing and each
    /// lies in the open interval (0, 100).
    explicit RankClassScheme(std::vector<double> boundaries);

    /// [50, 75, 90, 99]
    static RankClassScheme standard();

    const std::vector<double>& boundaries() const noexcept { return boundaries_; }
    std::size_t class_count() const noexcept { return boundaries_.size() + 1; }

private:
    std::vector<double> boundaries_;
};

/// A value equal to a boundary joins the class above it, so 100 always lands
/// in the top class. Throws std::invalid_argument for values outside [0, 100].
std::size_t assign_rank_class(double value, const RankClassScheme& scheme);

/// Unweighted share of values >= threshold. Throws EmptyReferenceSet for no
/// values and std::invalid_argument unless 0 < threshold < 100.
double top_share(std::span<const double> values, double threshold = 90.0);

/// log_base(c + 1). Throws InvalidCitation for negative c and
/// std::invalid_argument unless base > 1.
double log_transform(Citations c, double base = 10.0);

}  // namespace citerank
