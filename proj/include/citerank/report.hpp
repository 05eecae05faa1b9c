#pragma once

// Per-unit aggregation, log-scale distribution export and output rendering.

#include "citerank/dataset.hpp"
#include "citerank/indicators.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace citerank {

/// Bucket for papers whose record carries no unit.
inline constexpr std::string_view kNoUnit = "(none)";

struct UnitSummary {
    std::string unit;
    std::size_t paper_count = 0;
    std::optional<double> mean_p100;
    std::optional<double> mean_p100_prime;
    double mean_percentile = 0.0;
    // Share of classified papers at or above the threshold; absent when no
    // paper of the unit has a value for the selected indicator.
    std::optional<double> top_share;
    std::vector<std::pair<std::size_t, std::size_t>> class_counts;  // (class, papers)
    // Papers without a value for the selected indicator (all their sets
    // degenerate). class_counts + unclassified == paper_count.
    std::size_t unclassified = 0;
};

struct AggregateOptions {
    RankClassScheme scheme = RankClassScheme::standard();
    double threshold = 90.0;
    Indicator indicator = Indicator::P100Prime;
};

/// Groups combined scores by record unit, each paper counted once. Output is
/// ordered by unit name. Throws UnknownPaper for a row without a record and
/// std::invalid_argument unless 0 < threshold < 100.
std::vector<UnitSummary> aggregate_units(const std::vector<ScoreRow>& rows,
                                         const std::vector<PublicationRecord>& records,
                                         const AggregateOptions& options = {});

enum class Series { AllPapers, UniqueCitations };

std::string_view to_string(Series series);

struct HistogramRow {
    Series series;
    double bin_low;
    double bin_high;
    std::size_t count;
};

/// Histograms of log_base(c + 1): one series counting every paper, one
/// counting each unique citation once. Bins are [k*w, (k+1)*w), contiguous
/// from the lowest to the highest occupied bin, identical for both series.
/// Throws EmptyReferenceSet and std::invalid_argument for bin_width <= 0.
std::vector<HistogramRow> export_distributions(const ReferenceSet& set, double base = 10.0,
                                               double bin_width = 0.25);

// Rendering. Values are rounded half-up to two decimals unless full_precision
// is set, in which case the shortest round-trip representation is written.

std::string format_value(double value, bool full_precision);
double round_half_up_2(double value);

enum class OutputFormat { Csv, JsonLines };

std::string render_scores(const std::vector<ScoreRow>& rows,
                          const std::vector<PublicationRecord>& records, OutputFormat format,
                          bool full_precision);

std::string render_units(const std::vector<UnitSummary>& units, OutputFormat format,
                         bool full_precision);

struct SetHistogram {
    ReferenceSetKey key;
    std::vector<HistogramRow> rows;
};

std::string render_histograms(const std::vector<SetHistogram>& sets, OutputFormat format,
                              bool full_precision);

}  // namespace citerank
