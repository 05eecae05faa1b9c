#include "citerank/indicators.hpp"

#include "citerank/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace citerank {

std::string_view to_string(Indicator kind) {
    switch (kind) {
        case Indicator::P100: return "p100";
        case Indicator::P100Prime: return "p100prime";
        case Indicator::Percentile: return "percentile";
    }
    return "unknown";
}

SizeFrequency SizeFrequency::from_citations(std::span<const Citations> citations) {
    if (citations.empty()) {
        throw EmptyReferenceSet();
    }
    std::vector<Citations> sorted(citations.begin(), citations.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 0) {
        throw InvalidCitation(sorted.front());
    }

    std::vector<SizeFrequencyEntry> entries;
    for (Citations c : sorted) {
        if (entries.empty() || entries.back().citation != c) {
            entries.push_back({c, 1});
        } else {
            ++entries.back().papers;
        }
    }
    return SizeFrequency(std::move(entries), static_cast<std::int64_t>(sorted.size()));
}

SizeFrequency size_frequency(std::span<const Citations> citations) {
    return SizeFrequency::from_citations(citations);
}

RankTable rank_table(const SizeFrequency& sf) {
    RankTable table;
    table.entries.reserve(sf.unique_count());
    std::int64_t i = 0;
    std::int64_t j = 0;
    for (const auto& e : sf.entries()) {
        table.entries.push_back({e.citation, i, j});
        ++i;
        j += e.papers;
    }
    table.i_max = static_cast<std::int64_t>(sf.unique_count()) - 1;
    table.j_max = sf.paper_count() - 1;
    return table;
}

double IndicatorTable::at(Citations citation) const {
    auto it = values.find(citation);
    if (it == values.end()) {
        throw std::out_of_range("citation count " + std::to_string(citation) +
                                " is not in the reference set");
    }
    return it->second;
}

IndicatorTable p100(const SizeFrequency& sf) {
    if (sf.degenerate()) {
        throw DegenerateReferenceSet();
    }
    const RankTable ranks = rank_table(sf);
    IndicatorTable out{Indicator::P100, {}};
    for (const auto& r : ranks.entries) {
        out.values.emplace(r.citation, 100.0 * static_cast<double>(r.unique_rank) /
                                           static_cast<double>(ranks.i_max));
    }
    return out;
}

IndicatorTable p100_prime(const SizeFrequency& sf) {
    if (sf.degenerate()) {
        throw DegenerateReferenceSet();
    }
    const RankTable ranks = rank_table(sf);
    IndicatorTable out{Indicator::P100Prime, {}};
    for (const auto& r : ranks.entries) {
        out.values.emplace(r.citation, 100.0 * static_cast<double>(r.tie_aware_rank) /
                                           static_cast<double>(ranks.j_max));
    }
    return out;
}

IndicatorTable percentile_cumfreq(const SizeFrequency& sf) {
    IndicatorTable out{Indicator::Percentile, {}};
    const auto n = static_cast<double>(sf.paper_count());
    std::int64_t at_or_below = 0;
    for (const auto& e : sf.entries()) {
        at_or_below += e.papers;
        out.values.emplace(e.citation, 100.0 * static_cast<double>(at_or_below) / n);
    }
    return out;
}

IndicatorTable compute(Indicator kind, const SizeFrequency& sf) {
    switch (kind) {
        case Indicator::P100: return p100(sf);
        case Indicator::P100Prime: return p100_prime(sf);
        case Indicator::Percentile: return percentile_cumfreq(sf);
    }
    throw std::invalid_argument("unknown indicator");
}

RankClassScheme::RankClassScheme(std::vector<double> boundaries)
    : boundaries_(std::move(boundaries)) {
    for (std::size_t k = 0; k < boundaries_.size(); ++k) {
        const double b = boundaries_[k];
        if (!(b > 0.0 && b < 100.0)) {
            throw InvalidScheme("rank class boundary " + std::to_string(b) +
                                " is outside (0, 100)");
        }
        if (k > 0 && !(boundaries_[k - 1] < b)) {
            throw InvalidScheme("rank class boundaries must be strictly increasing");
        }
    }
}

RankClassScheme RankClassScheme::standard() {
    return RankClassScheme({50.0, 75.0, 90.0, 99.0});
}

std::size_t assign_rank_class(double value, const RankClassScheme& scheme) {
    if (!(value >= 0.0 && value <= 100.0)) {
        throw std::invalid_argument("indicator value " + std::to_string(value) +
                                    " is outside [0, 100]");
    }
    const auto& b = scheme.boundaries();
    return static_cast<std::size_t>(std::upper_bound(b.begin(), b.end(), value) - b.begin());
}

double top_share(std::span<const double> values, double threshold) {
    if (values.empty()) {
        throw EmptyReferenceSet();
    }
    if (!(threshold > 0.0 && threshold < 100.0)) {
        throw std::invalid_argument("top-share threshold must lie in (0, 100)");
    }
    const auto hits = std::count_if(values.begin(), values.end(),
                                    [threshold](double v) { return v >= threshold; });
    return static_cast<double>(hits) / static_cast<double>(values.size());
}

double log_transform(Citations c, double base) {
    if (c < 0) {
        throw InvalidCitation(c);
    }
    if (!(base > 1.0)) {
        throw std::invalid_argument("log base must be > 1");
    }
    const auto x = static_cast<double>(c) + 1.0;
    // Dedicated routines are exact at powers of their base.
    if (base == 10.0) return std::log10(x);
    if (base == 2.0) return std::log2(x);
    return std::log(x) / std::log(base);
}

}  // namespace citerank
