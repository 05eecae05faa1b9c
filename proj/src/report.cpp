#include "citerank/report.hpp"

#include "citerank/errors.hpp"
#include "csv.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace citerank {

namespace {

double mean(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

std::unordered_map<std::string_view, const PublicationRecord*> index_records(
    const std::vector<PublicationRecord>& records) {
    std::unordered_map<std::string_view, const PublicationRecord*> by_id;
    by_id.reserve(records.size());
    for (const auto& r : records) by_id.emplace(r.id, &r);
    return by_id;
}

std::string optional_value(const std::optional<double>& v, bool full_precision) {
    return v ? format_value(*v, full_precision) : std::string();
}

nlohmann::json json_value(const std::optional<double>& v, bool full_precision) {
    if (!v) return nullptr;
    return full_precision ? *v : round_half_up_2(*v);
}

}  // namespace

std::vector<UnitSummary> aggregate_units(const std::vector<ScoreRow>& rows,
                                         const std::vector<PublicationRecord>& records,
                                         const AggregateOptions& options) {
    if (!(options.threshold > 0.0 && options.threshold < 100.0)) {
        throw std::invalid_argument("top-share threshold must lie in (0, 100)");
    }
    const auto by_id = index_records(records);

    std::map<std::string, std::vector<const ScoreRow*>> groups;
    for (const auto& row : rows) {
        auto it = by_id.find(row.paper_id);
        if (it == by_id.end()) {
            throw UnknownPaper(row.paper_id);
        }
        const auto& unit = it->second->unit;
        groups[unit ? *unit : std::string(kNoUnit)].push_back(&row);
    }

    std::vector<UnitSummary> out;
    out.reserve(groups.size());
    for (const auto& [unit, members] : groups) {
        UnitSummary s;
        s.unit = unit;
        s.paper_count = members.size();

        std::vector<double> p100s, primes, percentiles, selected;
        for (const ScoreRow* row : members) {
            const auto& c = row->combined;
            if (c.p100) p100s.push_back(*c.p100);
            if (c.p100_prime) primes.push_back(*c.p100_prime);
            percentiles.push_back(c.percentile);
            if (auto v = c.get(options.indicator)) selected.push_back(*v);
        }
        if (!p100s.empty()) s.mean_p100 = mean(p100s);
        if (!primes.empty()) s.mean_p100_prime = mean(primes);
        s.mean_percentile = mean(percentiles);

        std::vector<std::size_t> counts(options.scheme.class_count(), 0);
        for (double v : selected) ++counts[assign_rank_class(v, options.scheme)];
        for (std::size_t k = 0; k < counts.size(); ++k) s.class_counts.emplace_back(k, counts[k]);
        s.unclassified = members.size() - selected.size();
        if (!selected.empty()) s.top_share = top_share(selected, options.threshold);

        out.push_back(std::move(s));
    }
    return out;
}

std::string_view to_string(Series series) {
    return series == Series::AllPapers ? "all_papers" : "unique_citations";
}

std::vector<HistogramRow> export_distributions(const ReferenceSet& set, double base,
                                               double bin_width) {
    if (set.members.empty()) {
        throw EmptyReferenceSet();
    }
    if (!(bin_width > 0.0)) {
        throw std::invalid_argument("bin width must be > 0");
    }
    const auto citations = set.citations();
    const auto sf = size_frequency(citations);

    auto bin_of = [bin_width](double x) {
        auto k = static_cast<long long>(std::floor(x / bin_width));
        if (x >= static_cast<double>(k + 1) * bin_width) ++k;
        if (x < static_cast<double>(k) * bin_width) --k;
        return k;
    };

    std::map<long long, std::pair<std::size_t, std::size_t>> bins;  // all, unique
    for (const auto& e : sf.entries()) {
        auto& b = bins[bin_of(log_transform(e.citation, base))];
        b.first += static_cast<std::size_t>(e.papers);
        b.second += 1;
    }

    const long long lo = bins.begin()->first;
    const long long hi = bins.rbegin()->first;
    std::vector<HistogramRow> rows;
    rows.reserve(2 * static_cast<std::size_t>(hi - lo + 1));
    for (Series series : {Series::AllPapers, Series::UniqueCitations}) {
        for (long long k = lo; k <= hi; ++k) {
            std::size_t count = 0;
            if (auto it = bins.find(k); it != bins.end()) {
                count = series == Series::AllPapers ? it->second.first : it->second.second;
            }
            rows.push_back({series, static_cast<double>(k) * bin_width,
                            static_cast<double>(k + 1) * bin_width, count});
        }
    }
    return rows;
}

double round_half_up_2(double value) {
    return std::floor(value * 100.0 + 0.5) / 100.0;
}

std::string format_value(double value, bool full_precision) {
    char buf[64];
    std::to_chars_result res;
    if (full_precision) {
        res = std::to_chars(buf, buf + sizeof buf, value);
    } else {
        res = std::to_chars(buf, buf + sizeof buf, round_half_up_2(value),
                            std::chars_format::fixed, 2);
    }
    return std::string(buf, res.ptr);
}

std::string render_scores(const std::vector<ScoreRow>& rows,
                          const std::vector<PublicationRecord>& records, OutputFormat format,
                          bool full_precision) {
    const auto by_id = index_records(records);
    auto unit_of = [&](const ScoreRow& row) -> std::string {
        auto it = by_id.find(row.paper_id);
        if (it == by_id.end()) throw UnknownPaper(row.paper_id);
        return it->second->unit.value_or("");
    };

    std::vector<std::pair<std::string, const ScoreRow*>> ordered;
    ordered.reserve(rows.size());
    for (const auto& row : rows) ordered.emplace_back(unit_of(row), &row);
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        return std::tie(a.first, a.second->paper_id) < std::tie(b.first, b.second->paper_id);
    });

    std::ostringstream out;
    if (format == OutputFormat::Csv) {
        out << "unit,paperId,scope,year,category,p100,p100prime,percentile,degenerate\n";
        for (const auto& [unit, row] : ordered) {
            const auto prefix = detail::csv_escape(unit) + ',' + detail::csv_escape(row->paper_id);
            for (const auto& s : row->per_set) {
                out << prefix << ",set," << s.key.year << ',' << detail::csv_escape(s.key.category)
                    << ',' << optional_value(s.p100, full_precision) << ','
                    << optional_value(s.p100_prime, full_precision) << ','
                    << format_value(s.percentile, full_precision) << ','
                    << (s.degenerate ? "true" : "false") << '\n';
            }
            const auto& c = row->combined;
            out << prefix << ",combined,,," << optional_value(c.p100, full_precision) << ','
                << optional_value(c.p100_prime, full_precision) << ','
                << format_value(c.percentile, full_precision) << ','
                << (row->degenerate() ? "true" : "false") << '\n';
        }
        return out.str();
    }

    for (const auto& [unit, row] : ordered) {
        nlohmann::json per_set = nlohmann::json::array();
        for (const auto& s : row->per_set) {
            per_set.push_back({{"year", s.key.year},
                               {"category", s.key.category},
                               {"p100", json_value(s.p100, full_precision)},
                               {"p100prime", json_value(s.p100_prime, full_precision)},
                               {"percentile", json_value(s.percentile, full_precision)},
                               {"degenerate", s.degenerate}});
        }
        const auto& c = row->combined;
        nlohmann::json obj = {
            {"paperId", row->paper_id},
            {"perSet", std::move(per_set)},
            {"combined",
             {{"p100", json_value(c.p100, full_precision)},
              {"p100prime", json_value(c.p100_prime, full_precision)},
              {"percentile", json_value(c.percentile, full_precision)}}},
            {"degenerate", row->degenerate()}};
        obj["unit"] = unit.empty() ? nlohmann::json(nullptr) : nlohmann::json(unit);
        out << obj.dump() << '\n';
    }
    return out.str();
}

std::string render_units(const std::vector<UnitSummary>& units, OutputFormat format,
                         bool full_precision) {
    std::ostringstream out;
    if (format == OutputFormat::Csv) {
        out << "unit,paperCount,meanP100,meanP100Prime,meanPercentile,topShare,classCounts,"
               "unclassified\n";
        for (const auto& u : units) {
            std::string classes;
            for (const auto& [k, n] : u.class_counts) {
                if (!classes.empty()) classes += ';';
                classes += std::to_string(k) + ':' + std::to_string(n);
            }
            out << detail::csv_escape(u.unit) << ',' << u.paper_count << ','
                << optional_value(u.mean_p100, full_precision) << ','
                << optional_value(u.mean_p100_prime, full_precision) << ','
                << format_value(u.mean_percentile, full_precision) << ','
                << optional_value(u.top_share, full_precision) << ',' << classes << ','
                << u.unclassified << '\n';
        }
        return out.str();
    }

    for (const auto& u : units) {
        nlohmann::json classes = nlohmann::json::array();
        for (const auto& [k, n] : u.class_counts) classes.push_back({{"class", k}, {"count", n}});
        nlohmann::json obj = {{"unit", u.unit},
                              {"paperCount", u.paper_count},
                              {"meanP100", json_value(u.mean_p100, full_precision)},
                              {"meanP100Prime", json_value(u.mean_p100_prime, full_precision)},
                              {"meanPercentile", json_value(u.mean_percentile, full_precision)},
                              {"topShare", json_value(u.top_share, full_precision)},
                              {"classCounts", std::move(classes)},
                              {"unclassified", u.unclassified}};
        out << obj.dump() << '\n';
    }
    return out.str();
}

std::string render_histograms(const std::vector<SetHistogram>& sets, OutputFormat format,
                              bool full_precision) {
    std::ostringstream out;
    if (format == OutputFormat::Csv) {
        out << "year,category,series,binLow,binHigh,count\n";
    }
    for (const auto& set : sets) {
        for (const auto& r : set.rows) {
            if (format == OutputFormat::Csv) {
                out << set.key.year << ',' << detail::csv_escape(set.key.category) << ','
                    << to_string(r.series) << ',' << format_value(r.bin_low, full_precision)
                    << ',' << format_value(r.bin_high, full_precision) << ',' << r.count << '\n';
            } else {
                nlohmann::json obj = {{"year", set.key.year},
                                      {"category", set.key.category},
                                      {"series", std::string(to_string(r.series))},
                                      {"binLow", json_value(r.bin_low, full_precision)},
                                      {"binHigh", json_value(r.bin_high, full_precision)},
                                      {"count", r.count}};
                out << obj.dump() << '\n';
            }
        }
    }
    return out.str();
}

}  // namespace citerank
