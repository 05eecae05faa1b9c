#include "citerank/errors.hpp"
#include "citerank/report.hpp"
#include "support/synthetic.hpp"

#include <doctest.h>

#include <cstdlib>
#include <json.hpp>
#include <numeric>
#include <set>
#include <sstream>

using namespace citerank;

namespace {

std::vector<PublicationRecord> with_citations(const std::vector<Citations>& cites,
                                              const std::optional<std::string>& unit) {
    std::vector<PublicationRecord> out;
    for (std::size_t k = 0; k < cites.size(); ++k) {
        out.push_back({"p" + std::to_string(k), 1990, {"chemistry"}, cites[k], unit});
    }
    return out;
}

ReferenceSet set_of(const std::vector<Citations>& cites) {
    ReferenceSet set{{1990, "chemistry"}, {}};
    for (std::size_t k = 0; k < cites.size(); ++k) {
        set.members.push_back({"p" + std::to_string(k), cites[k]});
    }
    return set;
}

std::size_t total(const std::vector<HistogramRow>& rows, Series series) {
    std::size_t n = 0;
    for (const auto& r : rows)
        if (r.series == series) n += r.count;
    return n;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("unit mean over the N=9 set") {
    const auto records = with_citations({0, 1, 2, 3, 4, 4, 4, 7, 10}, "instA");
    const auto units = aggregate_units(score_all(build_reference_sets(records)), records);
    REQUIRE(units.size() == 1);
    const auto& u = units[0];
    CHECK(u.unit == "instA");
    CHECK(u.paper_count == 9);
    CHECK(*u.mean_p100_prime == doctest::Approx(412.5 / 9.0));
    CHECK(round_half_up_2(*u.mean_p100_prime) == doctest::Approx(45.83));
    // 0..37.5 -> class 0; the three 50s sit on the first boundary and join
    // class 1; 87.5 -> 2; 100 -> 4.
    CHECK(u.class_counts == std::vector<std::pair<std::size_t, std::size_t>>{{0, 4}, {1, 3}, {2, 1}, {3, 0}, {4, 1}});
    CHECK(*u.top_share == doctest::Approx(1.0 / 9.0));
    CHECK(u.unclassified == 0);
}

TEST_CASE("distinct counts average to 50") {
    const auto records = with_citations({1, 2, 3, 4, 5, 6}, "u");
    const auto units = aggregate_units(score_all(build_reference_sets(records)), records);
    REQUIRE(units.size() == 1);
    CHECK(*units[0].mean_p100_prime == doctest::Approx(50.0));
    CHECK(*units[0].mean_p100 == doctest::Approx(50.0));
}

TEST_CASE("single-paper unit") {
    // u1's one paper has P100' 60 in a six-paper set.
    auto records = with_citations({1, 2, 2, 4, 5, 6}, "rest");
    records[3].unit = "u1";
    const auto units = aggregate_units(score_all(build_reference_sets(records)), records);
    REQUIRE(units.size() == 2);
    CHECK(units[0].unit == "rest");
    CHECK(units[1].unit == "u1");
    CHECK(units[1].paper_count == 1);
    CHECK(*units[1].mean_p100_prime == 60.0);
}

TEST_CASE("papers without a unit go to the reserved bucket") {
    auto records = with_citations({1, 2, 3}, std::nullopt);
    records[0].unit = "a";
    const auto units = aggregate_units(score_all(build_reference_sets(records)), records);
    REQUIRE(units.size() == 2);
    CHECK(units[0].unit == std::string(kNoUnit));
    CHECK(units[0].paper_count == 2);
    CHECK(units[1].unit == "a");
}

TEST_CASE("indicator selection drives classes and top share") {
    const auto records = with_citations({0, 1, 2, 3, 4, 4, 4, 7, 10}, "u");
    const auto rows = score_all(build_reference_sets(records));
    AggregateOptions pct;
    pct.indicator = Indicator::Percentile;
    const auto by_pct = aggregate_units(rows, records, pct);
    // 11.11..44.44 -> 0; 77.78 x3 -> 2; 88.89 -> 2; 100 -> 4.
    CHECK(by_pct[0].class_counts ==
          std::vector<std::pair<std::size_t, std::size_t>>{{0, 4}, {1, 0}, {2, 4}, {3, 0}, {4, 1}});

    AggregateOptions p100_opts;
    p100_opts.indicator = Indicator::P100;
    p100_opts.threshold = 80.0;
    const auto by_p100 = aggregate_units(rows, records, p100_opts);
    CHECK(*by_p100[0].top_share == doctest::Approx(2.0 / 9.0));
}

TEST_CASE("degenerate-only papers are counted but unclassified") {
    const auto records = with_citations({3, 3, 3}, "u");
    const auto units = aggregate_units(score_all(build_reference_sets(records)), records);
    REQUIRE(units.size() == 1);
    CHECK(units[0].paper_count == 3);
    CHECK_FALSE(units[0].mean_p100);
    CHECK_FALSE(units[0].mean_p100_prime);
    CHECK(units[0].mean_percentile == 100.0);
    CHECK_FALSE(units[0].top_share);
    CHECK(units[0].unclassified == 3);
}

TEST_CASE("aggregation errors") {
    const auto records = with_citations({1, 2}, "u");
    auto rows = score_all(build_reference_sets(records));
    rows.push_back(ScoreRow{"ghost", {}, {}});
    CHECK_THROWS_AS(aggregate_units(rows, records), UnknownPaper);
    AggregateOptions bad;
    bad.threshold = 100.0;
    CHECK_THROWS_AS(aggregate_units({}, records, bad), std::invalid_argument);
}

TEST_CASE("aggregation conserves papers and class counts") {
    const auto records = synthetic::records(2000, 3, 10, 17);
    const auto rows = score_all(build_reference_sets(records));
    const auto units = aggregate_units(rows, records);
    CHECK(units.size() == 10);
    std::size_t papers = 0;
    for (const auto& u : units) {
        papers += u.paper_count;
        std::size_t classified = 0;
        for (const auto& [k, n] : u.class_counts) classified += n;
        CHECK(classified + u.unclassified == u.paper_count);
        CHECK(*u.mean_p100 >= 0.0);
        CHECK(*u.mean_p100 <= 100.0);
        CHECK(*u.top_share >= 0.0);
        CHECK(*u.top_share <= 1.0);
    }
    CHECK(papers == rows.size());
}

TEST_CASE("distributions over the N=9 set") {
    const auto rows = export_distributions(set_of({0, 1, 2, 3, 4, 4, 4, 7, 10}), 10.0, 0.25);
    CHECK(total(rows, Series::AllPapers) == 9);
    CHECK(total(rows, Series::UniqueCitations) == 7);
    // log10(c+1): 0 | .30 | .48 | .60 .70 .70 .70 | .90 | 1.04 -> bins 0..4.
    std::vector<std::size_t> all, unique;
    for (const auto& r : rows) (r.series == Series::AllPapers ? all : unique).push_back(r.count);
    CHECK(all == std::vector<std::size_t>{1, 2, 4, 1, 1});
    CHECK(unique == std::vector<std::size_t>{1, 2, 2, 1, 1});
    CHECK(rows.front().bin_low == 0.0);
    CHECK(rows.front().bin_high == 0.25);
}

TEST_CASE("distributions of a single paper") {
    const auto rows = export_distributions(set_of({5}), 10.0, 0.25);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].series == Series::AllPapers);
    CHECK(rows[0].count == 1);
    CHECK(rows[1].series == Series::UniqueCitations);
    CHECK(rows[1].count == 1);
    CHECK(rows[0].bin_low <= log_transform(5));
    CHECK(log_transform(5) < rows[0].bin_high);
}

TEST_CASE("exact powers of the base open a new bin") {
    // log10(10) = 1 and log10(100) = 2 must land at the start of their bins.
    const auto rows = export_distributions(set_of({9, 99}), 10.0, 0.5);
    std::vector<std::size_t> all;
    for (const auto& r : rows)
        if (r.series == Series::AllPapers) all.push_back(r.count);
    CHECK(all == std::vector<std::size_t>{1, 0, 1});
    CHECK(rows.front().bin_low == 1.0);
}

TEST_CASE("distribution errors") {
    CHECK_THROWS_AS(export_distributions(ReferenceSet{}, 10.0, 0.25), EmptyReferenceSet);
    CHECK_THROWS_AS(export_distributions(set_of({1}), 10.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(export_distributions(set_of({1}), 1.0, 0.25), std::invalid_argument);
}

TEST_CASE("heavy ties shrink the unique series") {
    const auto cites = synthetic::uniform_citations(10000, 300, 99);
    const auto rows = export_distributions(set_of(cites), 10.0, 0.25);
    CHECK(total(rows, Series::AllPapers) == 10000);
    CHECK(total(rows, Series::UniqueCitations) < 10000);
    CHECK(total(rows, Series::UniqueCitations) == std::set<Citations>(cites.begin(), cites.end()).size());
    for (Series s : {Series::AllPapers, Series::UniqueCitations}) {
        double edge = -1.0;
        for (const auto& r : rows) {
            if (r.series != s) continue;
            CHECK(r.bin_low < r.bin_high);
            if (edge >= 0.0) CHECK(r.bin_low == doctest::Approx(edge));
            edge = r.bin_high;
        }
    }
}

TEST_CASE("rounding is half-up at two decimals") {
    CHECK(format_value(100.0 / 6.0, false) == "16.67");
    CHECK(format_value(200.0 / 3.0, false) == "66.67");
    CHECK(format_value(12.5, false) == "12.50");
    CHECK(format_value(800.0 / 9.0, false) == "88.89");
    CHECK(format_value(0.125, false) == "0.13");
    CHECK(format_value(100.0, false) == "100.00");
    CHECK(format_value(0.0, false) == "0.00");
    CHECK(format_value(100.0 / 6.0, true) == "16.666666666666668");
    CHECK(std::strtod(format_value(1.0 / 3.0, true).c_str(), nullptr) == 1.0 / 3.0);
}

TEST_CASE("rendered values stay within 0.005 of full precision") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> value(0.0, 100.0);
    for (int k = 0; k < 10000; ++k) {
        const double v = value(rng);
        const double parsed = std::strtod(format_value(v, false).c_str(), nullptr);
        REQUIRE(std::abs(parsed - v) <= 0.005 + 1e-12);
    }
}

TEST_CASE("score rendering") {
    auto records = with_citations({0, 1, 2, 3, 4, 4, 4, 7, 10}, "instA");
    records[8].unit.reset();
    const auto rows = score_all(build_reference_sets(records));
    const auto csv = render_scores(rows, records, OutputFormat::Csv, false);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "unit,paperId,scope,year,category,p100,p100prime,percentile,degenerate");
    // The unit-less paper sorts first.
    std::getline(lines, line);
    CHECK(line == ",p8,set,1990,chemistry,100.00,100.00,100.00,false");
    std::getline(lines, line);
    CHECK(line == ",p8,combined,,,100.00,100.00,100.00,false");
    CHECK(csv.find("instA,p4,set,1990,chemistry,66.67,50.00,77.78,false\n") != std::string::npos);

    const auto jsonl = render_scores(rows, records, OutputFormat::JsonLines, false);
    std::istringstream jlines(jsonl);
    std::size_t count = 0;
    while (std::getline(jlines, line)) {
        const auto obj = nlohmann::json::parse(line);
        CHECK(obj.contains("perSet"));
        if (obj["paperId"] == "p4") {
            CHECK(obj["combined"]["p100"].get<double>() == 66.67);
            CHECK(obj["unit"] == "instA");
        }
        if (obj["paperId"] == "p8") CHECK(obj["unit"].is_null());
        ++count;
    }
    CHECK(count == 9);
}

TEST_CASE("unit and histogram rendering") {
    const auto records = with_citations({3, 3, 3}, "u");
    const auto units = aggregate_units(score_all(build_reference_sets(records)), records);
    CHECK(render_units(units, OutputFormat::Csv, false) ==
          "unit,paperCount,meanP100,meanP100Prime,meanPercentile,topShare,classCounts,unclassified\n"
          "u,3,,,100.00,,0:0;1:0;2:0;3:0;4:0,3\n");
    const auto obj = nlohmann::json::parse(render_units(units, OutputFormat::JsonLines, false));
    CHECK(obj["meanP100"].is_null());
    CHECK(obj["classCounts"].size() == 5);

    const std::vector<SetHistogram> hist{{{1990, "chemistry"}, export_distributions(set_of({5}), 10.0, 0.25)}};
    CHECK(render_histograms(hist, OutputFormat::Csv, false) ==
          "year,category,series,binLow,binHigh,count\n"
          "1990,chemistry,all_papers,0.75,1.00,1\n"
          "1990,chemistry,unique_citations,0.75,1.00,1\n");
}

}  // TEST_SUITE
