#include "citerank/cli.hpp"

#include "citerank/dataset.hpp"
#include "citerank/errors.hpp"
#include "citerank/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

namespace citerank {

namespace {

namespace fs = std::filesystem;

struct Options {
    std::string input;
    std::string format;
    std::string output = "-";
    std::string indicator = "p100prime";
    std::vector<double> classes{50.0, 75.0, 90.0, 99.0};
    double top_threshold = 90.0;
    double log_base = 10.0;
    double bin_width = 0.25;
    bool full_precision = false;
};

bool has_json_extension(const std::string& path) {
    const auto ext = fs::path(path).extension().string();
    return ext == ".jsonl" || ext == ".json" || ext == ".ndjson";
}

void add_common_options(CLI::App& cmd, Options& opt) {
    cmd.add_option("--input", opt.input, "Publication records (CSV or JSON lines)")->required();
    cmd.add_option("--format", opt.format, "Input format; inferred from the extension if omitted")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    cmd.add_option("--output", opt.output,
                   "Output path; '-' writes to stdout. A .jsonl/.json extension selects JSON lines");
    cmd.add_option("--indicator", opt.indicator, "Indicator used for classes and top share")
        ->check(CLI::IsMember({"p100", "p100prime", "percentile"}));
    cmd.add_option("--classes", opt.classes, "Rank class boundaries")->delimiter(',');
    cmd.add_option("--top-threshold", opt.top_threshold, "Top-share threshold in (0, 100)");
    cmd.add_option("--log-base", opt.log_base, "Base of log(citations + 1)");
    cmd.add_option("--bin-width", opt.bin_width, "Histogram bin width in log units");
    cmd.add_flag("--full-precision", opt.full_precision, "Do not round values to 2 decimals");
}

// Writes all bytes to a sibling temporary file, then renames it over the
// target so a failure never leaves a partial output behind.
void write_output(const std::string& path, const std::string& content, std::ostream& out) {
    if (path == "-") {
        out << content;
        out.flush();
        return;
    }
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        if (!file) {
            throw Error("cannot open output file '" + path + "' for writing");
        }
        file.write(content.data(), static_cast<std::streamsize>(content.size()));
        file.close();
        if (!file) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw Error("failed writing output file '" + path + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error("cannot replace output file '" + path + "': " + ec.message());
    }
}

std::vector<PublicationRecord> load(const Options& opt) {
    std::ifstream file(opt.input, std::ios::binary);
    if (!file) {
        throw Error("cannot open input file '" + opt.input + "'");
    }
    InputFormat format = InputFormat::Csv;
    if (opt.format == "jsonl" || (opt.format.empty() && has_json_extension(opt.input))) {
        format = InputFormat::JsonLines;
    }
    try {
        return parse_records(file, format);
    } catch (const Error& e) {
        throw Error(opt.input + ": " + e.what());
    }
}

std::string run_command(const std::string& command, const Options& opt) {
    const auto records = load(opt);
    const auto sets = build_reference_sets(records);
    const auto format = has_json_extension(opt.output) ? OutputFormat::JsonLines : OutputFormat::Csv;

    if (command == "score") {
        return render_scores(score_all(sets), records, format, opt.full_precision);
    }
    if (command == "aggregate") {
        const Indicator indicator = opt.indicator == "p100"        ? Indicator::P100
                                    : opt.indicator == "percentile" ? Indicator::Percentile
                                                                    : Indicator::P100Prime;
        AggregateOptions agg{RankClassScheme(opt.classes), opt.top_threshold, indicator};
        return render_units(aggregate_units(score_all(sets), records, agg), format,
                            opt.full_precision);
    }
    std::vector<SetHistogram> histograms;
    histograms.reserve(sets.size());
    for (const auto& [key, set] : sets) {
        histograms.push_back({key, export_distributions(set, opt.log_base, opt.bin_width)});
    }
    return render_histograms(histograms, format, opt.full_precision);
}

std::optional<std::string> usage_problem(const Options& opt) {
    if (!(opt.top_threshold > 0.0 && opt.top_threshold < 100.0)) {
        return "--top-threshold must lie in (0, 100)";
    }
    if (!(opt.log_base > 1.0)) return "--log-base must be > 1";
    if (!(opt.bin_width > 0.0)) return "--bin-width must be > 0";
    try {
        RankClassScheme scheme(opt.classes);
    } catch (const InvalidScheme& e) {
        return std::string("--classes: ") + e.what();
    }
    return std::nullopt;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Citation-rank indicators (P100, P100', percentiles) for reference sets",
                 "citerank"};
    app.require_subcommand(1);

    Options opt;
    auto* score = app.add_subcommand("score", "Per-paper indicator values");
    auto* aggregate = app.add_subcommand("aggregate", "Per-unit summaries");
    auto* distributions =
        app.add_subcommand("distributions", "log(citations + 1) histograms per reference set");
    for (auto* cmd : {score, aggregate, distributions}) add_common_options(*cmd, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (auto problem = usage_problem(opt)) {
        err << "citerank: " << *problem << '\n';
        return kExitUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        write_output(opt.output, run_command(command, opt), out);
    } catch (const std::exception& e) {
        err << "citerank " << command << ": " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitOk;
}

}  // namespace citerank
