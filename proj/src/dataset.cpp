#include "citerank/dataset.hpp"

#include "citerank/errors.hpp"
#include "csv.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace citerank {

namespace {

constexpr std::string_view kColumns[] = {"id", "year", "categories", "citations", "unit"};

template <typename Int>
Int parse_integer(std::string_view text, std::size_t line, const char* column) {
    text = detail::trim(text);
    Int value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError(line, column, "malformed integer '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string> split_categories(std::string_view field, std::size_t line) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    std::size_t start = 0;
    while (true) {
        const auto end = field.find(';', start);
        const auto piece = detail::trim(field.substr(start, end == std::string_view::npos
                                                                ? std::string_view::npos
                                                                : end - start));
        if (piece.empty()) {
            throw ParseError(line, "categories", "empty category");
        }
        if (!seen.emplace(piece).second) {
            throw ParseError(line, "categories",
                             "duplicate category '" + std::string(piece) + "'");
        }
        out.emplace_back(piece);
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return out;
}

void check_record(PublicationRecord& r, std::size_t line) {
    if (r.id.empty()) {
        throw ParseError(line, "id", "empty id");
    }
    if (r.categories.empty()) {
        throw ParseError(line, "categories", "no categories");
    }
    if (r.citations < 0) {
        throw ParseError(line, "citations",
                         "negative citation count " + std::to_string(r.citations));
    }
    if (r.unit && r.unit->empty()) {
        r.unit.reset();
    }
}

std::vector<PublicationRecord> parse_csv(std::istream& in) {
    std::vector<PublicationRecord> records;
    std::string text;
    std::size_t line = 0;

    std::unordered_map<std::string, std::size_t> column_index;
    std::size_t column_count = 0;
    bool have_header = false;

    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (line == 1 && text.starts_with("\xEF\xBB\xBF")) text.erase(0, 3);
        if (detail::trim(text).empty()) continue;

        std::vector<std::string> fields;
        try {
            fields = detail::split_csv_line(text);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line, "(row)", e.what());
        }

        if (!have_header) {
            for (std::size_t k = 0; k < fields.size(); ++k) {
                column_index.emplace(std::string(detail::trim(fields[k])), k);
            }
            for (auto name : kColumns) {
                if (name != "unit" && !column_index.contains(std::string(name))) {
                    throw ParseError(line, std::string(name), "missing column in header");
                }
            }
            column_count = fields.size();
            have_header = true;
            continue;
        }

        if (fields.size() != column_count) {
            throw ParseError(line, "(row)",
                             "expected " + std::to_string(column_count) + " fields, found " +
                                 std::to_string(fields.size()));
        }
        auto field = [&](const char* name) -> std::string_view {
            return fields[column_index.at(name)];
        };

        PublicationRecord r;
        r.id = std::string(detail::trim(field("id")));
        r.year = parse_integer<int>(field("year"), line, "year");
        r.categories = split_categories(field("categories"), line);
        r.citations = parse_integer<Citations>(field("citations"), line, "citations");
        if (column_index.contains("unit")) {
            r.unit = std::string(detail::trim(field("unit")));
        }
        check_record(r, line);
        records.push_back(std::move(r));
    }
    if (!have_header) {
        throw ParseError(line == 0 ? 1 : line, "id", "missing CSV header");
    }
    return records;
}

std::vector<PublicationRecord> parse_jsonl(std::istream& in) {
    using nlohmann::json;
    std::vector<PublicationRecord> records;
    std::string text;
    std::size_t line = 0;

    while (std::getline(in, text)) {
        ++line;
        if (detail::trim(text).empty()) continue;

        json obj;
        try {
            obj = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ParseError(line, "(json)", e.what());
        }
        if (!obj.is_object()) {
            throw ParseError(line, "(json)", "expected a JSON object");
        }
        auto require = [&](const char* name) -> const json& {
            auto it = obj.find(name);
            if (it == obj.end() || it->is_null()) {
                throw ParseError(line, name, "missing field");
            }
            return *it;
        };

        PublicationRecord r;
        const json& id = require("id");
        if (!id.is_string()) throw ParseError(line, "id", "expected a string");
        r.id = std::string(detail::trim(id.get<std::string>()));

        const json& year = require("year");
        if (!year.is_number_integer()) throw ParseError(line, "year", "expected an integer");
        r.year = year.get<int>();

        const json& cats = require("categories");
        if (cats.is_string()) {
            r.categories = split_categories(cats.get<std::string>(), line);
        } else if (cats.is_array()) {
            std::string joined;
            for (const auto& c : cats) {
                if (!c.is_string()) throw ParseError(line, "categories", "expected strings");
                const auto s = c.get<std::string>();
                if (s.find(';') != std::string::npos) {
                    throw ParseError(line, "categories", "category contains ';'");
                }
                if (!joined.empty()) joined += ';';
                joined += s;
            }
            if (cats.empty()) throw ParseError(line, "categories", "no categories");
            r.categories = split_categories(joined, line);
        } else {
            throw ParseError(line, "categories", "expected a string or array");
        }

        const json& cit = require("citations");
        if (!cit.is_number_integer()) {
            throw ParseError(line, "citations", "expected an integer");
        }
        r.citations = cit.get<Citations>();

        if (auto it = obj.find("unit"); it != obj.end() && !it->is_null()) {
            if (!it->is_string()) throw ParseError(line, "unit", "expected a string");
            r.unit = std::string(detail::trim(it->get<std::string>()));
        }
        check_record(r, line);
        records.push_back(std::move(r));
    }
    return records;
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += sep;
        out += p;
    }
    return out;
}

}  // namespace

std::vector<PublicationRecord> parse_records(std::istream& in, InputFormat format) {
    auto records = format == InputFormat::Csv ? parse_csv(in) : parse_jsonl(in);
    std::unordered_set<std::string> ids;
    for (const auto& r : records) {
        if (!ids.insert(r.id).second) {
            throw DuplicateId(r.id);
        }
    }
    return records;
}

void write_records(std::ostream& out, const std::vector<PublicationRecord>& records,
                   InputFormat format) {
    if (format == InputFormat::Csv) {
        out << "id,year,categories,citations,unit\n";
        for (const auto& r : records) {
            out << detail::csv_escape(r.id) << ',' << r.year << ','
                << detail::csv_escape(join(r.categories, ';')) << ',' << r.citations << ','
                << detail::csv_escape(r.unit.value_or("")) << '\n';
        }
        return;
    }
    for (const auto& r : records) {
        nlohmann::json obj = {{"id", r.id},
                              {"year", r.year},
                              {"categories", r.categories},
                              {"citations", r.citations}};
        obj["unit"] = r.unit ? nlohmann::json(*r.unit) : nlohmann::json(nullptr);
        out << obj.dump() << '\n';
    }
}

std::vector<Citations> ReferenceSet::citations() const {
    std::vector<Citations> out;
    out.reserve(members.size());
    for (const auto& m : members) out.push_back(m.citations);
    return out;
}

ReferenceSets build_reference_sets(const std::vector<PublicationRecord>& records) {
    ReferenceSets sets;
    for (const auto& r : records) {
        for (const auto& category : r.categories) {
            ReferenceSetKey key{r.year, category};
            auto [it, inserted] = sets.try_emplace(key);
            if (inserted) it->second.key = std::move(key);
            it->second.members.push_back({r.id, r.citations});
        }
    }
    return sets;
}

std::optional<double> CombinedScore::get(Indicator kind) const {
    switch (kind) {
        case Indicator::P100: return p100;
        case Indicator::P100Prime: return p100_prime;
        case Indicator::Percentile: return percentile;
    }
    return std::nullopt;
}

bool ScoreRow::degenerate() const {
    return std::all_of(per_set.begin(), per_set.end(),
                       [](const SetScore& s) { return s.degenerate; });
}

std::vector<ScoreRow> score_all(const ReferenceSets& sets) {
    // std::map keeps rows ordered by paper id; sets are visited in key order so
    // per_set comes out ordered too.
    std::map<std::string, ScoreRow> rows;
    for (const auto& [key, set] : sets) {
        const auto citations = set.citations();
        const auto sf = size_frequency(citations);
        const auto percentile = percentile_cumfreq(sf);
        std::optional<IndicatorTable> rank, rank_prime;
        if (!sf.degenerate()) {
            rank = p100(sf);
            rank_prime = p100_prime(sf);
        }
        for (const auto& m : set.members) {
            SetScore s;
            s.key = key;
            s.percentile = percentile.at(m.citations);
            s.degenerate = sf.degenerate();
            if (rank) {
                s.p100 = rank->at(m.citations);
                s.p100_prime = rank_prime->at(m.citations);
            }
            auto& row = rows[m.paper_id];
            row.paper_id = m.paper_id;
            row.per_set.push_back(std::move(s));
        }
    }

    std::vector<ScoreRow> out;
    out.reserve(rows.size());
    for (auto& [id, row] : rows) {
        double pct_sum = 0.0, p100_sum = 0.0, prime_sum = 0.0;
        std::size_t ranked = 0;
        for (const auto& s : row.per_set) {
            pct_sum += s.percentile;
            if (!s.degenerate) {
                p100_sum += *s.p100;
                prime_sum += *s.p100_prime;
                ++ranked;
            }
        }
        row.combined.percentile = pct_sum / static_cast<double>(row.per_set.size());
        if (ranked > 0) {
            row.combined.p100 = p100_sum / static_cast<double>(ranked);
            row.combined.p100_prime = prime_sum / static_cast<double>(ranked);
        }
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace citerank
