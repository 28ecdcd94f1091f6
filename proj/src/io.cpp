#include "discrim/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "discrim/rng.hpp"

namespace discrim {

namespace {

std::string cell_location(const std::string& origin, std::size_t line, std::size_t col,
                          const std::string& name) {
    std::string loc = origin + ": line " + std::to_string(line) + ", column " +
                      std::to_string(col + 1);
    if (!name.empty()) {
        loc += " (" + name + ")";
    }
    return loc;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delimiter, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

double parse_cell(std::string_view raw, const std::string& origin, std::size_t line,
                  std::size_t col, const std::string& name) {
    const std::string_view cell = trim(raw);
    if (cell.empty()) {
        throw ingest_error("missing value at " + cell_location(origin, line, col, name));
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw ingest_error("cannot parse '" + std::string(cell) + "' as a number at " +
                           cell_location(origin, line, col, name));
    }
    if (!std::isfinite(value)) {
        throw ingest_error("non-finite value '" + std::string(cell) + "' at " +
                           cell_location(origin, line, col, name));
    }
    return value;
}

std::vector<std::size_t> resolve_filter(const std::vector<std::string>& filter,
                                        const std::vector<std::string>& names,
                                        std::size_t d, const std::string& origin) {
    std::vector<std::size_t> chosen;
    std::vector<bool> taken(d, false);
    for (const auto& entry : filter) {
        std::size_t index = d;
        const auto hit = std::find(names.begin(), names.end(), entry);
        if (hit != names.end()) {
            index = static_cast<std::size_t>(hit - names.begin());
        } else {
            std::size_t parsed = 0;
            const auto [ptr, ec] =
                std::from_chars(entry.data(), entry.data() + entry.size(), parsed);
            if (ec == std::errc{} && ptr == entry.data() + entry.size() && parsed < d) {
                index = parsed;
            }
        }
        if (index >= d) {
            throw ingest_error(origin + ": no column named or indexed '" + entry + "'");
        }
        if (!taken[index]) {
            taken[index] = true;
            chosen.push_back(index);
        }
    }
    std::sort(chosen.begin(), chosen.end());  // keep original file order
    return chosen;
}

} // namespace

DataMatrix read_csv(std::istream& in, const IngestSpec& spec, const std::string& origin) {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    std::size_t line_number = 0;
    std::string line;
    bool want_header = spec.has_header;

    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split(line, spec.delimiter);
        if (want_header) {
            for (const auto& f : fields) {
                names.emplace_back(trim(f));
            }
            columns.resize(names.size());
            want_header = false;
            continue;
        }
        if (columns.empty()) {
            columns.resize(fields.size());
            for (std::size_t j = 0; j < fields.size(); ++j) {
                names.push_back("c" + std::to_string(j));
            }
        }
        if (fields.size() != columns.size()) {
            throw ingest_error(origin + ": line " + std::to_string(line_number) + " has " +
                               std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(columns.size()));
        }
        for (std::size_t j = 0; j < fields.size(); ++j) {
            columns[j].push_back(parse_cell(fields[j], origin, line_number, j,
                                            j < names.size() ? names[j] : ""));
        }
    }

    if (columns.empty()) {
        throw ingest_error(origin + ": no data rows");
    }
    if (names.size() != columns.size()) {
        throw ingest_error(origin + ": header has " + std::to_string(names.size()) +
                           " fields but rows have " + std::to_string(columns.size()));
    }
    if (!spec.column_filter.empty()) {
        const auto chosen = resolve_filter(spec.column_filter, names, columns.size(), origin);
        std::vector<std::vector<double>> picked_cols;
        std::vector<std::string> picked_names;
        for (std::size_t index : chosen) {
            picked_cols.push_back(std::move(columns[index]));
            picked_names.push_back(std::move(names[index]));
        }
        columns = std::move(picked_cols);
        names = std::move(picked_names);
    }
    if (columns.empty()) {
        throw ingest_error(origin + ": no feature columns left");
    }
    if (columns.front().size() < 2) {
        throw ingest_error(origin + ": need at least 2 data points, got " +
                           std::to_string(columns.front().size()));
    }
    try {
        return DataMatrix(std::move(columns), std::move(names));
    } catch (const std::invalid_argument& e) {
        throw ingest_error(origin + ": " + e.what());
    }
}

DataMatrix ingest_csv(const IngestSpec& spec) {
    std::ifstream in(spec.path);
    if (!in) {
        throw ingest_error("cannot open '" + spec.path + "'");
    }
    return read_csv(in, spec, spec.path);
}

namespace {

std::string format_double(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

} // namespace

void write_csv(const DataMatrix& matrix, std::ostream& out, char delimiter) {
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
        if (j > 0) {
            out << delimiter;
        }
        out << matrix.name(j);
    }
    out << '\n';
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        for (std::size_t j = 0; j < matrix.cols(); ++j) {
            if (j > 0) {
                out << delimiter;
            }
            out << format_double(matrix.column(j)[i]);
        }
        out << '\n';
    }
}

SyntheticData generate_synthetic(std::size_t n, std::size_t d, std::size_t planted,
                                 std::uint64_t seed) {
    if (d == 0) {
        throw std::invalid_argument("matrix needs at least one feature column");
    }
    if (n < 2) {
        throw std::invalid_argument("need at least 2 data points");
    }
    if (planted > d) {
        throw std::invalid_argument("cannot plant " + std::to_string(planted) + " of " +
                                    std::to_string(d) + " columns");
    }

    auto master = rng::engine(seed);
    std::vector<std::size_t> planted_at = rng::sample_without_replacement(master, d, planted);
    std::sort(planted_at.begin(), planted_at.end());
    std::vector<bool> is_planted(d, false);
    for (std::size_t j : planted_at) {
        is_planted[j] = true;
    }

    const std::size_t concentrated = d - planted;
    const std::size_t outliers = std::max<std::size_t>(2, n / 1000);

    std::vector<std::vector<double>> columns(d);
    std::size_t spread_rank = 0;
    std::size_t concentrated_rank = 0;
    for (std::size_t j = 0; j < d; ++j) {
        auto gen = rng::engine(seed, j + 1);
        auto& col = columns[j];
        col.resize(n);
        if (is_planted[j]) {
            // Spread columns at staggered ranges so no two are near-tied.
            const double range = 10.0 * std::pow(1.3, static_cast<double>(spread_rank++));
            for (std::size_t i = 0; i < n; ++i) {
                col[i] = rng::uniform(gen, 0.0, range);
            }
        } else {
            // Per-column scale on a log grid: cluster width 0.05*scale,
            // outliers at +-60*scale. Outliers dominate the variance but
            // contribute little once subset sizes stay below n.
            const double t = concentrated <= 1
                                 ? 0.0
                                 : static_cast<double>(concentrated_rank) /
                                       static_cast<double>(concentrated - 1);
            ++concentrated_rank;
            const double scale = std::pow(6.0, t);
            const double width = 0.05 * scale;
            const double magnitude = 60.0 * scale;
            const double center = rng::uniform(gen, 0.0, 10.0);
            for (std::size_t i = 0; i < n; ++i) {
                const double jitter = width * rng::uniform01(gen);
                if (i < outliers) {
                    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
                    col[i] = center + sign * (magnitude + jitter);
                } else {
                    col[i] = center + jitter;
                }
            }
        }
    }

    SyntheticData data{DataMatrix(std::move(columns)), std::move(planted_at)};
    return data;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json json_number(double v) {
    if (std::isinf(v)) {
        return nullptr;  // JSON has no infinity; null round-trips to +inf
    }
    return v;
}

double number_from(const ordered_json& j) {
    if (j.is_null()) {
        return std::numeric_limits<double>::infinity();
    }
    return j.get<double>();
}

template <typename T>
void put_optional(ordered_json& j, const char* key, const std::optional<T>& value) {
    if (value) {
        j[key] = *value;
    }
}

void put_optional_number(ordered_json& j, const char* key, const std::optional<double>& value) {
    if (value) {
        j[key] = json_number(*value);
    }
}

template <typename T>
std::optional<T> get_optional(const ordered_json& j, const char* key) {
    if (!j.contains(key)) {
        return std::nullopt;
    }
    return j.at(key).get<T>();
}

std::optional<double> get_optional_number(const ordered_json& j, const char* key) {
    if (!j.contains(key)) {
        return std::nullopt;
    }
    return number_from(j.at(key));
}

} // namespace

nlohmann::ordered_json to_json(const ResultDocument& doc) {
    ordered_json j;
    j["method"] = doc.method;
    ordered_json params = ordered_json::object();
    put_optional(params, "budget", doc.params.budget);
    put_optional(params, "discard_correlated", doc.params.discard_correlated);
    put_optional(params, "support_length", doc.params.support_length);
    put_optional_number(params, "relative_length", doc.params.relative_length);
    put_optional(params, "seed", doc.params.seed);
    put_optional_number(params, "rrfs_threshold", doc.params.rrfs_threshold);
    put_optional(params, "rrfs_backfilled", doc.params.rrfs_backfilled);
    j["params"] = std::move(params);
    j["n"] = doc.n;
    j["d"] = doc.d;

    ordered_json ranking = ordered_json::array();
    for (const auto& entry : doc.ranking) {
        ordered_json e;
        e["feature"] = entry.feature;
        e["name"] = entry.name;
        put_optional_number(e, "delta_star", entry.delta_star);
        put_optional_number(e, "delta", entry.delta);
        put_optional_number(e, "partial_dim", entry.partial_dim);
        put_optional_number(e, "delta_lower", entry.delta_lower);
        put_optional_number(e, "delta_upper", entry.delta_upper);
        put_optional_number(e, "id_lower", entry.id_lower);
        put_optional_number(e, "id_upper", entry.id_upper);
        put_optional_number(e, "id_approx", entry.id_approx);
        put_optional_number(e, "variance", entry.variance);
        ranking.push_back(std::move(e));
    }
    j["ranking"] = std::move(ranking);
    j["selected"] = doc.selected;
    j["discarded_by_correlation"] = doc.discarded_by_correlation;
    if (doc.last_discard_correlation) {
        j["last_discard_correlation"] = json_number(*doc.last_discard_correlation);
    }
    if (doc.error_report) {
        ordered_json report;
        report["max_error_ratio"] = doc.error_report->max_error_ratio;
        if (doc.error_report->true_error_ratio) {
            report["true_error_ratio"] = *doc.error_report->true_error_ratio;
        }
        j["error_report"] = std::move(report);
    }
    ordered_json timing = ordered_json::object();
    for (const auto& [phase, seconds] : doc.timing) {
        timing[phase] = seconds;
    }
    j["timing"] = std::move(timing);
    return j;
}

ResultDocument result_document_from_json(const nlohmann::ordered_json& j) {
    ResultDocument doc;
    doc.method = j.at("method").get<std::string>();
    const auto& params = j.at("params");
    doc.params.budget = get_optional<std::size_t>(params, "budget");
    doc.params.discard_correlated = get_optional<std::size_t>(params, "discard_correlated");
    doc.params.support_length = get_optional<std::size_t>(params, "support_length");
    doc.params.relative_length = get_optional_number(params, "relative_length");
    doc.params.seed = get_optional<std::uint64_t>(params, "seed");
    doc.params.rrfs_threshold = get_optional_number(params, "rrfs_threshold");
    doc.params.rrfs_backfilled = get_optional<bool>(params, "rrfs_backfilled");
    doc.n = j.at("n").get<std::size_t>();
    doc.d = j.at("d").get<std::size_t>();
    for (const auto& e : j.at("ranking")) {
        RankedFeatureEntry entry;
        entry.feature = e.at("feature").get<std::size_t>();
        entry.name = e.at("name").get<std::string>();
        entry.delta_star = get_optional_number(e, "delta_star");
        entry.delta = get_optional_number(e, "delta");
        entry.partial_dim = get_optional_number(e, "partial_dim");
        entry.delta_lower = get_optional_number(e, "delta_lower");
        entry.delta_upper = get_optional_number(e, "delta_upper");
        entry.id_lower = get_optional_number(e, "id_lower");
        entry.id_upper = get_optional_number(e, "id_upper");
        entry.id_approx = get_optional_number(e, "id_approx");
        entry.variance = get_optional_number(e, "variance");
        doc.ranking.push_back(std::move(entry));
    }
    doc.selected = j.at("selected").get<std::vector<std::size_t>>();
    doc.discarded_by_correlation =
        j.at("discarded_by_correlation").get<std::vector<std::size_t>>();
    doc.last_discard_correlation = get_optional_number(j, "last_discard_correlation");
    if (j.contains("error_report")) {
        ErrorReport report;
        report.max_error_ratio = j.at("error_report").at("max_error_ratio").get<double>();
        report.true_error_ratio =
            get_optional<double>(j.at("error_report"), "true_error_ratio");
        doc.error_report = report;
    }
    if (j.contains("timing")) {
        for (const auto& [phase, seconds] : j.at("timing").items()) {
            doc.timing[phase] = seconds.get<double>();
        }
    }
    return doc;
}

void write_scores_csv(const ResultDocument& doc, std::ostream& out) {
    const bool approx = !doc.ranking.empty() && doc.ranking.front().id_approx.has_value();
    const bool exact = !doc.ranking.empty() && doc.ranking.front().partial_dim.has_value();
    const bool variance = !doc.ranking.empty() && doc.ranking.front().variance.has_value();
    out << "rank,feature,name";
    if (exact) {
        out << ",delta_star,delta,partial_dim";
    }
    if (approx) {
        out << ",delta_lower,delta_upper,id_lower,id_upper,id_approx";
    }
    if (variance) {
        out << ",variance";
    }
    out << '\n';
    for (std::size_t r = 0; r < doc.ranking.size(); ++r) {
        const auto& e = doc.ranking[r];
        out << r << ',' << e.feature << ',' << e.name;
        auto emit = [&](const std::optional<double>& v) {
            out << ',' << (v ? format_double(*v) : std::string());
        };
        if (exact) {
            emit(e.delta_star);
            emit(e.delta);
            emit(e.partial_dim);
        }
        if (approx) {
            emit(e.delta_lower);
            emit(e.delta_upper);
            emit(e.id_lower);
            emit(e.id_upper);
            emit(e.id_approx);
        }
        if (variance) {
            emit(e.variance);
        }
        out << '\n';
    }
}

} // namespace discrim
