#include "discrim/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "discrim/baselines.hpp"
#include "discrim/io.hpp"
#include "discrim/rng.hpp"
#include "discrim/select.hpp"

namespace discrim {

namespace {

using ordered_json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct CommonOpts {
    std::string input;
    std::string delimiter = ",";
    bool no_header = false;
    std::string out_path;
    std::string csv_path;
    unsigned threads = 0;
};

struct CliOptions {
    CommonOpts io;
    std::string budget_spec;
    std::optional<std::size_t> discard;
    std::optional<std::size_t> support_length;
    std::optional<double> relative_length;
    bool verify_exact = false;
    bool sweep = false;
    std::uint64_t seed = 0;
    std::string baseline_method;
    std::optional<double> rrfs_threshold;
    std::size_t bench_rows = 2000;
    std::size_t bench_cols = 20;
    std::optional<std::size_t> bench_planted;
};

void add_io_options(CLI::App* cmd, CommonOpts& io, bool needs_input) {
    if (needs_input) {
        cmd->add_option("input", io.input, "delimited numeric text file")->required();
        cmd->add_option("--delimiter", io.delimiter,
                        "field delimiter, a single character or \\t (default ,)");
        cmd->add_flag("--no-header", io.no_header,
                      "first line is data; columns are named c0, c1, ...");
    }
    cmd->add_option("--out", io.out_path, "write the result document here instead of stdout");
    cmd->add_option("--csv", io.csv_path, "also write a flat per-feature score table");
    cmd->add_option("--threads", io.threads,
                    "worker threads for per-feature phases (0 = all cores)");
}

char resolve_delimiter(const std::string& spec) {
    if (spec == "\\t" || spec == "\t") {
        return '\t';
    }
    if (spec.size() != 1) {
        throw usage_error("--delimiter must be a single character or \\t");
    }
    return spec.front();
}

IngestSpec ingest_spec_from(const CommonOpts& io) {
    IngestSpec spec;
    spec.path = io.input;
    spec.has_header = !io.no_header;
    spec.delimiter = resolve_delimiter(io.delimiter);
    return spec;
}

/// Absolute count, or "P%" mapped to max(1, ceil(P/100 * d)).
std::size_t resolve_budget(const std::string& spec, std::size_t d) {
    if (spec.empty()) {
        throw usage_error("--budget must not be empty");
    }
    if (spec.back() == '%') {
        double percent = 0.0;
        const auto* end = spec.data() + spec.size() - 1;
        const auto [ptr, ec] = std::from_chars(spec.data(), end, percent);
        if (ec != std::errc{} || ptr != end || percent <= 0.0 || percent > 100.0) {
            throw usage_error("--budget percentage must be in (0, 100], got '" + spec + "'");
        }
        const double raw = std::ceil(percent / 100.0 * static_cast<double>(d));
        return std::max<std::size_t>(1, static_cast<std::size_t>(raw));
    }
    std::size_t budget = 0;
    const auto [ptr, ec] = std::from_chars(spec.data(), spec.data() + spec.size(), budget);
    if (ec != std::errc{} || ptr != spec.data() + spec.size() || budget == 0) {
        throw usage_error("--budget must be a positive integer or a percentage, got '" +
                          spec + "'");
    }
    return budget;
}

void check_budget_usage(std::size_t budget, std::size_t survivors) {
    if (budget > survivors) {
        throw usage_error("budget " + std::to_string(budget) + " exceeds the " +
                          std::to_string(survivors) + " available features");
    }
}

std::size_t resolve_support_length(const CliOptions& opt, std::size_t n) {
    if (opt.support_length && opt.relative_length) {
        throw usage_error("give either --support-length or --relative-length, not both");
    }
    if (opt.support_length) {
        if (*opt.support_length < 2) {
            throw usage_error("--support-length must be at least 2");
        }
        return *opt.support_length;
    }
    if (opt.relative_length) {
        const double r = *opt.relative_length;
        if (r <= 0.0 || r > 1.0) {
            throw usage_error("--relative-length must be in (0, 1]");
        }
        const auto l = static_cast<std::size_t>(std::floor(r * static_cast<double>(n)));
        if (l < 2) {
            throw usage_error("--relative-length " + std::to_string(r) + " of n=" +
                              std::to_string(n) + " gives a support length below 2");
        }
        return l;
    }
    throw usage_error("need --support-length or --relative-length");
}

RankedFeatureEntry entry_from(const FeatureScore& s, const std::string& name) {
    RankedFeatureEntry e;
    e.feature = s.feature_index;
    e.name = name;
    e.delta_star = s.delta_star;
    e.delta = s.delta;
    e.partial_dim = s.partial_dim;
    return e;
}

RankedFeatureEntry entry_from(const BoundedScore& s, const std::string& name) {
    RankedFeatureEntry e;
    e.feature = s.feature_index;
    e.name = name;
    e.delta_lower = s.delta_lower;
    e.delta_upper = s.delta_upper;
    e.id_lower = s.id_lower;
    e.id_upper = s.id_upper;
    e.id_approx = s.id_approx;
    return e;
}

ResultDocument document_from_ranking(const DataMatrix& matrix, const Ranking& ranking,
                                     std::string method, std::size_t selected_count) {
    ResultDocument doc;
    doc.method = std::move(method);
    doc.n = matrix.rows();
    doc.d = matrix.cols();
    if (ranking.approximate()) {
        for (const auto& s : ranking.bounded_scores()) {
            doc.ranking.push_back(entry_from(s, matrix.name(s.feature_index)));
        }
    } else {
        for (const auto& s : ranking.exact_scores()) {
            doc.ranking.push_back(entry_from(s, matrix.name(s.feature_index)));
        }
    }
    doc.selected.assign(ranking.ordered_features.begin(),
                        ranking.ordered_features.begin() +
                            static_cast<std::ptrdiff_t>(selected_count));
    doc.discarded_by_correlation = ranking.discarded_by_correlation;
    doc.last_discard_correlation = ranking.last_discard_correlation;
    return doc;
}

void write_output(const ordered_json& j, const CommonOpts& io, std::ostream& out) {
    if (io.out_path.empty()) {
        out << j.dump(2) << '\n';
        return;
    }
    std::ofstream file(io.out_path);
    if (!file) {
        throw std::runtime_error("cannot write '" + io.out_path + "'");
    }
    file << j.dump(2) << '\n';
}

void maybe_write_scores(const ResultDocument& doc, const CommonOpts& io) {
    if (io.csv_path.empty()) {
        return;
    }
    std::ofstream file(io.csv_path);
    if (!file) {
        throw std::runtime_error("cannot write '" + io.csv_path + "'");
    }
    write_scores_csv(doc, file);
}

int emit_document(ResultDocument doc, const CommonOpts& io, std::ostream& out) {
    maybe_write_scores(doc, io);
    write_output(to_json(doc), io, out);
    return 0;
}

// rank / select: exact scoring, full ranking vs. budget prefix.
int cmd_rank_or_select(const CliOptions& opt, bool with_budget, std::ostream& out) {
    const auto t0 = Clock::now();
    const DataMatrix matrix = ingest_csv(ingest_spec_from(opt.io));
    const double ingest_s = seconds_since(t0);

    const std::size_t survivors = matrix.cols() - opt.discard.value_or(0);
    if (opt.discard && *opt.discard >= matrix.cols()) {
        throw usage_error("--discard-correlated " + std::to_string(*opt.discard) +
                          " must stay below the " + std::to_string(matrix.cols()) +
                          " features");
    }
    SelectionConfig config;
    config.correlation_discard = opt.discard;
    config.budget = with_budget ? resolve_budget(opt.budget_spec, matrix.cols()) : survivors;
    check_budget_usage(config.budget, survivors);

    const auto t1 = Clock::now();
    const Ranking ranking = fsd(matrix, config, opt.io.threads);
    const double score_s = seconds_since(t1);

    ResultDocument doc = document_from_ranking(
        matrix, ranking, opt.discard ? "fsdc" : "fsd", config.budget);
    if (with_budget) {
        doc.params.budget = config.budget;
    }
    doc.params.discard_correlated = opt.discard;
    doc.timing["ingest_seconds"] = ingest_s;
    doc.timing["score_seconds"] = score_s;
    doc.timing["total_seconds"] = seconds_since(t0);
    return emit_document(std::move(doc), opt.io, out);
}

int cmd_approx_rank(const CliOptions& opt, std::ostream& out) {
    const auto t0 = Clock::now();
    const DataMatrix matrix = ingest_csv(ingest_spec_from(opt.io));
    const double ingest_s = seconds_since(t0);

    if (opt.discard && *opt.discard >= matrix.cols()) {
        throw usage_error("--discard-correlated " + std::to_string(*opt.discard) +
                          " must stay below the " + std::to_string(matrix.cols()) +
                          " features");
    }
    const std::size_t survivors = matrix.cols() - opt.discard.value_or(0);
    SelectionConfig config;
    config.correlation_discard = opt.discard;
    config.support_length = resolve_support_length(opt, matrix.rows());
    config.budget =
        opt.budget_spec.empty() ? survivors : resolve_budget(opt.budget_spec, matrix.cols());
    check_budget_usage(config.budget, survivors);

    const auto t1 = Clock::now();
    const LsfsdResult result = lsfsd(matrix, config, opt.verify_exact, opt.io.threads);
    const double score_s = seconds_since(t1);

    ResultDocument doc = document_from_ranking(
        matrix, result.ranking, opt.discard ? "lsfsdc" : "lsfsd", config.budget);
    if (!opt.budget_spec.empty()) {
        doc.params.budget = config.budget;
    }
    doc.params.discard_correlated = opt.discard;
    doc.params.support_length = config.support_length;
    doc.params.relative_length = opt.relative_length;
    doc.error_report = result.report;
    doc.timing["ingest_seconds"] = ingest_s;
    doc.timing["score_seconds"] = score_s;
    doc.timing["total_seconds"] = seconds_since(t0);
    return emit_document(std::move(doc), opt.io, out);
}

int cmd_error_bound(const CliOptions& opt, std::ostream& out) {
    const auto t0 = Clock::now();
    const DataMatrix matrix = ingest_csv(ingest_spec_from(opt.io));

    if (opt.discard && *opt.discard >= matrix.cols()) {
        throw usage_error("--discard-correlated " + std::to_string(*opt.discard) +
                          " must stay below the " + std::to_string(matrix.cols()) +
                          " features");
    }
    SelectionConfig config;
    config.correlation_discard = opt.discard;
    config.budget = matrix.cols() - opt.discard.value_or(0);

    if (opt.sweep) {
        if (opt.support_length || opt.relative_length) {
            throw usage_error("--sweep replaces --support-length/--relative-length");
        }
        ordered_json rows = ordered_json::array();
        for (int step = 1; step <= 20; ++step) {
            const double r = static_cast<double>(step) / 100.0;
            const std::size_t requested = std::max<std::size_t>(
                2, static_cast<std::size_t>(std::floor(r * static_cast<double>(matrix.rows()))));
            config.support_length = requested;
            const SupportSequence support =
                make_log_support_sequence(matrix.rows(), requested);
            const LsfsdResult result = lsfsd(matrix, config, support, false, opt.io.threads);
            ordered_json row;
            row["relative_length"] = r;
            row["requested_length"] = requested;
            row["actual_length"] = support.length();
            row["max_error_ratio"] = result.report.max_error_ratio;
            rows.push_back(std::move(row));
        }
        ordered_json doc;
        doc["method"] = "error-bound";
        ordered_json params = ordered_json::object();
        if (opt.discard) {
            params["discard_correlated"] = *opt.discard;
        }
        params["sweep"] = true;
        doc["params"] = std::move(params);
        doc["n"] = matrix.rows();
        doc["d"] = matrix.cols();
        doc["sweep"] = std::move(rows);
        ordered_json timing = ordered_json::object();
        timing["total_seconds"] = seconds_since(t0);
        doc["timing"] = std::move(timing);
        if (!opt.io.csv_path.empty()) {
            std::ofstream file(opt.io.csv_path);
            if (!file) {
                throw std::runtime_error("cannot write '" + opt.io.csv_path + "'");
            }
            file << "relative_length,requested_length,actual_length,max_error_ratio\n";
            for (const auto& row : doc["sweep"]) {
                file << row["relative_length"].get<double>() << ','
                     << row["requested_length"].get<std::size_t>() << ','
                     << row["actual_length"].get<std::size_t>() << ','
                     << row["max_error_ratio"].get<double>() << '\n';
            }
        }
        write_output(doc, opt.io, out);
        return 0;
    }

    config.support_length = resolve_support_length(opt, matrix.rows());
    const SupportSequence support =
        make_log_support_sequence(matrix.rows(), *config.support_length);
    const auto t1 = Clock::now();
    const LsfsdResult result = lsfsd(matrix, config, support, false, opt.io.threads);
    const double score_s = seconds_since(t1);

    ResultDocument doc = document_from_ranking(matrix, result.ranking, "error-bound", 0);
    doc.params.discard_correlated = opt.discard;
    doc.params.support_length = support.length();
    doc.params.relative_length = opt.relative_length;
    doc.error_report = result.report;
    doc.timing["score_seconds"] = score_s;
    doc.timing["total_seconds"] = seconds_since(t0);
    return emit_document(std::move(doc), opt.io, out);
}

int cmd_baseline(const CliOptions& opt, std::ostream& out) {
    const auto t0 = Clock::now();
    const DataMatrix matrix = ingest_csv(ingest_spec_from(opt.io));
    const std::size_t d = matrix.cols();
    const std::size_t budget = resolve_budget(opt.budget_spec, d);
    check_budget_usage(budget, d);

    ResultDocument doc;
    doc.n = matrix.rows();
    doc.d = d;
    doc.params.budget = budget;

    auto append_plain = [&](const std::vector<std::size_t>& features) {
        for (std::size_t f : features) {
            RankedFeatureEntry e;
            e.feature = f;
            e.name = matrix.name(f);
            doc.ranking.push_back(std::move(e));
        }
    };
    auto append_with_variance = [&](const std::vector<std::size_t>& features,
                                    const std::vector<double>& vars) {
        for (std::size_t f : features) {
            RankedFeatureEntry e;
            e.feature = f;
            e.name = matrix.name(f);
            e.variance = vars[f];
            doc.ranking.push_back(std::move(e));
        }
    };

    if (opt.baseline_method == "random") {
        const BaselineResult result = select_random(d, budget, opt.seed);
        doc.method = "random";
        doc.params.seed = opt.seed;
        doc.selected = result.selected;
        append_plain(result.selected);
        std::vector<bool> chosen(d, false);
        for (std::size_t f : result.selected) {
            chosen[f] = true;
        }
        std::vector<std::size_t> rest;
        for (std::size_t f = 0; f < d; ++f) {
            if (!chosen[f]) {
                rest.push_back(f);
            }
        }
        append_plain(rest);
    } else if (opt.baseline_method == "variance") {
        const std::vector<double> vars = column_variances(matrix, opt.io.threads);
        const BaselineResult result = select_by_variance(matrix, budget, opt.io.threads);
        doc.method = "variance";
        doc.selected = result.selected;
        append_with_variance(variance_order(matrix, opt.io.threads), vars);
    } else if (opt.baseline_method == "correlation") {
        const PrefilterResult pre = correlation_prefilter(matrix, d - budget, opt.io.threads);
        doc.method = "correlation";
        doc.selected = pre.kept;
        append_plain(pre.kept);
        doc.discarded_by_correlation = pre.discarded;
        doc.last_discard_correlation = pre.last_discard_correlation;
    } else if (opt.baseline_method == "rrfs") {
        if (!opt.rrfs_threshold) {
            throw usage_error("baseline rrfs needs --rrfs-threshold in [0, 1]");
        }
        const std::vector<double> vars = column_variances(matrix, opt.io.threads);
        const BaselineResult result =
            select_rrfs(matrix, budget, *opt.rrfs_threshold, opt.io.threads);
        doc.method = "rrfs";
        doc.params.rrfs_threshold = result.rrfs_threshold;
        doc.params.rrfs_backfilled = result.rrfs_backfilled;
        doc.selected = result.selected;
        append_with_variance(result.selected, vars);
        std::vector<bool> chosen(d, false);
        for (std::size_t f : result.selected) {
            chosen[f] = true;
        }
        std::vector<std::size_t> rest;
        for (std::size_t f : variance_order(matrix, opt.io.threads)) {
            if (!chosen[f]) {
                rest.push_back(f);
            }
        }
        append_with_variance(rest, vars);
    } else {
        throw usage_error("unknown baseline '" + opt.baseline_method + "'");
    }

    doc.timing["total_seconds"] = seconds_since(t0);
    return emit_document(std::move(doc), opt.io, out);
}

double recall_of(const std::vector<std::size_t>& selected,
                 const std::vector<std::size_t>& truth) {
    const std::set<std::size_t> truth_set(truth.begin(), truth.end());
    std::size_t hits = 0;
    for (std::size_t f : selected) {
        hits += truth_set.count(f);
    }
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

int cmd_bench(const CliOptions& opt, std::ostream& out) {
    const auto t0 = Clock::now();
    const std::size_t d = opt.bench_cols;
    const std::size_t planted =
        opt.bench_planted.value_or(std::max<std::size_t>(1, (d + 9) / 10));
    const SyntheticData data = generate_synthetic(opt.bench_rows, d, planted, opt.seed);
    const DataMatrix& matrix = data.matrix;

    const std::size_t budget = opt.budget_spec.empty()
                                   ? (planted > 0 ? planted : (d + 9) / 10)
                                   : resolve_budget(opt.budget_spec, d);
    check_budget_usage(budget, d);
    const std::size_t discard =
        opt.discard.value_or(std::min(d - budget, (d + 9) / 10));
    if (discard >= d || budget > d - discard) {
        throw usage_error("budget " + std::to_string(budget) + " plus --discard-correlated " +
                          std::to_string(discard) + " exceed the " + std::to_string(d) +
                          " features");
    }

    ordered_json methods = ordered_json::array();
    auto push_method = [&](const std::string& name, const std::vector<std::size_t>& selected,
                           double seconds, ordered_json extra = ordered_json::object()) {
        ordered_json row;
        row["method"] = name;
        row["selected"] = selected;
        row["recall"] =
            planted > 0 ? ordered_json(recall_of(selected, data.planted)) : ordered_json(nullptr);
        for (auto& [key, value] : extra.items()) {
            row[key] = value;
        }
        ordered_json timing = ordered_json::object();
        timing["seconds"] = seconds;
        row["timing"] = std::move(timing);
        methods.push_back(std::move(row));
    };
    auto prefix = [&](const std::vector<std::size_t>& order) {
        return std::vector<std::size_t>(order.begin(),
                                        order.begin() + static_cast<std::ptrdiff_t>(budget));
    };

    // Exact pipelines.
    SelectionConfig exact_config;
    exact_config.budget = budget;
    auto t = Clock::now();
    const Ranking fsd_ranking = fsd(matrix, exact_config, opt.io.threads);
    push_method("fsd", prefix(fsd_ranking.ordered_features), seconds_since(t));

    std::optional<double> wired_threshold = opt.rrfs_threshold;
    if (discard > 0) {
        SelectionConfig fsdc_config = exact_config;
        fsdc_config.correlation_discard = discard;
        t = Clock::now();
        const Ranking fsdc_ranking = fsd(matrix, fsdc_config, opt.io.threads);
        ordered_json extra;
        extra["discard_correlated"] = discard;
        if (fsdc_ranking.last_discard_correlation) {
            extra["last_discard_correlation"] = *fsdc_ranking.last_discard_correlation;
        }
        push_method("fsdc", prefix(fsdc_ranking.ordered_features), seconds_since(t),
                    std::move(extra));
        if (!wired_threshold) {
            wired_threshold = fsdc_ranking.last_discard_correlation;
        }
    }

    // Approximate pipelines when a support length is requested.
    if (opt.support_length || opt.relative_length) {
        SelectionConfig approx_config = exact_config;
        approx_config.support_length = resolve_support_length(opt, matrix.rows());
        t = Clock::now();
        const LsfsdResult ls = lsfsd(matrix, approx_config, opt.verify_exact, opt.io.threads);
        ordered_json extra;
        extra["support_length"] = *approx_config.support_length;
        extra["max_error_ratio"] = ls.report.max_error_ratio;
        if (ls.report.true_error_ratio) {
            extra["true_error_ratio"] = *ls.report.true_error_ratio;
        }
        push_method("lsfsd", prefix(ls.ranking.ordered_features), seconds_since(t),
                    std::move(extra));

        if (discard > 0) {
            approx_config.correlation_discard = discard;
            t = Clock::now();
            const LsfsdResult lsc =
                lsfsd(matrix, approx_config, opt.verify_exact, opt.io.threads);
            ordered_json extra_c;
            extra_c["support_length"] = *approx_config.support_length;
            extra_c["discard_correlated"] = discard;
            extra_c["max_error_ratio"] = lsc.report.max_error_ratio;
            if (lsc.report.true_error_ratio) {
                extra_c["true_error_ratio"] = *lsc.report.true_error_ratio;
            }
            push_method("lsfsdc", prefix(lsc.ranking.ordered_features), seconds_since(t),
                        std::move(extra_c));
        }
    }

    // Reference selectors. The random baseline gets a derived sub-seed: the
    // generator's first draws come from the same master stream, and reusing
    // it verbatim would hand the baseline the planted positions.
    t = Clock::now();
    const std::uint64_t random_seed = rng::derive_seed(opt.seed, d + 1);
    const BaselineResult random_result = select_random(d, budget, random_seed);
    push_method("random", random_result.selected, seconds_since(t),
                ordered_json{{"seed", opt.seed}});

    t = Clock::now();
    const BaselineResult variance_result = select_by_variance(matrix, budget, opt.io.threads);
    push_method("variance", variance_result.selected, seconds_since(t));

    t = Clock::now();
    const BaselineResult corr_result = select_by_correlation(matrix, budget, opt.io.threads);
    push_method("correlation", corr_result.selected, seconds_since(t));

    const double threshold = wired_threshold.value_or(1.0);
    t = Clock::now();
    const BaselineResult rrfs_result = select_rrfs(matrix, budget, threshold, opt.io.threads);
    ordered_json rrfs_extra;
    rrfs_extra["rrfs_threshold"] = threshold;
    rrfs_extra["rrfs_backfilled"] = rrfs_result.rrfs_backfilled;
    push_method("rrfs", rrfs_result.selected, seconds_since(t), std::move(rrfs_extra));

    ordered_json doc;
    doc["method"] = "bench";
    ordered_json params;
    params["rows"] = opt.bench_rows;
    params["cols"] = d;
    params["planted"] = planted;
    params["seed"] = opt.seed;
    params["budget"] = budget;
    params["discard_correlated"] = discard;
    if (opt.support_length || opt.relative_length) {
        params["support_length"] = resolve_support_length(opt, matrix.rows());
    }
    doc["params"] = std::move(params);
    doc["n"] = matrix.rows();
    doc["d"] = matrix.cols();
    doc["planted_features"] = data.planted;
    doc["methods"] = std::move(methods);
    ordered_json timing = ordered_json::object();
    timing["total_seconds"] = seconds_since(t0);
    doc["timing"] = std::move(timing);

    if (!opt.io.csv_path.empty()) {
        std::ofstream file(opt.io.csv_path);
        if (!file) {
            throw std::runtime_error("cannot write '" + opt.io.csv_path + "'");
        }
        file << "method,recall,seconds\n";
        for (const auto& row : doc["methods"]) {
            file << row["method"].get<std::string>() << ',';
            if (row["recall"].is_null()) {
                file << "";
            } else {
                file << row["recall"].get<double>();
            }
            file << ',' << row["timing"]["seconds"].get<double>() << '\n';
        }
    }
    write_output(doc, opt.io, out);
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Feature ranking by discriminability: scores how well each column "
                 "separates data subsets of every size, with exact and large-scale "
                 "approximate pipelines, error bounds, and reference baselines."};
    app.name("discrim");

    CliOptions opt;

    CLI::App* rank = app.add_subcommand(
        "rank", "Rank all features by exact discriminability (FSD/FSDC)");
    add_io_options(rank, opt.io, true);
    rank->add_option("--discard-correlated", opt.discard,
                     "drop this many features by pairwise correlation first");

    CLI::App* select = app.add_subcommand(
        "select", "Select a budget of features by exact discriminability");
    add_io_options(select, opt.io, true);
    select->add_option("--budget", opt.budget_spec,
                       "features to keep: a count or a percentage like 10%")
        ->required();
    select->add_option("--discard-correlated", opt.discard,
                       "drop this many features by pairwise correlation first");

    CLI::App* approx = app.add_subcommand(
        "approx-rank", "Rank features from a log-spaced support sequence (LSFSD/LSFSDC)");
    add_io_options(approx, opt.io, true);
    approx->add_option("--support-length", opt.support_length,
                       "requested number of support points (>= 2)");
    approx->add_option("--relative-length", opt.relative_length,
                       "support length as a fraction of n, e.g. 0.1");
    approx->add_flag("--verify-exact", opt.verify_exact,
                     "also compute exact scores and report the true error ratio");
    approx->add_option("--budget", opt.budget_spec, "optional selection budget");
    approx->add_option("--discard-correlated", opt.discard,
                       "drop this many features by pairwise correlation first");

    CLI::App* bound = app.add_subcommand(
        "error-bound", "Maximal error ratio of the approximate ranking");
    add_io_options(bound, opt.io, true);
    bound->add_option("--support-length", opt.support_length,
                      "requested number of support points (>= 2)");
    bound->add_option("--relative-length", opt.relative_length,
                      "support length as a fraction of n");
    bound->add_flag("--sweep", opt.sweep,
                    "sweep relative lengths 0.01..0.20 and report one row each");
    bound->add_option("--discard-correlated", opt.discard,
                      "drop this many features by pairwise correlation first");

    CLI::App* baseline = app.add_subcommand(
        "baseline", "Reference selectors: random, variance, correlation, rrfs");
    baseline->add_option("method", opt.baseline_method, "one of random|variance|correlation|rrfs")
        ->required()
        ->check(CLI::IsMember({"random", "variance", "correlation", "rrfs"}));
    add_io_options(baseline, opt.io, true);
    baseline->add_option("--budget", opt.budget_spec,
                         "features to keep: a count or a percentage like 10%")
        ->required();
    baseline->add_option("--seed", opt.seed, "seed for the random baseline (default 0)");
    baseline->add_option("--rrfs-threshold", opt.rrfs_threshold,
                         "similarity threshold in [0, 1] for rrfs");

    CLI::App* bench = app.add_subcommand(
        "bench", "Generate a planted synthetic dataset and compare every method");
    add_io_options(bench, opt.io, false);
    bench->add_option("--rows", opt.bench_rows, "data points to generate (default 2000)");
    bench->add_option("--cols", opt.bench_cols, "features to generate (default 20)");
    bench->add_option("--planted", opt.bench_planted,
                      "well-spread ground-truth columns (default ~10% of cols)");
    bench->add_option("--seed", opt.seed, "generator seed (default 0)");
    bench->add_option("--budget", opt.budget_spec,
                      "selection budget (default: the planted count)");
    bench->add_option("--discard-correlated", opt.discard,
                      "prefilter discards for the *C variants (default ~10% of cols)");
    bench->add_option("--support-length", opt.support_length,
                      "also run the approximate pipeline at this support length");
    bench->add_option("--relative-length", opt.relative_length,
                      "support length as a fraction of n");
    bench->add_flag("--verify-exact", opt.verify_exact,
                    "report true error ratios for the approximate runs");

    app.require_subcommand(1);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(rank)) {
            return cmd_rank_or_select(opt, false, out);
        }
        if (app.got_subcommand(select)) {
            return cmd_rank_or_select(opt, true, out);
        }
        if (app.got_subcommand(approx)) {
            return cmd_approx_rank(opt, out);
        }
        if (app.got_subcommand(bound)) {
            return cmd_error_bound(opt, out);
        }
        if (app.got_subcommand(baseline)) {
            return cmd_baseline(opt, out);
        }
        if (app.got_subcommand(bench)) {
            return cmd_bench(opt, out);
        }
        err << "error: no subcommand\n";
        return 2;
    } catch (const usage_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ingest_error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace discrim
