#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "discrim/approx.hpp"
#include "discrim/matrix.hpp"

namespace discrim {

/// Anything wrong with an input file: unreadable, unparsable cell, missing or
/// non-finite value, too few rows or columns. Messages carry the file, row
/// and column of the offending cell.
class ingest_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct IngestSpec {
    std::string path;
    bool has_header = true;
    char delimiter = ',';
    /// Header names or 0-based column indices; empty keeps every column.
    std::vector<std::string> column_filter;
};

DataMatrix ingest_csv(const IngestSpec& spec);

/// Stream variant; `origin` labels error messages.
DataMatrix read_csv(std::istream& in, const IngestSpec& spec,
                    const std::string& origin = "<stream>");

/// Writes header plus rows with shortest round-trip formatting, so
/// ingesting the output reproduces the matrix bit for bit.
void write_csv(const DataMatrix& matrix, std::ostream& out, char delimiter = ',');

struct SyntheticData {
    DataMatrix matrix;
    std::vector<std::size_t> planted;  // ascending ground-truth indices
};

/// Test-bed generator: `planted` well-spread columns (uniform on an interval,
/// progressively wider) hidden among concentrated columns, each a tight
/// cluster plus a few far outliers at a per-column scale. The spread columns
/// discriminate subsets of every size; the concentrated ones rely on their
/// outliers and score poorly despite often having the larger variance.
SyntheticData generate_synthetic(std::size_t n, std::size_t d, std::size_t planted,
                                 std::uint64_t seed);

struct RankedFeatureEntry {
    std::size_t feature = 0;
    std::string name;
    std::optional<double> delta_star;
    std::optional<double> delta;
    std::optional<double> partial_dim;
    std::optional<double> delta_lower;
    std::optional<double> delta_upper;
    std::optional<double> id_lower;
    std::optional<double> id_upper;
    std::optional<double> id_approx;
    std::optional<double> variance;
};

struct ResultParams {
    std::optional<std::size_t> budget;
    std::optional<std::size_t> discard_correlated;
    std::optional<std::size_t> support_length;
    std::optional<double> relative_length;
    std::optional<std::uint64_t> seed;
    std::optional<double> rrfs_threshold;
    std::optional<bool> rrfs_backfilled;
};

/// Self-describing output of one selector run. Serialization is lossless:
/// infinite scores map to JSON null and back.
struct ResultDocument {
    std::string method;
    ResultParams params;
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<RankedFeatureEntry> ranking;
    std::vector<std::size_t> selected;
    std::vector<std::size_t> discarded_by_correlation;
    std::optional<double> last_discard_correlation;
    std::optional<ErrorReport> error_report;
    std::map<std::string, double> timing;  // excluded from determinism comparisons
};

nlohmann::ordered_json to_json(const ResultDocument& doc);
ResultDocument result_document_from_json(const nlohmann::ordered_json& j);

/// Flat (feature, score) table for spreadsheets; one row per ranking entry.
void write_scores_csv(const ResultDocument& doc, std::ostream& out);

} // namespace discrim
