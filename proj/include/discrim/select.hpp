#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "discrim/approx.hpp"

namespace discrim {

struct SelectionConfig {
    std::size_t budget = 1;
    std::optional<std::size_t> correlation_discard;  // n_c; prefilter runs when set
    std::optional<std::size_t> support_length;       // approximate scoring when set
    std::optional<std::uint64_t> seed;               // consumed by the random baseline only
};

/// Variance with the 1/n convention; comparisons between columns are what
/// matters here, and they are unaffected by the normalization choice.
double column_variance(std::span<const double> column);

std::vector<double> column_variances(const DataMatrix& matrix, unsigned threads = 0);

/// Sample Pearson correlation of two columns. Either column constant => 0,
/// so the prefilter never treats a constant column as redundant.
double pearson(const DataMatrix& matrix, std::size_t i, std::size_t j);

struct PrefilterResult {
    std::vector<std::size_t> kept;       // original column order
    std::vector<std::size_t> discarded;  // discard order
    std::optional<double> last_discard_correlation;
};

/// Iteratively removes one member of the remaining pair with the largest
/// absolute correlation: the lower-variance member, ties dropping the larger
/// index. The correlation matrix is computed once; removals mask it.
PrefilterResult correlation_prefilter(const DataMatrix& matrix, std::size_t discard_count,
                                      unsigned threads = 0);

struct Ranking {
    std::vector<std::size_t> ordered_features;  // ascending intrinsic dimension
    std::variant<std::vector<FeatureScore>, std::vector<BoundedScore>> scores;  // aligned
    std::vector<std::size_t> discarded_by_correlation;
    std::optional<double> last_discard_correlation;

    bool approximate() const noexcept {
        return std::holds_alternative<std::vector<BoundedScore>>(scores);
    }
    const std::vector<FeatureScore>& exact_scores() const {
        return std::get<std::vector<FeatureScore>>(scores);
    }
    const std::vector<BoundedScore>& bounded_scores() const {
        return std::get<std::vector<BoundedScore>>(scores);
    }
};

/// Exact pipeline: scores every surviving feature and ranks by ascending
/// intrinsic dimension (ties by index). With correlation_discard set the
/// prefilter runs first and the ranking covers survivors only.
Ranking fsd(const DataMatrix& matrix, const SelectionConfig& config, unsigned threads = 0);

struct LsfsdResult {
    Ranking ranking;
    ErrorReport report;
};

/// Approximate pipeline on a log-spaced support sequence of the configured
/// length. verify_exact additionally computes exact scores for the true error
/// ratio; exact scores are never computed implicitly.
LsfsdResult lsfsd(const DataMatrix& matrix, const SelectionConfig& config,
                  bool verify_exact = false, unsigned threads = 0);

/// Same pipeline with a caller-supplied support sequence.
LsfsdResult lsfsd(const DataMatrix& matrix, const SelectionConfig& config,
                  const SupportSequence& support, bool verify_exact = false,
                  unsigned threads = 0);

} // namespace discrim
