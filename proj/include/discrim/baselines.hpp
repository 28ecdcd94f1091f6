#pragma once

#include "discrim/select.hpp"

namespace discrim {

enum class BaselineMethod { random, variance, correlation, rrfs };

const char* to_string(BaselineMethod method) noexcept;

struct BaselineResult {
    BaselineMethod method = BaselineMethod::random;
    std::vector<std::size_t> selected;  // exactly the requested budget, no duplicates
    std::optional<double> rrfs_threshold;
    bool rrfs_backfilled = false;
    std::optional<std::uint64_t> seed;
};

/// Uniform sample without replacement, reproducible from the seed.
BaselineResult select_random(std::size_t feature_count, std::size_t budget,
                             std::uint64_t seed);

/// Feature indices by descending variance, ties ascending index.
std::vector<std::size_t> variance_order(const DataMatrix& matrix, unsigned threads = 0);

BaselineResult select_by_variance(const DataMatrix& matrix, std::size_t budget,
                                  unsigned threads = 0);

/// Correlation-only selection: the prefilter discards pairs until exactly
/// `budget` features remain.
BaselineResult select_by_correlation(const DataMatrix& matrix, std::size_t budget,
                                     unsigned threads = 0);

/// Greedy relevance/redundancy pick: features in descending-variance order,
/// keeping a candidate only while its absolute correlation with the last kept
/// feature stays below the threshold. If the threshold exhausts the
/// candidates before the budget is met, the highest-variance skipped
/// features fill the remaining slots and the result is flagged.
BaselineResult select_rrfs(const DataMatrix& matrix, std::size_t budget, double threshold,
                           unsigned threads = 0);

} // namespace discrim
