#include "discrim/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "discrim/rng.hpp"

namespace discrim {

const char* to_string(BaselineMethod method) noexcept {
    switch (method) {
        case BaselineMethod::random: return "random";
        case BaselineMethod::variance: return "variance";
        case BaselineMethod::correlation: return "correlation";
        case BaselineMethod::rrfs: return "rrfs";
    }
    return "?";
}

namespace {

void check_budget(std::size_t budget, std::size_t d) {
    if (budget < 1) {
        throw std::invalid_argument("budget must be at least 1");
    }
    if (budget > d) {
        throw std::invalid_argument("budget " + std::to_string(budget) + " exceeds the " +
                                    std::to_string(d) + " available features");
    }
}

} // namespace

BaselineResult select_random(std::size_t feature_count, std::size_t budget,
                             std::uint64_t seed) {
    check_budget(budget, feature_count);
    auto gen = rng::engine(seed);
    BaselineResult result;
    result.method = BaselineMethod::random;
    result.seed = seed;
    result.selected = rng::sample_without_replacement(gen, feature_count, budget);
    return result;
}

std::vector<std::size_t> variance_order(const DataMatrix& matrix, unsigned threads) {
    const std::vector<double> vars = column_variances(matrix, threads);
    std::vector<std::size_t> order(matrix.cols());
    for (std::size_t j = 0; j < order.size(); ++j) {
        order[j] = j;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (vars[a] != vars[b]) {
            return vars[a] > vars[b];
        }
        return a < b;
    });
    return order;
}

BaselineResult select_by_variance(const DataMatrix& matrix, std::size_t budget,
                                  unsigned threads) {
    check_budget(budget, matrix.cols());
    BaselineResult result;
    result.method = BaselineMethod::variance;
    result.selected = variance_order(matrix, threads);
    result.selected.resize(budget);
    return result;
}

BaselineResult select_by_correlation(const DataMatrix& matrix, std::size_t budget,
                                     unsigned threads) {
    check_budget(budget, matrix.cols());
    PrefilterResult pre = correlation_prefilter(matrix, matrix.cols() - budget, threads);
    BaselineResult result;
    result.method = BaselineMethod::correlation;
    result.selected = std::move(pre.kept);
    return result;
}

BaselineResult select_rrfs(const DataMatrix& matrix, std::size_t budget, double threshold,
                           unsigned threads) {
    check_budget(budget, matrix.cols());
    const std::vector<std::size_t> order = variance_order(matrix, threads);

    BaselineResult result;
    result.method = BaselineMethod::rrfs;
    result.rrfs_threshold = threshold;

    std::vector<std::size_t> skipped;
    std::size_t last_kept = order.front();
    result.selected.push_back(last_kept);  // the most relevant feature always goes in
    for (std::size_t r = 1; r < order.size() && result.selected.size() < budget; ++r) {
        const std::size_t candidate = order[r];
        if (std::fabs(pearson(matrix, candidate, last_kept)) < threshold) {
            result.selected.push_back(candidate);
            last_kept = candidate;
        } else {
            skipped.push_back(candidate);
        }
    }
    if (result.selected.size() < budget) {
        result.rrfs_backfilled = true;
        for (std::size_t f : skipped) {
            if (result.selected.size() == budget) {
                break;
            }
            result.selected.push_back(f);
        }
    }
    return result;
}

} // namespace discrim
