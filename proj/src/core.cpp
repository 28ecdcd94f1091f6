#include "discrim/core.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "discrim/parallel.hpp"

namespace discrim {

namespace detail {
double min_window_range(const double* values, std::size_t n, std::size_t k);
}

SortedFeature sort_feature(const DataMatrix& matrix, std::size_t feature) {
    const auto col = matrix.column(feature);  // throws on bad index
    SortedFeature sf;
    sf.feature_index = feature;
    sf.values.assign(col.begin(), col.end());
    std::sort(sf.values.begin(), sf.values.end());
    return sf;
}

static void check_k(std::size_t k, std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("need at least 2 data points");
    }
    if (k < 2 || k > n) {
        throw std::invalid_argument("subset size k=" + std::to_string(k) +
                                    " must satisfy 2 <= k <= n=" + std::to_string(n));
    }
}

double phi_sorted(std::span<const double> ascending, std::size_t k) {
    check_k(k, ascending.size());
    return detail::min_window_range(ascending.data(), ascending.size(), k);
}

double phi(const SortedFeature& sf, std::size_t k) {
    return phi_sorted(sf.values, k);
}

double phi_oracle(std::span<const double> column, std::size_t k) {
    const std::size_t n = column.size();
    check_k(k, n);
    if (n > 20) {
        throw std::invalid_argument("phi_oracle is limited to n <= 20, got n=" +
                                    std::to_string(n));
    }
    // Walk every k-combination of indices; score is max - min of the chosen
    // values, scanned directly (no reliance on the sorted-window reduction).
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    double best = std::numeric_limits<double>::max();
    while (true) {
        double lo = column[pick[0]];
        double hi = lo;
        for (std::size_t idx = 1; idx < k; ++idx) {
            const double v = column[pick[idx]];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        best = std::min(best, hi - lo);

        // next combination
        std::size_t pos = k;
        while (pos > 0 && pick[pos - 1] == n - k + (pos - 1)) {
            --pos;
        }
        if (pos == 0) {
            break;
        }
        ++pick[pos - 1];
        for (std::size_t idx = pos; idx < k; ++idx) {
            pick[idx] = pick[idx - 1] + 1;
        }
    }
    return best;
}

FeatureScore feature_discriminability(const SortedFeature& sf) {
    const std::size_t n = sf.values.size();
    if (n < 2) {
        throw std::invalid_argument("need at least 2 data points");
    }
    long double sum_raw = 0.0L;
    long double sum_weighted = 0.0L;
    for (std::size_t k = 2; k <= n; ++k) {
        const double p = detail::min_window_range(sf.values.data(), n, k);
        sum_raw += static_cast<long double>(p);
        sum_weighted += static_cast<long double>(p) / static_cast<long double>(k);
    }
    FeatureScore score;
    score.feature_index = sf.feature_index;
    score.delta_star = static_cast<double>(sum_raw / static_cast<long double>(n));
    score.delta = static_cast<double>(sum_weighted / static_cast<long double>(n));
    score.partial_dim = score.delta > 0.0
                            ? 1.0 / (score.delta * score.delta)
                            : std::numeric_limits<double>::infinity();
    return score;
}

double dataset_discriminability(const DataMatrix& matrix, unsigned threads) {
    const std::size_t n = matrix.rows();
    const std::size_t d = matrix.cols();
    std::vector<std::vector<double>> per_feature(d);
    parallel_for(d, threads, [&](std::size_t j) {
        const SortedFeature sf = sort_feature(matrix, j);
        auto& phis = per_feature[j];
        phis.resize(n - 1);
        for (std::size_t k = 2; k <= n; ++k) {
            phis[k - 2] = detail::min_window_range(sf.values.data(), n, k);
        }
    });
    long double sum = 0.0L;
    for (std::size_t k = 2; k <= n; ++k) {
        double best = per_feature[0][k - 2];
        for (std::size_t j = 1; j < d; ++j) {
            best = std::max(best, per_feature[j][k - 2]);
        }
        sum += static_cast<long double>(best);
    }
    return static_cast<double>(sum / static_cast<long double>(n));
}

} // namespace discrim
