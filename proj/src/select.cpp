#include "discrim/select.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "discrim/parallel.hpp"

namespace discrim {

namespace {

long double column_mean(std::span<const double> column) {
    long double sum = 0.0L;
    for (double v : column) {
        sum += v;
    }
    return sum / static_cast<long double>(column.size());
}

// Centered second moments; covariance and both variances in one pass.
struct Moments {
    long double xx = 0.0L;
    long double yy = 0.0L;
    long double xy = 0.0L;
};

Moments centered_moments(std::span<const double> x, std::span<const double> y) {
    const long double mx = column_mean(x);
    const long double my = column_mean(y);
    Moments m;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const long double dx = static_cast<long double>(x[i]) - mx;
        const long double dy = static_cast<long double>(y[i]) - my;
        m.xx += dx * dx;
        m.yy += dy * dy;
        m.xy += dx * dy;
    }
    return m;
}

} // namespace

double column_variance(std::span<const double> column) {
    const long double mean = column_mean(column);
    long double sum = 0.0L;
    for (double v : column) {
        const long double c = static_cast<long double>(v) - mean;
        sum += c * c;
    }
    return static_cast<double>(sum / static_cast<long double>(column.size()));
}

std::vector<double> column_variances(const DataMatrix& matrix, unsigned threads) {
    std::vector<double> vars(matrix.cols());
    parallel_for(matrix.cols(), threads, [&](std::size_t j) {
        vars[j] = column_variance(matrix.column(j));
    });
    return vars;
}

double pearson(const DataMatrix& matrix, std::size_t i, std::size_t j) {
    const Moments m = centered_moments(matrix.column(i), matrix.column(j));
    if (m.xx == 0.0L || m.yy == 0.0L) {
        return 0.0;
    }
    const long double r = m.xy / std::sqrt(m.xx * m.yy);
    return static_cast<double>(std::clamp(r, -1.0L, 1.0L));
}

PrefilterResult correlation_prefilter(const DataMatrix& matrix, std::size_t discard_count,
                                      unsigned threads) {
    const std::size_t d = matrix.cols();
    if (discard_count >= d) {
        throw std::invalid_argument("cannot discard " + std::to_string(discard_count) +
                                    " of " + std::to_string(d) + " features");
    }

    PrefilterResult result;
    if (discard_count == 0) {
        result.kept.resize(d);
        for (std::size_t j = 0; j < d; ++j) {
            result.kept[j] = j;
        }
        return result;
    }

    const std::vector<double> vars = column_variances(matrix, threads);

    // |correlation| for every pair, computed once up front; discards only
    // mask rows and columns, the values never change.
    std::vector<double> corr(d * d, 0.0);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(d * (d - 1) / 2);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = a + 1; b < d; ++b) {
            pairs.emplace_back(a, b);
        }
    }
    parallel_for(pairs.size(), threads, [&](std::size_t p) {
        const auto [a, b] = pairs[p];
        const double r = std::fabs(pearson(matrix, a, b));
        corr[a * d + b] = r;
        corr[b * d + a] = r;
    });

    std::vector<bool> alive(d, true);
    for (std::size_t round = 0; round < discard_count; ++round) {
        double best = -1.0;
        std::size_t bi = 0;
        std::size_t bj = 0;
        for (std::size_t a = 0; a < d; ++a) {
            if (!alive[a]) {
                continue;
            }
            for (std::size_t b = a + 1; b < d; ++b) {
                if (!alive[b]) {
                    continue;
                }
                if (corr[a * d + b] > best) {  // ties keep the first pair in (a,b) order
                    best = corr[a * d + b];
                    bi = a;
                    bj = b;
                }
            }
        }
        std::size_t victim;
        if (vars[bi] < vars[bj]) {
            victim = bi;
        } else if (vars[bj] < vars[bi]) {
            victim = bj;
        } else {
            victim = std::max(bi, bj);
        }
        alive[victim] = false;
        result.discarded.push_back(victim);
        result.last_discard_correlation = best;
    }
    for (std::size_t j = 0; j < d; ++j) {
        if (alive[j]) {
            result.kept.push_back(j);
        }
    }
    return result;
}

namespace {

void check_budget(std::size_t budget, std::size_t survivors) {
    if (budget < 1) {
        throw std::invalid_argument("budget must be at least 1");
    }
    if (budget > survivors) {
        throw std::invalid_argument("budget " + std::to_string(budget) + " exceeds the " +
                                    std::to_string(survivors) + " surviving features");
    }
}

PrefilterResult run_prefilter(const DataMatrix& matrix, const SelectionConfig& config,
                              unsigned threads) {
    if (config.correlation_discard) {
        return correlation_prefilter(matrix, *config.correlation_discard, threads);
    }
    PrefilterResult all;
    all.kept.resize(matrix.cols());
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
        all.kept[j] = j;
    }
    return all;
}

template <typename Score, typename Key>
void order_by(std::vector<std::size_t>& features, std::vector<Score>& scores, Key key) {
    std::vector<std::size_t> perm(scores.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        perm[i] = i;
    }
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        const double ka = key(scores[a]);
        const double kb = key(scores[b]);
        if (ka != kb) {
            return ka < kb;
        }
        return scores[a].feature_index < scores[b].feature_index;
    });
    std::vector<std::size_t> ordered_features(perm.size());
    std::vector<Score> ordered_scores(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        ordered_features[i] = scores[perm[i]].feature_index;
        ordered_scores[i] = std::move(scores[perm[i]]);
    }
    features = std::move(ordered_features);
    scores = std::move(ordered_scores);
}

} // namespace

Ranking fsd(const DataMatrix& matrix, const SelectionConfig& config, unsigned threads) {
    if (config.support_length) {
        throw std::invalid_argument("fsd scores exactly; use lsfsd for support sequences");
    }
    PrefilterResult pre = run_prefilter(matrix, config, threads);
    check_budget(config.budget, pre.kept.size());

    std::vector<FeatureScore> scores(pre.kept.size());
    parallel_for(pre.kept.size(), threads, [&](std::size_t i) {
        scores[i] = feature_discriminability(sort_feature(matrix, pre.kept[i]));
    });

    Ranking ranking;
    ranking.discarded_by_correlation = std::move(pre.discarded);
    ranking.last_discard_correlation = pre.last_discard_correlation;
    order_by(ranking.ordered_features, scores,
             [](const FeatureScore& s) { return s.partial_dim; });
    ranking.scores = std::move(scores);
    return ranking;
}

LsfsdResult lsfsd(const DataMatrix& matrix, const SelectionConfig& config,
                  const SupportSequence& support, bool verify_exact, unsigned threads) {
    if (support.n() != matrix.rows()) {
        throw std::invalid_argument("support sequence built for n=" +
                                    std::to_string(support.n()) + " but matrix has n=" +
                                    std::to_string(matrix.rows()));
    }
    PrefilterResult pre = run_prefilter(matrix, config, threads);
    check_budget(config.budget, pre.kept.size());

    std::vector<BoundedScore> scores(pre.kept.size());
    parallel_for(pre.kept.size(), threads, [&](std::size_t i) {
        scores[i] = bounded_score(sort_feature(matrix, pre.kept[i]), support);
    });

    LsfsdResult result;
    result.ranking.discarded_by_correlation = std::move(pre.discarded);
    result.ranking.last_discard_correlation = pre.last_discard_correlation;
    result.report.max_error_ratio = scores.size() >= 2 ? max_error_ratio(scores) : 0.0;
    order_by(result.ranking.ordered_features, scores,
             [](const BoundedScore& s) { return s.id_approx; });

    if (verify_exact) {
        std::vector<FeatureScore> exact(result.ranking.ordered_features.size());
        parallel_for(exact.size(), threads, [&](std::size_t i) {
            exact[i] = feature_discriminability(
                sort_feature(matrix, result.ranking.ordered_features[i]));
        });
        result.report.true_error_ratio =
            exact.size() >= 2 ? true_error_ratio(exact, result.ranking.ordered_features) : 0.0;
    }

    result.ranking.scores = std::move(scores);
    return result;
}

LsfsdResult lsfsd(const DataMatrix& matrix, const SelectionConfig& config,
                  bool verify_exact, unsigned threads) {
    if (!config.support_length) {
        throw std::invalid_argument("lsfsd needs a support length; use fsd for exact scoring");
    }
    if (*config.support_length < 2) {
        throw std::invalid_argument("support length must be >= 2");
    }
    const SupportSequence support =
        make_log_support_sequence(matrix.rows(), *config.support_length);
    return lsfsd(matrix, config, support, verify_exact, threads);
}

} // namespace discrim
