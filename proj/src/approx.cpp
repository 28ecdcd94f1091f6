#include "discrim/approx.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace discrim {

namespace detail {
double min_window_range(const double* values, std::size_t n, std::size_t k);
}

SupportSequence::SupportSequence(std::vector<std::size_t> points, std::size_t n)
    : points_(std::move(points)), n_(n) {
    if (n_ < 2) {
        throw std::invalid_argument("support sequence needs n >= 2");
    }
    if (points_.empty() || points_.front() != 2 || points_.back() != n_) {
        throw std::invalid_argument("support sequence must start at 2 and end at n");
    }
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (points_[i] <= points_[i - 1]) {
            throw std::invalid_argument("support sequence must be strictly increasing");
        }
    }
}

SupportSequence SupportSequence::full(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("support sequence needs n >= 2");
    }
    std::vector<std::size_t> pts(n - 1);
    for (std::size_t k = 2; k <= n; ++k) {
        pts[k - 2] = k;
    }
    return SupportSequence(std::move(pts), n);
}

SupportSequence make_log_support_sequence(std::size_t n, std::size_t length) {
    if (n < 2) {
        throw std::invalid_argument("support sequence needs n >= 2");
    }
    if (length < 2) {
        throw std::invalid_argument("requested support length must be >= 2");
    }
    if (n == 2) {
        return SupportSequence({2}, 2);
    }
    const double nd = static_cast<double>(n);
    const double ratio = std::pow(2.0 / nd, 1.0 / static_cast<double>(length - 1));
    std::vector<std::size_t> pts;
    pts.reserve(length);
    double prev_geo = nd;
    for (std::size_t i = 0; i < length; ++i) {
        double geo = i == 0            ? nd
                     : i + 1 == length ? 2.0
                                       : nd * std::pow(ratio, static_cast<double>(i));
        geo = std::min(geo, prev_geo);  // pow rounding must not break monotonicity
        geo = std::clamp(geo, 2.0, nd);
        prev_geo = geo;
        const double mapped = std::floor(nd + 2.0 - geo);
        auto point = static_cast<std::size_t>(std::clamp(mapped, 2.0, nd));
        if (pts.empty() || point > pts.back()) {
            pts.push_back(point);
        }
    }
    return SupportSequence(std::move(pts), n);
}

BoundedScore bounded_score(const SortedFeature& sf, const SupportSequence& support) {
    const std::size_t n = sf.values.size();
    if (support.n() != n) {
        throw std::invalid_argument("support sequence built for n=" +
                                    std::to_string(support.n()) +
                                    " but feature has n=" + std::to_string(n));
    }
    const auto& pts = support.points();
    std::vector<double> phis(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        phis[i] = detail::min_window_range(sf.values.data(), n, pts[i]);
    }

    // Support-point terms first, then the bracketed interior terms; with the
    // full sequence the interior is empty and the accumulation order matches
    // feature_discriminability exactly.
    long double at_support = 0.0L;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        at_support += static_cast<long double>(phis[i]) / static_cast<long double>(pts[i]);
    }
    long double interior_upper = 0.0L;
    long double interior_lower = 0.0L;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        long double harmonic = 0.0L;
        for (std::size_t j = pts[i] + 1; j < pts[i + 1]; ++j) {
            harmonic += 1.0L / static_cast<long double>(j);
        }
        interior_upper += harmonic * static_cast<long double>(phis[i + 1]);
        interior_lower += harmonic * static_cast<long double>(phis[i]);
    }

    const auto nd = static_cast<long double>(n);
    BoundedScore score;
    score.feature_index = sf.feature_index;
    score.delta_upper = static_cast<double>((at_support + interior_upper) / nd);
    score.delta_lower = static_cast<double>((at_support + interior_lower) / nd);
    const double inf = std::numeric_limits<double>::infinity();
    score.id_lower = score.delta_upper > 0.0 ? 1.0 / (score.delta_upper * score.delta_upper) : inf;
    score.id_upper = score.delta_lower > 0.0 ? 1.0 / (score.delta_lower * score.delta_lower) : inf;
    score.id_approx = (score.id_lower + score.id_upper) / 2.0;
    return score;
}

double true_error_ratio(const std::vector<FeatureScore>& exact,
                        const std::vector<std::size_t>& approx_order) {
    const std::size_t d = approx_order.size();
    if (exact.size() != d) {
        throw std::invalid_argument("have " + std::to_string(exact.size()) +
                                    " exact scores for " + std::to_string(d) +
                                    " ranked features");
    }
    if (d < 2) {
        throw std::invalid_argument("error ratios need at least 2 features");
    }
    std::size_t max_index = 0;
    for (std::size_t f : approx_order) {
        max_index = std::max(max_index, f);
    }
    const double unset = -1.0;
    std::vector<double> id_of(max_index + 1, unset);
    for (const auto& score : exact) {
        if (score.feature_index <= max_index) {
            id_of[score.feature_index] = score.partial_dim;
        }
    }
    std::vector<double> ranked(d);
    for (std::size_t r = 0; r < d; ++r) {
        const double id = id_of[approx_order[r]];
        if (id == unset) {
            throw std::invalid_argument("no exact score for feature " +
                                        std::to_string(approx_order[r]));
        }
        ranked[r] = id;
    }
    std::size_t inversions = 0;
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = a + 1; b < d; ++b) {
            if (ranked[a] > ranked[b]) {
                ++inversions;
            }
        }
    }
    return 2.0 * static_cast<double>(inversions) /
           (static_cast<double>(d) * static_cast<double>(d - 1));
}

double max_error_ratio(const std::vector<BoundedScore>& bounds) {
    const std::size_t d = bounds.size();
    if (d < 2) {
        throw std::invalid_argument("error ratios need at least 2 features");
    }
    std::vector<const BoundedScore*> ranked(d);
    for (std::size_t i = 0; i < d; ++i) {
        ranked[i] = &bounds[i];
    }
    std::sort(ranked.begin(), ranked.end(), [](const BoundedScore* a, const BoundedScore* b) {
        if (a->id_approx != b->id_approx) {
            return a->id_approx < b->id_approx;
        }
        return a->feature_index < b->feature_index;
    });
    std::size_t potential = 0;
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = a + 1; b < d; ++b) {
            if (ranked[a]->id_upper > ranked[b]->id_lower) {
                ++potential;
            }
        }
    }
    return 2.0 * static_cast<double>(potential) /
           (static_cast<double>(d) * static_cast<double>(d - 1));
}

} // namespace discrim
