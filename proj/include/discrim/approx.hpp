#pragma once

#include <optional>
#include <vector>

#include "discrim/core.hpp"

namespace discrim {

/// Strictly increasing evaluation points 2 = s_1 < ... < s_l = n. The partial
/// diameter is computed only at these; monotonicity of k -> phi_k brackets
/// every size in between.
class SupportSequence {
public:
    SupportSequence(std::vector<std::size_t> points, std::size_t n);

    /// Every size 2..n; approximation collapses to the exact scores.
    static SupportSequence full(std::size_t n);

    const std::vector<std::size_t>& points() const noexcept { return points_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t length() const noexcept { return points_.size(); }

private:
    std::vector<std::size_t> points_;
    std::size_t n_ = 0;
};

/// Log-spaced support sequence: a geometric grid from n down to 2 is
/// reflected through k -> floor(n + 2 - k) and deduplicated, clustering the
/// evaluation points near k = n. The result may be shorter than requested
/// because duplicates are discarded.
SupportSequence make_log_support_sequence(std::size_t n, std::size_t length);

/// Bracketing scores for one feature under a support sequence. The interval
/// [delta_lower, delta_upper] contains the exact normalized discriminability;
/// the id interval is the reciprocal-square image with endpoints swapped.
struct BoundedScore {
    std::size_t feature_index = 0;
    double delta_lower = 0.0;
    double delta_upper = 0.0;
    double id_lower = std::numeric_limits<double>::infinity();   // 1/delta_upper^2
    double id_upper = std::numeric_limits<double>::infinity();   // 1/delta_lower^2
    double id_approx = std::numeric_limits<double>::infinity();  // midpoint
};

BoundedScore bounded_score(const SortedFeature& sf, const SupportSequence& support);

struct ErrorReport {
    double max_error_ratio = 0.0;
    std::optional<double> true_error_ratio;
};

/// Fraction of feature pairs whose approximate ranking order contradicts the
/// exact intrinsic-dimension order. approx_order lists feature indices by
/// ascending approximated id; exact must score every listed feature.
double true_error_ratio(const std::vector<FeatureScore>& exact,
                        const std::vector<std::size_t>& approx_order);

/// Computable upper bound on the true error ratio: the fraction of ranked
/// pairs whose id intervals overlap adversely (the earlier feature's upper
/// endpoint strictly exceeds the later one's lower endpoint). Orders the
/// given scores by ascending id_approx internally, ties by feature index.
double max_error_ratio(const std::vector<BoundedScore>& bounds);

} // namespace discrim
