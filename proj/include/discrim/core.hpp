#pragma once

#include <limits>
#include <span>
#include <vector>

#include "discrim/matrix.hpp"

namespace discrim {

/// One feature column in ascending order; the substrate for all partial
/// diameter scans.
struct SortedFeature {
    std::size_t feature_index = 0;
    std::vector<double> values;  // ascending
};

/// Exact per-feature scores. delta_star averages the partial diameters over
/// all subset sizes, delta adds 1/k weights to damp single outliers, and
/// partial_dim = 1/delta^2 is the per-feature intrinsic-dimension score
/// (+infinity for constant features, which discriminate nothing).
struct FeatureScore {
    std::size_t feature_index = 0;
    double delta_star = 0.0;
    double delta = 0.0;
    double partial_dim = std::numeric_limits<double>::infinity();
};

SortedFeature sort_feature(const DataMatrix& matrix, std::size_t feature);

/// Partial diameter of an ascending column: the smallest spread (max - min)
/// any k-element subset can have. On sorted values the optimum is always a
/// contiguous window -- swapping any chosen value for an order-adjacent one
/// inside the subset's extremes never widens the range -- so only the
/// n - k + 1 windows are scanned.
double phi_sorted(std::span<const double> ascending, std::size_t k);

double phi(const SortedFeature& sf, std::size_t k);

/// Literal evaluation of the same minimum by enumerating every k-subset.
/// Exponential; guarded to n <= 20. Independent cross-check for phi.
double phi_oracle(std::span<const double> column, std::size_t k);

FeatureScore feature_discriminability(const SortedFeature& sf);

/// Dataset-level discriminability: the mean over subset sizes of the best
/// per-feature partial diameter. The max over features sits inside the sum;
/// this is not the max of per-feature delta_star values.
double dataset_discriminability(const DataMatrix& matrix, unsigned threads = 0);

} // namespace discrim
