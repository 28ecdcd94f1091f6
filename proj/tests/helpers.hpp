#pragma once

#include <random>
#include <vector>

#include "discrim/matrix.hpp"
#include "discrim/rng.hpp"

namespace testutil {

/// Random column of integer-valued doubles in [-span, span]; duplicates are
/// likely, which is what the exactness-sensitive checks want.
inline std::vector<double> integer_column(std::mt19937_64& gen, std::size_t n, int span = 20) {
    std::vector<double> col(n);
    for (auto& v : col) {
        v = static_cast<double>(static_cast<long long>(
                discrim::rng::below(gen, 2 * static_cast<std::size_t>(span) + 1)) -
            span);
    }
    return col;
}

inline std::vector<double> real_column(std::mt19937_64& gen, std::size_t n, double lo = -10.0,
                                       double hi = 10.0) {
    std::vector<double> col(n);
    for (auto& v : col) {
        v = discrim::rng::uniform(gen, lo, hi);
    }
    return col;
}

inline discrim::DataMatrix integer_matrix(std::mt19937_64& gen, std::size_t n, std::size_t d,
                                          int span = 20) {
    std::vector<std::vector<double>> cols(d);
    for (auto& col : cols) {
        col = integer_column(gen, n, span);
    }
    return discrim::DataMatrix(std::move(cols));
}

inline discrim::DataMatrix real_matrix(std::mt19937_64& gen, std::size_t n, std::size_t d) {
    std::vector<std::vector<double>> cols(d);
    for (auto& col : cols) {
        col = real_column(gen, n);
    }
    return discrim::DataMatrix(std::move(cols));
}

/// Random strictly increasing sequence from 2 to n: endpoints plus a random
/// subset of the interior sizes.
inline std::vector<std::size_t> random_support_points(std::mt19937_64& gen, std::size_t n,
                                                      double keep_probability = 0.3) {
    std::vector<std::size_t> pts;
    pts.push_back(2);
    for (std::size_t k = 3; k < n; ++k) {
        if (discrim::rng::uniform01(gen) < keep_probability) {
            pts.push_back(k);
        }
    }
    if (n > 2) {
        pts.push_back(n);
    }
    return pts;
}

} // namespace testutil
