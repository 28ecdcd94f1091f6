#include <cstddef>
#include <limits>

// Hot loop of every scoring path, kept in its own translation unit so it can
// be compiled with aggressive math flags. Inputs are finite and ascending
// (DataMatrix rejects non-finite values); subtraction and min are exact on
// finite doubles, so vectorized reassociation cannot change the result.

namespace discrim::detail {

double min_window_range(const double* values, std::size_t n, std::size_t k) {
    const std::size_t windows = n - k + 1;
    const double* upper = values + (k - 1);
    double m0 = std::numeric_limits<double>::max();
    double m1 = m0, m2 = m0, m3 = m0;
    std::size_t i = 0;
    for (; i + 4 <= windows; i += 4) {
        const double d0 = upper[i] - values[i];
        const double d1 = upper[i + 1] - values[i + 1];
        const double d2 = upper[i + 2] - values[i + 2];
        const double d3 = upper[i + 3] - values[i + 3];
        m0 = d0 < m0 ? d0 : m0;
        m1 = d1 < m1 ? d1 : m1;
        m2 = d2 < m2 ? d2 : m2;
        m3 = d3 < m3 ? d3 : m3;
    }
    for (; i < windows; ++i) {
        const double d = upper[i] - values[i];
        m0 = d < m0 ? d : m0;
    }
    const double a = m0 < m1 ? m0 : m1;
    const double b = m2 < m3 ? m2 : m3;
    return a < b ? a : b;
}

} // namespace discrim::detail
