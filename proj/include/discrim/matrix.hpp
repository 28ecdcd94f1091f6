#pragma once

#include <span>
#include <string>
#include <vector>

namespace discrim {

/// Column-major table of finite real feature values. Rows are data points,
/// columns are features. Construction rejects non-finite entries and fewer
/// than two rows (all scores are defined from subset size 2 upward).
class DataMatrix {
public:
    DataMatrix(std::vector<std::vector<double>> columns,
               std::vector<std::string> names = {});

    /// Convenience for row-wise literals in tests and small tools.
    static DataMatrix from_rows(const std::vector<std::vector<double>>& row_data,
                                std::vector<std::string> names = {});

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return columns_.size(); }

    std::span<const double> column(std::size_t j) const;
    const std::string& name(std::size_t j) const;
    const std::vector<std::string>& names() const noexcept { return names_; }

private:
    std::vector<std::vector<double>> columns_;
    std::vector<std::string> names_;
    std::size_t rows_ = 0;
};

} // namespace discrim
