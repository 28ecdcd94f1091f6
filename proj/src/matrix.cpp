#include "discrim/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace discrim {

DataMatrix::DataMatrix(std::vector<std::vector<double>> columns,
                       std::vector<std::string> names)
    : columns_(std::move(columns)), names_(std::move(names)) {
    if (columns_.empty()) {
        throw std::invalid_argument("matrix needs at least one feature column");
    }
    rows_ = columns_.front().size();
    if (rows_ < 2) {
        throw std::invalid_argument("need at least 2 data points");
    }
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        if (columns_[j].size() != rows_) {
            throw std::invalid_argument("column " + std::to_string(j) +
                                        " has " + std::to_string(columns_[j].size()) +
                                        " values, expected " + std::to_string(rows_));
        }
        for (std::size_t i = 0; i < rows_; ++i) {
            if (!std::isfinite(columns_[j][i])) {
                throw std::invalid_argument("non-finite value at row " + std::to_string(i) +
                                            ", column " + std::to_string(j));
            }
        }
    }
    if (names_.empty()) {
        names_.reserve(columns_.size());
        for (std::size_t j = 0; j < columns_.size(); ++j) {
            names_.push_back("c" + std::to_string(j));
        }
    } else if (names_.size() != columns_.size()) {
        throw std::invalid_argument("have " + std::to_string(names_.size()) +
                                    " column names for " + std::to_string(columns_.size()) +
                                    " columns");
    }
}

DataMatrix DataMatrix::from_rows(const std::vector<std::vector<double>>& row_data,
                                 std::vector<std::string> names) {
    if (row_data.empty()) {
        throw std::invalid_argument("need at least 2 data points");
    }
    const std::size_t d = row_data.front().size();
    std::vector<std::vector<double>> cols(d, std::vector<double>(row_data.size()));
    for (std::size_t i = 0; i < row_data.size(); ++i) {
        if (row_data[i].size() != d) {
            throw std::invalid_argument("row " + std::to_string(i) + " has " +
                                        std::to_string(row_data[i].size()) +
                                        " values, expected " + std::to_string(d));
        }
        for (std::size_t j = 0; j < d; ++j) {
            cols[j][i] = row_data[i][j];
        }
    }
    return DataMatrix(std::move(cols), std::move(names));
}

std::span<const double> DataMatrix::column(std::size_t j) const {
    if (j >= columns_.size()) {
        throw std::out_of_range("feature index " + std::to_string(j) +
                                " out of range (d=" + std::to_string(columns_.size()) + ")");
    }
    return columns_[j];
}

const std::string& DataMatrix::name(std::size_t j) const {
    if (j >= names_.size()) {
        throw std::out_of_range("feature index " + std::to_string(j) +
                                " out of range (d=" + std::to_string(names_.size()) + ")");
    }
    return names_[j];
}

} // namespace discrim
