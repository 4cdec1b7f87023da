#pragma once

#include <cstddef>
#include <vector>

namespace aifnav {

// Concentration parameters of a column-conditional model P(row | col).
// Stored column-major so each conditional distribution is contiguous.
// The stored extent may exceed the active extent (spare slots); callers pass
// the active row count when normalising.
class DirichletCounts {
public:
    DirichletCounts() = default;
    DirichletCounts(std::size_t rows, std::size_t cols, double floor, double fill);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double floor() const { return floor_; }

    double at(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }
    const double* column(std::size_t c) const { return data_.data() + c * rows_; }

    // Writes are clamped at the floor.
    void set(std::size_t r, std::size_t c, double value);
    void add(std::size_t r, std::size_t c, double delta);
    void fill_row(std::size_t r, double value);
    void fill_col(std::size_t c, double value);

    void append_row(double value);
    void append_col(double value);

    // Normalised column over the first `active_rows` rows; all zeros when the
    // column has no mass.
    std::vector<double> normalised_column(std::size_t c, std::size_t active_rows) const;
    double column_total(std::size_t c, std::size_t active_rows) const;

    const std::vector<double>& raw() const { return data_; }

    bool operator==(const DirichletCounts&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    double floor_ = 0.0;
    std::vector<double> data_;
};

}  // namespace aifnav
