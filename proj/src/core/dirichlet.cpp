#include "aifnav/core/dirichlet.hpp"

#include <algorithm>
#include <stdexcept>

#include "aifnav/kernels/kernels.hpp"

namespace aifnav {

DirichletCounts::DirichletCounts(std::size_t rows, std::size_t cols, double floor, double fill)
    : rows_(rows), cols_(cols), floor_(floor), data_(rows * cols, std::max(fill, floor)) {
    if (floor < 0.0) throw std::invalid_argument("dirichlet: negative floor");
}

void DirichletCounts::set(std::size_t r, std::size_t c, double value) {
    data_.at(c * rows_ + r) = std::max(value, floor_);
}

void DirichletCounts::add(std::size_t r, std::size_t c, double delta) {
    double& v = data_.at(c * rows_ + r);
    v = std::max(v + delta, floor_);
}

void DirichletCounts::fill_row(std::size_t r, double value) {
    for (std::size_t c = 0; c < cols_; ++c) set(r, c, value);
}

void DirichletCounts::fill_col(std::size_t c, double value) {
    for (std::size_t r = 0; r < rows_; ++r) set(r, c, value);
}

void DirichletCounts::append_row(double value) {
    std::vector<double> next((rows_ + 1) * cols_);
    for (std::size_t c = 0; c < cols_; ++c) {
        std::copy_n(column(c), rows_, next.begin() + static_cast<std::ptrdiff_t>(c * (rows_ + 1)));
        next[c * (rows_ + 1) + rows_] = std::max(value, floor_);
    }
    data_ = std::move(next);
    ++rows_;
}

void DirichletCounts::append_col(double value) {
    data_.resize(data_.size() + rows_, std::max(value, floor_));
    ++cols_;
}

double DirichletCounts::column_total(std::size_t c, std::size_t active_rows) const {
    return kernels::sum(column(c), active_rows);
}

std::vector<double> DirichletCounts::normalised_column(std::size_t c, std::size_t active_rows) const {
    if (c >= cols_ || active_rows > rows_) throw std::out_of_range("dirichlet: column out of range");
    std::vector<double> out(column(c), column(c) + active_rows);
    kernels::normalise(out.data(), out.size());
    return out;
}

}  // namespace aifnav
