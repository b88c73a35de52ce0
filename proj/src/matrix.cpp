#include "shiftkms/matrix.hpp"

#include <cmath>
#include <string>

#include "shiftkms/errors.hpp"
#include "shiftkms/kernels.hpp"

namespace shiftkms {

NonnegativeMatrix::NonnegativeMatrix(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw InvalidInput("matrix: must have at least one row");
    const std::size_t d = rows.size();
    data_.reserve(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        if (rows[i].size() != d) {
            throw InvalidInput("matrix: row " + std::to_string(i + 1) + " has " +
                               std::to_string(rows[i].size()) + " entries, expected " + std::to_string(d));
        }
        for (std::size_t j = 0; j < d; ++j) {
            const double value = rows[i][j];
            if (!std::isfinite(value) || value < 0.0) {
                throw InvalidInput("matrix: entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                   ") must be a finite nonnegative number");
            }
            data_.push_back(value);
        }
    }
    dim_ = d;
}

NonnegativeMatrix NonnegativeMatrix::identity(std::size_t dim) {
    std::vector<double> data(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) data[i * dim + i] = 1.0;
    return NonnegativeMatrix(dim, std::move(data));
}

NonnegativeMatrix NonnegativeMatrix::ones(std::size_t dim) {
    return NonnegativeMatrix(dim, std::vector<double>(dim * dim, 1.0));
}

NonnegativeMatrix NonnegativeMatrix::transposed() const {
    std::vector<double> data(dim_ * dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) data[j * dim_ + i] = data_[i * dim_ + j];
    return NonnegativeMatrix(dim_, std::move(data));
}

NonnegativeMatrix NonnegativeMatrix::submatrix(std::span<const std::size_t> indices) const {
    const std::size_t k = indices.size();
    std::vector<double> data(k * k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) data[a * k + b] = (*this)(indices[a], indices[b]);
    return NonnegativeMatrix(k, std::move(data));
}

NonnegativeMatrix NonnegativeMatrix::shifted(double shift) const {
    std::vector<double> data = data_;
    for (std::size_t i = 0; i < dim_; ++i) data[i * dim_ + i] += shift;
    return NonnegativeMatrix(dim_, std::move(data));
}

Vector NonnegativeMatrix::apply(std::span<const double> x) const {
    Vector y(dim_);
    kernels::matvec(data_, x, y);
    return y;
}

Vector NonnegativeMatrix::apply_transposed(std::span<const double> x) const {
    Vector y(dim_);
    kernels::matvec_transposed(data_, x, y);
    return y;
}

bool NonnegativeMatrix::has_zero_row() const noexcept {
    for (std::size_t i = 0; i < dim_; ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < dim_ && zero; ++j) zero = data_[i * dim_ + j] == 0.0;
        if (zero) return true;
    }
    return false;
}

bool NonnegativeMatrix::has_zero_column() const noexcept {
    for (std::size_t j = 0; j < dim_; ++j) {
        bool zero = true;
        for (std::size_t i = 0; i < dim_ && zero; ++i) zero = data_[i * dim_ + j] == 0.0;
        if (zero) return true;
    }
    return false;
}

std::vector<std::vector<double>> NonnegativeMatrix::to_rows() const {
    std::vector<std::vector<double>> rows(dim_);
    for (std::size_t i = 0; i < dim_; ++i) rows[i].assign(data_.begin() + i * dim_, data_.begin() + (i + 1) * dim_);
    return rows;
}

ZeroOneMatrix::ZeroOneMatrix(const std::vector<std::vector<int>>& rows) {
    std::vector<std::vector<double>> values(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            const int v = rows[i][j];
            if (v != 0 && v != 1) {
                throw InvalidInput("matrix: entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                   ") must be 0 or 1");
            }
            values[i].push_back(static_cast<double>(v));
        }
    }
    values_ = NonnegativeMatrix(values);
}

ZeroOneMatrix ZeroOneMatrix::identity(std::size_t dim) { return ZeroOneMatrix(NonnegativeMatrix::identity(dim)); }

ZeroOneMatrix ZeroOneMatrix::ones(std::size_t dim) { return ZeroOneMatrix(NonnegativeMatrix::ones(dim)); }

ZeroOneMatrix ZeroOneMatrix::permutation(std::span<const std::size_t> perm) {
    const std::size_t d = perm.size();
    std::vector<std::vector<int>> rows(d, std::vector<int>(d, 0));
    std::vector<bool> seen(d, false);
    for (std::size_t i = 0; i < d; ++i) {
        if (perm[i] >= d || seen[perm[i]]) throw InvalidInput("permutation: not a bijection");
        seen[perm[i]] = true;
        rows[i][perm[i]] = 1;
    }
    return ZeroOneMatrix(rows);
}

void ZeroOneMatrix::require_cuntz_krieger() const {
    if (has_zero_row()) throw InvalidInput("matrix: has a zero row");
    if (has_zero_column()) throw InvalidInput("matrix: has a zero column");
}

ZeroOneMatrix ZeroOneMatrix::transposed() const { return ZeroOneMatrix(values_.transposed()); }

std::vector<std::vector<int>> ZeroOneMatrix::to_rows() const {
    std::vector<std::vector<int>> rows(dim(), std::vector<int>(dim()));
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) rows[i][j] = (*this)(i, j) ? 1 : 0;
    return rows;
}

}  // namespace shiftkms
