#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace shiftkms {

using Vector = std::vector<double>;

// Square matrix with nonnegative real entries, stored row-major.
class NonnegativeMatrix {
public:
    NonnegativeMatrix() = default;

    // Throws InvalidInput unless `rows` is a nonempty square array of finite,
    // nonnegative values.
    explicit NonnegativeMatrix(const std::vector<std::vector<double>>& rows);

    static NonnegativeMatrix identity(std::size_t dim);
    static NonnegativeMatrix ones(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * dim_ + j]; }
    std::span<const double> data() const noexcept { return data_; }
    std::span<const double> row(std::size_t i) const noexcept {
        return std::span<const double>(data_).subspan(i * dim_, dim_);
    }

    NonnegativeMatrix transposed() const;
    // Principal submatrix on the given (sorted) index set.
    NonnegativeMatrix submatrix(std::span<const std::size_t> indices) const;
    // A + shift * I
    NonnegativeMatrix shifted(double shift) const;

    // y = A x and y = A^T x through the active kernel table.
    Vector apply(std::span<const double> x) const;
    Vector apply_transposed(std::span<const double> x) const;

    bool has_zero_row() const noexcept;
    bool has_zero_column() const noexcept;

    std::vector<std::vector<double>> to_rows() const;

    friend bool operator==(const NonnegativeMatrix&, const NonnegativeMatrix&) = default;

private:
    NonnegativeMatrix(std::size_t dim, std::vector<double> data) : dim_(dim), data_(std::move(data)) {}

    std::size_t dim_ = 0;
    std::vector<double> data_;
};

// 0/1 transition matrix of a Markov subshift. The entries are kept as doubles as
// well so the matrix can be handed straight to the spectral routines.
class ZeroOneMatrix {
public:
    ZeroOneMatrix() = default;

    // Throws InvalidInput unless every entry is 0 or 1 and the array is square.
    explicit ZeroOneMatrix(const std::vector<std::vector<int>>& rows);

    static ZeroOneMatrix identity(std::size_t dim);
    static ZeroOneMatrix ones(std::size_t dim);
    // Permutation matrix with a[i][perm[i]] = 1.
    static ZeroOneMatrix permutation(std::span<const std::size_t> perm);

    std::size_t dim() const noexcept { return values_.dim(); }
    bool operator()(std::size_t i, std::size_t j) const noexcept { return values_(i, j) != 0.0; }
    const NonnegativeMatrix& values() const noexcept { return values_; }

    bool has_zero_row() const noexcept { return values_.has_zero_row(); }
    bool has_zero_column() const noexcept { return values_.has_zero_column(); }

    // Throws InvalidInput if there is a zero row or zero column.
    void require_cuntz_krieger() const;

    ZeroOneMatrix transposed() const;

    std::vector<std::vector<int>> to_rows() const;

    friend bool operator==(const ZeroOneMatrix&, const ZeroOneMatrix&) = default;

private:
    explicit ZeroOneMatrix(NonnegativeMatrix values) : values_(std::move(values)) {}

    NonnegativeMatrix values_;
};

}  // namespace shiftkms
