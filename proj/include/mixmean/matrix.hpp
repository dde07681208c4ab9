#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mixmean/error.hpp"
#include "mixmean/rational.hpp"

namespace mixmean {

// Dense nonnegative matrix, immutable after construction.  Entries are stored
// row-major.  Construction validates shape (nonempty, rectangular) and sign.
template <typename T>
class BasicMatrix {
public:
    BasicMatrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (rows_ == 0 || cols_ == 0)
            throw Error(ErrorCode::EmptyMatrix, "matrix must have at least one row and one column");
        if (entries_.size() != rows_ * cols_)
            throw Error(ErrorCode::RaggedRows, "entry count does not match matrix shape");
        for (const T& v : entries_)
            if (v < T(0))
                throw Error(ErrorCode::NegativeEntry, "matrix entries must be nonnegative");
    }

    static BasicMatrix constant(std::size_t rows, std::size_t cols, const T& value) {
        return BasicMatrix(rows, cols, std::vector<T>(rows * cols, value));
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return entries_.size(); }

    const T& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    const std::vector<T>& entries() const noexcept { return entries_; }

    BasicMatrix transposed() const {
        std::vector<T> t(entries_.size(), T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t[j * rows_ + i] = at(i, j);
        return BasicMatrix(cols_, rows_, std::move(t));
    }

    bool operator==(const BasicMatrix&) const = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<T> entries_;
};

using NonnegMatrix = BasicMatrix<double>;
using RationalMatrix = BasicMatrix<Rational>;

// Numeric backend selector.  Float64 evaluates in double precision with the
// stated tolerances; ExactRational works on exact rationals and certifies
// comparisons with interval enclosures instead of tolerances.
enum class BackendMode { Float64, ExactRational };

struct ScalarBackend {
    BackendMode mode = BackendMode::Float64;
    double tolerance = 1e-9;          // bound on acceptable relative violation
    double equality_tolerance = 1e-12; // relative slack when detecting equality
};

// A matrix counts as constant when max - min <= equality_tolerance * max
// (so the all-zero matrix is constant).  Exact mode compares entries exactly.
bool is_constant(const NonnegMatrix& B, const ScalarBackend& backend = {});
bool is_constant(const RationalMatrix& B);

// Exact conversion; every double entry is a rational.
RationalMatrix to_rational(const NonnegMatrix& B);
// Nearest-double conversion, for reporting.
NonnegMatrix to_double(const RationalMatrix& B);

} // namespace mixmean
