#pragma once

#include <vector>

#include "endo/scalar.hpp"

namespace endo {

/// Dense matrix over the capped-precision field K.  Values are immutable in
/// spirit: every operation returns a fresh matrix.
class Matrix {
  public:
    Matrix() = default;
    Matrix(CtxPtr ctx, int rows, int cols);

    static Matrix identity(const CtxPtr& ctx, int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const CtxPtr& ctx() const { return ctx_; }

    Scalar& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Scalar& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    friend Matrix operator+(const Matrix& x, const Matrix& y);
    friend Matrix operator-(const Matrix& x, const Matrix& y);
    friend Matrix operator*(const Matrix& x, const Matrix& y);
    friend Matrix operator*(const Scalar& s, const Matrix& x);

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Scalar> a_;
    CtxPtr ctx_;
};

Matrix kronecker(const Matrix& x, const Matrix& y);

/// True when every entry of x vanishes at the available precision.
bool is_zero_at_precision(const Matrix& x);

/// Rank decisions require pivots known to at least this many pi-digits.
inline constexpr int kPivotMarginDigits = 10;

/// Basis of the right kernel as columns (cols() == kernel dimension, possibly
/// zero).  Pivoting picks the entry of minimal valuation; an entry that is
/// neither zero-at-cap nor known to kPivotMarginDigits makes the rank
/// uncertifiable and raises precision_error.
Matrix kernel_basis(const Matrix& m);

/// Solves B * X = Y for X where B has full column rank (e.g. B is a basis of
/// an invariant subspace and Y = A*B).  Throws precision_error when Y is not
/// in the span of B at the working precision.
Matrix solve_in_span(const Matrix& b, const Matrix& y);

/// Determinant by fraction-free-ish elimination with valuation pivoting.
/// Returns a zero-kind Scalar for singular input.
Scalar det(const Matrix& m);

/// Columns of x restricted to the listed column indices.
Matrix select_columns(const Matrix& x, const std::vector<int>& cols);

}  // namespace endo
