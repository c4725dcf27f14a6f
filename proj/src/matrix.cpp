#include "endo/matrix.hpp"

#include <algorithm>
#include <optional>

namespace endo {

Matrix::Matrix(CtxPtr ctx, int rows, int cols) : rows_(rows), cols_(cols), ctx_(std::move(ctx)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative dimension");
    a_.assign(static_cast<size_t>(rows) * cols, Scalar::zero(ctx_));
}

Matrix Matrix::identity(const CtxPtr& ctx, int n) {
    Matrix m(ctx, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(ctx);
    return m;
}

static void check_same_shape(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw std::invalid_argument("Matrix: shape mismatch");
}

Matrix operator+(const Matrix& x, const Matrix& y) {
    check_same_shape(x, y);
    Matrix r(x.ctx(), x.rows(), x.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) r.at(i, j) = x.at(i, j) + y.at(i, j);
    return r;
}

Matrix operator-(const Matrix& x, const Matrix& y) {
    check_same_shape(x, y);
    Matrix r(x.ctx(), x.rows(), x.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) r.at(i, j) = x.at(i, j) - y.at(i, j);
    return r;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols() != y.rows()) throw std::invalid_argument("Matrix: product shape mismatch");
    Matrix r(x.ctx(), x.rows(), y.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < y.cols(); ++j) {
            Scalar acc = Scalar::zero(x.ctx());
            for (int k = 0; k < x.cols(); ++k) acc = acc + x.at(i, k) * y.at(k, j);
            r.at(i, j) = acc;
        }
    return r;
}

Matrix operator*(const Scalar& s, const Matrix& x) {
    Matrix r(x.ctx(), x.rows(), x.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) r.at(i, j) = s * x.at(i, j);
    return r;
}

Matrix kronecker(const Matrix& x, const Matrix& y) {
    Matrix r(x.ctx(), x.rows() * y.rows(), x.cols() * y.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j)
            for (int k = 0; k < y.rows(); ++k)
                for (int l = 0; l < y.cols(); ++l)
                    r.at(i * y.rows() + k, j * y.cols() + l) = x.at(i, j) * y.at(k, l);
    return r;
}

bool is_zero_at_precision(const Matrix& x) {
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j)
            if (x.at(i, j).is_value()) return false;
    return true;
}

namespace {

struct PivotPick {
    int row = -1, col = -1;
    long val = 0;
};

// Minimal-valuation entry among the still-active block; the p-adic analogue
// of partial pivoting on magnitude.
std::optional<PivotPick> find_pivot(const Matrix& e, const std::vector<bool>& row_done,
                                    const std::vector<bool>& col_done) {
    std::optional<PivotPick> best;
    bool saw_uncertified = false;
    for (int i = 0; i < e.rows(); ++i) {
        if (row_done[i]) continue;
        for (int j = 0; j < e.cols(); ++j) {
            if (col_done[j]) continue;
            const Scalar& s = e.at(i, j);
            if (!s.is_value()) continue;
            if (s.precision() < kPivotMarginDigits) {
                saw_uncertified = true;
                continue;
            }
            if (!best || s.pi_val() < best->val) best = PivotPick{i, j, s.pi_val()};
        }
    }
    if (!best && saw_uncertified)
        throw precision_error("rank not certified: residual entry known to fewer than " +
                              std::to_string(kPivotMarginDigits) + " pi-digits");
    return best;
}

}  // namespace

Matrix kernel_basis(const Matrix& m) {
    Matrix e = m;
    const int r = e.rows(), c = e.cols();
    std::vector<bool> row_done(static_cast<size_t>(r), false);
    std::vector<bool> col_done(static_cast<size_t>(c), false);
    std::vector<std::pair<int, int>> pivots;  // (row, col)

    while (true) {
        auto pick = find_pivot(e, row_done, col_done);
        if (!pick) break;
        int pi = pick->row, pj = pick->col;
        Scalar pinv = inverse(e.at(pi, pj));
        for (int j = 0; j < c; ++j) e.at(pi, j) = pinv * e.at(pi, j);
        for (int i = 0; i < r; ++i) {
            if (i == pi || !e.at(i, pj).is_value()) continue;
            Scalar f = e.at(i, pj);
            for (int j = 0; j < c; ++j) e.at(i, j) = e.at(i, j) - f * e.at(pi, j);
        }
        row_done[pi] = col_done[pj] = true;
        pivots.emplace_back(pi, pj);
    }

    std::vector<int> free_cols;
    for (int j = 0; j < c; ++j)
        if (!col_done[j]) free_cols.push_back(j);

    Matrix basis(m.ctx(), c, static_cast<int>(free_cols.size()));
    for (size_t fidx = 0; fidx < free_cols.size(); ++fidx) {
        int f = free_cols[fidx];
        basis.at(f, static_cast<int>(fidx)) = Scalar::one(m.ctx());
        for (auto [prow, pcol] : pivots)
            basis.at(pcol, static_cast<int>(fidx)) = -e.at(prow, f);
    }
    return basis;
}

Matrix solve_in_span(const Matrix& b, const Matrix& y) {
    if (b.rows() != y.rows()) throw std::invalid_argument("solve_in_span: shape mismatch");
    const int n = b.rows(), m = b.cols(), q = y.cols();

    // Row-reduce the augmented block [b | y], pivoting only inside b.
    Matrix e(b.ctx(), n, m + q);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) e.at(i, j) = b.at(i, j);
        for (int j = 0; j < q; ++j) e.at(i, m + j) = y.at(i, j);
    }
    std::vector<bool> row_done(static_cast<size_t>(n), false);
    std::vector<bool> col_done(static_cast<size_t>(m + q), false);
    for (int j = m; j < m + q; ++j) col_done[j] = true;
    std::vector<int> pivot_row_of_col(static_cast<size_t>(m), -1);

    int rank = 0;
    while (true) {
        auto pick = find_pivot(e, row_done, col_done);
        if (!pick) break;
        int pi = pick->row, pj = pick->col;
        Scalar pinv = inverse(e.at(pi, pj));
        for (int j = 0; j < m + q; ++j) e.at(pi, j) = pinv * e.at(pi, j);
        for (int i = 0; i < n; ++i) {
            if (i == pi || !e.at(i, pj).is_value()) continue;
            Scalar f = e.at(i, pj);
            for (int j = 0; j < m + q; ++j) e.at(i, j) = e.at(i, j) - f * e.at(pi, j);
        }
        row_done[pi] = col_done[pj] = true;
        pivot_row_of_col[pj] = pi;
        ++rank;
    }
    if (rank < m) throw precision_error("solve_in_span: basis has deficient rank at precision");

    // Rows without a pivot must carry no residual right-hand side.
    for (int i = 0; i < n; ++i) {
        if (row_done[i]) continue;
        for (int j = 0; j < q; ++j)
            if (e.at(i, m + j).is_value())
                throw precision_error("solve_in_span: right-hand side not in span at precision");
    }

    Matrix x(b.ctx(), m, q);
    for (int col = 0; col < m; ++col) {
        int prow = pivot_row_of_col[col];
        for (int j = 0; j < q; ++j) x.at(col, j) = e.at(prow, m + j);
    }
    return x;
}

Scalar det(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: square matrix required");
    Matrix e = m;
    const int n = e.rows();
    std::vector<bool> row_done(static_cast<size_t>(n), false);
    std::vector<bool> col_done(static_cast<size_t>(n), false);

    Scalar acc = Scalar::one(m.ctx());
    int swaps = 0;
    std::vector<int> pivot_rows, pivot_cols;
    for (int step = 0; step < n; ++step) {
        auto pick = find_pivot(e, row_done, col_done);
        if (!pick) {
            // Singular at the working precision.
            bool all_exact = true;
            long bound = 0;
            bool have_bound = false;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (row_done[i] || col_done[j]) continue;
                    const Scalar& s = e.at(i, j);
                    if (s.is_exact_zero()) continue;
                    all_exact = false;
                    if (s.is_inexact_zero()) {
                        bound = have_bound ? std::min(bound, s.zero_bound()) : s.zero_bound();
                        have_bound = true;
                    }
                }
            if (all_exact) return Scalar::zero(m.ctx());
            long base = acc.is_value() ? acc.pi_val() : 0;
            return Scalar::inexact_zero(m.ctx(), base + (have_bound ? bound : 0));
        }
        int pi = pick->row, pj = pick->col;
        pivot_rows.push_back(pi);
        pivot_cols.push_back(pj);
        acc = acc * e.at(pi, pj);
        Scalar pinv = inverse(e.at(pi, pj));
        for (int i = 0; i < n; ++i) {
            if (i == pi || row_done[i] || !e.at(i, pj).is_value()) continue;
            Scalar f = e.at(i, pj) * pinv;
            for (int j = 0; j < n; ++j)
                if (!col_done[j]) e.at(i, j) = e.at(i, j) - f * e.at(pi, j);
        }
        row_done[pi] = col_done[pj] = true;
    }

    // Sign of the permutation pairing pivot rows with pivot columns.
    std::vector<int> perm(static_cast<size_t>(n));
    for (int s = 0; s < n; ++s) perm[static_cast<size_t>(pivot_rows[s])] = pivot_cols[s];
    std::vector<bool> seen(static_cast<size_t>(n), false);
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = perm[static_cast<size_t>(j)]) {
            seen[j] = true;
            ++len;
        }
        swaps += len - 1;
    }
    if (swaps % 2 == 1) acc = -acc;
    return acc;
}

Matrix select_columns(const Matrix& x, const std::vector<int>& cols) {
    Matrix r(x.ctx(), x.rows(), static_cast<int>(cols.size()));
    for (int i = 0; i < x.rows(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) r.at(i, static_cast<int>(j)) = x.at(i, cols[j]);
    return r;
}

}  // namespace endo
