#ifndef QFOLD_LINALG_HPP
#define QFOLD_LINALG_HPP

#include <optional>
#include <vector>

#include "laurent.hpp"
#include "ratfunc.hpp"

namespace qfold {

// Exact linear algebra at desk scale: fraction-free elimination over the
// Laurent ring (Montante/Bareiss one-step scheme, exact divisions by the
// previous pivot), and plain Gaussian elimination over the fraction field for
// small solves.  Pivoting is deterministic: columns are scanned in order, the
// pivot row maximizes the q-adic valuation of its entry, ties to the lowest
// row index.

template <typename R>
struct rank_profile {
    int rank = 0;
    std::vector<int> pivot_cols;
    std::vector<int> pivot_rows;
};

template <typename R>
rank_profile<R> laurent_rank(std::vector<std::vector<laurent<R>>> M) {
    rank_profile<R> out;
    if (M.empty()) return out;
    int rows = static_cast<int>(M.size());
    int cols = static_cast<int>(M[0].size());
    std::vector<char> row_done(rows, 0);
    laurent<R> prev(1);
    for (int c = 0; c < cols; ++c) {
        int pr = -1;
        int best_val = 0;
        for (int r = 0; r < rows; ++r) {
            if (row_done[r] || M[r][c].is_zero()) continue;
            int v = M[r][c].valuation();
            if (pr == -1 || v > best_val) { pr = r; best_val = v; }
        }
        if (pr == -1) continue;
        out.pivot_cols.push_back(c);
        out.pivot_rows.push_back(pr);
        const laurent<R> piv = M[pr][c];
        for (int r = 0; r < rows; ++r) {
            if (row_done[r] || r == pr) continue;
            if (M[r][c].is_zero()) {
                // still rescale to keep the fraction-free invariant
                for (int k = c + 1; k < cols; ++k)
                    if (!M[r][k].is_zero()) M[r][k] = (piv * M[r][k]).div_exact(prev);
                continue;
            }
            for (int k = c + 1; k < cols; ++k)
                M[r][k] = (piv * M[r][k] - M[r][c] * M[pr][k]).div_exact(prev);
            M[r][c] = laurent<R>();
        }
        row_done[pr] = 1;
        prev = piv;
        ++out.rank;
        if (out.rank == rows) break;
    }
    return out;
}

// Gauss-Jordan inverse over a field type F (ratfunc); returns nullopt when
// the matrix is singular
template <typename F>
std::optional<std::vector<std::vector<F>>> invert(std::vector<std::vector<F>> A) {
    int n = static_cast<int>(A.size());
    std::vector<std::vector<F>> I(n, std::vector<F>(n));
    for (int i = 0; i < n; ++i) I[i][i] = F(1);
    for (int c = 0; c < n; ++c) {
        int pr = -1;
        for (int r = c; r < n; ++r)
            if (!A[r][c].is_zero()) { pr = r; break; }
        if (pr == -1) return std::nullopt;
        std::swap(A[c], A[pr]);
        std::swap(I[c], I[pr]);
        F inv = F(1) / A[c][c];
        for (int k = 0; k < n; ++k) { A[c][k] *= inv; I[c][k] *= inv; }
        for (int r = 0; r < n; ++r) {
            if (r == c || A[r][c].is_zero()) continue;
            F f = A[r][c];
            for (int k = 0; k < n; ++k) {
                A[r][k] -= f * A[c][k];
                I[r][k] -= f * I[c][k];
            }
        }
    }
    return I;
}

// Solve A x = b over a field for a (possibly overdetermined) consistent
// system with full column rank; returns nullopt if inconsistent or rank
// deficient.
template <typename F>
std::optional<std::vector<F>> solve(std::vector<std::vector<F>> A, std::vector<F> b) {
    int rows = static_cast<int>(A.size());
    int cols = rows ? static_cast<int>(A[0].size()) : 0;
    std::vector<int> pivot_of_col(cols, -1);
    int rank = 0;
    for (int c = 0; c < cols; ++c) {
        int pr = -1;
        for (int r = rank; r < rows; ++r)
            if (!A[r][c].is_zero()) { pr = r; break; }
        if (pr == -1) return std::nullopt; // rank deficient in columns
        std::swap(A[rank], A[pr]);
        std::swap(b[rank], b[pr]);
        F inv = F(1) / A[rank][c];
        for (int k = c; k < cols; ++k) A[rank][k] *= inv;
        b[rank] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || A[r][c].is_zero()) continue;
            F f = A[r][c];
            for (int k = c; k < cols; ++k) A[r][k] -= f * A[rank][k];
            b[r] -= f * b[rank];
        }
        pivot_of_col[c] = rank;
        ++rank;
    }
    for (int r = rank; r < rows; ++r)
        if (!b[r].is_zero()) return std::nullopt; // inconsistent
    std::vector<F> x(cols);
    for (int c = 0; c < cols; ++c) x[c] = b[pivot_of_col[c]];
    return x;
}

template <typename F>
std::vector<F> matvec(const std::vector<std::vector<F>> &A, const std::vector<F> &v) {
    std::vector<F> r(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) {
        F acc;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!A[i][j].is_zero() && !v[j].is_zero()) acc += A[i][j] * v[j];
        r[i] = acc;
    }
    return r;
}

} // namespace qfold

#endif
