#ifndef QFOLD_QIDENTS_HPP
#define QFOLD_QIDENTS_HPP

#include <random>

#include "uqminus.hpp"

namespace qfold {

// Rewriting spaces for the q-binomial identities.
//
// V(n, r) is spanned by tuples (a_1,...,a_n); whenever a slot before the last
// holds at least r units, the tuple rewrites into the alternating
// q-binomial combination that moves 1..r units one slot to the right.  The
// normal-form support has all slots but the last below r.  Termination:
// sum_i a_i * (distance to the last slot) strictly decreases at every step.
//
// V(n, m, r; A) is the matrix version: m independent rows, Serre-type
// rewriting at the interaction columns A_i, cost-free right shifts at the
// others.

using tuple = std::vector<int>;
using tuple_vec = std::map<tuple, zpoly>;

inline void tv_add(tuple_vec &v, const tuple &t, const zpoly &c) {
    if (c.is_zero()) return;
    auto it = v.find(t);
    if (it == v.end()) v.emplace(t, c);
    else {
        it->second += c;
        if (it->second.is_zero()) v.erase(it);
    }
}

enum class rewrite_strategy { leftmost, rightmost, randomized };

class vn_engine {
public:
    vn_engine(int n, int r) : n_(n), r_(r) {
        if (n < 2 || r < 2) throw std::invalid_argument("vn_engine: need n >= 2, r >= 2");
    }
    int n() const { return n_; }
    int r() const { return r_; }

    bool in_normal_support(const tuple &a) const {
        for (int i = 0; i + 1 < n_; ++i)
            if (a[i] >= r_) return false;
        return true;
    }

    tuple_vec normal_form(const tuple &a, rewrite_strategy st = rewrite_strategy::leftmost,
                          std::mt19937 *rng = nullptr) const {
        tuple_vec v;
        tv_add(v, a, zpoly(1));
        return normal_form(std::move(v), st, rng);
    }

    // Every rewrite moves units to the right, so the results are
    // lexicographically below their source; extracting the pending maximum
    // touches each distinct tuple once.  By linearity the extraction order
    // cannot change the outcome; the position choice inside a tuple is the
    // actual strategy.
    tuple_vec normal_form(tuple_vec v, rewrite_strategy st = rewrite_strategy::leftmost,
                          std::mt19937 *rng = nullptr) const {
        tuple_vec done;
        while (!v.empty()) {
            auto it = std::prev(v.end());
            tuple t = it->first;
            zpoly c = std::move(it->second);
            v.erase(it);
            if (in_normal_support(t)) {
                tv_add(done, t, c);
                continue;
            }
            std::vector<int> positions;
            for (int i = 0; i + 1 < n_; ++i)
                if (t[i] >= r_) positions.push_back(i);
            int pos = 0;
            switch (st) {
            case rewrite_strategy::leftmost: pos = positions.front(); break;
            case rewrite_strategy::rightmost: pos = positions.back(); break;
            case rewrite_strategy::randomized: pos = positions[(*rng)() % positions.size()]; break;
            }
            // a = sum_{j=1}^{r} (-1)^{j-1} [r j] a(j), moving j units right
            for (int j = 1; j <= r_; ++j) {
                tuple s = t;
                s[pos] -= j;
                s[pos + 1] += j;
                zpoly coeff = qbinom(r_, j) * c;
                if (j % 2 == 0) coeff = -coeff;
                tv_add(v, s, coeff);
            }
        }
        return done;
    }

private:
    int n_, r_;
};

// A(k, s) = [s+k-r-1, s-1] [k, r-s]
inline zpoly a_coeff(int k, int s, int r) {
    if (s < 1 || s > r) throw std::invalid_argument("a_coeff: need 1 <= s <= r");
    return qbinom(s + k - r - 1, s - 1) * qbinom(k, r - s);
}

struct check_outcome {
    bool pass = true;
    std::string detail;
};

// alternating Gaussian sums: sum_k (-1)^k q^{k(n-1-2j)} [n k] = 0 for
// 0 <= j < n, plus the generating identity
// prod_{l<n} (1 + q^{2l} z) = sum_k q^{k(n-1)} [n k] z^k  as polynomials in z
inline check_outcome verify_gauss_sums(int n_max) {
    for (int n = 1; n <= n_max; ++n) {
        for (int j = 0; j < n; ++j) {
            zpoly acc;
            for (int k = 0; k <= n; ++k) {
                zpoly t = qbinom(n, k).shifted(k * (n - 1 - 2 * j));
                acc += (k % 2) ? -t : t;
            }
            if (!acc.is_zero())
                return {false, "alternating sum nonzero at n=" + std::to_string(n) + " j=" + std::to_string(j) +
                                   ": " + acc.str()};
        }
        // polynomial identity in the auxiliary variable z
        std::vector<zpoly> lhs{zpoly(1)}; // coefficients of z^k
        for (int l = 0; l < n; ++l) {
            std::vector<zpoly> nxt(lhs.size() + 1);
            for (std::size_t k = 0; k < lhs.size(); ++k) {
                nxt[k] += lhs[k];
                nxt[k + 1] += lhs[k].shifted(2 * l);
            }
            lhs = std::move(nxt);
        }
        for (int k = 0; k <= n; ++k) {
            zpoly rhs = qbinom(n, k).shifted(k * (n - 1));
            if (!(lhs[static_cast<std::size_t>(k)] == rhs))
                return {false, "product identity fails at n=" + std::to_string(n) + " k=" + std::to_string(k)};
        }
    }
    return {};
}

// sum_{s=0}^r (-1)^s [r s][t+k-s-1, t-1][r+k-s, r-t] = 0 for 1<=t<=r, any k
inline check_outcome verify_triple_binomial_sum(int r, int t, int k) {
    zpoly acc;
    for (int s = 0; s <= r; ++s) {
        zpoly term = qbinom(r, s) * qbinom(t + k - s - 1, t - 1) * qbinom(r + k - s, r - t);
        acc += (s % 2) ? -term : term;
    }
    if (!acc.is_zero())
        return {false, "nonzero at r=" + std::to_string(r) + " t=" + std::to_string(t) + " k=" + std::to_string(k) +
                           ": " + acc.str()};
    return {};
}

// two-slot expansion against the rewriting oracle:
// (r+k, l) = sum_{s=1}^r (-1)^{s-1} [s+k-1, s-1][r+k, r-s] (r-s, l+s+k)
inline check_outcome verify_two_slot_expansion(int r, int k, int l) {
    vn_engine eng(2, r);
    tuple_vec lhs = eng.normal_form(tuple{r + k, l});
    tuple_vec rhs;
    for (int s = 1; s <= r; ++s) {
        zpoly c = qbinom(s + k - 1, s - 1) * qbinom(r + k, r - s);
        if (s % 2 == 0) c = -c;
        tv_add(rhs, tuple{r - s, l + s + k}, c);
    }
    if (lhs != rhs) return {false, "mismatch at r=" + std::to_string(r) + " k=" + std::to_string(k)};
    // reindexed form through A(k, s), valid for any k >= 0
    tuple_vec lhs2 = eng.normal_form(tuple{k, l});
    tuple_vec rhs2;
    for (int s = 1; s <= r; ++s) {
        zpoly c = a_coeff(k, s, r);
        if (c.is_zero()) continue;
        if (s % 2 == 0) c = -c;
        int slot = l + s + k - r;
        if (slot < 0) return {false, "nonzero coefficient on a negative slot"};
        tv_add(rhs2, tuple{r - s, slot}, c);
    }
    if (lhs2 != rhs2) return {false, "shifted form mismatch at r=" + std::to_string(r) + " k=" + std::to_string(k)};
    return {};
}

// closed form of the normal form of (k, 0, ..., 0, l):
// coefficient of (a_1..a_n) is (-1)^{sum_{i<n} a_i + (n-1)(r-1)} prod_i A(k-x_i, r-a_i)
inline check_outcome verify_endpoint_expansion(int n, int r, int k, int l) {
    vn_engine eng(n, r);
    tuple start(n, 0);
    start[0] = k;
    start[n - 1] = l;
    tuple_vec nf = eng.normal_form(start);
    // enumerate SE_n(k+l)
    tuple_vec expect;
    tuple a(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n - 1) {
            a[pos] = left;
            zpoly c(1);
            int x = 0;
            for (int i = 0; i + 1 < n; ++i) {
                c *= a_coeff(k - x, r - a[i], r);
                x += a[i];
            }
            int sgn = (n - 1) * (r - 1);
            for (int i = 0; i + 1 < n; ++i) sgn += a[i];
            if (sgn % 2) c = -c;
            tv_add(expect, a, c);
            return;
        }
        for (int v = 0; v < r && v <= left; ++v) {
            a[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, k + l);
    if (nf != expect) return {false, "closed form mismatch at n=" + std::to_string(n) + " r=" + std::to_string(r) +
                                         " k=" + std::to_string(k) + " l=" + std::to_string(l)};
    return {};
}

// sum_{k=0}^{L} (-1)^k [L k] (k, 0, ..., 0, L-k) reduces to zero,
// L = (n-1)(r-1)+1
inline check_outcome verify_alternating_serre_sum(int n, int r) {
    int L = (n - 1) * (r - 1) + 1;
    vn_engine eng(n, r);
    tuple_vec acc;
    for (int k = 0; k <= L; ++k) {
        tuple t(n, 0);
        t[0] = k;
        t[n - 1] = L - k;
        zpoly c = qbinom(L, k);
        if (k % 2) c = -c;
        tv_add(acc, t, c);
    }
    tuple_vec nf = eng.normal_form(std::move(acc));
    if (!nf.empty()) {
        std::string d = "residual with " + std::to_string(nf.size()) + " tuples at n=" + std::to_string(n) +
                        " r=" + std::to_string(r);
        return {false, d};
    }
    return {};
}

// ---- matrix rewriting ------------------------------------------------------

using tuple_matrix = std::vector<tuple>; // m rows of length n
using matrix_vec = std::map<tuple_matrix, zpoly>;

inline void mv_add(matrix_vec &v, const tuple_matrix &t, const zpoly &c) {
    if (c.is_zero()) return;
    auto it = v.find(t);
    if (it == v.end()) v.emplace(t, c);
    else {
        it->second += c;
        if (it->second.is_zero()) v.erase(it);
    }
}

class vnm_engine {
public:
    // inter[i] lists the interaction columns of row i (0-based, < n-1)
    vnm_engine(int n, int m, int r, std::vector<std::vector<int>> inter)
        : n_(n), m_(m), r_(r), inter_(std::move(inter)) {
        if (static_cast<int>(inter_.size()) != m_) throw std::invalid_argument("vnm_engine: row count");
        for (auto &row : inter_) {
            std::sort(row.begin(), row.end());
            for (int c : row)
                if (c < 0 || c >= n_ - 1) throw std::invalid_argument("vnm_engine: interaction column range");
        }
    }

    bool interacting(int row, int col) const {
        return std::binary_search(inter_[row].begin(), inter_[row].end(), col);
    }

    bool in_normal_support(const tuple_matrix &a) const {
        for (int i = 0; i < m_; ++i)
            for (int kcol = 0; kcol + 1 < n_; ++kcol) {
                int limit = interacting(i, kcol) ? r_ : 1;
                if (a[i][kcol] >= limit) return false;
            }
        return true;
    }

    matrix_vec normal_form(matrix_vec v) const {
        matrix_vec done;
        while (!v.empty()) {
            auto it = std::prev(v.end());
            tuple_matrix t = it->first;
            zpoly c = std::move(it->second);
            v.erase(it);
            int bi = -1, bk = -1;
            for (int i = 0; i < m_ && bi == -1; ++i)
                for (int kcol = 0; kcol + 1 < n_; ++kcol) {
                    int limit = interacting(i, kcol) ? r_ : 1;
                    if (t[i][kcol] >= limit) { bi = i; bk = kcol; break; }
                }
            if (bi == -1) {
                mv_add(done, t, c);
                continue;
            }
            if (interacting(bi, bk)) {
                for (int j = 1; j <= r_; ++j) {
                    tuple_matrix s = t;
                    s[bi][bk] -= j;
                    s[bi][bk + 1] += j;
                    zpoly coeff = qbinom(r_, j) * c;
                    if (j % 2 == 0) coeff = -coeff;
                    mv_add(v, s, coeff);
                }
            } else {
                // cost-free right shift
                tuple_matrix s = t;
                s[bi][bk] -= 1;
                s[bi][bk + 1] += 1;
                mv_add(v, s, c);
            }
        }
        return done;
    }

    matrix_vec normal_form(const tuple_matrix &a) const {
        matrix_vec v;
        mv_add(v, a, zpoly(1));
        return normal_form(std::move(v));
    }

    int n_, m_, r_;
    std::vector<std::vector<int>> inter_;
};

// sum over (k_1..k_m) in [0,L]^m of (-1)^{sum k} prod [L k_i] applied to the
// matrix with first column k, last column L-k, zero in between; L =
// (N-1)(r-1)+1 where N-1 is the common interaction count
inline check_outcome verify_matrix_alternating_sum(int n, int m, int r,
                                                   const std::vector<std::vector<int>> &inter) {
    int N1 = static_cast<int>(inter.at(0).size());
    for (const auto &row : inter)
        if (static_cast<int>(row.size()) != N1)
            return {false, "interaction sets must share a cardinality"};
    int L = N1 * (r - 1) + 1;
    vnm_engine eng(n, m, r, inter);
    matrix_vec acc;
    std::vector<int> k(m, 0);
    std::function<void(int)> rec = [&](int row) {
        if (row == m) {
            tuple_matrix t(m, tuple(n, 0));
            zpoly c(1);
            int parity = 0;
            for (int i = 0; i < m; ++i) {
                t[i][0] = k[i];
                t[i][n - 1] = L - k[i];
                c *= qbinom(L, k[i]);
                parity += k[i];
            }
            if (parity % 2) c = -c;
            mv_add(acc, t, c);
            return;
        }
        for (k[row] = 0; k[row] <= L; ++k[row]) rec(row + 1);
        k[row] = 0;
    };
    rec(0);
    matrix_vec nf = eng.normal_form(std::move(acc));
    if (!nf.empty())
        return {false, "residual with " + std::to_string(nf.size()) + " matrices"};
    return {};
}

// factorization of the coefficient product into powers of q^{-k}:
// prod_j A(k - x_j, r - a_j) = sum_j G_j(q) q^{-k(M - 2j)},  M = (N-1)(r-1),
// with G_j independent of k.  Solved exactly from M+1 evaluations and
// verified on extra ones.
inline check_outcome verify_product_factorization(int r, const std::vector<int> &a_slots) {
    int N1 = static_cast<int>(a_slots.size());
    int M = N1 * (r - 1);
    auto eval = [&](int k) {
        zpoly c(1);
        int x = 0;
        for (int j = 0; j < N1; ++j) {
            c *= a_coeff(k - x, r - a_slots[j], r);
            x += a_slots[j];
        }
        return c;
    };
    // LHS(k) = sum_j G_j z_j^k with z_j = q^{-(M-2j)}; solve on k = k0..k0+M
    int k0 = r * N1 + 1; // away from the degenerate range
    std::vector<std::vector<qrat>> V(M + 1, std::vector<qrat>(M + 1));
    std::vector<qrat> rhs(M + 1);
    for (int row = 0; row <= M; ++row) {
        int k = k0 + row;
        for (int j = 0; j <= M; ++j)
            V[row][j] = qrat(zpoly::monomial(-(M - 2 * j) * k));
        rhs[row] = qrat(eval(k));
    }
    auto sol = solve(V, rhs);
    if (!sol) return {false, "factorization system is singular"};
    for (int extra = 1; extra <= 3; ++extra) {
        int k = k0 + M + extra;
        qrat acc;
        for (int j = 0; j <= M; ++j)
            acc += (*sol)[j] * qrat(zpoly::monomial(-(M - 2 * j) * k));
        if (!(acc == qrat(eval(k))))
            return {false, "factorization fails at k=" + std::to_string(k)};
    }
    return {};
}

// ---- star-shaped data in U_q^- ---------------------------------------------

// centers pairwise orthogonal, leaves pairwise orthogonal, (center, leaf)
// pairing -(r-1) when joined; inter[i] lists the leaves joined to center i
inline cartan_datum star_datum(int centers, int leaves, int r,
                               const std::vector<std::vector<int>> &inter) {
    cartan_datum X;
    int n = centers + leaves;
    X.labels.resize(n);
    X.gram.assign(n, std::vector<long>(n, 0));
    for (int i = 0; i < centers; ++i) X.labels[i] = "c" + std::to_string(i + 1);
    for (int j = 0; j < leaves; ++j) X.labels[centers + j] = "l" + std::to_string(j + 1);
    for (int i = 0; i < n; ++i) X.gram[i][i] = 2;
    for (int i = 0; i < centers; ++i)
        for (int j : inter.at(i)) {
            X.gram[i][centers + j] = -(r - 1);
            X.gram[centers + j][i] = -(r - 1);
        }
    return X;
}

// single center: sum_k (-1)^k [L k] f_c^k (f_{l_1}..f_{l_{n-1}}) f_c^{L-k}
// lies in the radical over Q(q); L = (n-1)(r-1)+1
inline check_outcome verify_star_single_center(int leaves, int r) {
    std::vector<std::vector<int>> inter(1);
    for (int j = 0; j < leaves; ++j) inter[0].push_back(j);
    cartan_datum X = star_datum(1, leaves, r, inter);
    int L = leaves * (r - 1) + 1;
    uq_ctx<Zc> U(X, L + leaves + 1);
    weight nu(X.n(), 0);
    nu[0] = L;
    for (int j = 0; j < leaves; ++j) nu[1 + j] = 1;
    free_elem<Zc> acc = zero_elem<Zc>(X, nu);
    for (int k = 0; k <= L; ++k) {
        word w;
        w.insert(w.end(), k, 0);
        for (int j = 0; j < leaves; ++j) w.push_back(1 + j);
        w.insert(w.end(), L - k, 0);
        zpoly c = qbinom(L, k);
        if (k % 2) c = -c;
        acc.add_term(w, qrat(c));
    }
    if (!U.is_radical_zero(acc)) return {false, "single-center sum not in the radical"};
    return {};
}

// multi-center version: the multi-index alternating sum vanishes in U_q^-
// over Q(q); inter[i] lists the leaves joined to center i (equal sizes N-1)
inline check_outcome verify_star_multi_center(int centers, int leaves, int r,
                                              const std::vector<std::vector<int>> &inter) {
    int N1 = static_cast<int>(inter.at(0).size());
    int L = N1 * (r - 1) + 1;
    cartan_datum X = star_datum(centers, leaves, r, inter);
    uq_ctx<Zc> U(X, centers * L + leaves + 1);
    weight nu(X.n(), 0);
    for (int i = 0; i < centers; ++i) nu[i] = L;
    for (int j = 0; j < leaves; ++j) nu[centers + j] = 1;
    free_elem<Zc> acc = zero_elem<Zc>(X, nu);
    std::vector<int> k(centers, 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == centers) {
            word w;
            zpoly c(1);
            int parity = 0;
            for (int i = 0; i < centers; ++i) {
                w.insert(w.end(), k[i], i);
                c *= qbinom(L, k[i]);
                parity += k[i];
            }
            for (int j = 0; j < leaves; ++j) w.push_back(centers + j);
            for (int i = 0; i < centers; ++i) w.insert(w.end(), L - k[i], i);
            if (parity % 2) c = -c;
            acc.add_term(w, qrat(c));
            return;
        }
        for (k[pos] = 0; k[pos] <= L; ++k[pos]) rec(pos + 1);
        k[pos] = 0;
    };
    rec(0);
    if (!U.is_radical_zero(acc)) return {false, "multi-center sum not in the radical"};
    return {};
}

} // namespace qfold

#endif
