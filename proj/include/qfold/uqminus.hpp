#ifndef QFOLD_UQMINUS_HPP
#define QFOLD_UQMINUS_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "freealg.hpp"
#include "linalg.hpp"

namespace qfold {

// U_q^- realized weight by weight as the free algebra modulo the radical of
// the bilinear form.
//
// The quotient at weight nu is computed inductively: x lies in the radical
// iff ir_i(x) does for every i, since every word of nonzero weight starts
// with some letter and (f_i y, x) = (f_i, f_i)(y, ir_i(x)).  The matrix of
// the maps  w  ->  (pairings of ir_i(w) against pivot words one level down)
// therefore has the radical as kernel; its independent columns are a basis
// of the quotient and serve as pivot words.  Pairings against the pivot
// words detect radical membership at nu itself because the form is
// non-degenerate on the quotient, so the pivot block of the Gram matrix is
// invertible.  All eliminations run fraction-free over the Laurent ring on
// the scaled form.

template <typename R>
struct weight_space {
    weight nu;
    std::vector<word> words;   // lex sorted
    std::vector<int> pivots;   // indices into words; images form a basis
    int dim = 0;
    int radical_rank = 0;

    // lazy inverse of the scaled Gram pivot block, for coordinate solves
    std::vector<std::vector<ratfunc<R>>> gram_tt_inv;
    bool has_inv = false;
    std::mutex inv_mu;

    const word &pivot_word(int s) const { return words[pivots[s]]; }
};

inline std::vector<word> enumerate_words(const weight &nu) {
    word base;
    for (std::size_t i = 0; i < nu.size(); ++i)
        base.insert(base.end(), nu[i], static_cast<int>(i));
    std::vector<word> out;
    do out.push_back(base);
    while (std::next_permutation(base.begin(), base.end()));
    return out;
}

template <typename R>
class uq_ctx {
public:
    explicit uq_ctx(cartan_datum X, int height_cap = 8, std::int64_t prime = 0)
        : X_(std::move(X)), cap_(height_cap), p_(prime), forms_(X_, make_one(prime)) {
        if constexpr (std::is_same_v<R, Fc>) {
            if (!is_prime(p_)) throw std::invalid_argument("uq_ctx: prime required for F_p coefficients");
        }
        auto v = X_.validate();
        if (!v.ok) throw std::invalid_argument("uq_ctx: invalid datum: " + v.diagnostic);
    }

    const cartan_datum &datum() const { return X_; }
    form_cache<R> &forms() { return forms_; }
    int height_cap() const { return cap_; }
    void set_height_cap(int c) { cap_ = c; }
    std::int64_t prime() const { return p_; }

    static R make_one(std::int64_t p) {
        if constexpr (std::is_same_v<R, Fc>) return Fc(1, p);
        else return Zc(1);
    }

    // ring-aware scalars: every coefficient entering a computation over F_p
    // is created already reduced
    R one() const {
        if constexpr (std::is_same_v<R, Fc>) return Fc(1, p_);
        else return Zc(1);
    }
    laurent<R> l_qint(int n, int d) const { return reduce(qint<Zc>(n, d)); }
    laurent<R> l_qfact(int m, int d) const { return reduce(qfact<Zc>(m, d)); }
    laurent<R> l_qbinom(int n, int m, int d) const { return reduce(qbinom<Zc>(n, m, d)); }
    laurent<R> reduce(const zpoly &z) const {
        if constexpr (std::is_same_v<R, Fc>) return reduce_mod_p(z, p_);
        else return z;
    }
    ratfunc<R> reduce(const qrat &z) const {
        if constexpr (std::is_same_v<R, Fc>) return reduce_mod_p(z, p_);
        else return z;
    }

    weight_space<R> &space(const weight &nu) {
        {
            std::lock_guard<std::mutex> lk(mu_);
            auto it = spaces_.find(nu);
            if (it != spaces_.end()) return *it->second;
        }
        if (height(nu) > cap_)
            throw std::runtime_error("uq_ctx: weight height exceeds the configured cap");
        auto ws = build_space(nu);
        std::lock_guard<std::mutex> lk(mu_);
        auto [it, fresh] = spaces_.emplace(nu, std::move(ws));
        return *it->second;
    }

    // ---- element operations -------------------------------------------

    free_elem<R> unit() { return unit_elem<R>(X_); }
    ratfunc<R> rf_one() const { return ratfunc<R>(laurent<R>(one())); }

    free_elem<R> generator(int i) { return make_word_elem<R>(X_, {i}); }

    // f_i^(n) = f_i^n / [n]!_{d_i}
    free_elem<R> divided_power(int i, int n) {
        word w(n, i);
        ratfunc<R> c = rf_one() / ratfunc<R>(l_qfact(n, static_cast<int>(X_.d(i))));
        return make_word_elem<R>(X_, w, c);
    }

    free_elem<R> divided_monomial(const std::vector<std::pair<int, int>> &seq) {
        free_elem<R> acc = unit_elem<R>(X_);
        for (auto [i, n] : seq) acc = qfold::multiply(acc, divided_power(i, n));
        return acc;
    }

    bool is_radical_zero(const free_elem<R> &x) {
        if (x.is_zero()) return true;
        auto &ws = space(x.wt);
        for (std::size_t s = 0; s < ws.pivots.size(); ++s)
            if (!forms_.scaled_pair(ws.pivot_word(static_cast<int>(s)), x).is_zero()) return false;
        return true;
    }

    bool eq_mod_radical(const free_elem<R> &a, const free_elem<R> &b) {
        if (a.wt != b.wt) throw std::invalid_argument("eq_mod_radical: weight mismatch");
        return is_radical_zero(sub(a, b));
    }

    // coordinates over the pivot-word basis of the quotient
    std::vector<ratfunc<R>> expand(const free_elem<R> &x) {
        auto &ws = space(x.wt);
        ensure_inverse(ws);
        std::vector<ratfunc<R>> v(ws.dim);
        for (int s = 0; s < ws.dim; ++s) v[s] = forms_.scaled_pair(ws.pivot_word(s), x);
        return matvec(ws.gram_tt_inv, v);
    }

    // canonical representative supported on pivot words
    free_elem<R> reduce_to_pivots(const free_elem<R> &x) {
        auto coords = expand(x);
        auto &ws = space(x.wt);
        free_elem<R> r = zero_elem<R>(X_, x.wt);
        for (int s = 0; s < ws.dim; ++s) r.add_term(ws.pivot_word(s), coords[s]);
        return r;
    }

    free_elem<R> from_coords(const weight &nu, const std::vector<ratfunc<R>> &coords) {
        auto &ws = space(nu);
        free_elem<R> r = zero_elem<R>(X_, nu);
        for (int s = 0; s < ws.dim; ++s) r.add_term(ws.pivot_word(s), coords[s]);
        return r;
    }

    ratfunc<R> form_value(const free_elem<R> &a, const free_elem<R> &b) { return forms_.value(a, b); }

    // ---- Serre sums ------------------------------------------------------

    // sum_k (-1)^k [1-a_ij, k]_{d_i} f_i^k f_j f_i^{1-a_ij-k}
    free_elem<R> serre_sum(int i, int j) {
        if (i == j) throw std::invalid_argument("serre_sum: equal nodes");
        int L = 1 - static_cast<int>(X_.a(i, j));
        weight nu(X_.n(), 0);
        nu[i] = L;
        nu[j] += 1;
        free_elem<R> acc = zero_elem<R>(X_, nu);
        for (int k = 0; k <= L; ++k) {
            word w;
            w.insert(w.end(), k, i);
            w.push_back(j);
            w.insert(w.end(), L - k, i);
            laurent<R> c = l_qbinom(L, k, static_cast<int>(X_.d(i)));
            if (k % 2) c = -c;
            acc.add_term(w, ratfunc<R>(c));
        }
        return acc;
    }

    bool serre_check(int i, int j) { return is_radical_zero(serre_sum(i, j)); }

    // ---- Pi operators and i-decompositions -------------------------------

    // Pi_{i,t} = sum_s (-1)^s q_i^{-s(s-1)/2} f_i^(s) (ir)^{s+t}
    free_elem<R> pi_op(int i, int t, const free_elem<R> &x) {
        std::vector<free_elem<R>> irpow;
        irpow.push_back(x);
        while (!irpow.back().is_zero())
            irpow.push_back(derive_left(X_, i, irpow.back()));
        weight out_wt = x.wt;
        if (out_wt[i] < t) return zero_elem<R>(X_, out_wt); // would leave the cone
        out_wt[i] -= t;
        free_elem<R> acc = zero_elem<R>(X_, out_wt);
        int di = static_cast<int>(X_.d(i));
        for (int s = 0; s + t < static_cast<int>(irpow.size()); ++s) {
            if (irpow[s + t].is_zero()) break;
            free_elem<R> term = qfold::multiply(divided_power(i, s), irpow[s + t]);
            ratfunc<R> c(laurent<R>::monomial(-di * s * (s - 1) / 2, one()));
            if (s % 2) c = -c;
            acc = add(acc, scale(term, c));
        }
        return acc;
    }

    // x = sum_n f_i^(n) x_n with x_n in ker ir; returns x_0 .. x_{nu_i}
    std::vector<free_elem<R>> i_decompose(int i, const free_elem<R> &x) {
        int nmax = x.wt[i];
        std::vector<free_elem<R>> irpow;
        irpow.push_back(x);
        for (int k = 0; k < nmax + 1; ++k) irpow.push_back(derive_left(X_, i, irpow.back()));
        int di = static_cast<int>(X_.d(i));
        std::vector<free_elem<R>> out;
        for (int n = 0; n <= nmax; ++n) {
            weight wn = x.wt;
            wn[i] -= n;
            free_elem<R> acc = zero_elem<R>(X_, wn);
            for (int s = 0; s + n <= nmax && s + n < static_cast<int>(irpow.size()); ++s) {
                if (irpow[s + n].is_zero()) break;
                free_elem<R> term = qfold::multiply(divided_power(i, s), irpow[s + n]);
                ratfunc<R> c(laurent<R>::monomial(-di * s * (s - 1) / 2, one()));
                if (s % 2) c = -c;
                acc = add(acc, scale(term, c));
            }
            // x_n = q_i^{n(n-1)/2} Pi_{i,n}(x)
            out.push_back(scale(acc, ratfunc<R>(laurent<R>::monomial(di * n * (n - 1) / 2, one()))));
        }
        return out;
    }

    // projection of x onto f_i^(a) ker(ir)
    free_elem<R> component(int i, int a, const free_elem<R> &x) {
        auto dec = i_decompose(i, x);
        if (a >= static_cast<int>(dec.size())) {
            weight nu = x.wt;
            return zero_elem<R>(X_, nu);
        }
        return qfold::multiply(divided_power(i, a), dec[a]);
    }

    // largest n with x in f_i^n U; from the decomposition, the least n with
    // x_n nonzero mod radical
    int epsilon(int i, const free_elem<R> &x) {
        auto dec = i_decompose(i, x);
        for (int n = 0; n < static_cast<int>(dec.size()); ++n)
            if (!is_radical_zero(dec[n])) return n;
        throw std::invalid_argument("epsilon: zero element");
    }

    free_elem<R> kashiwara_F(int i, const free_elem<R> &x) {
        auto dec = i_decompose(i, x);
        weight nu = x.wt;
        ++nu[i];
        free_elem<R> acc = zero_elem<R>(X_, nu);
        for (int n = 0; n < static_cast<int>(dec.size()); ++n)
            if (!dec[n].is_zero())
                acc = add(acc, qfold::multiply(divided_power(i, n + 1), dec[n]));
        return acc;
    }

    free_elem<R> kashiwara_E(int i, const free_elem<R> &x) {
        auto dec = i_decompose(i, x);
        weight nu = x.wt;
        if (nu[i] == 0) return zero_elem<R>(X_, nu);
        --nu[i];
        free_elem<R> acc = zero_elem<R>(X_, nu);
        for (int n = 1; n < static_cast<int>(dec.size()); ++n)
            if (!dec[n].is_zero())
                acc = add(acc, qfold::multiply(divided_power(i, n - 1), dec[n]));
        return acc;
    }

    bool lattice_check(const free_elem<R> &x) {
        return form_value(x, x).is_member(ring_membership::a0);
    }

    // ---- full-Gram route (independent of the inductive scheme) -----------

    struct gram_profile {
        std::vector<word> words;
        int rank = 0;
        std::vector<int> pivots;
    };

    gram_profile full_gram_profile(const weight &nu) {
        gram_profile g;
        g.words = enumerate_words(nu);
        int N = static_cast<int>(g.words.size());
        std::vector<std::vector<laurent<R>>> M(N, std::vector<laurent<R>>(N));
        for (int a = 0; a < N; ++a)
            for (int b = a; b < N; ++b) {
                M[a][b] = forms_.scaled(g.words[a], g.words[b]);
                if (b != a) M[b][a] = M[a][b];
            }
        auto rp = laurent_rank(M);
        g.rank = rp.rank;
        g.pivots = rp.pivot_cols;
        return g;
    }

    // dimension of the intersection of ker(ir_i) over all i inside the
    // Gram-defined quotient at nu
    int kernel_intersection_rank(const weight &nu) {
        if (is_zero_weight(nu)) throw std::invalid_argument("kernel rank: weight must be nonzero");
        auto g = full_gram_profile(nu);
        std::vector<std::vector<laurent<R>>> S;
        for (int i = 0; i < X_.n(); ++i) {
            if (nu[i] == 0) continue;
            weight sub_nu = nu;
            --sub_nu[i];
            auto &wsub = space(sub_nu);
            for (int s = 0; s < wsub.dim; ++s) {
                std::vector<laurent<R>> row(g.pivots.size());
                for (std::size_t t = 0; t < g.pivots.size(); ++t) {
                    free_elem<R> d = derive_left(X_, i, make_word_elem<R>(X_, g.words[g.pivots[t]]));
                    auto v = forms_.scaled_pair(wsub.pivot_word(s), d).as_laurent();
                    if (!v) throw std::logic_error("kernel rank: non-polynomial pairing");
                    row[t] = *v;
                }
                S.push_back(std::move(row));
            }
        }
        auto rp = laurent_rank(S);
        return g.rank - rp.rank;
    }

private:

    void ensure_inverse(weight_space<R> &ws) {
        std::lock_guard<std::mutex> lk(ws.inv_mu);
        if (ws.has_inv) return;
        std::vector<std::vector<ratfunc<R>>> G(ws.dim, std::vector<ratfunc<R>>(ws.dim));
        for (int s = 0; s < ws.dim; ++s)
            for (int t = s; t < ws.dim; ++t) {
                G[s][t] = ratfunc<R>(forms_.scaled(ws.pivot_word(s), ws.pivot_word(t)));
                if (t != s) G[t][s] = G[s][t];
            }
        auto inv = invert(G);
        if (!inv) throw std::logic_error("weight_space: degenerate form on the quotient basis");
        ws.gram_tt_inv = std::move(*inv);
        ws.has_inv = true;
    }

    std::unique_ptr<weight_space<R>> build_space(const weight &nu) {
        auto ws = std::make_unique<weight_space<R>>();
        ws->nu = nu;
        ws->words = enumerate_words(nu);
        if (is_zero_weight(nu)) {
            ws->pivots = {0};
            ws->dim = 1;
            ws->radical_rank = 0;
            return ws;
        }
        int N = static_cast<int>(ws->words.size());
        std::vector<std::vector<laurent<R>>> S;
        for (int i = 0; i < X_.n(); ++i) {
            if (nu[i] == 0) continue;
            weight sub_nu = nu;
            --sub_nu[i];
            auto &wsub = space(sub_nu);
            for (int s = 0; s < wsub.dim; ++s) {
                std::vector<laurent<R>> row(N);
                for (int wix = 0; wix < N; ++wix) {
                    const word &w = ws->words[wix];
                    laurent<R> acc;
                    long prefix = 0;
                    for (std::size_t t = 0; t < w.size(); ++t) {
                        if (w[t] == i) {
                            word subw;
                            subw.reserve(w.size() - 1);
                            subw.insert(subw.end(), w.begin(), w.begin() + t);
                            subw.insert(subw.end(), w.begin() + t + 1, w.end());
                            acc += forms_.scaled(wsub.pivot_word(s), subw)
                                       .shifted(static_cast<int>(-prefix));
                        }
                        prefix += X_.gram[w[t]][i];
                    }
                    row[wix] = std::move(acc);
                }
                S.push_back(std::move(row));
            }
        }
        auto rp = laurent_rank(S);
        ws->pivots = rp.pivot_cols;
        ws->dim = rp.rank;
        ws->radical_rank = N - rp.rank;
        return ws;
    }

    cartan_datum X_;
    int cap_;
    std::int64_t p_;
    form_cache<R> forms_;
    std::map<weight, std::unique_ptr<weight_space<R>>> spaces_;
    std::mutex mu_;
};

} // namespace qfold

#endif
