#ifndef QFOLD_FREEALG_HPP
#define QFOLD_FREEALG_HPP

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "cartan.hpp"
#include "ratfunc.hpp"

namespace qfold {

// The weight-graded free associative algebra on the generators f_i, with the
// left/right q-derivations and the bilinear form.
//
// The form is computed in a scaled variant: for words of weight nu,
//   SF(w, w') = (w, w') * prod_i (1 - q_i^2)^{nu_i},
// which satisfies the denominator-free recursion
//   SF(i.y, w') = sum_{t : w'_t = i} q^{-(prefix, a_i)} SF(y, w' minus t),
// with SF(1, 1) = 1.  Values are Laurent polynomials, memoized per word pair.

using word = std::vector<int>;

template <typename R>
struct free_elem {
    weight wt;                         // shared by all words; empty terms allowed
    std::map<word, ratfunc<R>> terms;

    bool is_zero() const { return terms.empty(); }

    void add_term(const word &w, const ratfunc<R> &c) {
        if (c.is_zero()) return;
        auto it = terms.find(w);
        if (it == terms.end()) terms.emplace(w, c);
        else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
};

inline weight weight_of_word(const cartan_datum &X, const word &w) {
    weight nu(X.n(), 0);
    for (int i : w) ++nu[i];
    return nu;
}

template <typename R>
free_elem<R> make_word_elem(const cartan_datum &X, const word &w, ratfunc<R> c = ratfunc<R>(1)) {
    free_elem<R> e;
    e.wt = weight_of_word(X, w);
    if (!c.is_zero()) e.terms.emplace(w, std::move(c));
    return e;
}

template <typename R>
free_elem<R> unit_elem(const cartan_datum &X) {
    return make_word_elem<R>(X, {});
}

template <typename R>
free_elem<R> zero_elem(const cartan_datum &X, const weight &nu) {
    free_elem<R> e;
    e.wt = nu;
    return e;
}

template <typename R>
free_elem<R> add(const free_elem<R> &a, const free_elem<R> &b) {
    if (a.is_zero()) return b.is_zero() ? a : b;
    if (b.is_zero()) return a;
    if (a.wt != b.wt) throw std::invalid_argument("free_elem: weight mismatch in addition");
    free_elem<R> r = a;
    for (const auto &[w, c] : b.terms) r.add_term(w, c);
    return r;
}

template <typename R>
free_elem<R> scale(const free_elem<R> &a, const ratfunc<R> &c) {
    free_elem<R> r;
    r.wt = a.wt;
    if (c.is_zero()) return r;
    for (const auto &[w, x] : a.terms) {
        ratfunc<R> v = x * c;
        if (!v.is_zero()) r.terms.emplace(w, std::move(v));
    }
    return r;
}

template <typename R>
free_elem<R> sub(const free_elem<R> &a, const free_elem<R> &b) {
    return add(a, scale(b, ratfunc<R>(-1)));
}

template <typename R>
free_elem<R> multiply(const free_elem<R> &a, const free_elem<R> &b) {
    free_elem<R> r;
    r.wt = add_weight(a.wt, b.wt);
    for (const auto &[wa, ca] : a.terms)
        for (const auto &[wb, cb] : b.terms) {
            word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            r.add_term(w, ca * cb);
        }
    return r;
}

// anti-automorphism: reverses every word, coefficients unchanged
template <typename R>
free_elem<R> star(const free_elem<R> &a) {
    free_elem<R> r;
    r.wt = a.wt;
    for (const auto &[w, c] : a.terms) {
        word rw(w.rbegin(), w.rend());
        r.add_term(rw, c);
    }
    return r;
}

// coefficientwise bar (every word is bar-fixed)
template <typename R>
free_elem<R> bar(const free_elem<R> &a) {
    free_elem<R> r;
    r.wt = a.wt;
    for (const auto &[w, c] : a.terms) r.terms.emplace(w, c.bar());
    return r;
}

// node relabeling by a gram-preserving permutation
template <typename R>
free_elem<R> apply_aut(const free_elem<R> &a, const diagram_aut &s) {
    free_elem<R> r;
    r.wt = sigma_weight(a.wt, s);
    for (const auto &[w, c] : a.terms) {
        word sw(w.size());
        for (std::size_t t = 0; t < w.size(); ++t) sw[t] = s.perm[w[t]];
        r.add_term(sw, c);
    }
    return r;
}

// left derivation: peels one f_i off a word with the q-power of the prefix
// weight; on products it satisfies
//   ir(x x') = q^{(wt x, a_i)} x ir(x') + ir(x) x'
template <typename R>
free_elem<R> derive_left(const cartan_datum &X, int i, const free_elem<R> &a) {
    weight nu = a.wt;
    if (nu[i] == 0) return zero_elem<R>(X, nu); // no letter i anywhere
    --nu[i];
    free_elem<R> r = zero_elem<R>(X, nu);
    for (const auto &[w, c] : a.terms) {
        long prefix = 0;
        for (std::size_t t = 0; t < w.size(); ++t) {
            if (w[t] == i) {
                word sub;
                sub.reserve(w.size() - 1);
                sub.insert(sub.end(), w.begin(), w.begin() + t);
                sub.insert(sub.end(), w.begin() + t + 1, w.end());
                // prefix has weight -(sum of alpha), hence the negative exponent
                r.add_term(sub, c * ratfunc<R>(laurent<R>::qpow(static_cast<int>(-prefix))));
            }
            prefix += X.gram[w[t]][i];
        }
    }
    return r;
}

template <typename R>
free_elem<R> derive_right(const cartan_datum &X, int i, const free_elem<R> &a) {
    return star(derive_left(X, i, star(a)));
}

// memoized scaled bilinear form; thread-safe, values are pure so redundant
// concurrent computation is harmless
template <typename R>
class form_cache {
public:
    explicit form_cache(const cartan_datum &X, R one = R(1)) : X_(&X), one_(std::move(one)) {}

    const cartan_datum &datum() const { return *X_; }

    laurent<R> scaled(const word &a, const word &b) {
        if (a.size() != b.size()) return laurent<R>();
        if (a.empty()) return laurent<R>(one_);
        std::pair<word, word> key = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
        {
            std::lock_guard<std::mutex> lk(mu_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        const word &x = key.first, &y = key.second;
        int i = x[0];
        word tail(x.begin() + 1, x.end());
        laurent<R> acc;
        long prefix = 0;
        for (std::size_t t = 0; t < y.size(); ++t) {
            if (y[t] == i) {
                word sub;
                sub.reserve(y.size() - 1);
                sub.insert(sub.end(), y.begin(), y.begin() + t);
                sub.insert(sub.end(), y.begin() + t + 1, y.end());
                acc += scaled(tail, sub).shifted(static_cast<int>(-prefix));
            }
            prefix += X_->gram[y[t]][i];
        }
        {
            std::lock_guard<std::mutex> lk(mu_);
            memo_.emplace(key, acc);
        }
        return acc;
    }

    // scaling factor prod_i (1 - q_i^2)^{nu_i}
    laurent<R> denominator(const weight &nu) const {
        laurent<R> d(one_);
        for (int i = 0; i < X_->n(); ++i) {
            laurent<R> f = laurent<R>(one_) - laurent<R>::monomial(2 * static_cast<int>(X_->d(i)), one_);
            for (int k = 0; k < nu[i]; ++k) d *= f;
        }
        return d;
    }

    // scaled pairing of a word against a general element of the same weight
    ratfunc<R> scaled_pair(const word &a, const free_elem<R> &x) {
        ratfunc<R> acc;
        for (const auto &[w, c] : x.terms) acc += c * ratfunc<R>(scaled(a, w));
        return acc;
    }

    // the genuine form value
    ratfunc<R> value(const free_elem<R> &x, const free_elem<R> &y) {
        if (x.wt != y.wt) return ratfunc<R>();
        ratfunc<R> acc;
        for (const auto &[wx, cx] : x.terms)
            for (const auto &[wy, cy] : y.terms)
                acc += cx * cy * ratfunc<R>(scaled(wx, wy));
        return acc / ratfunc<R>(denominator(x.wt));
    }

    std::size_t size() const { return memo_.size(); }

private:
    const cartan_datum *X_;
    R one_;
    std::map<std::pair<word, word>, laurent<R>> memo_;
    std::mutex mu_;
};

// ---- coproduct (test oracle) ----------------------------------------------
//
// r(f_i) = f_i x 1 + 1 x f_i extended multiplicatively for the twisted
// product (x1 x x2)(x1' x x2') = q^{-(wt x2, wt x1')} x1 x1' x x2 x2'.
// Exposed for cross-validation of the form; no persistent tensor type.

template <typename R>
using tensor_elem = std::map<std::pair<word, word>, ratfunc<R>>;

template <typename R>
tensor_elem<R> coproduct(const cartan_datum &X, const free_elem<R> &x) {
    tensor_elem<R> out;
    for (const auto &[w, c] : x.terms) {
        tensor_elem<R> cur;
        cur[{word{}, word{}}] = ratfunc<R>(1);
        for (int i : w) {
            tensor_elem<R> nxt;
            for (const auto &[pr, coeff] : cur) {
                const auto &[w1, w2] = pr;
                // (w1 x w2)(f_i x 1): twist by the weight of w2 against a_i
                long p = 0;
                for (int j : w2) p += X.gram[j][i];
                word l1 = w1;
                l1.push_back(i);
                auto key1 = std::make_pair(l1, w2);
                auto c1 = coeff * ratfunc<R>(laurent<R>::qpow(static_cast<int>(-p)));
                auto it1 = nxt.find(key1);
                if (it1 == nxt.end()) nxt.emplace(key1, c1);
                else { it1->second += c1; if (it1->second.is_zero()) nxt.erase(it1); }
                // (w1 x w2)(1 x f_i): no twist
                word l2 = w2;
                l2.push_back(i);
                auto key2 = std::make_pair(w1, l2);
                auto it2 = nxt.find(key2);
                if (it2 == nxt.end()) nxt.emplace(key2, coeff);
                else { it2->second += coeff; if (it2->second.is_zero()) nxt.erase(it2); }
            }
            cur = std::move(nxt);
        }
        for (const auto &[pr, coeff] : cur) {
            auto v = coeff * c;
            if (v.is_zero()) continue;
            auto it = out.find(pr);
            if (it == out.end()) out.emplace(pr, v);
            else { it->second += v; if (it->second.is_zero()) out.erase(it); }
        }
    }
    return out;
}

} // namespace qfold

#endif
