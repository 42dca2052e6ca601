#ifndef QFOLD_TESTS_ORACLES_HPP
#define QFOLD_TESTS_ORACLES_HPP

// Independent oracles used by the tests only.  Nothing here touches the
// implementation paths it is checking.

#include <functional>
#include <random>
#include <set>

#include "qfold/uqminus.hpp"

namespace qfold::oracles {

// positive roots of a simply-laced finite-type datum by closure: beta +
// alpha_i is a root whenever (beta, alpha_i) < 0; heights are capped to
// guard against non-finite input
inline std::vector<weight> positive_roots_simply_laced(const cartan_datum &X, int cap = 16) {
    std::set<weight> roots;
    for (int i = 0; i < X.n(); ++i) {
        weight a(X.n(), 0);
        a[i] = 1;
        roots.insert(a);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::set<weight> next = roots;
        for (const auto &b : roots)
            for (int i = 0; i < X.n(); ++i) {
                if (X.weight_pairing(b, i) < 0) {
                    weight c = b;
                    ++c[i];
                    if (height(c) <= cap && !next.count(c)) {
                        next.insert(c);
                        grew = true;
                    }
                }
            }
        roots = std::move(next);
    }
    return {roots.begin(), roots.end()};
}

// number of multisets of positive roots summing to nu
inline long kostant_partitions(const std::vector<weight> &roots, const weight &nu) {
    std::function<long(std::size_t, const weight &)> rec = [&](std::size_t k, const weight &left) -> long {
        if (is_zero_weight(left)) return 1;
        if (k == roots.size()) return 0;
        long total = 0;
        weight rem = left;
        for (int mult = 0;; ++mult) {
            if (mult > 0) {
                bool ok = true;
                for (std::size_t i = 0; i < rem.size(); ++i) {
                    rem[i] -= roots[k][i];
                    if (rem[i] < 0) ok = false;
                }
                if (!ok) break;
            }
            total += rec(k + 1, rem);
        }
        return total;
    };
    return rec(0, nu);
}

// uniform random homogeneous element with small Laurent coefficients
template <typename R>
free_elem<R> random_elem(uq_ctx<R> &U, const weight &nu, std::mt19937 &rng, int terms = 3) {
    auto words = enumerate_words(nu);
    free_elem<R> x = zero_elem<R>(U.datum(), nu);
    std::uniform_int_distribution<int> widx(0, static_cast<int>(words.size()) - 1);
    std::uniform_int_distribution<int> cf(-3, 3);
    std::uniform_int_distribution<int> ex(-2, 2);
    for (int t = 0; t < terms; ++t) {
        laurent<R> c = laurent<R>::monomial(ex(rng), U.one()) * laurent<R>(cf(rng));
        x.add_term(words[widx(rng)], ratfunc<R>(c));
    }
    return x;
}

inline weight random_weight(int n, int hmin, int hmax, std::mt19937 &rng) {
    std::uniform_int_distribution<int> hd(hmin, hmax);
    int h = hd(rng);
    weight nu(n, 0);
    std::uniform_int_distribution<int> nd(0, n - 1);
    for (int t = 0; t < h; ++t) ++nu[nd(rng)];
    return nu;
}

} // namespace qfold::oracles

#endif
