#ifndef QFOLD_CARTAN_HPP
#define QFOLD_CARTAN_HPP

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfold {

// Cartan data, diagram automorphisms, folding along orbits and unfolding to a
// symmetric datum.  Weights are stored as nonnegative coordinate vectors in
// node order; an element of weight nu lives in degree -nu of the root lattice,
// the sign is carried by context throughout.

using weight = std::vector<int>;

inline int height(const weight &w) { return std::accumulate(w.begin(), w.end(), 0); }
inline bool is_zero_weight(const weight &w) {
    return std::all_of(w.begin(), w.end(), [](int x) { return x == 0; });
}
inline weight add_weight(weight a, const weight &b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

struct validation {
    bool ok = true;
    std::string diagnostic;
};

struct cartan_datum {
    std::vector<std::string> labels;
    std::vector<std::vector<long>> gram;

    int n() const { return static_cast<int>(labels.size()); }
    long pairing(int i, int j) const { return gram[i][j]; }
    long d(int i) const { return gram[i][i] / 2; }
    // Cartan matrix entry a_ij = 2(a_i,a_j)/(a_i,a_i)
    long a(int i, int j) const { return 2 * gram[i][j] / gram[i][i]; }
    bool is_symmetric_type() const {
        for (int i = 0; i < n(); ++i)
            if (gram[i][i] != 2) return false;
        return true;
    }

    // (nu, alpha_i) for nu given by nonnegative coordinates
    long weight_pairing(const weight &w, int i) const {
        long s = 0;
        for (int j = 0; j < n(); ++j) s += static_cast<long>(w[j]) * gram[j][i];
        return s;
    }

    validation validate() const {
        validation v;
        auto fail = [&](std::string msg) { v.ok = false; v.diagnostic = std::move(msg); return v; };
        if (labels.size() != gram.size()) return fail("label/gram size mismatch");
        for (const auto &row : gram)
            if (row.size() != gram.size()) return fail("gram matrix is not square");
        for (int i = 0; i < n(); ++i)
            for (int j = 0; j < n(); ++j)
                if (gram[i][j] != gram[j][i])
                    return fail("gram not symmetric at (" + labels[i] + "," + labels[j] + ")");
        for (int i = 0; i < n(); ++i)
            if (gram[i][i] <= 0 || gram[i][i] % 2 != 0)
                return fail("diagonal entry at " + labels[i] + " is not a positive even integer");
        for (int i = 0; i < n(); ++i)
            for (int j = 0; j < n(); ++j) {
                if (i == j) continue;
                long two_ij = 2 * gram[i][j];
                if (two_ij > 0)
                    return fail("positive off-diagonal pairing at (" + labels[i] + "," + labels[j] + ")");
                if (two_ij % gram[i][i] != 0)
                    return fail("2(a_i,a_j)/(a_i,a_i) not integral at (" + labels[i] + "," + labels[j] + ")");
            }
        return v;
    }

    // reorder nodes so labels are ascending; makes downstream computations
    // independent of the presentation order of the input file
    cartan_datum sorted_by_label() const {
        std::vector<int> idx(labels.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return labels[a] < labels[b]; });
        cartan_datum r;
        r.labels.resize(labels.size());
        r.gram.assign(labels.size(), std::vector<long>(labels.size(), 0));
        for (std::size_t i = 0; i < idx.size(); ++i) {
            r.labels[i] = labels[idx[i]];
            for (std::size_t j = 0; j < idx.size(); ++j) r.gram[i][j] = gram[idx[i]][idx[j]];
        }
        return r;
    }

    friend bool operator==(const cartan_datum &a, const cartan_datum &b) {
        return a.labels == b.labels && a.gram == b.gram;
    }
};

struct diagram_aut {
    std::vector<int> perm; // node i maps to perm[i]

    int order() const {
        int n = static_cast<int>(perm.size());
        std::vector<int> cur(perm);
        int ord = 1;
        auto is_id = [&](const std::vector<int> &p) {
            for (int i = 0; i < n; ++i)
                if (p[i] != i) return false;
            return true;
        };
        while (!is_id(cur)) {
            std::vector<int> nxt(n);
            for (int i = 0; i < n; ++i) nxt[i] = perm[cur[i]];
            cur = std::move(nxt);
            ++ord;
            if (ord > 1000) throw std::logic_error("diagram_aut: runaway order");
        }
        return ord;
    }

    diagram_aut power(int k) const {
        int n = static_cast<int>(perm.size());
        diagram_aut r;
        r.perm.resize(n);
        std::iota(r.perm.begin(), r.perm.end(), 0);
        for (int s = 0; s < k; ++s) {
            std::vector<int> nxt(n);
            for (int i = 0; i < n; ++i) nxt[i] = perm[r.perm[i]];
            r.perm = std::move(nxt);
        }
        return r;
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < perm.size(); ++i)
            if (perm[i] != static_cast<int>(i)) return false;
        return true;
    }

    bool preserves(const cartan_datum &X) const {
        if (static_cast<int>(perm.size()) != X.n()) return false;
        std::vector<char> seen(perm.size(), 0);
        for (int p : perm) {
            if (p < 0 || p >= X.n() || seen[p]) return false;
            seen[p] = 1;
        }
        for (int i = 0; i < X.n(); ++i)
            for (int j = 0; j < X.n(); ++j)
                if (X.gram[perm[i]][perm[j]] != X.gram[i][j]) return false;
        return true;
    }

    // orbits sorted by smallest member; member lists start at the smallest
    // and follow the cycle
    std::vector<std::vector<int>> orbits() const {
        int n = static_cast<int>(perm.size());
        std::vector<char> used(n, 0);
        std::vector<std::vector<int>> out;
        for (int i = 0; i < n; ++i) {
            if (used[i]) continue;
            std::vector<int> orb;
            int j = i;
            do {
                orb.push_back(j);
                used[j] = 1;
                j = perm[j];
            } while (j != i);
            out.push_back(std::move(orb));
        }
        return out;
    }
};

inline bool is_admissible(const cartan_datum &X, const diagram_aut &s) {
    if (!s.preserves(X)) throw std::invalid_argument("automorphism does not preserve the bilinear form");
    for (const auto &orb : s.orbits())
        for (std::size_t a = 0; a < orb.size(); ++a)
            for (std::size_t b = a + 1; b < orb.size(); ++b)
                if (X.gram[orb[a]][orb[b]] != 0) return false;
    return true;
}

struct fold_result {
    cartan_datum folded;
    std::vector<int> orbit_of;            // node index -> folded node index
    std::vector<std::vector<int>> orbits; // folded node index -> members
};

// induced Cartan datum on the orbit set:
//   (a_eta,a_eta) = (a_i,a_i)|eta|,   (a_eta,a_eta') = sum over members
inline fold_result fold(const cartan_datum &X, const diagram_aut &s) {
    if (!is_admissible(X, s)) throw std::invalid_argument("automorphism is not admissible");
    fold_result r;
    r.orbits = s.orbits();
    int m = static_cast<int>(r.orbits.size());
    r.orbit_of.assign(X.n(), -1);
    for (int e = 0; e < m; ++e)
        for (int i : r.orbits[e]) r.orbit_of[i] = e;
    r.folded.labels.resize(m);
    for (int e = 0; e < m; ++e) {
        std::vector<std::string> names;
        for (int i : r.orbits[e]) names.push_back(X.labels[i]);
        std::sort(names.begin(), names.end());
        std::string lab = names[0];
        for (std::size_t k = 1; k < names.size(); ++k) lab += "+" + names[k];
        r.folded.labels[e] = lab;
    }
    r.folded.gram.assign(m, std::vector<long>(m, 0));
    for (int e = 0; e < m; ++e)
        for (int f = 0; f < m; ++f) {
            if (e == f) {
                int i = r.orbits[e][0];
                r.folded.gram[e][e] = X.gram[i][i] * static_cast<long>(r.orbits[e].size());
            } else {
                long sum = 0;
                for (int i : r.orbits[e])
                    for (int j : r.orbits[f]) sum += X.gram[i][j];
                r.folded.gram[e][f] = sum;
            }
        }
    auto v = r.folded.validate();
    if (!v.ok) throw std::logic_error("folded datum failed validation: " + v.diagnostic);
    return r;
}

struct unfold_result {
    cartan_datum unfolded;
    diagram_aut aut;
    std::vector<int> group_of; // unfolded node -> original node
};

// symmetric datum on D = disjoint union of D_i with |D_i| = d_i, cyclic sigma
// on each D_i, and c-fold edges on the (sigma x sigma)-orbit of the pair of
// smallest members, c = -(a_i,a_j)/lcm(d_i,d_j)
inline unfold_result unfold(const cartan_datum &X) {
    auto v = X.validate();
    if (!v.ok) throw std::invalid_argument("unfold: invalid datum: " + v.diagnostic);
    unfold_result r;
    std::vector<int> base(X.n(), 0);
    int total = 0;
    for (int i = 0; i < X.n(); ++i) {
        base[i] = total;
        total += static_cast<int>(X.d(i));
    }
    r.unfolded.labels.resize(total);
    r.group_of.assign(total, -1);
    r.aut.perm.assign(total, 0);
    for (int i = 0; i < X.n(); ++i) {
        int di = static_cast<int>(X.d(i));
        for (int t = 0; t < di; ++t) {
            r.unfolded.labels[base[i] + t] = X.labels[i] + "." + std::to_string(t);
            r.group_of[base[i] + t] = i;
            r.aut.perm[base[i] + t] = base[i] + (t + 1) % di;
        }
    }
    r.unfolded.gram.assign(total, std::vector<long>(total, 0));
    for (int x = 0; x < total; ++x) r.unfolded.gram[x][x] = 2;
    for (int i = 0; i < X.n(); ++i)
        for (int j = i + 1; j < X.n(); ++j) {
            long pij = X.gram[i][j];
            if (pij == 0) continue;
            long di = X.d(i), dj = X.d(j);
            long l = std::lcm(di, dj);
            if ((-pij) % l != 0) throw std::logic_error("unfold: pairing not divisible by lcm");
            long c = -pij / l;
            for (long t = 0; t < l; ++t) {
                int x = base[i] + static_cast<int>(t % di);
                int y = base[j] + static_cast<int>(t % dj);
                r.unfolded.gram[x][y] -= c;
                r.unfolded.gram[y][x] -= c;
            }
        }
    if (!r.unfolded.is_symmetric_type()) throw std::logic_error("unfold: result not symmetric");
    if (!is_admissible(r.unfolded, r.aut)) throw std::logic_error("unfold: result automorphism not admissible");
    return r;
}

// isomorphism of Cartan data by backtracking over degree-compatible
// assignments; fine at desk scale
namespace detail {
inline bool iso_dfs(const cartan_datum &A, const cartan_datum &B, std::vector<int> &map,
                    std::vector<char> &used, int i) {
    if (i == A.n()) return true;
    for (int j = 0; j < B.n(); ++j) {
        if (used[j] || A.gram[i][i] != B.gram[j][j]) continue;
        bool ok = true;
        for (int k = 0; k < i && ok; ++k)
            if (A.gram[i][k] != B.gram[j][map[k]]) ok = false;
        if (!ok) continue;
        used[j] = 1;
        map[i] = j;
        if (iso_dfs(A, B, map, used, i + 1)) return true;
        used[j] = 0;
    }
    return false;
}
} // namespace detail

inline bool isomorphic(const cartan_datum &A, const cartan_datum &B) {
    if (A.n() != B.n()) return false;
    std::vector<int> map(A.n(), -1);
    std::vector<char> used(A.n(), 0);
    return detail::iso_dfs(A, B, map, used, 0);
}

// ---- prime-power factorization of an admissible automorphism --------------

struct fold_stage {
    cartan_datum X;
    diagram_aut s;        // admissible, prime-power order
    cartan_datum folded;  // datum induced from (X, s)
    std::vector<int> orbit_of;
};

struct fold_chain {
    std::vector<fold_stage> stages; // empty for the identity automorphism
};

namespace detail {
inline diagram_aut induced_on_orbits(const diagram_aut &s, const fold_result &fr) {
    diagram_aut out;
    out.perm.resize(fr.orbits.size());
    for (std::size_t e = 0; e < fr.orbits.size(); ++e)
        out.perm[e] = fr.orbit_of[s.perm[fr.orbits[e][0]]];
    return out;
}
inline bool is_prime_power(int n) {
    if (n < 2) return false;
    for (int p = 2; p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            return n == 1;
        }
    return false;
}
} // namespace detail

// decompose sigma into a chain of admissible automorphisms of prime-power
// order; folding along the chain reproduces fold(X, sigma) up to the natural
// identification of orbit sets
inline fold_chain factor_automorphism(const cartan_datum &X, const diagram_aut &s) {
    fold_chain chain;
    int n = s.order();
    if (n == 1) return chain;
    if (detail::is_prime_power(n)) {
        fold_result fr = fold(X, s);
        chain.stages.push_back({X, s, fr.folded, fr.orbit_of});
        return chain;
    }
    int p = 2;
    while (n % p != 0) ++p;
    int m = 1;
    int rest = n;
    while (rest % p == 0) { rest /= p; m *= p; }
    // tau = s^m has order n/m, coprime to p; recurse, then finish with the
    // induced automorphism of order m on the tau-folded datum
    diagram_aut tau = s.power(m);
    fold_chain sub = factor_automorphism(X, tau);
    // compose orbit maps of the sub-chain to locate tau-orbits in its result
    fold_result tau_fr = fold(X, tau);
    diagram_aut sbar = detail::induced_on_orbits(s, tau_fr);
    // the sub-chain must end at a datum isomorphic to fold(X, tau); rebuild it
    // on tau_fr.folded so indices line up
    fold_result top = fold(tau_fr.folded, sbar);
    chain.stages = std::move(sub.stages);
    chain.stages.push_back({tau_fr.folded, sbar, top.folded, top.orbit_of});
    return chain;
}

// verify that folding stage by stage matches the one-shot folding: same final
// datum up to isomorphism, and the composed node partition equals the orbit
// partition of sigma
inline bool chain_matches(const cartan_datum &X, const diagram_aut &s, const fold_chain &chain) {
    if (chain.stages.empty()) return s.is_identity();
    // composed map: original node -> final chain index
    std::vector<int> comp(X.n());
    std::iota(comp.begin(), comp.end(), 0);
    for (const auto &st : chain.stages)
        for (auto &c : comp) c = st.orbit_of[c];
    fold_result direct = fold(X, s);
    for (int i = 0; i < X.n(); ++i)
        for (int j = 0; j < X.n(); ++j) {
            bool same_direct = direct.orbit_of[i] == direct.orbit_of[j];
            bool same_chain = comp[i] == comp[j];
            if (same_direct != same_chain) return false;
        }
    return isomorphic(direct.folded, chain.stages.back().folded);
}

// ---- weights across a fold -------------------------------------------------

inline weight sigma_weight(const weight &w, const diagram_aut &s) {
    weight r(w.size(), 0);
    for (std::size_t i = 0; i < w.size(); ++i) r[s.perm[i]] = w[i];
    return r;
}

// sum over an orbit of alpha_i maps to alpha_eta; requires the weight to be
// constant on orbits
inline weight fold_weight(const weight &w, const fold_result &fr) {
    weight r(fr.orbits.size(), 0);
    for (std::size_t e = 0; e < fr.orbits.size(); ++e) {
        int c = w[fr.orbits[e][0]];
        for (int i : fr.orbits[e])
            if (w[i] != c) throw std::invalid_argument("fold_weight: weight not sigma-invariant");
        r[e] = c;
    }
    return r;
}

inline weight unfold_weight(const weight &w, const fold_result &fr, int n_nodes) {
    weight r(n_nodes, 0);
    for (std::size_t e = 0; e < fr.orbits.size(); ++e)
        for (int i : fr.orbits[e]) r[i] = w[e];
    return r;
}

} // namespace qfold

#endif
