#ifndef QFOLD_CANON_HPP
#define QFOLD_CANON_HPP

#include <atomic>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "uqminus.hpp"

namespace qfold {

// Weight-by-weight construction of the canonical basis over Q(q).
//
// At weight nu, every basis element b with eps_i(b) = a > 0 arises from the
// already known b' at nu - a alpha_i with eps_i(b') = 0: form y = f_i^(a) b',
// project onto f_i^(a) ker(ir), and correct the bar-asymmetry by elements
// with eps_i > a, which the descending-a loop has already produced.  The
// discrepancy bar(x) - x expands over those elements with antisymmetric
// Laurent coefficients; taking the positive-degree part of each coefficient
// is the unique correction making the result bar-invariant (the constant
// term vanishes by antisymmetry).  Any failure of these facts aborts rather
// than guessing; uniqueness of the outcome is a tested invariant.
//
// Elements are stored through their coordinates over the pivot words of the
// weight space, which is a schedule-independent canonical representative.

struct cb_elem {
    weight nu;
    std::vector<qrat> coords;  // over pivot words
    std::vector<int> eps;      // per node
    int prov_node = -1;        // smallest node with eps > 0 (unit: -1)
    int prov_a = 0;
    int prov_parent = -1;      // index at weight nu - prov_a * e_node
};

struct build_schedule {
    unsigned seed = 0; // 0: natural node/weight order
};

class canonical_table {
public:
    explicit canonical_table(uq_ctx<Zc> &U) : U_(&U) {}

    uq_ctx<Zc> &ctx() const { return *U_; }
    int max_height() const { return built_height_; }

    bool has(const weight &nu) const { return table_.count(nu) != 0; }
    const std::vector<cb_elem> &at(const weight &nu) const {
        auto it = table_.find(nu);
        if (it == table_.end()) throw std::out_of_range("canonical_table: weight not built");
        return it->second;
    }
    std::vector<weight> weights() const {
        std::vector<weight> out;
        for (const auto &[nu, v] : table_) out.push_back(nu);
        return out;
    }

    free_elem<Zc> rep(const weight &nu, int idx) const {
        const auto &ws = U_->space(nu);
        const cb_elem &e = at(nu)[idx];
        free_elem<Zc> r = zero_elem<Zc>(U_->datum(), nu);
        for (int s = 0; s < ws.dim; ++s) r.add_term(ws.pivot_word(s), e.coords[s]);
        return r;
    }
    free_elem<Zc> rep(const cb_elem &e) const {
        const auto &ws = U_->space(e.nu);
        free_elem<Zc> r = zero_elem<Zc>(U_->datum(), e.nu);
        for (int s = 0; s < ws.dim; ++s) r.add_term(ws.pivot_word(s), e.coords[s]);
        return r;
    }

    // ---- construction ------------------------------------------------------

    void build(int max_height, const build_schedule &sched = {},
               int jobs = 1) {
        const cartan_datum &X = U_->datum();
        if (table_.empty()) {
            weight zero(X.n(), 0);
            cb_elem one;
            one.nu = zero;
            one.coords = {qrat(1)};
            one.eps.assign(X.n(), 0);
            table_[zero] = {one};
        }
        for (int h = built_height_ + 1; h <= max_height; ++h) {
            std::vector<weight> level = weights_of_height(X.n(), h);
            if (sched.seed) {
                std::mt19937 rng(sched.seed + static_cast<unsigned>(h));
                std::shuffle(level.begin(), level.end(), rng);
            }
            std::vector<std::vector<cb_elem>> results(level.size());
            auto work = [&](std::size_t k) { results[k] = build_weight(level[k], sched); };
            if (jobs <= 1) {
                for (std::size_t k = 0; k < level.size(); ++k) work(k);
            } else {
                std::vector<std::thread> ts;
                std::atomic<std::size_t> next{0};
                for (int j = 0; j < jobs; ++j)
                    ts.emplace_back([&] {
                        for (std::size_t k = next.fetch_add(1); k < level.size(); k = next.fetch_add(1))
                            work(k);
                    });
                for (auto &t : ts) t.join();
            }
            for (std::size_t k = 0; k < level.size(); ++k)
                table_[level[k]] = std::move(results[k]);
            built_height_ = h;
        }
        finalize_provenance();
    }

    // coordinates of x in the basis at its weight
    std::vector<qrat> coords_in_basis(const free_elem<Zc> &x) const {
        const auto &inv = basis_inverse(x.wt);
        return matvec(inv, U_->expand(x));
    }

    // ---- crystal structure ---------------------------------------------

    // the unique b' in B_{i;a} with b' = f_i^(a) b mod f_i^{a+1} U; b must
    // have eps_i(b) = 0
    int pi_map(int i, int a, const weight &nu, int idx) const {
        const cb_elem &b = at(nu)[idx];
        if (b.eps[i] != 0) throw std::invalid_argument("pi_map: source not in the eps_i = 0 layer");
        weight target = nu;
        target[i] += a;
        free_elem<Zc> z = qfold::multiply(U_->divided_power(i, a), rep(b));
        const auto &targets = at(target);
        int found = -1;
        for (int t = 0; t < static_cast<int>(targets.size()); ++t) {
            if (targets[t].eps[i] != a) continue;
            free_elem<Zc> diff = sub(rep(targets[t]), z);
            if (congruent_mod_fi_power(i, a + 1, diff)) {
                if (found != -1) throw std::logic_error("pi_map: congruence target not unique");
                found = t;
            }
        }
        if (found == -1) throw std::logic_error("pi_map: no congruence target");
        return found;
    }

    // Kashiwara operator on basis labels: B_{i;a} -> B_{i;a+1}
    int crystal_F(int i, const weight &nu, int idx) const {
        const cb_elem &b = at(nu)[idx];
        int a = b.eps[i];
        weight base = nu;
        base[i] -= a;
        int b0 = (a == 0) ? idx : pi_inverse(i, a, nu, idx);
        return pi_map(i, a + 1, base, b0);
    }

    // inverse: 0 on the eps_i = 0 layer is signalled by -1
    int crystal_E(int i, const weight &nu, int idx) const {
        const cb_elem &b = at(nu)[idx];
        int a = b.eps[i];
        if (a == 0) return -1;
        weight base = nu;
        base[i] -= a;
        int b0 = pi_inverse(i, a, nu, idx);
        if (a == 1) return b0;
        return pi_map(i, a - 1, base, b0);
    }

    int pi_inverse(int i, int a, const weight &nu, int idx) const {
        weight base = nu;
        base[i] -= a;
        const auto &layer = at(base);
        int found = -1;
        for (int s = 0; s < static_cast<int>(layer.size()); ++s) {
            if (layer[s].eps[i] != 0) continue;
            if (pi_map(i, a, base, s) == idx) {
                if (found != -1) throw std::logic_error("pi_inverse: not injective");
                found = s;
            }
        }
        if (found == -1) throw std::logic_error("pi_inverse: no preimage");
        return found;
    }

    // does x lie in f_i^k U (all decomposition components below k vanish)?
    bool congruent_mod_fi_power(int i, int k, const free_elem<Zc> &x) const {
        auto dec = U_->i_decompose(i, x);
        for (int n = 0; n < k && n < static_cast<int>(dec.size()); ++n)
            if (!U_->is_radical_zero(dec[n])) return false;
        return true;
    }

private:
    std::vector<cb_elem> build_weight(const weight &nu, const build_schedule &sched) {
        const cartan_datum &X = U_->datum();
        const auto &ws = U_->space(nu);
        std::vector<cb_elem> elems;

        std::vector<int> node_order(X.n());
        std::iota(node_order.begin(), node_order.end(), 0);
        if (sched.seed) {
            std::mt19937 rng(sched.seed * 7919u + static_cast<unsigned>(height(nu)));
            std::shuffle(node_order.begin(), node_order.end(), rng);
        }

        for (int i : node_order) {
            for (int a = nu[i]; a >= 1; --a) {
                weight src = nu;
                src[i] -= a;
                const auto &sources = table_.at(src);
                for (int sidx = 0; sidx < static_cast<int>(sources.size()); ++sidx) {
                    const cb_elem &bp = sources[sidx];
                    if (bp.eps[i] != 0) continue;
                    free_elem<Zc> y = qfold::multiply(U_->divided_power(i, a), rep(bp));
                    free_elem<Zc> x = U_->reduce_to_pivots(U_->component(i, a, y));
                    cb_elem cand = correct_and_pack(nu, i, a, sidx, x, elems, ws);
                    bool dup = false;
                    for (const auto &e : elems)
                        if (e.coords == cand.coords) { dup = true; break; }
                    if (!dup) {
                        if (static_cast<int>(elems.size()) + 1 > ws.dim)
                            throw std::logic_error("canonical basis: more elements than the weight-space dimension at " +
                                                   weight_str(nu));
                        elems.push_back(std::move(cand));
                    }
                }
            }
        }
        if (static_cast<int>(elems.size()) != ws.dim)
            throw std::logic_error("canonical basis: element count " + std::to_string(elems.size()) +
                                   " != dim " + std::to_string(ws.dim) + " at " + weight_str(nu));
        std::sort(elems.begin(), elems.end(), [](const cb_elem &a, const cb_elem &b) {
            return coord_key(a.coords) < coord_key(b.coords);
        });
        return elems;
    }

    cb_elem correct_and_pack(const weight &nu, int i, int a, int parent,
                             const free_elem<Zc> &x, const std::vector<cb_elem> &built,
                             const weight_space<Zc> &ws) {
        // discrepancy coordinates: bar acts coefficientwise on the pivot words
        std::vector<qrat> xc(ws.dim);
        for (int s = 0; s < ws.dim; ++s) xc[s] = qrat();
        for (const auto &[w, c] : x.terms) {
            auto it = std::lower_bound(ws.words.begin(), ws.words.end(), w);
            int widx = static_cast<int>(it - ws.words.begin());
            int s = -1;
            for (int k = 0; k < ws.dim; ++k)
                if (ws.pivots[k] == widx) { s = k; break; }
            if (s == -1) throw std::logic_error("canonical basis: representative not pivot-supported");
            xc[s] = c;
        }
        std::vector<qrat> delta(ws.dim);
        bool any = false;
        for (int s = 0; s < ws.dim; ++s) {
            delta[s] = xc[s].bar() - xc[s];
            if (!delta[s].is_zero()) any = true;
        }
        std::vector<qrat> bc = xc;
        if (any) {
            std::vector<int> cand;
            for (int e = 0; e < static_cast<int>(built.size()); ++e)
                if (built[e].eps[i] > a) cand.push_back(e);
            if (cand.empty())
                throw std::logic_error("canonical basis: bar discrepancy with no higher layer at " + weight_str(nu));
            std::vector<std::vector<qrat>> A(ws.dim, std::vector<qrat>(cand.size()));
            for (std::size_t j = 0; j < cand.size(); ++j)
                for (int s = 0; s < ws.dim; ++s) A[s][j] = built[cand[j]].coords[s];
            auto sol = solve(A, delta);
            if (!sol)
                throw std::logic_error("canonical basis: discrepancy outside the higher layer at " + weight_str(nu));
            for (std::size_t j = 0; j < cand.size(); ++j) {
                auto lp = (*sol)[j].as_laurent();
                if (!lp)
                    throw std::logic_error("canonical basis: discrepancy coefficient not Laurent at " + weight_str(nu));
                if (!(lp->bar() == -*lp) || !lp->coeff(0).is_zero())
                    throw std::logic_error("canonical basis: discrepancy coefficient not antisymmetric at " + weight_str(nu));
                zpoly pos; // positive-degree part
                for (const auto &[e, c] : lp->terms)
                    if (e > 0) pos += zpoly::monomial(e, c);
                if (pos.is_zero()) continue;
                for (int s = 0; s < ws.dim; ++s)
                    bc[s] += qrat(pos) * built[cand[j]].coords[s];
            }
        }
        cb_elem out;
        out.nu = nu;
        out.coords = std::move(bc);
        // bar-invariance of the corrected element
        for (int s = 0; s < ws.dim; ++s)
            if (!(out.coords[s].bar() == out.coords[s]))
                throw std::logic_error("canonical basis: corrected element not bar-invariant at " + weight_str(nu));
        free_elem<Zc> r = zero_elem<Zc>(U_->datum(), nu);
        for (int s = 0; s < ws.dim; ++s) r.add_term(ws.pivot_word(s), out.coords[s]);
        out.eps.assign(U_->datum().n(), 0);
        for (int j = 0; j < U_->datum().n(); ++j) out.eps[j] = U_->epsilon(j, r);
        if (out.eps[i] != a)
            throw std::logic_error("canonical basis: route eps mismatch at " + weight_str(nu));
        out.prov_node = i;
        out.prov_a = a;
        out.prov_parent = parent;
        return out;
    }

    void finalize_provenance() {
        for (auto &[nu, elems] : table_) {
            for (auto &e : elems) {
                int node = -1;
                for (int j = 0; j < static_cast<int>(e.eps.size()); ++j)
                    if (e.eps[j] > 0) { node = j; break; }
                if (node == -1) { e.prov_node = -1; e.prov_a = 0; e.prov_parent = -1; continue; }
                e.prov_node = node;
                e.prov_a = e.eps[node];
            }
        }
        for (auto &[nu, elems] : table_) {
            for (int idx = 0; idx < static_cast<int>(elems.size()); ++idx) {
                auto &e = elems[idx];
                if (e.prov_node == -1) continue;
                e.prov_parent = pi_inverse(e.prov_node, e.prov_a, nu, idx);
            }
        }
    }

    const std::vector<std::vector<qrat>> &basis_inverse(const weight &nu) const {
        std::lock_guard<std::mutex> lk(inv_mu_);
        auto it = basis_inv_.find(nu);
        if (it != basis_inv_.end()) return it->second;
        const auto &elems = at(nu);
        int d = static_cast<int>(elems.size());
        std::vector<std::vector<qrat>> M(d, std::vector<qrat>(d));
        for (int s = 0; s < d; ++s)
            for (int j = 0; j < d; ++j) M[s][j] = elems[j].coords[s];
        auto inv = invert(M);
        if (!inv) throw std::logic_error("canonical_table: basis coordinate matrix singular");
        return basis_inv_.emplace(nu, std::move(*inv)).first->second;
    }

    static std::vector<weight> weights_of_height(int n, int h) {
        std::vector<weight> out;
        weight cur(n, 0);
        std::function<void(int, int)> rec = [&](int pos, int left) {
            if (pos == n - 1) {
                cur[pos] = left;
                out.push_back(cur);
                return;
            }
            for (int v = 0; v <= left; ++v) {
                cur[pos] = v;
                rec(pos + 1, left - v);
            }
        };
        rec(0, h);
        return out;
    }

    static std::string coord_key(const std::vector<qrat> &c) {
        std::string k;
        for (const auto &x : c) { k += x.str(); k += '|'; }
        return k;
    }
    static std::string weight_str(const weight &nu) {
        std::string s = "(";
        for (std::size_t i = 0; i < nu.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(nu[i]);
        }
        return s + ")";
    }

    uq_ctx<Zc> *U_;
    std::map<weight, std::vector<cb_elem>> table_;
    int built_height_ = 0;
    mutable std::map<weight, std::vector<std::vector<qrat>>> basis_inv_;
    mutable std::mutex inv_mu_;
};

// identify the image of x as a single basis element: its coordinate vector
// must be exactly a unit vector
inline int locate_in_basis(const canonical_table &T, const free_elem<Zc> &x) {
    auto c = T.coords_in_basis(x);
    int found = -1;
    for (int j = 0; j < static_cast<int>(c.size()); ++j) {
        if (c[j].is_zero()) continue;
        if (!(c[j] == qrat(1)) || found != -1) return -1;
        found = j;
    }
    return found;
}

// the automorphism permutes the basis; eps profiles transport along it
struct basis_map {
    std::map<weight, std::vector<int>> perm;
};

inline basis_map basis_automorphism(const canonical_table &T, const diagram_aut &s) {
    basis_map out;
    for (const auto &nu : T.weights()) {
        const auto &elems = T.at(nu);
        weight snu = sigma_weight(nu, s);
        std::vector<int> p(elems.size(), -1);
        for (int idx = 0; idx < static_cast<int>(elems.size()); ++idx) {
            free_elem<Zc> img = apply_aut(T.rep(nu, idx), s);
            int j = locate_in_basis(T, img);
            if (j == -1)
                throw std::logic_error("basis_automorphism: image is not a basis element");
            const auto &src = elems[idx];
            const auto &dst = T.at(snu)[j];
            for (int i = 0; i < static_cast<int>(src.eps.size()); ++i)
                if (dst.eps[s.perm[i]] != src.eps[i])
                    throw std::logic_error("basis_automorphism: eps profile not equivariant");
            p[idx] = j;
        }
        out.perm[nu] = std::move(p);
    }
    return out;
}

inline basis_map basis_star(const canonical_table &T) {
    basis_map out;
    for (const auto &nu : T.weights()) {
        const auto &elems = T.at(nu);
        std::vector<int> p(elems.size(), -1);
        for (int idx = 0; idx < static_cast<int>(elems.size()); ++idx) {
            int j = locate_in_basis(T, star(T.rep(nu, idx)));
            if (j == -1) throw std::logic_error("basis_star: image is not a basis element");
            p[idx] = j;
        }
        out.perm[nu] = std::move(p);
    }
    return out;
}

} // namespace qfold

#endif
