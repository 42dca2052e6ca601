#ifndef QFOLD_FOLDMODP_HPP
#define QFOLD_FOLDMODP_HPP

#include "canon.hpp"
#include "report.hpp"

namespace qfold {

// Mod-p folding.  For an admissible automorphism of p-power order, the
// orbit algebra V_q is the sigma-fixed subalgebra mod p, divided by the
// ideal J spanned weight by weight by the orbit sums of non-fixed basis
// elements.  Coordinates on V_q are taken in the basis of sigma-fixed
// canonical elements; the generator assignment f_eta^(a) -> g_eta^(a)
// identifies the folded algebra with V_q, which this module checks
// computationally: the folded Serre sums land in J, the assignment is an
// isometry on divided-power monomials, dimensions match per weight, and the
// induced map between the fixed basis and the folded canonical basis is a
// bijection intertwining the Kashiwara operators.

struct vq_elem {
    weight nu;                 // X-side sigma-invariant weight
    std::vector<frat> coords;  // over the fixed basis elements of the weight
};

class fold_context {
public:
    fold_context(const cartan_datum &X_in, const diagram_aut &sigma, std::int64_t p, int max_height)
        : X_(X_in), sigma_(sigma), p_(p), H_(max_height) {
        if (!is_prime_power_of(sigma_.order(), p_))
            throw std::invalid_argument("fold_context: automorphism order is not a power of the prime");
        if (!is_admissible(X_, sigma_)) throw std::invalid_argument("fold_context: not admissible");
        fr_ = fold(X_, sigma_);
        UX_ = std::make_unique<uq_ctx<Zc>>(X_, H_ + 2);
        UuX_ = std::make_unique<uq_ctx<Zc>>(fr_.folded, H_ + 2);
        FX_ = std::make_unique<uq_ctx<Fc>>(X_, H_ + 2, p_);
        FuX_ = std::make_unique<uq_ctx<Fc>>(fr_.folded, H_ + 2, p_);
        BX_ = std::make_unique<canonical_table>(*UX_);
        BuX_ = std::make_unique<canonical_table>(*UuX_);
    }

    void build(int jobs = 1) {
        BX_->build(H_, {}, jobs);
        BuX_->build(H_, {}, jobs);
        sig_ = basis_automorphism(*BX_, sigma_);
        star_X_ = basis_star(*BX_);
        star_uX_ = basis_star(*BuX_);
    }

    const cartan_datum &X() const { return X_; }
    const cartan_datum &uX() const { return fr_.folded; }
    const fold_result &folding() const { return fr_; }
    const diagram_aut &sigma() const { return sigma_; }
    std::int64_t p() const { return p_; }
    int max_height() const { return H_; }
    canonical_table &BX() { return *BX_; }
    canonical_table &BuX() { return *BuX_; }
    uq_ctx<Zc> &ZX() { return *UX_; }
    uq_ctx<Zc> &ZuX() { return *UuX_; }
    uq_ctx<Fc> &QX() { return *FX_; }
    uq_ctx<Fc> &QuX() { return *FuX_; }

    bool is_sigma_invariant(const weight &nu) const { return sigma_weight(nu, sigma_) == nu; }

    std::vector<weight> invariant_weights(int max_h) const {
        std::vector<weight> out;
        for (const auto &nu : BX_->weights())
            if (height(nu) >= 1 && height(nu) <= max_h && is_sigma_invariant(nu)) out.push_back(nu);
        return out;
    }

    // indices of sigma-fixed basis elements at an invariant weight
    const std::vector<int> &fixed_basis(const weight &nu) {
        auto it = fixed_.find(nu);
        if (it != fixed_.end()) return it->second;
        const auto &perm = sig_.perm.at(nu);
        std::vector<int> fx;
        for (int i = 0; i < static_cast<int>(perm.size()); ++i)
            if (perm[i] == i) fx.push_back(i);
        return fixed_.emplace(nu, std::move(fx)).first->second;
    }

    // sigma-orbits on the basis at an invariant weight, nontrivial ones only
    std::vector<std::vector<int>> basis_orbits(const weight &nu) {
        const auto &perm = sig_.perm.at(nu);
        std::vector<char> seen(perm.size(), 0);
        std::vector<std::vector<int>> orbs;
        for (int i = 0; i < static_cast<int>(perm.size()); ++i) {
            if (seen[i]) continue;
            std::vector<int> o;
            int j = i;
            do {
                o.push_back(j);
                seen[j] = 1;
                j = perm[j];
            } while (j != i);
            if (o.size() > 1) orbs.push_back(std::move(o));
        }
        return orbs;
    }

    // ---- mod-p expansion over the reduced canonical basis -----------------

    free_elem<Fc> reduce_elem(const free_elem<Zc> &x) const {
        free_elem<Fc> r;
        r.wt = x.wt;
        for (const auto &[w, c] : x.terms) {
            frat rc = reduce_mod_p(c, p_);
            if (!rc.is_zero()) r.terms.emplace(w, rc);
        }
        return r;
    }

    // coordinates of a mod-p element over the reduced basis phi(B_nu)
    std::vector<frat> expand_fp(const free_elem<Fc> &z) {
        const weight &nu = z.wt;
        const auto &inv = fp_inverse(nu);
        auto v = FX_->expand(z);
        return matvec(inv, v);
    }

    // V_q coordinates of a sigma-fixed mod-p element: expansion coordinates
    // must be constant along basis orbits; the fixed positions survive
    vq_elem project_vq(const free_elem<Fc> &z) {
        const weight &nu = z.wt;
        if (!is_sigma_invariant(nu)) throw std::invalid_argument("project_vq: weight not sigma-invariant");
        auto c = expand_fp(z);
        const auto &perm = sig_.perm.at(nu);
        for (int i = 0; i < static_cast<int>(perm.size()); ++i)
            if (!(c[i] == c[perm[i]]))
                throw std::logic_error("project_vq: coordinates not constant along a sigma-orbit");
        vq_elem out;
        out.nu = nu;
        for (int i : fixed_basis(nu)) out.coords.push_back(c[i]);
        return out;
    }

    bool in_J(const free_elem<Fc> &z) {
        auto c = expand_fp(z);
        const auto &perm = sig_.perm.at(z.wt);
        for (int i = 0; i < static_cast<int>(perm.size()); ++i)
            if (perm[i] == i && !c[i].is_zero()) return false;
        return true;
    }

    // f~_eta^(a): product of divided powers over the orbit, mod p
    free_elem<Fc> orbit_divided_power(int eta, int a) {
        free_elem<Fc> acc = unit_elem<Fc>(X_);
        for (int i : fr_.orbits[eta]) acc = qfold::multiply(acc, FX_->divided_power(i, a));
        return acc;
    }

    free_elem<Fc> orbit_generator(int eta) { return orbit_divided_power(eta, 1); }

    vq_elem g_eta(int eta, int a) { return project_vq(orbit_divided_power(eta, a)); }

    vq_elem vq_multiply(const vq_elem &x, const vq_elem &y) {
        free_elem<Fc> xr = lift(x), yr = lift(y);
        return project_vq(qfold::multiply(xr, yr));
    }

    free_elem<Fc> lift(const vq_elem &x) {
        const auto &fx = fixed_basis(x.nu);
        free_elem<Fc> acc = zero_elem<Fc>(X_, x.nu);
        for (std::size_t k = 0; k < fx.size(); ++k)
            acc = add(acc, scale(reduce_elem(BX_->rep(x.nu, fx[k])), x.coords[k]));
        return acc;
    }

    // ---- checks -----------------------------------------------------------

    // J is spanned by orbit sums of non-fixed elements; verify it is stable
    // under left/right multiplication by each orbit generator
    std::vector<check_item> verify_ideal_stability(int max_h) {
        std::vector<check_item> out;
        for (const auto &nu : invariant_weights(max_h)) {
            for (const auto &orb : basis_orbits(nu)) {
                free_elem<Fc> osum = zero_elem<Fc>(X_, nu);
                for (int idx : orb) osum = add(osum, reduce_elem(BX_->rep(nu, idx)));
                for (std::size_t eta = 0; eta < fr_.orbits.size(); ++eta) {
                    weight target = nu;
                    for (int i : fr_.orbits[eta]) ++target[i];
                    if (height(target) > max_h) continue;
                    free_elem<Fc> ge = orbit_generator(static_cast<int>(eta));
                    bool left = in_J(qfold::multiply(ge, osum));
                    bool right = in_J(qfold::multiply(osum, ge));
                    if (!left || !right)
                        out.push_back({"ideal-stability", false,
                                       "orbit sum escapes J at " + wstr(nu) + " eta " + std::to_string(eta)});
                }
            }
        }
        if (out.empty()) out.push_back({"ideal-stability", true, ""});
        return out;
    }

    // folded Serre sums vanish in V_q, and [a]!_{d_eta} g^(a) = g^a
    std::vector<check_item> verify_phi_relations() {
        std::vector<check_item> out;
        const cartan_datum &uXd = fr_.folded;
        for (int eta = 0; eta < uXd.n(); ++eta)
            for (int etap = 0; etap < uXd.n(); ++etap) {
                if (eta == etap) continue;
                int L = 1 - static_cast<int>(uXd.a(eta, etap));
                int h = L * static_cast<int>(fr_.orbits[eta].size()) +
                        static_cast<int>(fr_.orbits[etap].size());
                if (h > H_) {
                    out.push_back({"folded-serre", true,
                                   "skipped (height " + std::to_string(h) + " above cap) eta=" +
                                       std::to_string(eta) + " eta'=" + std::to_string(etap)});
                    continue;
                }
                free_elem<Fc> acc;
                bool first = true;
                int d_eta = static_cast<int>(uXd.d(eta));
                free_elem<Fc> ge = orbit_generator(eta), gep = orbit_generator(etap);
                for (int k = 0; k <= L; ++k) {
                    free_elem<Fc> term = unit_elem<Fc>(X_);
                    for (int t = 0; t < k; ++t) term = qfold::multiply(term, ge);
                    term = qfold::multiply(term, gep);
                    for (int t = 0; t < L - k; ++t) term = qfold::multiply(term, ge);
                    laurent<Fc> c = FX_->l_qbinom(L, k, d_eta);
                    frat rc = frat(k % 2 ? -c : c);
                    term = scale(term, rc);
                    acc = first ? term : add(acc, term);
                    first = false;
                }
                bool ok = in_J(acc);
                out.push_back({"folded-serre", ok,
                               ok ? "eta=" + std::to_string(eta) + " eta'=" + std::to_string(etap)
                                  : "nonzero residue at eta=" + std::to_string(eta) + " eta'=" +
                                        std::to_string(etap)});
            }
        // [a]!_{d_eta} f~^(a) = f~^a mod radical over F_p
        for (int eta = 0; eta < uXd.n(); ++eta) {
            int sz = static_cast<int>(fr_.orbits[eta].size());
            for (int a = 1; a * sz <= H_; ++a) {
                free_elem<Fc> lhs = scale(orbit_divided_power(eta, a),
                                          frat(FX_->l_qfact(a, static_cast<int>(uXd.d(eta)))));
                free_elem<Fc> rhs = unit_elem<Fc>(X_);
                free_elem<Fc> ge = orbit_generator(eta);
                for (int t = 0; t < a; ++t) rhs = qfold::multiply(rhs, ge);
                bool ok = FX_->eq_mod_radical(lhs, rhs);
                out.push_back({"divided-power-collapse", ok,
                               "eta=" + std::to_string(eta) + " a=" + std::to_string(a)});
                if (!ok) out.back().detail += " FAILS";
            }
        }
        return out;
    }

    // the generator assignment preserves the bilinear form on divided-power
    // monomials of a given folded weight
    check_item verify_isometry(const weight &nu, std::size_t max_monomials = 40) {
        if (!is_sigma_invariant(nu)) throw std::invalid_argument("verify_isometry: weight not invariant");
        weight w = fold_weight(nu, fr_);
        auto monos = divided_sequences(w);
        if (monos.size() > max_monomials) monos.resize(max_monomials);
        std::vector<free_elem<Fc>> under, lifted;
        for (const auto &seq : monos) {
            free_elem<Fc> um = unit_elem<Fc>(fr_.folded);
            free_elem<Fc> lm = unit_elem<Fc>(X_);
            for (auto [eta, a] : seq) {
                um = qfold::multiply(um, FuX_->divided_power(eta, a));
                lm = qfold::multiply(lm, orbit_divided_power(eta, a));
            }
            under.push_back(std::move(um));
            lifted.push_back(std::move(lm));
        }
        for (std::size_t a = 0; a < monos.size(); ++a)
            for (std::size_t b = a; b < monos.size(); ++b) {
                frat u = FuX_->form_value(under[a], under[b]);
                frat v = FX_->form_value(lifted[a], lifted[b]);
                if (!(u == v))
                    return {"isometry", false, "mismatch at " + wstr(nu) + " pair " + std::to_string(a) +
                                                   "," + std::to_string(b)};
            }
        return {"isometry", true, wstr(nu) + " on " + std::to_string(monos.size()) + " monomials"};
    }

    // dim V_q (= #fixed basis elements) equals the folded dimension over
    // F_p(q), and the folded form is non-degenerate (full Gram rank)
    std::vector<check_item> verify_dimensions(int max_h, std::size_t gram_word_cap = 60) {
        std::vector<check_item> out;
        for (const auto &nu : invariant_weights(max_h)) {
            weight w = fold_weight(nu, fr_);
            int dvq = static_cast<int>(fixed_basis(nu).size());
            int dund = FuX_->space(w).dim;
            if (dvq != dund)
                out.push_back({"dimension-match", false,
                               wstr(nu) + ": V_q " + std::to_string(dvq) + " vs folded " + std::to_string(dund)});
            if (enumerate_words(w).size() <= gram_word_cap) {
                auto g = FuX_->full_gram_profile(w);
                if (g.rank != dund)
                    out.push_back({"folded-form-nondegenerate", false,
                                   wstr(nu) + ": gram rank " + std::to_string(g.rank) + " vs dim " +
                                       std::to_string(dund)});
            }
        }
        if (out.empty()) out.push_back({"dimension-match", true, "all invariant weights to height " +
                                                                      std::to_string(max_h)});
        return out;
    }

    // the matching between fixed basis elements and folded canonical basis
    // elements through V_q; fills xi_ per weight
    std::vector<check_item> verify_xi(int max_h) {
        std::vector<check_item> out;
        for (const auto &nu : invariant_weights(max_h)) {
            weight w = fold_weight(nu, fr_);
            const auto &fx = fixed_basis(nu);
            const auto &uelems = BuX_->at(w);
            if (fx.size() != uelems.size()) {
                out.push_back({"xi-bijection", false, wstr(nu) + ": cardinality mismatch"});
                continue;
            }
            std::vector<int> match(fx.size(), -1);
            bool ok = true;
            for (int j = 0; j < static_cast<int>(uelems.size()); ++j) {
                free_elem<Fc> img = map_under_to_lift(BuX_->rep(w, j));
                vq_elem v = project_vq(img);
                int hit = -1;
                for (std::size_t k = 0; k < v.coords.size(); ++k) {
                    if (v.coords[k].is_zero()) continue;
                    bool is_one = v.coords[k] == FX_->reduce(qrat(1));
                    bool is_minus_one = v.coords[k] == FX_->reduce(qrat(-1));
                    if (!(is_one || is_minus_one) || hit != -1) { hit = -2; break; }
                    if (p_ != 2 && !is_one) { hit = -2; break; } // sign must be + for odd p
                    hit = static_cast<int>(k);
                }
                if (hit < 0 || match[hit] != -1) { ok = false; break; }
                match[hit] = j;
            }
            if (ok)
                for (int m : match)
                    if (m == -1) ok = false;
            if (!ok) {
                out.push_back({"xi-bijection", false, wstr(nu) + ": no perfect unit-vector matching"});
                continue;
            }
            xi_[nu] = match; // fixed position k  ->  folded element match[k]
            out.push_back({"xi-bijection", true, wstr(nu)});
        }
        return out;
    }

    // xi intertwines the star permutations on both sides
    std::vector<check_item> verify_xi_star(int max_h) {
        std::vector<check_item> out;
        for (const auto &nu : invariant_weights(max_h)) {
            auto it = xi_.find(nu);
            if (it == xi_.end()) continue;
            weight w = fold_weight(nu, fr_);
            const auto &fx = fixed_basis(nu);
            const auto &sx = star_X_.perm.at(nu);
            const auto &su = star_uX_.perm.at(w);
            for (std::size_t k = 0; k < fx.size(); ++k) {
                int starred = sx[fx[k]];
                auto pos = std::find(fx.begin(), fx.end(), starred);
                if (pos == fx.end()) {
                    out.push_back({"xi-star", false, wstr(nu) + ": star leaves the fixed set"});
                    break;
                }
                std::size_t k2 = static_cast<std::size_t>(pos - fx.begin());
                if (su[it->second[k]] != it->second[k2]) {
                    out.push_back({"xi-star", false, wstr(nu) + ": star not intertwined"});
                    break;
                }
            }
        }
        if (out.empty()) out.push_back({"xi-star", true, ""});
        return out;
    }

    // xi intertwines the orbit Kashiwara operator (product of F_i over the
    // orbit) with the folded F_eta
    std::vector<check_item> verify_xi_equivariance(int max_h) {
        std::vector<check_item> out;
        bool all = true;
        for (const auto &nu : invariant_weights(max_h)) {
            auto it = xi_.find(nu);
            if (it == xi_.end()) continue;
            const auto &fx = fixed_basis(nu);
            for (std::size_t eta = 0; eta < fr_.orbits.size(); ++eta) {
                weight target = nu;
                for (int i : fr_.orbits[eta]) ++target[i];
                if (height(target) > max_h || !xi_.count(target)) continue;
                weight w = fold_weight(nu, fr_);
                weight tw = fold_weight(target, fr_);
                for (std::size_t k = 0; k < fx.size(); ++k) {
                    int cur = fx[k];
                    // F~_eta = product of F_i over the orbit
                    weight curw = nu;
                    for (int i : fr_.orbits[eta]) {
                        cur = BX_->crystal_F(i, curw, cur);
                        ++curw[i];
                    }
                    const auto &tfx = fixed_basis(target);
                    auto pos = std::find(tfx.begin(), tfx.end(), cur);
                    if (pos == tfx.end()) { all = false; continue; }
                    std::size_t kt = static_cast<std::size_t>(pos - tfx.begin());
                    int uf = BuX_->crystal_F(static_cast<int>(eta), w, xi_.at(nu)[k]);
                    if (uf != xi_.at(target)[kt]) all = false;
                }
            }
        }
        out.push_back({"xi-kashiwara-equivariance", all, all ? "" : "operator squares do not commute"});
        return out;
    }

    // eps is constant along each node orbit for fixed elements, the grading
    // partitions the fixed basis, and multiplication by f~_eta^(a) sends the
    // eps_eta = 0 layer into the expected congruence class
    std::vector<check_item> verify_decomposition(int max_h) {
        std::vector<check_item> out;
        bool all = true;
        std::string why;
        for (const auto &nu : invariant_weights(max_h)) {
            const auto &fx = fixed_basis(nu);
            const auto &elems = BX_->at(nu);
            for (int idx : fx)
                for (const auto &orb : fr_.orbits) {
                    int e0 = elems[idx].eps[orb[0]];
                    for (int i : orb)
                        if (elems[idx].eps[i] != e0) { all = false; why = "eps not orbit-constant at " + wstr(nu); }
                }
        }
        // (f~_eta^(a)) b lands on pi_eta_a(b) modulo elements with higher
        // eps on the orbit
        for (const auto &nu : invariant_weights(max_h)) {
            const auto &fx = fixed_basis(nu);
            const auto &elems = BX_->at(nu);
            for (std::size_t eta = 0; eta < fr_.orbits.size() && all; ++eta) {
                const auto &orb = fr_.orbits[eta];
                for (int a = 1; a <= 2; ++a) {
                    weight target = nu;
                    for (int i : orb) target[i] += a;
                    if (height(target) > max_h) continue;
                    for (int idx : fx) {
                        if (elems[idx].eps[orb[0]] != 0) continue;
                        // pi_eta_a by iterating the single-node congruence maps
                        int cur = idx;
                        weight curw = nu;
                        bool fine = true;
                        for (int i : orb) {
                            if (BX_->at(curw)[cur].eps[i] != 0) { fine = false; break; }
                            cur = BX_->pi_map(i, a, curw, cur);
                            curw[i] += a;
                        }
                        if (!fine) { all = false; why = "orbit projection undefined at " + wstr(nu); break; }
                        free_elem<Zc> z = BX_->rep(nu, idx);
                        for (int i : orb) z = qfold::multiply(UX_->divided_power(i, a), z);
                        auto coords = BX_->coords_in_basis(z);
                        const auto &telems = BX_->at(target);
                        for (int j = 0; j < static_cast<int>(coords.size()); ++j) {
                            if (coords[j].is_zero()) continue;
                            if (j == cur) {
                                if (!(coords[j] == qrat(1))) { all = false; why = "leading coefficient not 1"; }
                                continue;
                            }
                            bool higher = true;
                            bool strict = false;
                            for (int i : orb) {
                                if (telems[j].eps[i] < a) higher = false;
                                if (telems[j].eps[i] > a) strict = true;
                            }
                            if (!(higher && strict)) { all = false; why = "remainder outside the higher layer at " + wstr(nu); }
                        }
                    }
                }
            }
        }
        out.push_back({"orbit-decomposition", all, why});
        return out;
    }

    const std::map<weight, std::vector<int>> &xi() const { return xi_; }

    // lift of a folded-side element: each folded word letter eta becomes the
    // ordered product of the orbit members, coefficients reduced mod p
    free_elem<Fc> map_under_to_lift(const free_elem<Zc> &u) {
        weight nu(X_.n(), 0);
        for (std::size_t e = 0; e < fr_.orbits.size(); ++e)
            for (int i : fr_.orbits[e]) nu[i] = u.wt[e];
        free_elem<Fc> acc = zero_elem<Fc>(X_, nu);
        for (const auto &[w, c] : u.terms) {
            word lifted;
            for (int eta : w)
                for (int i : fr_.orbits[eta]) lifted.push_back(i);
            frat rc = reduce_mod_p(c, p_);
            acc.add_term(lifted, rc);
        }
        return acc;
    }

private:
    static bool is_prime_power_of(int n, std::int64_t p) {
        if (n < 1) return false;
        if (n == 1) return true;
        while (n % p == 0) n /= static_cast<int>(p);
        return n == 1;
    }

    static std::string wstr(const weight &nu) {
        std::string s = "(";
        for (std::size_t i = 0; i < nu.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(nu[i]);
        }
        return s + ")";
    }

    // all divided-power sequences ((eta, a), ...) of a folded weight with
    // adjacent letters distinct
    std::vector<std::vector<std::pair<int, int>>> divided_sequences(const weight &w) {
        std::vector<std::vector<std::pair<int, int>>> out;
        std::vector<std::pair<int, int>> cur;
        weight left = w;
        std::function<void(int)> rec = [&](int last) {
            if (is_zero_weight(left)) {
                out.push_back(cur);
                return;
            }
            for (int eta = 0; eta < static_cast<int>(left.size()); ++eta) {
                if (eta == last || left[eta] == 0) continue;
                for (int a = 1; a <= left[eta]; ++a) {
                    left[eta] -= a;
                    cur.emplace_back(eta, a);
                    rec(eta);
                    cur.pop_back();
                    left[eta] += a;
                }
            }
        };
        rec(-1);
        return out;
    }

    // inverse of the matrix of reduced-basis coordinates over the F_p pivot
    // words; its existence is the mod-p basis property
    const std::vector<std::vector<frat>> &fp_inverse(const weight &nu) {
        std::lock_guard<std::mutex> lk(fp_mu_);
        auto it = fp_inv_.find(nu);
        if (it != fp_inv_.end()) return it->second;
        const auto &elems = BX_->at(nu);
        int dB = static_cast<int>(elems.size());
        int dF = FX_->space(nu).dim;
        if (dB != dF)
            throw std::logic_error("fold_context: mod-p dimension differs from the basis cardinality");
        std::vector<std::vector<frat>> M(dF, std::vector<frat>(dB));
        for (int j = 0; j < dB; ++j) {
            auto col = FX_->expand(reduce_elem(BX_->rep(nu, j)));
            for (int s = 0; s < dF; ++s) M[s][j] = col[s];
        }
        auto inv = invert(M);
        if (!inv) throw std::logic_error("fold_context: reduced basis is not a basis mod p");
        return fp_inv_.emplace(nu, std::move(*inv)).first->second;
    }

    cartan_datum X_;
    diagram_aut sigma_;
    std::int64_t p_;
    int H_;
    fold_result fr_;
    std::unique_ptr<uq_ctx<Zc>> UX_, UuX_;
    std::unique_ptr<uq_ctx<Fc>> FX_, FuX_;
    std::unique_ptr<canonical_table> BX_, BuX_;
    basis_map sig_, star_X_, star_uX_;
    std::map<weight, std::vector<int>> fixed_;
    std::map<weight, std::vector<int>> xi_;
    std::map<weight, std::vector<std::vector<frat>>> fp_inv_;
    std::mutex fp_mu_;
};

} // namespace qfold

#endif
