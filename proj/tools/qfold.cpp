// qfold: exact computations in the negative part of quantized enveloping
// algebras, canonical bases, diagram-automorphism folding, and the q-binomial
// identity checks.  See README.md for the subcommand catalogue.

#include <CLI11.hpp>

#include <iostream>

#include "qfold/canon_checks.hpp"
#include "qfold/foldmodp.hpp"
#include "qfold/io.hpp"
#include "qfold/qidents.hpp"

using namespace qfold;

namespace {

struct global_opts {
    std::string format = "text";
    std::string cache_root;
    std::string out;
    int jobs = 1;
    int max_height = 6;
};

int emit(const report &r, const global_opts &g) {
    json j = report_to_json(r);
    std::ostringstream text;
    for (const auto &c : r.items)
        text << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
    text << (r.all_pass() ? "all checks passed" : std::to_string(r.failures()) + " check(s) failed") << "\n";
    if (!g.out.empty()) {
        std::ofstream f(g.out);
        f << j.dump(2) << "\n";
    }
    if (g.format == "json") std::cout << j.dump(2) << "\n";
    else std::cout << text.str();
    return r.all_pass() ? 0 : 1;
}

void write_json(const std::string &path, const json &j) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << j.dump(2) << "\n";
}

std::map<std::string, int> parse_params(const std::string &s) {
    std::map<std::string, int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad parameter '" + tok + "'");
        out[tok.substr(0, eq)] = std::stoi(tok.substr(eq + 1));
    }
    return out;
}

int param(const std::map<std::string, int> &m, const std::string &k, int dflt) {
    auto it = m.find(k);
    return it == m.end() ? dflt : it->second;
}

// ---- cartan ---------------------------------------------------------------

int run_cartan_validate(const std::string &datum_path, const global_opts &g) {
    std::ifstream in(datum_path);
    if (!in) throw std::runtime_error("cannot open " + datum_path);
    json j;
    in >> j;
    cartan_datum X;
    X.labels = j.at("labels").get<std::vector<std::string>>();
    X.gram = j.at("gram").get<std::vector<std::vector<long>>>();
    auto v = X.validate();
    report r;
    r.add({"datum-valid", v.ok, v.diagnostic});
    return emit(r, g);
}

int run_cartan_fold(const std::string &datum_path, const std::string &aut, const global_opts &g) {
    cartan_datum X = load_datum(datum_path);
    diagram_aut s = aut_from_string(aut, X.n());
    auto fr = fold(X, s);
    json j;
    j["folded"] = to_json(fr.folded);
    json om = json::object();
    for (int i = 0; i < X.n(); ++i) om[X.labels[i]] = fr.folded.labels[fr.orbit_of[i]];
    j["orbit_map"] = om;
    if (!g.out.empty()) write_json(g.out, j);
    else std::cout << j.dump(2) << "\n";
    return 0;
}

int run_cartan_unfold(const std::string &datum_path, const global_opts &g) {
    cartan_datum X = load_datum(datum_path);
    auto ur = unfold(X);
    json j;
    j["unfolded"] = to_json(ur.unfolded);
    j["aut"] = to_json(ur.aut);
    json gm = json::object();
    for (int x = 0; x < ur.unfolded.n(); ++x) gm[ur.unfolded.labels[x]] = X.labels[ur.group_of[x]];
    j["group_map"] = gm;
    auto refold = fold(ur.unfolded, ur.aut);
    j["refold_isomorphic"] = isomorphic(refold.folded, X);
    if (!g.out.empty()) write_json(g.out, j);
    else std::cout << j.dump(2) << "\n";
    return json(j["refold_isomorphic"]).get<bool>() ? 0 : 1;
}

int run_cartan_factor(const std::string &datum_path, const std::string &aut, const global_opts &g) {
    cartan_datum X = load_datum(datum_path);
    diagram_aut s = aut_from_string(aut, X.n());
    auto chain = factor_automorphism(X, s);
    json j;
    json stages = json::array();
    for (const auto &st : chain.stages) {
        json js;
        js["datum"] = to_json(st.X);
        js["aut"] = to_json(st.s);
        js["order"] = st.s.order();
        js["folded"] = to_json(st.folded);
        json om = json::object();
        for (int i = 0; i < st.X.n(); ++i) om[st.X.labels[i]] = st.folded.labels[st.orbit_of[i]];
        js["orbit_map"] = om;
        stages.push_back(js);
    }
    j["stages"] = stages;
    bool ok = chain_matches(X, s, chain);
    j["refold_matches_direct"] = ok;
    if (!g.out.empty()) write_json(g.out, j);
    else std::cout << j.dump(2) << "\n";
    return ok ? 0 : 1;
}

// ---- uq ---------------------------------------------------------------------

template <typename R>
int uq_dim_impl(uq_ctx<R> &U, const weight &nu, const global_opts &g) {
    auto &ws = U.space(nu);
    json j;
    j["weight"] = weight_to_json(U.datum(), nu);
    j["words"] = ws.words.size();
    j["dim"] = ws.dim;
    j["radical_rank"] = ws.radical_rank;
    std::cout << (g.format == "json" ? j.dump(2)
                                     : "dim " + std::to_string(ws.dim) + " of " +
                                           std::to_string(ws.words.size()) + " words, radical rank " +
                                           std::to_string(ws.radical_rank))
              << "\n";
    if (!g.out.empty()) write_json(g.out, j);
    return 0;
}

int run_uq_dim(const std::string &datum_path, const std::string &wstr, std::int64_t p, const global_opts &g) {
    cartan_datum X = load_datum(datum_path);
    weight nu = weight_from_string(wstr, X.n());
    if (p) {
        uq_ctx<Fc> U(X, std::max(g.max_height, height(nu)), p);
        return uq_dim_impl(U, nu, g);
    }
    uq_ctx<Zc> U(X, std::max(g.max_height, height(nu)));
    return uq_dim_impl(U, nu, g);
}

template <typename R>
report uq_serre_impl(uq_ctx<R> &U) {
    report r;
    const auto &X = U.datum();
    for (int i = 0; i < X.n(); ++i)
        for (int j = 0; j < X.n(); ++j) {
            if (i == j) continue;
            bool ok = U.serre_check(i, j);
            r.add({"serre-radical-membership", ok, "(" + X.labels[i] + "," + X.labels[j] + ")"});
        }
    return r;
}

int run_uq_serre(const std::string &datum_path, std::int64_t p, const global_opts &g) {
    cartan_datum X = load_datum(datum_path);
    int cap = 4;
    for (int i = 0; i < X.n(); ++i)
        for (int j = 0; j < X.n(); ++j)
            if (i != j) cap = std::max<int>(cap, static_cast<int>(2 - X.a(i, j)));
    if (p) {
        uq_ctx<Fc> U(X, cap, p);
        return emit(uq_serre_impl(U), g);
    }
    uq_ctx<Zc> U(X, cap);
    return emit(uq_serre_impl(U), g);
}

template <typename R>
int uq_gram_impl(uq_ctx<R> &U, const weight &nu, const global_opts &g) {
    json j = gram_weight_to_json(U, nu);
    cache_dir cd(g.cache_root);
    if (cd.enabled()) cd.store_verified(datum_hash(U.datum()) + "/gram/" + weight_key(nu), j);
    if (!g.out.empty()) write_json(g.out, j);
    else std::cout << j.dump(2) << "\n";
    return 0;
}

int run_uq_gram(const std::string &datum_path, const std::string &wstr, std::int64_t p, const global_opts &g) {
    cartan_datum X = load_datum(datum_path);
    weight nu = weight_from_string(wstr, X.n());
    if (p) {
        uq_ctx<Fc> U(X, std::max(g.max_height, height(nu)), p);
        return uq_gram_impl(U, nu, g);
    }
    uq_ctx<Zc> U(X, std::max(g.max_height, height(nu)));
    return uq_gram_impl(U, nu, g);
}

int run_uq_kernel(const std::string &datum_path, const std::string &wstr, std::int64_t p, const global_opts &g) {
    cartan_datum X = load_datum(datum_path);
    weight nu = weight_from_string(wstr, X.n());
    int k;
    if (p) {
        uq_ctx<Fc> U(X, std::max(g.max_height, height(nu)), p);
        k = U.kernel_intersection_rank(nu);
    } else {
        uq_ctx<Zc> U(X, std::max(g.max_height, height(nu)));
        k = U.kernel_intersection_rank(nu);
    }
    report r;
    r.add({"derivation-kernel-trivial", k == 0, "dimension " + std::to_string(k)});
    return emit(r, g);
}

// ---- canon ------------------------------------------------------------------

int run_canon_compute(const std::string &datum_path, const global_opts &g) {
    cartan_datum X = load_datum(datum_path);
    uq_ctx<Zc> U(X, g.max_height + 2);
    canonical_table T(U);
    T.build(g.max_height, {}, g.jobs);
    cache_dir cd(g.cache_root);
    report r;
    bool cache_ok = true;
    if (cd.enabled()) {
        for (const auto &nu : T.weights())
            cache_ok = cache_ok &&
                       cd.store_verified(datum_hash(X) + "/canon/" + weight_key(nu), basis_weight_to_json(T, nu));
        r.add({"cache-roundtrip", cache_ok, cd.root()});
    }
    int total = 0;
    for (const auto &nu : T.weights()) total += static_cast<int>(T.at(nu).size());
    r.add({"basis-built", true, std::to_string(total) + " elements to height " + std::to_string(g.max_height)});
    r.add(verify_axioms(T));
    if (!g.out.empty()) write_json(g.out, table_to_json(T));
    return emit(r, g);
}

int run_canon_verify(const std::string &datum_path, const global_opts &g) {
    cartan_datum X = load_datum(datum_path);
    uq_ctx<Zc> U(X, g.max_height + 2);
    canonical_table T(U);
    T.build(g.max_height, {}, g.jobs);
    report r;
    r.add(verify_axioms(T));
    r.add(verify_kashiwara_congruence(T));
    r.add(verify_reachability(T));
    r.add(verify_projection_commutation(T));
    auto gph = build_crystal_graph(T, g.max_height);
    r.add({"crystal-counts", gph.counts_match,
           std::to_string(gph.nodes.size()) + " nodes, " + std::to_string(gph.edges.size()) + " edges"});
    return emit(r, g);
}

int run_canon_scan(const std::string &datum_path, const global_opts &g) {
    cartan_datum X = load_datum(datum_path);
    uq_ctx<Zc> U(X, g.max_height + 2);
    canonical_table T(U);
    T.build(g.max_height, {}, g.jobs);
    report r;
    for (const auto &nu : T.weights()) {
        if (height(nu) < 1) continue;
        r.add(signed_basis_scan(T, nu));
    }
    return emit(r, g);
}

int run_canon_graph(const std::string &datum_path, const std::string &dot_path, const global_opts &g) {
    cartan_datum X = load_datum(datum_path);
    uq_ctx<Zc> U(X, g.max_height + 2);
    canonical_table T(U);
    T.build(g.max_height, {}, g.jobs);
    auto gph = build_crystal_graph(T, g.max_height);
    std::string dot = crystal_dot(T, gph);
    if (!dot_path.empty()) {
        std::ofstream f(dot_path);
        f << dot;
    } else {
        std::cout << dot;
    }
    report r;
    r.add({"crystal-counts", gph.counts_match,
           std::to_string(gph.nodes.size()) + " nodes, " + std::to_string(gph.edges.size()) + " edges"});
    json j = report_to_json(r);
    if (!g.out.empty()) write_json(g.out, j);
    return gph.counts_match ? 0 : 1;
}

// ---- fold -------------------------------------------------------------------

int run_fold_verify(const std::string &datum_path, const std::string &aut, std::int64_t p,
                    const global_opts &g, bool xi_only) {
    cartan_datum X = load_datum(datum_path);
    diagram_aut s = aut_from_string(aut, X.n());
    fold_context F(X, s, p, g.max_height);
    F.build(g.jobs);
    report r;
    r.add(F.verify_xi(g.max_height));
    if (!xi_only) {
        r.add(F.verify_phi_relations());
        for (const auto &nu : F.invariant_weights(g.max_height)) r.add(F.verify_isometry(nu));
        r.add(F.verify_dimensions(g.max_height));
        r.add(F.verify_xi_star(g.max_height));
        r.add(F.verify_xi_equivariance(g.max_height));
        r.add(F.verify_ideal_stability(g.max_height - 1));
        r.add(F.verify_decomposition(g.max_height));
    }
    // correspondence cache: the matching per weight
    cache_dir cd(g.cache_root);
    if (cd.enabled()) {
        json jx = json::object();
        for (const auto &[nu, match] : F.xi()) jx[weight_key(nu)] = match;
        cd.store_verified(datum_hash(X) + "/xi/p" + std::to_string(p) + "_h" + std::to_string(g.max_height), jx);
    }
    return emit(r, g);
}

// ---- idents -------------------------------------------------------------------

int run_idents(const std::string &family, const std::string &params_str, const global_opts &g) {
    auto P = parse_params(params_str);
    report rep;
    auto add = [&](const check_outcome &c, const std::string &name, const std::string &ps) {
        rep.add({name, c.pass, c.pass ? ps : ps + " " + c.detail});
    };
    if (family == "gauss") {
        int nmax = param(P, "nmax", 12);
        add(verify_gauss_sums(nmax), "gauss-alternating-sums", "nmax=" + std::to_string(nmax));
    } else if (family == "triple-sum") {
        int r = param(P, "r", 3);
        for (int t = 1; t <= r; ++t)
            for (int k = -r; k <= 2 * r; ++k)
                add(verify_triple_binomial_sum(r, t, k), "triple-binomial-sum",
                    "r=" + std::to_string(r) + ",t=" + std::to_string(t) + ",k=" + std::to_string(k));
    } else if (family == "two-slot") {
        int r = param(P, "r", 2), kmax = param(P, "k", 6), lmax = param(P, "l", 2);
        for (int k = 0; k <= kmax; ++k)
            for (int l = 0; l <= lmax; ++l)
                add(verify_two_slot_expansion(r, k, l), "two-slot-expansion",
                    "r=" + std::to_string(r) + ",k=" + std::to_string(k) + ",l=" + std::to_string(l));
    } else if (family == "endpoint") {
        int n = param(P, "n", 3), r = param(P, "r", 2), k = param(P, "k", 3), l = param(P, "l", 1);
        add(verify_endpoint_expansion(n, r, k, l), "endpoint-expansion", params_str);
    } else if (family == "serre-sum") {
        int n = param(P, "n", 2), r = param(P, "r", 2);
        add(verify_alternating_serre_sum(n, r), "alternating-serre-sum", params_str);
    } else if (family == "matrix-sum") {
        int n = param(P, "n", 2), m = param(P, "m", 2), r = param(P, "r", 2), N = param(P, "N", n);
        std::vector<std::vector<int>> inter(m);
        for (int i = 0; i < m; ++i)
            for (int c = 0; c < N - 1; ++c) inter[i].push_back(c);
        add(verify_matrix_alternating_sum(n, m, r, inter), "matrix-alternating-sum", params_str);
    } else if (family == "factorization") {
        int r = param(P, "r", 2);
        std::vector<int> slots;
        for (int i = 1;; ++i) {
            auto it = P.find("a" + std::to_string(i));
            if (it == P.end()) break;
            slots.push_back(it->second);
        }
        if (slots.empty()) slots = {1, 0, 1};
        add(verify_product_factorization(r, slots), "coefficient-factorization", params_str);
    } else if (family == "star-uq") {
        int centers = param(P, "centers", 1), leaves = param(P, "leaves", 3), r = param(P, "r", 2);
        if (centers == 1) {
            add(verify_star_single_center(leaves, r), "star-single-center", params_str);
        } else {
            std::vector<std::vector<int>> inter(centers);
            for (int i = 0; i < centers; ++i)
                for (int j = 0; j < leaves; ++j) inter[i].push_back(j);
            add(verify_star_multi_center(centers, leaves, r, inter), "star-multi-center", params_str);
        }
    } else {
        throw std::invalid_argument("unknown family '" + family + "'");
    }
    return emit(rep, g);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"exact canonical-basis and folding computations for quantized enveloping algebras"};
    app.require_subcommand(1);

    global_opts g;
    app.add_option("--format", g.format, "output format: text|json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--cache-dir", g.cache_root, "cache directory (default: QFOLD_CACHE_DIR)");
    app.add_option("--out", g.out, "write the JSON result to this file");
    app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--max-height", g.max_height, "weight height bound")->check(CLI::PositiveNumber);

    std::string datum_path, aut, wstr, dot_path, family, params;
    std::int64_t p = 0;

    auto *cartan = app.add_subcommand("cartan", "Cartan data and diagram automorphisms");
    cartan->require_subcommand(1);
    auto *c_validate = cartan->add_subcommand("validate", "check the datum axioms");
    c_validate->add_option("--datum", datum_path)->required();
    auto *c_fold = cartan->add_subcommand("fold", "induced datum on the orbit set");
    c_fold->add_option("--datum", datum_path)->required();
    c_fold->add_option("--aut", aut)->required();
    auto *c_unfold = cartan->add_subcommand("unfold", "symmetric datum with an admissible automorphism");
    c_unfold->add_option("--datum", datum_path)->required();
    auto *c_factor = cartan->add_subcommand("factor", "prime-power factorization chain");
    c_factor->add_option("--datum", datum_path)->required();
    c_factor->add_option("--aut", aut)->required();

    auto *uq = app.add_subcommand("uq", "weight spaces of the quantized algebra");
    uq->require_subcommand(1);
    auto *u_dim = uq->add_subcommand("dim", "dimension and radical rank at a weight");
    u_dim->add_option("--datum", datum_path)->required();
    u_dim->add_option("--weight", wstr)->required();
    u_dim->add_option("--p", p);
    auto *u_serre = uq->add_subcommand("serre", "Serre sums lie in the form radical");
    u_serre->add_option("--datum", datum_path)->required();
    u_serre->add_option("--p", p);
    auto *u_gram = uq->add_subcommand("gram", "scaled Gram data at a weight");
    u_gram->add_option("--datum", datum_path)->required();
    u_gram->add_option("--weight", wstr)->required();
    u_gram->add_option("--p", p);
    auto *u_kernel = uq->add_subcommand("kernel", "intersection of the derivation kernels");
    u_kernel->add_option("--datum", datum_path)->required();
    u_kernel->add_option("--weight", wstr)->required();
    u_kernel->add_option("--p", p);

    auto *canon = app.add_subcommand("canon", "canonical bases");
    canon->require_subcommand(1);
    auto *k_compute = canon->add_subcommand("compute", "build the basis and run the axioms");
    k_compute->add_option("--datum", datum_path)->required();
    auto *k_verify = canon->add_subcommand("verify", "full verification suite");
    k_verify->add_option("--datum", datum_path)->required();
    auto *k_scan = canon->add_subcommand("scan", "signed-basis search per weight");
    k_scan->add_option("--datum", datum_path)->required();
    auto *k_graph = canon->add_subcommand("graph", "crystal graph");
    k_graph->add_option("--datum", datum_path)->required();
    k_graph->add_option("--dot", dot_path, "write DOT here (default stdout)");

    auto *fold_cmd = app.add_subcommand("fold", "mod-p folding");
    fold_cmd->require_subcommand(1);
    auto *f_verify = fold_cmd->add_subcommand("verify", "orbit-algebra suite");
    f_verify->add_option("--datum", datum_path)->required();
    f_verify->add_option("--aut", aut)->required();
    f_verify->add_option("--p", p)->required();
    auto *f_xi = fold_cmd->add_subcommand("xi", "basis correspondence only");
    f_xi->add_option("--datum", datum_path)->required();
    f_xi->add_option("--aut", aut)->required();
    f_xi->add_option("--p", p)->required();

    auto *idents = app.add_subcommand("idents", "q-binomial identity families");
    idents->require_subcommand(1);
    auto *i_verify = idents->add_subcommand("verify", "verify one family");
    i_verify->add_option("--family", family)->required();
    i_verify->add_option("--params", params, "comma-separated key=value list");

    // allow the global options to appear after any subcommand
    std::function<void(CLI::App *)> enable_fallthrough = [&](CLI::App *a) {
        a->fallthrough(true);
        for (auto *sub : a->get_subcommands({})) enable_fallthrough(sub);
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_validate->parsed()) return run_cartan_validate(datum_path, g);
        if (c_fold->parsed()) return run_cartan_fold(datum_path, aut, g);
        if (c_unfold->parsed()) return run_cartan_unfold(datum_path, g);
        if (c_factor->parsed()) return run_cartan_factor(datum_path, aut, g);
        if (u_dim->parsed()) return run_uq_dim(datum_path, wstr, p, g);
        if (u_serre->parsed()) return run_uq_serre(datum_path, p, g);
        if (u_gram->parsed()) return run_uq_gram(datum_path, wstr, p, g);
        if (u_kernel->parsed()) return run_uq_kernel(datum_path, wstr, p, g);
        if (k_compute->parsed()) return run_canon_compute(datum_path, g);
        if (k_verify->parsed()) return run_canon_verify(datum_path, g);
        if (k_scan->parsed()) return run_canon_scan(datum_path, g);
        if (k_graph->parsed()) return run_canon_graph(datum_path, dot_path, g);
        if (f_verify->parsed()) return run_fold_verify(datum_path, aut, p, g, false);
        if (f_xi->parsed()) return run_fold_verify(datum_path, aut, p, g, true);
        if (i_verify->parsed()) return run_idents(family, params, g);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: no subcommand\n";
    return 2;
}
