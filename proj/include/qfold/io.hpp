#ifndef QFOLD_IO_HPP
#define QFOLD_IO_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "canon.hpp"
#include "report.hpp"

namespace qfold {

using json = nlohmann::json;

// ---- basic forms -----------------------------------------------------------

inline json to_json(const cartan_datum &X) {
    json j;
    j["labels"] = X.labels;
    j["gram"] = X.gram;
    return j;
}

inline cartan_datum datum_from_json(const json &j) {
    cartan_datum X;
    X.labels = j.at("labels").get<std::vector<std::string>>();
    X.gram = j.at("gram").get<std::vector<std::vector<long>>>();
    auto v = X.validate();
    if (!v.ok) throw std::invalid_argument("datum: " + v.diagnostic);
    return X;
}

// data files are canonicalized to ascending label order on load, so results
// do not depend on the presentation order of the input
inline cartan_datum load_datum(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open datum file " + path);
    json j;
    in >> j;
    return datum_from_json(j).sorted_by_label();
}

// "3,2,1": node k (1-based, in label order) maps to position perm[k]
inline diagram_aut aut_from_string(const std::string &s, int n) {
    diagram_aut a;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) a.perm.push_back(std::stoi(tok) - 1);
    if (static_cast<int>(a.perm.size()) != n)
        throw std::invalid_argument("automorphism length does not match the datum");
    return a;
}

inline json to_json(const diagram_aut &a) {
    std::vector<int> one_based;
    for (int p : a.perm) one_based.push_back(p + 1);
    return json{{"perm", one_based}};
}

inline diagram_aut aut_from_json(const json &j, int n) {
    diagram_aut a;
    for (int p : j.at("perm").get<std::vector<int>>()) a.perm.push_back(p - 1);
    if (static_cast<int>(a.perm.size()) != n)
        throw std::invalid_argument("automorphism length does not match the datum");
    return a;
}

inline weight weight_from_string(const std::string &s, int n) {
    weight w;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) w.push_back(std::stoi(tok));
    if (static_cast<int>(w.size()) != n) throw std::invalid_argument("weight length does not match the datum");
    for (int x : w)
        if (x < 0) throw std::invalid_argument("weight coordinates must be nonnegative");
    return w;
}

inline json weight_to_json(const cartan_datum &X, const weight &w) {
    json j = json::object();
    for (int i = 0; i < X.n(); ++i) j[X.labels[i]] = w[i];
    return j;
}

inline json word_to_json(const cartan_datum &X, const word &w) {
    json j = json::array();
    for (int i : w) j.push_back(X.labels[i]);
    return j;
}

template <typename R>
json free_elem_to_json(const cartan_datum &X, const free_elem<R> &x) {
    json j;
    j["weight"] = weight_to_json(X, x.wt);
    json terms = json::array();
    for (const auto &[w, c] : x.terms)
        terms.push_back(json{{"word", word_to_json(X, w)}, {"coeff", c.str()}});
    j["terms"] = terms;
    return j;
}

// ---- hashing / cache -------------------------------------------------------

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

inline std::string datum_hash(const cartan_datum &X) { return hex64(fnv1a(to_json(X).dump())); }

inline constexpr const char *cache_version = "qfold-cache-1";

// file-backed cache with atomic writes and checksum validation; disabled
// when the root path is empty
class cache_dir {
public:
    explicit cache_dir(std::string root = "") : root_(std::move(root)) {
        if (root_.empty()) {
            const char *env = std::getenv("QFOLD_CACHE_DIR");
            if (env) root_ = env;
        }
    }
    bool enabled() const { return !root_.empty(); }
    const std::string &root() const { return root_; }

    std::filesystem::path path_for(const std::string &key) const {
        return std::filesystem::path(root_) / (key + ".json");
    }

    void store(const std::string &key, const json &payload) const {
        if (!enabled()) return;
        json wrapper;
        wrapper["version"] = cache_version;
        wrapper["key"] = key;
        wrapper["payload"] = payload;
        wrapper["checksum"] = hex64(fnv1a(payload.dump()));
        auto p = path_for(key);
        std::filesystem::create_directories(p.parent_path());
        auto tmp = p;
        tmp += ".tmp";
        {
            std::ofstream out(tmp);
            out << wrapper.dump(2) << "\n";
        }
        std::filesystem::rename(tmp, p);
    }

    std::optional<json> load(const std::string &key) const {
        if (!enabled()) return std::nullopt;
        auto p = path_for(key);
        std::ifstream in(p);
        if (!in) return std::nullopt;
        json wrapper;
        try {
            in >> wrapper;
        } catch (...) {
            return std::nullopt;
        }
        if (wrapper.value("version", "") != cache_version) return std::nullopt;
        if (!wrapper.contains("payload") || !wrapper.contains("checksum")) return std::nullopt;
        if (wrapper["checksum"] != hex64(fnv1a(wrapper["payload"].dump()))) return std::nullopt;
        return wrapper["payload"];
    }

    // write, then read back and compare byte-for-byte
    bool store_verified(const std::string &key, const json &payload) const {
        if (!enabled()) return true;
        store(key, payload);
        auto back = load(key);
        return back && back->dump() == payload.dump();
    }

private:
    std::string root_;
};

inline std::string weight_key(const weight &w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += "_";
        s += std::to_string(w[i]);
    }
    return s;
}

// ---- canonical table serialization ------------------------------------------

inline json basis_weight_to_json(const canonical_table &T, const weight &nu) {
    auto &U = T.ctx();
    const auto &X = U.datum();
    const auto &ws = U.space(nu);
    json j;
    j["datum"] = datum_hash(X);
    j["weight"] = weight_to_json(X, nu);
    json pv = json::array();
    for (int s = 0; s < ws.dim; ++s) pv.push_back(word_to_json(X, ws.pivot_word(s)));
    j["pivot_words"] = pv;
    j["radical_rank"] = ws.radical_rank;
    json els = json::array();
    for (const auto &e : T.at(nu)) {
        json je;
        json coords = json::array();
        for (const auto &c : e.coords) coords.push_back(c.str());
        je["coords"] = coords;
        json eps = json::object();
        for (int i = 0; i < X.n(); ++i) eps[X.labels[i]] = e.eps[i];
        je["eps"] = eps;
        if (e.prov_node >= 0)
            je["provenance"] = json{{"node", X.labels[e.prov_node]}, {"a", e.prov_a}, {"parent", e.prov_parent}};
        else
            je["provenance"] = nullptr;
        els.push_back(je);
    }
    j["elements"] = els;
    return j;
}

inline json table_to_json(const canonical_table &T) {
    json j;
    j["datum"] = to_json(T.ctx().datum());
    j["max_height"] = T.max_height();
    json ws = json::array();
    auto all = T.weights();
    std::sort(all.begin(), all.end(), [](const weight &a, const weight &b) {
        if (height(a) != height(b)) return height(a) < height(b);
        return a < b;
    });
    for (const auto &nu : all) ws.push_back(basis_weight_to_json(T, nu));
    j["weights"] = ws;
    return j;
}

// gram cache for a weight: word list, pivot block of the scaled form,
// pivot indices, radical rank
template <typename R>
json gram_weight_to_json(uq_ctx<R> &U, const weight &nu) {
    const auto &X = U.datum();
    auto &ws = U.space(nu);
    json j;
    j["datum"] = datum_hash(X);
    j["weight"] = weight_to_json(X, nu);
    json words = json::array();
    for (const auto &w : ws.words) words.push_back(word_to_json(X, w));
    j["words"] = words;
    j["pivots"] = ws.pivots;
    j["radical_rank"] = ws.radical_rank;
    json g = json::array();
    for (int s = 0; s < ws.dim; ++s) {
        json row = json::array();
        for (int t = 0; t < ws.dim; ++t)
            row.push_back(U.forms().scaled(ws.pivot_word(s), ws.pivot_word(t)).str());
        g.push_back(row);
    }
    j["gram_scaled_pivot_block"] = g;
    j["scaling"] = U.forms().denominator(nu).str();
    return j;
}

inline json report_to_json(const report &r) {
    json j;
    json items = json::array();
    for (const auto &c : r.items)
        items.push_back(json{{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = items;
    j["pass"] = r.all_pass();
    j["failures"] = r.failures();
    return j;
}

} // namespace qfold

#endif
