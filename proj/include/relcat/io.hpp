#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "relcat/core.hpp"
#include "relcat/families.hpp"
#include "relcat/hammock.hpp"
#include "relcat/sset.hpp"
#include "relcat/verdict.hpp"

namespace relcat {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using json = nlohmann::json;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// FNV-1a 64-bit digest of a byte string, as fixed-width hex.
inline std::string fnv1a_hex(const std::string& bytes) {
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Document schemas
// ---------------------------------------------------------------------------

namespace schema {

inline const json& field(const json& j, const std::string& key, const std::string& what) {
    auto it = j.find(key);
    if (it == j.end()) throw io_error(what + ": missing key \"" + key + "\"");
    return *it;
}

inline FinCat category_from_json(const json& j, const std::string& what = "category") {
    FinCatBuilder b;
    try {
        for (const auto& o : field(j, "objects", what)) b.add_object(o.get<std::string>());
        for (const auto& m : field(j, "morphisms", what))
            b.add_morphism(field(m, "id", what).get<std::string>(),
                           field(m, "src", what).get<std::string>(),
                           field(m, "dst", what).get<std::string>());
        for (const auto& [obj, mor] : field(j, "identities", what).items())
            b.set_identity(obj, mor.get<std::string>());
        for (const auto& c : field(j, "composition", what)) {
            if (!c.is_array() || c.size() != 3)
                throw io_error(what + ": composition entries must be [g, f, gf] triples");
            b.set_compose(c[0].get<std::string>(), c[1].get<std::string>(), c[2].get<std::string>());
        }
        return b.finish();
    } catch (const std::invalid_argument& e) {
        throw io_error(what + ": " + e.what());
    } catch (const json::exception& e) {
        throw io_error(what + ": " + e.what());
    }
}

inline RelCat relcat_from_json(const json& j, const std::string& what = "relcat") {
    FinCat base = category_from_json(j, what);
    RelCat r{base, std::vector<char>(base.nmor(), 0)};
    for (const auto& w : field(j, "weq", what)) {
        int m = base.find_morphism(w.get<std::string>());
        if (m < 0) throw io_error(what + ": unknown marked morphism " + w.get<std::string>());
        r.weq[m] = 1;
    }
    return r;
}

inline Functor functor_from_json(const json& j, const FinCat& dom, const FinCat& cod,
                                 const std::string& what = "functor") {
    Functor f;
    f.domain = dom;
    f.codomain = cod;
    f.omap.assign(dom.nobj(), -1);
    f.mmap.assign(dom.nmor(), -1);
    for (const auto& [from, to] : field(j, "object_map", what).items()) {
        int a = dom.find_object(from), b = cod.find_object(to.get<std::string>());
        if (a < 0 || b < 0) throw io_error(what + ": object_map references unknown object " + from);
        f.omap[a] = b;
    }
    for (const auto& [from, to] : field(j, "morphism_map", what).items()) {
        int a = dom.find_morphism(from), b = cod.find_morphism(to.get<std::string>());
        if (a < 0 || b < 0) throw io_error(what + ": morphism_map references unknown morphism " + from);
        f.mmap[a] = b;
    }
    for (int o : f.omap)
        if (o < 0) throw io_error(what + ": object_map is not total");
    for (int m : f.mmap)
        if (m < 0) throw io_error(what + ": morphism_map is not total");
    return f;
}

inline Functor functor_doc_from_json(const json& j, const std::string& what = "functor") {
    FinCat dom = category_from_json(field(j, "domain", what), what + ".domain");
    FinCat cod = category_from_json(field(j, "codomain", what), what + ".codomain");
    return functor_from_json(j, dom, cod, what);
}

inline MarkedOpfib opfib_from_json(const json& j) {
    const std::string what = "marked-opfib";
    MarkedOpfib of;
    of.dom = relcat_from_json(field(j, "domain", what), what + ".domain");
    of.cod = relcat_from_json(field(j, "codomain", what), what + ".codomain");
    of.f = functor_from_json(j, of.dom.base, of.cod.base, what);
    of.lift.assign(static_cast<std::size_t>(of.dom.base.nobj()) * of.cod.base.nmor(), -1);
    for (const auto& l : field(j, "lifts", what)) {
        if (!l.is_array() || l.size() != 3)
            throw io_error(what + ": lifts entries must be [object, base-arrow, chosen-lift]");
        int c = of.dom.base.find_object(l[0].get<std::string>());
        int alpha = of.cod.base.find_morphism(l[1].get<std::string>());
        int lam = of.dom.base.find_morphism(l[2].get<std::string>());
        if (c < 0 || alpha < 0 || lam < 0)
            throw io_error(what + ": lifts entry references unknown identifiers");
        of.lift[c * of.cod.base.nmor() + alpha] = lam;
    }
    return of;
}

inline FunctorSequence sequence_from_json(const json& j) {
    const std::string what = "sequence";
    FunctorSequence seq;
    for (const auto& c : field(j, "categories", what))
        seq.categories.push_back(category_from_json(c, what + ".category"));
    std::size_t i = 0;
    for (const auto& f : field(j, "functors", what)) {
        if (i + 1 >= seq.categories.size())
            throw io_error(what + ": more functors than category gaps");
        seq.functors.push_back(
            functor_from_json(f, seq.categories[i], seq.categories[i + 1], what + ".functor"));
        ++i;
    }
    if (seq.functors.size() + 1 != seq.categories.size())
        throw io_error(what + ": need exactly one functor per consecutive pair");
    return seq;
}

}  // namespace schema

/// Simplicial set generated by an ordered simplicial complex: cells are
/// weakly increasing vertex tuples whose support is a face of some facet.
inline TruncSSet sset_from_facets(const std::vector<std::string>& vertices,
                                  const std::vector<std::vector<int>>& facets, int cap) {
    std::set<std::vector<int>> faces;  // strictly increasing supports
    for (auto f : facets) {
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
        for (int v : f)
            if (v < 0 || v >= static_cast<int>(vertices.size()))
                throw io_error("sset: facet vertex out of range");
        // all nonempty subsets
        int n = static_cast<int>(f.size());
        for (int mask = 1; mask < (1 << n); ++mask) {
            std::vector<int> sub;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) sub.push_back(f[i]);
            faces.insert(sub);
        }
    }
    auto tname = [&](const std::vector<int>& t) {
        std::string s = "<";
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i) s += ",";
            s += vertices[t[i]];
        }
        return s + ">";
    };
    SSetBuilder b(cap);
    std::vector<std::vector<std::vector<int>>> cells(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        // weakly increasing tuples with support in `faces`
        std::vector<int> cur(n + 1);
        auto rec = [&](auto&& self, int pos, int lo) -> void {
            if (pos == n + 1) {
                std::vector<int> sup = cur;
                sup.erase(std::unique(sup.begin(), sup.end()), sup.end());
                if (faces.count(sup)) {
                    cells[n].push_back(cur);
                    b.add_cell(n, tname(cur));
                }
                return;
            }
            for (int v = lo; v < static_cast<int>(vertices.size()); ++v) {
                cur[pos] = v;
                self(self, pos + 1, v);
            }
        };
        rec(rec, 0, 0);
    }
    for (int n = 1; n <= cap; ++n)
        for (std::size_t i = 0; i < cells[n].size(); ++i)
            for (int k = 0; k <= n; ++k) {
                std::vector<int> t = cells[n][i];
                t.erase(t.begin() + k);
                b.set_face(n, static_cast<int>(i), k, b.cell_index(n - 1, tname(t)));
            }
    for (int n = 0; n < cap; ++n)
        for (std::size_t i = 0; i < cells[n].size(); ++i)
            for (int k = 0; k <= n; ++k) {
                std::vector<int> t = cells[n][i];
                t.insert(t.begin() + k, t[k]);
                b.set_degen(n, static_cast<int>(i), k, b.cell_index(n + 1, tname(t)));
            }
    return b.finish();
}

inline TruncSSet sset_from_json(const json& j, int cap) {
    const std::string what = "sset";
    std::vector<std::string> vertices;
    for (const auto& v : schema::field(j, "vertices", what)) vertices.push_back(v.get<std::string>());
    std::vector<std::vector<int>> facets;
    std::map<std::string, int> vidx;
    for (std::size_t i = 0; i < vertices.size(); ++i) vidx[vertices[i]] = static_cast<int>(i);
    for (const auto& f : schema::field(j, "facets", what)) {
        std::vector<int> facet;
        for (const auto& v : f) {
            auto it = vidx.find(v.get<std::string>());
            if (it == vidx.end()) throw io_error("sset: unknown facet vertex " + v.get<std::string>());
            facet.push_back(it->second);
        }
        facets.push_back(facet);
    }
    return sset_from_facets(vertices, facets, cap);
}

// ---------------------------------------------------------------------------
// DOT export
// ---------------------------------------------------------------------------

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

/// Category as a digraph: objects are nodes, non-identity morphisms edges;
/// marked arrows dashed when a marking is supplied.
inline std::string dot_category(const FinCat& c, const std::vector<char>* weq = nullptr) {
    std::ostringstream os;
    os << "digraph category {\n  rankdir=LR;\n";
    for (int o = 0; o < c.nobj(); ++o)
        os << "  \"" << dot_escape(c.objects[o]) << "\";\n";
    for (int m = 0; m < c.nmor(); ++m) {
        if (c.is_identity(m)) continue;
        os << "  \"" << dot_escape(c.objects[c.src[m]]) << "\" -> \""
           << dot_escape(c.objects[c.dst[m]]) << "\" [label=\"" << dot_escape(c.morphisms[m]) << "\"";
        if (weq && (*weq)[m]) os << ", style=dashed";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

/// 1-skeleton of a truncated simplicial set.
inline std::string dot_sset_skeleton(const TruncSSet& x) {
    std::ostringstream os;
    os << "digraph skeleton {\n";
    for (int v = 0; v < x.size(0); ++v) os << "  \"" << dot_escape(x.cells[0][v]) << "\";\n";
    for (int e = 0; e < x.size(1); ++e) {
        if (x.degenerate[1][e]) continue;
        os << "  \"" << dot_escape(x.cells[0][x.d(1, e, 1)]) << "\" -> \""
           << dot_escape(x.cells[0][x.d(1, e, 0)]) << "\";\n";
    }
    os << "}\n";
    return os.str();
}

/// Hammock as a layered grid: one rank per column boundary, horizontal
/// arrows along rows (backward columns reversed), dashed marked verticals.
inline std::string dot_hammock(const RelCat& r, const Hammock& h) {
    const FinCat& c = r.base;
    std::ostringstream os;
    os << "digraph hammock {\n  rankdir=LR;\n";
    auto node = [&](int row, int j) {
        return "r" + std::to_string(row) + "b" + std::to_string(j);
    };
    int w = h.width();
    os << "  \"" << node(0, 0) << "\" [label=\"" << dot_escape(c.objects[h.src]) << "\"];\n";
    os << "  \"" << node(0, w) << "\" [label=\"" << dot_escape(c.objects[h.dst]) << "\"];\n";
    for (int t = 0; t <= h.height(); ++t)
        for (int j = 1; j < w; ++j)
            os << "  \"" << node(t, j) << "\" [label=\""
               << dot_escape(c.objects[h.object_at(c, t, j)]) << "\"];\n";
    for (int j = 1; j < w; ++j) {
        os << "  { rank=same;";
        for (int t = 0; t <= h.height(); ++t) os << " \"" << node(t, j) << "\";";
        os << " }\n";
    }
    auto endpoint = [&](int t, int j) { return (j == 0 || j == w) ? node(0, j) : node(t, j); };
    for (int t = 0; t <= h.height(); ++t)
        for (int j = 0; j < w; ++j) {
            std::string from = endpoint(t, j), to = endpoint(t, j + 1);
            if (h.backward[j]) std::swap(from, to);
            os << "  \"" << from << "\" -> \"" << to << "\" [label=\""
               << dot_escape(c.morphisms[h.rows[t][j]]) << "\""
               << (h.backward[j] ? ", style=dashed" : "") << "];\n";
        }
    for (int t = 0; t < h.height(); ++t)
        for (int j = 1; j < w; ++j)
            os << "  \"" << node(t, j) << "\" -> \"" << node(t + 1, j)
               << "\" [style=dotted, label=\"" << dot_escape(c.morphisms[h.verts[t][j - 1]])
               << "\"];\n";
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Run reports
// ---------------------------------------------------------------------------

inline constexpr const char* kToolVersion = "0.1.0";

/// Deterministic text rendering: stable ordering, no timestamps. Timing is
/// the caller's business and goes to stderr, never into the report body.
inline std::string render_report(const std::string& command,
                                 const std::vector<std::pair<std::string, std::string>>& inputs,
                                 const Report& rep) {
    std::ostringstream os;
    os << "# relcat report\n";
    os << "version: " << kToolVersion << "\n";
    os << "command: " << command << "\n";
    for (const auto& [path, digest] : inputs) os << "input: " << path << " fnv1a=" << digest << "\n";
    for (const auto& m : rep.meta) os << "note: " << m << "\n";
    for (const auto& e : rep.entries) {
        os << "check " << e.name << ": " << to_string(e.verdict.outcome);
        if (e.verdict.is_fail()) os << " witness=" << e.verdict.witness;
        if (e.verdict.is_inconclusive()) os << " reason=" << e.verdict.reason;
        if (!e.verdict.bounds.empty()) os << " [" << e.verdict.bounds << "]";
        os << "\n";
    }
    os << "summary: " << to_string(rep.summary()) << "\n";
    return os.str();
}

/// Exit code contract: 0 all Pass, 1 any Fail, 3 Inconclusive without Fail.
/// Schema/usage errors exit 2 at the call site.
inline int exit_code_for(Outcome o) {
    switch (o) {
    case Outcome::Pass: return 0;
    case Outcome::Fail: return 1;
    default: return 3;
    }
}

}  // namespace relcat
