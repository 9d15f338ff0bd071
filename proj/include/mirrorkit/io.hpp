#pragma once

// JSON documents: polytopes, partitions, nef partitions, strata data, monodromy, emitted fans and equations.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lg.hpp"
#include "spectral.hpp"

namespace mirrorkit::io {

using json = nlohmann::json;
namespace fs = std::filesystem;

inline json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string() + ": cannot open");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

// Typed field access; any mismatch becomes a ParseError naming the field.
template <class T>
T get(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(where + ": field '" + key + "' has the wrong type (" + e.what() + ")");
    }
}

inline Vec vec_of(const json& j, const std::string& where) {
    try {
        return j.get<Vec>();
    } catch (const json::exception&) {
        throw ParseError(where + ": expected an integer vector");
    }
}

inline LatticePolytope polytope_from_json(const json& j, const std::string& where) {
    auto verts = get<std::vector<Vec>>(j, "vertices", where);
    if (verts.empty()) throw ParseError(where + ": no vertices");
    std::size_t rank = verts[0].size();
    if (j.contains("rank")) rank = get<std::size_t>(j, "rank", where);
    for (const Vec& v : verts)
        if (v.size() != rank) throw ParseError(where + ": vertex of length " + std::to_string(v.size()) + " in rank " + std::to_string(rank));
    std::string tag = j.contains("lattice") ? get<std::string>(j, "lattice", where) : "M";
    LatticePolytope p = convex_hull(verts, tag);
    if (j.contains("name")) p.set_name(get<std::string>(j, "name", where));
    return p;
}

inline LatticePolytope read_polytope(const fs::path& path) { return polytope_from_json(read_json(path), path.string()); }

inline json to_json(const LatticePolytope& p) {
    json j;
    j["name"] = p.name();
    j["rank"] = p.ambient_rank();
    j["lattice"] = p.tag();
    j["vertices"] = p.vertices();
    json fs = json::array();
    for (const Facet& f : p.facets()) fs.push_back({{"normal", f.normal}, {"offset", f.offset}});
    j["facets"] = fs;
    if (!p.equalities().empty()) {
        json es = json::array();
        for (const Equality& e : p.equalities()) es.push_back({{"normal", e.normal}, {"value", e.value}});
        j["equalities"] = es;
    }
    return j;
}

// The "polytope" field: inline object, or a name resolved as <name>.json next to the referring file.
inline LatticePolytope resolve_polytope(const json& j, const fs::path& from) {
    const std::string where = from.string();
    if (!j.contains("polytope")) throw ParseError(where + ": missing field 'polytope'");
    const json& p = j.at("polytope");
    if (p.is_object()) return polytope_from_json(p, where + ": polytope");
    if (!p.is_string()) throw ParseError(where + ": field 'polytope' must be a name or an object");
    fs::path target = from.parent_path() / (p.get<std::string>() + ".json");
    return read_polytope(target);
}

inline SemistablePartition read_partition(const fs::path& path) {
    json j = read_json(path);
    LatticePolytope host = resolve_polytope(j, path);
    auto pieces = get<std::vector<std::vector<Vec>>>(j, "pieces", path.string());
    std::vector<LatticePolytope> ps;
    for (const auto& pc : pieces) {
        for (const Vec& v : pc)
            if (v.size() != host.ambient_rank()) throw ParseError(path.string() + ": piece vertex of the wrong rank");
        ps.push_back(convex_hull(pc, host.tag()));
    }
    return SemistablePartition(host, ps);
}

inline json to_json(const Fan& f) {
    json cones = json::array();
    for (std::size_t c = 0; c < f.cones().size(); ++c) cones.push_back(f.cone_rays(c));
    return {{"rank", f.rank()}, {"maximal_cones", cones}};
}

inline Fan fan_from_json(const json& j, const std::string& where) {
    auto rank = get<std::size_t>(j, "rank", where);
    auto cones = get<std::vector<std::vector<Vec>>>(j, "maximal_cones", where);
    return Fan(rank, cones);
}

struct NefDocument {
    LatticePolytope host;
    std::vector<std::vector<std::size_t>> parts;
};

// Parts are vertex indices (lex order of vertices) or vertex coordinates.
inline NefDocument read_nef(const fs::path& path) {
    json j = read_json(path);
    NefDocument d{resolve_polytope(j, path), {}};
    if (!j.contains("parts") || !j["parts"].is_array()) throw ParseError(path.string() + ": missing field 'parts'");
    for (const json& part : j["parts"]) {
        if (!part.is_array()) throw ParseError(path.string() + ": a part must be an array");
        std::vector<std::size_t> idx;
        for (const json& e : part) {
            if (e.is_number_integer()) {
                Int v = e.get<Int>();
                if (v < 0) throw ParseError(path.string() + ": negative vertex index");
                idx.push_back(static_cast<std::size_t>(v));
            } else {
                Vec v = vec_of(e, path.string());
                std::size_t i = d.host.vertex_index(v);
                if (i == d.host.vertices().size()) throw ParseError(path.string() + ": " + vec_str(v) + " is not a vertex");
                idx.push_back(i);
            }
        }
        std::sort(idx.begin(), idx.end());
        d.parts.push_back(idx);
    }
    return d;
}

inline std::vector<std::vector<Vec>> read_groups(const fs::path& path) {
    json j = read_json(path);
    return get<std::vector<std::vector<Vec>>>(j, "groups", path.string());
}

inline IndexSet index_set_of(const json& j, const std::string& where) {
    IndexSet i;
    try {
        i = j.get<IndexSet>();
    } catch (const json::exception&) {
        throw ParseError(where + ": index set must be an integer list");
    }
    std::sort(i.begin(), i.end());
    return i;
}

inline StrataEuler read_strata_euler(const fs::path& path) {
    const std::string where = path.string();
    json j = read_json(path);
    StrataEuler d;
    d.n = get<int>(j, "n", where);
    d.components = get<int>(j, "components", where);
    std::string side = get<std::string>(j, "side", where);
    if (side == "degeneration") d.side = Side::degeneration;
    else if (side == "hybrid") d.side = Side::hybrid;
    else throw ParseError(where + ": side must be 'degeneration' or 'hybrid'");
    if (!j.contains("entries") || !j["entries"].is_array()) throw ParseError(where + ": missing field 'entries'");
    for (const json& e : j["entries"]) {
        IndexSet i = index_set_of(e.value("I", json()), where);
        if (!d.entries.emplace(i, get<Int>(e, "e", where)).second) throw ParseError(where + ": duplicate entry " + index_label(i));
    }
    if (j.contains("empty"))
        for (const json& e : j["empty"]) d.empty.insert(index_set_of(e, where));
    d.check_shape();
    return d;
}

inline json to_json(const StrataEuler& d) {
    json entries = json::array();
    for (const auto& [i, e] : d.entries) entries.push_back({{"I", i}, {"e", e}});
    json j{{"n", d.n}, {"components", d.components}, {"side", d.side == Side::degeneration ? "degeneration" : "hybrid"}, {"entries", entries}};
    if (!d.empty.empty()) j["empty"] = d.empty;
    return j;
}

inline MonodromyReps read_monodromy(const fs::path& path) {
    const std::string where = path.string();
    json j = read_json(path);
    MonodromyReps r;
    r.dim = get<std::size_t>(j, "dim", where);
    if (!j.contains("reps") || !j["reps"].is_array()) throw ParseError(where + ": missing field 'reps'");
    for (const json& e : j["reps"]) {
        auto m = get<std::vector<Vec>>(e, "matrix", where);
        int jj = get<int>(e, "j", where);
        if (e.contains("i")) r.pair_reps[{get<int>(e, "i", where), jj}] = m;
        else r.single_reps[jj] = m;
    }
    return r;
}

inline Q rational_of(const json& e, const std::string& where) {
    if (e.is_number_integer()) return Q(e.get<Int>());
    if (e.is_string()) {
        try {
            return parse_rational(e.get<std::string>());
        } catch (const ParseError& err) {
            throw ParseError(where + ": " + err.what());
        }
    }
    throw ParseError(where + ": matrix entries must be integers or \"p/q\" strings");
}

inline QMatrix qmatrix_of(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": matrix must be a list of rows");
    QMatrix m;
    for (const json& row : j) {
        if (!row.is_array()) throw ParseError(where + ": matrix row must be a list");
        QVec r;
        for (const json& e : row) r.push_back(rational_of(e, where));
        m.push_back(r);
    }
    return m;
}

inline json to_json(const QMatrix& m) {
    json rows = json::array();
    for (const QVec& r : m) {
        json row = json::array();
        for (const Q& x : r) {
            if (denominator(x) == 1) row.push_back(numerator(x).convert_to<Int>());
            else row.push_back(to_string(x));
        }
        rows.push_back(row);
    }
    return rows;
}

inline std::map<int, int> int_map_of(const json& j, const std::string& where) {
    std::map<int, int> out;
    if (!j.is_object()) throw ParseError(where + ": expected an object keyed by degree");
    for (auto it = j.begin(); it != j.end(); ++it) {
        try {
            out[std::stoi(it.key())] = it.value().get<int>();
        } catch (const std::exception&) {
            throw ParseError(where + ": bad entry '" + it.key() + "'");
        }
    }
    return out;
}

inline MapKind kind_of(const std::string& s, const std::string& where) {
    if (s == "gysin") return MapKind::gysin;
    if (s == "restrict") return MapKind::restrict;
    if (s == "rho") return MapKind::rho;
    if (s == "rho_dual") return MapKind::rho_dual;
    throw ParseError(where + ": unknown map kind '" + s + "'");
}

inline StrataComplexData read_strata_complex(const fs::path& path) {
    const std::string where = path.string();
    json j = read_json(path);
    StrataComplexData d;
    d.n = get<int>(j, "n", where);
    if (j.contains("components")) d.components = get<int>(j, "components", where);
    if (!j.contains("strata") || !j["strata"].is_array()) throw ParseError(where + ": missing field 'strata'");
    for (const json& s : j["strata"]) {
        StratumCohomology c;
        c.i = index_set_of(s.value("I", json()), where);
        c.dims = int_map_of(s.value("dims", json::object()), where);
        if (s.contains("hodge"))
            for (auto it = s["hodge"].begin(); it != s["hodge"].end(); ++it) c.hodge[std::stoi(it.key())] = int_map_of(it.value(), where);
        if (s.contains("pairing"))
            for (auto it = s["pairing"].begin(); it != s["pairing"].end(); ++it)
                c.pairing[std::stoi(it.key())] = qmatrix_of(it.value(), where);
        d.strata.push_back(c);
    }
    if (d.components == 0)
        for (const auto& s : d.strata) d.components = std::max(d.components, s.i.back() + 1);
    if (j.contains("maps"))
        for (const json& m : j["maps"]) {
            StrataMap sm;
            sm.from = index_set_of(m.value("from", json()), where);
            sm.to = index_set_of(m.value("to", json()), where);
            sm.kind = kind_of(get<std::string>(m, "kind", where), where);
            sm.degree = m.contains("degree") ? get<int>(m, "degree", where) : 0;
            sm.matrix = qmatrix_of(m.value("matrix", json::array()), where);
            d.maps.push_back(sm);
        }
    if (j.contains("abutment"))
        for (auto it = j["abutment"].begin(); it != j["abutment"].end(); ++it) d.abutment[it.key()] = int_map_of(it.value(), where);
    try {
        d.validate();
    } catch (const PreconditionError& e) {
        throw ParseError(where + ": " + e.what());
    }
    return d;
}

inline json to_json(const StrataComplexData& d) {
    json strata = json::array();
    for (const auto& s : d.strata) {
        json o{{"I", s.i}};
        json dims = json::object();
        for (const auto& [k, v] : s.dims) dims[std::to_string(k)] = v;
        o["dims"] = dims;
        if (!s.hodge.empty()) {
            json h = json::object();
            for (const auto& [k, m] : s.hodge) {
                json hm = json::object();
                for (const auto& [a, c] : m) hm[std::to_string(a)] = c;
                h[std::to_string(k)] = hm;
            }
            o["hodge"] = h;
        }
        if (!s.pairing.empty()) {
            json p = json::object();
            for (const auto& [k, m] : s.pairing) p[std::to_string(k)] = to_json(m);
            o["pairing"] = p;
        }
        strata.push_back(o);
    }
    json maps = json::array();
    for (const auto& m : d.maps)
        maps.push_back({{"from", m.from}, {"to", m.to}, {"kind", kind_name(m.kind)}, {"degree", m.degree}, {"matrix", to_json(m.matrix)}});
    json j{{"n", d.n}, {"components", d.components}, {"strata", strata}, {"maps", maps}};
    if (!d.abutment.empty()) {
        json a = json::object();
        for (const auto& [page, m] : d.abutment) {
            json pm = json::object();
            for (const auto& [k, v] : m) pm[std::to_string(k)] = v;
            a[page] = pm;
        }
        j["abutment"] = a;
    }
    return j;
}

inline json to_json(const HomogeneousEquation& eq, const std::vector<Vec>& rays) {
    json terms = json::array();
    for (const auto& t : eq.terms) {
        json exps = json::object();
        for (std::size_t r = 0; r < rays.size(); ++r)
            if (t.exps[r] != 0) exps["z_" + point_label(rays[r])] = t.exps[r];
        terms.push_back({{"coef", t.coef}, {"sign", t.sign}, {"exps", exps}});
    }
    return {{"terms", terms}};
}

inline json to_json(const BigradedPage& p) {
    json e1 = json::array(), e2 = json::array();
    for (const auto& [k, t] : p.terms) e1.push_back({{"p", k.first}, {"q", k.second}, {"dim", t.dim()}});
    for (const auto& [k, v] : p.e2) e2.push_back({{"p", k.first}, {"q", k.second}, {"dim", v}});
    json j{{"page", p.name}, {"E1", e1}, {"E2", e2}, {"d_squared_zero", p.d_squared_zero}, {"flags", p.flags}};
    if (p.label) j["label"] = *p.label;
    if (!p.d_squared_zero) j["witness"] = p.witness;
    return j;
}

}  // namespace mirrorkit::io
