#pragma once

// Rational polyhedral fans: face and normal fans, boundary-ray refinement, PL support functions.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace mirrorkit {

// Cone given by generators, as inequalities <u,x> >= 0 and equalities <e,x> = 0.
struct ConeHRep {
    std::vector<Vec> inequalities;
    std::vector<Vec> equalities;

    bool contains(const Vec& x) const {
        for (const Vec& e : equalities)
            if (dot(e, x) != 0) return false;
        for (const Vec& u : inequalities)
            if (dot(u, x) < 0) return false;
        return true;
    }
};

inline bool is_pointed(const std::vector<Vec>& rays) {
    if (rays.empty()) return true;
    return !convex_hull(rays).contains(Vec(rays[0].size(), 0));
}

inline ConeHRep cone_hrep(const std::vector<Vec>& rays, std::size_t rank) {
    ConeHRep h;
    if (rays.empty()) {
        for (std::size_t i = 0; i < rank; ++i) {
            Vec e(rank, 0);
            e[i] = 1;
            h.equalities.push_back(e);
        }
        return h;
    }
    std::vector<Vec> pts = rays;
    pts.push_back(Vec(rank, 0));
    LatticePolytope p = convex_hull(pts);
    for (const Facet& f : p.facets())
        if (f.offset == 0) h.inequalities.push_back(f.normal);
    for (const Equality& e : p.equalities()) h.equalities.push_back(e.normal);
    return h;
}

// Minimal generating subset of primitive rays.
inline std::vector<Vec> minimal_generators(std::vector<Vec> rays) {
    for (Vec& r : rays) r = primitive(r);
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    std::size_t i = 0;
    while (i < rays.size()) {
        std::vector<Vec> others;
        for (std::size_t j = 0; j < rays.size(); ++j)
            if (j != i) others.push_back(rays[j]);
        if (!others.empty() && cone_hrep(others, rays[i].size()).contains(rays[i]))
            rays.erase(rays.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
    return rays;
}

struct FanCheck {
    bool ok = true;
    std::string witness;
};

class Fan {
public:
    Fan() = default;

    // Cones given by generator lists; rays are made primitive and minimal.
    Fan(std::size_t rank, const std::vector<std::vector<Vec>>& cones) : rank_(rank) {
        std::set<Vec> all;
        std::vector<std::vector<Vec>> gens;
        for (const auto& c : cones) {
            for (const Vec& r : c)
                if (r.size() != rank) throw PreconditionError("fan: ray of wrong rank");
            auto g = c.empty() ? std::vector<Vec>{} : minimal_generators(c);
            if (!is_pointed(g)) throw StructuralError("fan: cone is not strongly convex");
            gens.push_back(g);
            all.insert(g.begin(), g.end());
        }
        rays_.assign(all.begin(), all.end());
        std::set<std::vector<std::size_t>> cs;
        for (const auto& g : gens) {
            std::vector<std::size_t> ix;
            for (const Vec& r : g) ix.push_back(ray_index(r));
            std::sort(ix.begin(), ix.end());
            cs.insert(ix);
        }
        cones_.assign(cs.begin(), cs.end());
    }

    std::size_t rank() const { return rank_; }
    const std::vector<Vec>& rays() const { return rays_; }
    const std::vector<std::vector<std::size_t>>& cones() const { return cones_; }

    std::vector<Vec> cone_rays(std::size_t c) const {
        std::vector<Vec> out;
        for (std::size_t i : cones_[c]) out.push_back(rays_[i]);
        return out;
    }

    std::size_t ray_index(const Vec& r) const {
        auto it = std::lower_bound(rays_.begin(), rays_.end(), r);
        if (it == rays_.end() || *it != r) return rays_.size();
        return static_cast<std::size_t>(it - rays_.begin());
    }

    bool has_ray(const Vec& r) const { return ray_index(r) < rays_.size(); }

    std::set<std::set<Vec>> cone_set() const {
        std::set<std::set<Vec>> out;
        for (std::size_t c = 0; c < cones_.size(); ++c) {
            auto r = cone_rays(c);
            out.insert(std::set<Vec>(r.begin(), r.end()));
        }
        return out;
    }

    bool same_cones(const Fan& o) const { return rank_ == o.rank_ && cone_set() == o.cone_set(); }

    bool simplicial() const {
        for (std::size_t c = 0; c < cones_.size(); ++c) {
            auto r = cone_rays(c);
            if (!r.empty() && mirrorkit::rank(r) != static_cast<int>(r.size())) return false;
        }
        return true;
    }

    FanCheck validate() const;
    bool is_complete() const;

private:
    std::size_t rank_ = 0;
    std::vector<Vec> rays_;
    std::vector<std::vector<std::size_t>> cones_;
};

inline std::string vec_str(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

// Do two cones meet in a common face?
inline FanCheck cones_meet_in_face(const std::vector<Vec>& c1, const std::vector<Vec>& c2, std::size_t rank) {
    if (c1.empty() || c2.empty()) return {};
    ConeHRep h1 = cone_hrep(c1, rank), h2 = cone_hrep(c2, rank);
    // fast path: a facet hyperplane of c1 separates c2 and cuts both in the same ray set
    for (const Vec& u : h1.inequalities) {
        bool sep = std::all_of(c2.begin(), c2.end(), [&](const Vec& r) { return dot(u, r) <= 0; });
        if (!sep) continue;
        std::set<Vec> s1, s2;
        for (const Vec& r : c1)
            if (dot(u, r) == 0) s1.insert(r);
        for (const Vec& r : c2)
            if (dot(u, r) == 0) s2.insert(r);
        if (s1 == s2) return {};
    }
    // general case: enumerate rays of the truncated intersection
    Vec w(rank, 0);
    for (const Vec& u : h1.inequalities) w = add(w, u);
    std::vector<std::pair<Vec, Int>> sys;
    for (const ConeHRep* h : {&h1, &h2}) {
        for (const Vec& u : h->inequalities) sys.push_back({u, 0});
        for (const Vec& e : h->equalities) {
            sys.push_back({e, 0});
            sys.push_back({neg(e), 0});
        }
    }
    sys.push_back({neg(w), -1});
    std::sort(sys.begin(), sys.end());
    sys.erase(std::unique(sys.begin(), sys.end()), sys.end());
    std::vector<Vec> inter;
    for (const QVec& v : vertices_of_inequalities(sys, rank)) {
        bool zero = std::all_of(v.begin(), v.end(), [](const Q& x) { return x == 0; });
        if (!zero) inter.push_back(clear_denominators(v));
    }
    auto face_ok = [&](const std::vector<Vec>& a, const ConeHRep& ha, const ConeHRep& hb) {
        std::vector<Vec> tight;
        for (const Vec& u : ha.inequalities)
            if (std::all_of(inter.begin(), inter.end(), [&](const Vec& x) { return dot(u, x) == 0; })) tight.push_back(u);
        for (const Vec& r : a) {
            bool in_face = std::all_of(tight.begin(), tight.end(), [&](const Vec& u) { return dot(u, r) == 0; });
            if (in_face && !hb.contains(r)) return false;
        }
        return true;
    };
    if (face_ok(c1, h1, h2) && face_ok(c2, h2, h1)) return {};
    std::string w1, w2;
    for (const Vec& r : c1) w1 += vec_str(r);
    for (const Vec& r : c2) w2 += vec_str(r);
    return {false, "cones {" + w1 + "} and {" + w2 + "} do not meet in a common face"};
}

inline FanCheck Fan::validate() const {
    for (std::size_t a = 0; a < cones_.size(); ++a)
        for (std::size_t b = a + 1; b < cones_.size(); ++b) {
            auto r = cones_meet_in_face(cone_rays(a), cone_rays(b), rank_);
            if (!r.ok) return r;
        }
    return {};
}

// Every facet of every full-dimensional maximal cone is shared with a cone on the other side.
inline bool Fan::is_complete() const {
    if (rank_ == 0) return true;
    if (cones_.empty()) return false;
    for (std::size_t c = 0; c < cones_.size(); ++c) {
        auto rs = cone_rays(c);
        if (mirrorkit::rank(rs) != static_cast<int>(rank_)) return false;
        ConeHRep h = cone_hrep(rs, rank_);
        for (const Vec& u : h.inequalities) {
            std::vector<Vec> facet;
            for (const Vec& r : rs)
                if (dot(u, r) == 0) facet.push_back(r);
            bool found = false;
            for (std::size_t d = 0; d < cones_.size() && !found; ++d) {
                if (d == c) continue;
                auto ds = cone_rays(d);
                ConeHRep hd = cone_hrep(ds, rank_);
                bool other_side = std::all_of(ds.begin(), ds.end(), [&](const Vec& r) { return dot(u, r) <= 0; });
                bool holds = std::all_of(facet.begin(), facet.end(), [&](const Vec& r) { return hd.contains(r); });
                found = other_side && holds;
            }
            if (!found) return false;
        }
    }
    return true;
}

inline Fan point_fan() { return Fan(0, {{}}); }

// Cones over the faces of a polytope with the origin in its interior.
inline Fan face_fan_of(const LatticePolytope& p) {
    Vec origin(p.ambient_rank(), 0);
    if (!p.full_dimensional() || !p.contains_relative_interior(origin))
        throw PreconditionError("face fan: origin must be an interior point");
    std::vector<std::vector<Vec>> cones;
    for (const Facet& f : p.facets()) {
        std::vector<Vec> c;
        for (std::size_t i : p.tight_vertices(f)) c.push_back(primitive(p.vertices()[i]));
        cones.push_back(c);
    }
    return Fan(p.ambient_rank(), cones);
}

inline Fan face_fan(const LatticePolytope& p) {
    auto v = reflexive_verdict(p);
    if (!v.reflexive) throw PreconditionError("face_fan: input is not reflexive (" + v.diagnostic + ")");
    return face_fan_of(p);
}

inline Fan normal_fan(const LatticePolytope& p) {
    if (!p.full_dimensional()) throw PreconditionError("normal_fan: polytope is not full-dimensional");
    std::vector<std::vector<Vec>> cones;
    for (std::size_t v = 0; v < p.vertices().size(); ++v) {
        std::vector<Vec> c;
        for (const Facet& f : p.facets())
            if (dot(f.normal, p.vertices()[v]) == -f.offset) c.push_back(f.normal);
        cones.push_back(c);
    }
    return Fan(p.ambient_rank(), cones);
}

// Stellar subdivision of a cell (a polytope) at a point q inside it.
inline std::vector<LatticePolytope> stellar_cells(const LatticePolytope& cell, const Vec& q) {
    std::vector<LatticePolytope> out;
    for (const Face& g : faces(cell, cell.dim() - 1)) {
        auto pts = face_points(cell, g);
        if (convex_hull(pts).contains(q)) continue;
        pts.push_back(q);
        out.push_back(convex_hull(pts));
    }
    return out;
}

// Pulling triangulation of a cell by its lexicographically smallest vertex.
inline std::vector<std::vector<Vec>> pull_triangulate(const LatticePolytope& cell) {
    if (static_cast<int>(cell.vertices().size()) == cell.dim() + 1) return {cell.vertices()};
    std::vector<std::vector<Vec>> out;
    const Vec& v0 = cell.vertices()[0];
    for (const Face& g : faces(cell, cell.dim() - 1)) {
        if (std::binary_search(g.vertex_indices.begin(), g.vertex_indices.end(), std::size_t{0})) continue;
        for (auto s : pull_triangulate(convex_hull(face_points(cell, g)))) {
            s.push_back(v0);
            out.push_back(s);
        }
    }
    return out;
}

// Subdivide the face fan of p so that every boundary lattice point spans a ray (rank <= 3).
inline Fan refine_face_fan(const LatticePolytope& p) {
    const std::size_t n = p.ambient_rank();
    if (n > 3) throw PreconditionError("refine_with_boundary_rays: rank >= 4 is unsupported");
    Fan base = face_fan_of(p);
    if (n <= 1) return base;
    auto boundary = boundary_lattice_points(p);
    std::vector<std::vector<Vec>> cones;
    for (const Facet& f : p.facets()) {
        std::vector<Vec> fv;
        for (std::size_t i : p.tight_vertices(f)) fv.push_back(p.vertices()[i]);
        std::vector<LatticePolytope> cells{convex_hull(fv)};
        for (const Vec& q : boundary) {
            if (dot(f.normal, q) != -f.offset) continue;
            if (std::binary_search(fv.begin(), fv.end(), q)) continue;
            std::vector<LatticePolytope> next;
            for (const LatticePolytope& c : cells) {
                if (c.contains(q) && c.vertex_index(q) == c.vertices().size()) {
                    auto sub = stellar_cells(c, q);
                    next.insert(next.end(), sub.begin(), sub.end());
                } else {
                    next.push_back(c);
                }
            }
            cells = std::move(next);
        }
        for (const LatticePolytope& c : cells)
            for (auto s : pull_triangulate(c)) {
                for (Vec& r : s) r = primitive(r);
                cones.push_back(s);
            }
    }
    return Fan(n, cones);
}

inline Fan refine_with_boundary_rays(const Fan& f, const LatticePolytope& p) {
    if (p.ambient_rank() > 3) throw PreconditionError("refine_with_boundary_rays: rank >= 4 is unsupported");
    if (!f.same_cones(face_fan_of(p))) throw PreconditionError("refine_with_boundary_rays: fan is not the face fan of p");
    return refine_face_fan(p);
}

// Star subdivision of a simplicial fan at a new primitive ray v.
inline Fan stellar_insert(const Fan& f, const Vec& v) {
    if (f.has_ray(v)) return f;
    std::vector<std::vector<Vec>> cones;
    for (std::size_t c = 0; c < f.cones().size(); ++c) {
        auto rs = f.cone_rays(c);
        if (!cone_hrep(rs, f.rank()).contains(v)) {
            cones.push_back(rs);
            continue;
        }
        if (rank(rs) != static_cast<int>(rs.size())) throw PreconditionError("stellar_insert: non-simplicial cone");
        QMatrix a(f.rank(), QVec(rs.size()));
        for (std::size_t i = 0; i < f.rank(); ++i)
            for (std::size_t j = 0; j < rs.size(); ++j) a[i][j] = rs[j][i];
        auto lam = solve(a, to_q(v), rs.size());
        for (std::size_t j = 0; j < rs.size(); ++j) {
            if ((*lam)[j] <= 0) continue;
            auto nc = rs;
            nc[j] = v;
            cones.push_back(nc);
        }
    }
    return Fan(f.rank(), cones);
}

// Maximal cones of a product fan: cone(a) + cone(b) for cone pairs.
inline Fan product_fan(std::size_t rank, const std::vector<std::vector<Vec>>& a, const std::vector<std::vector<Vec>>& b) {
    std::vector<std::vector<Vec>> cones;
    for (const auto& x : a)
        for (const auto& y : b) {
            auto c = x;
            c.insert(c.end(), y.begin(), y.end());
            cones.push_back(c);
        }
    return Fan(rank, cones);
}

struct PLFunction {
    Fan fan;
    std::vector<Int> values;  // one per ray of fan

    Int value(const Vec& ray) const {
        std::size_t i = fan.ray_index(ray);
        if (i >= fan.rays().size()) throw PreconditionError("PL function: not a ray " + vec_str(ray));
        return values[i];
    }

    // The linear functional on cone c matching the ray values, if any.
    std::optional<QVec> linear_piece(std::size_t c) const {
        auto rs = fan.cone_rays(c);
        QMatrix a;
        QVec b;
        for (std::size_t i : fan.cones()[c]) {
            a.push_back(to_q(fan.rays()[i]));
            b.emplace_back(values[i]);
        }
        return solve(a, b, fan.rank());
    }
};

struct PLChecks {
    bool is_convex = true;
    bool is_concave = true;
    bool is_strictly_convex = true;
    bool integral = true;
    std::string witness;  // first violation of convexity, if any
};

inline PLChecks pl_function_checks(const PLFunction& phi) {
    if (!phi.fan.is_complete()) throw PreconditionError("pl_function_checks: fan is not complete");
    PLChecks r;
    for (std::size_t c = 0; c < phi.fan.cones().size(); ++c) {
        auto u = phi.linear_piece(c);
        if (!u) throw StructuralError("pl_function_checks: values have no linear extension on cone " + std::to_string(c));
        if (!is_integral(*u)) r.integral = false;
        const auto& own = phi.fan.cones()[c];
        for (std::size_t i = 0; i < phi.fan.rays().size(); ++i) {
            if (std::binary_search(own.begin(), own.end(), i)) continue;
            Q lin = 0;
            for (std::size_t k = 0; k < phi.fan.rank(); ++k) lin += (*u)[k] * phi.fan.rays()[i][k];
            Q val(phi.values[i]);
            if (lin > val) {
                if (r.is_convex)
                    r.witness = "cone " + std::to_string(c) + " exceeds value at ray " + vec_str(phi.fan.rays()[i]);
                r.is_convex = false;
            }
            if (lin < val) r.is_concave = false;
            if (lin >= val) r.is_strictly_convex = false;
        }
    }
    return r;
}

}  // namespace mirrorkit
