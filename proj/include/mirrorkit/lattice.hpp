#pragma once

// Lattice polytopes: hulls, faces, lattice points, polar duality, smoothness.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "arith.hpp"

namespace mirrorkit {

// <normal, x> >= -offset
struct Facet {
    Vec normal;
    Int offset = 0;
    auto operator<=>(const Facet&) const = default;
};

// <normal, x> == value
struct Equality {
    Vec normal;
    Int value = 0;
    auto operator<=>(const Equality&) const = default;
};

struct Face {
    std::vector<std::size_t> vertex_indices;
    int dim = 0;
    bool operator==(const Face&) const = default;
};

inline std::string flip_tag(const std::string& t) { return t == "M" ? "N" : (t == "N" ? "M" : t); }

class LatticePolytope;

namespace detail {
inline LatticePolytope hull_by_subsets(const std::vector<Vec>& points, const std::string& tag);
}

class LatticePolytope {
public:
    LatticePolytope() = default;

    std::size_t ambient_rank() const { return rank_; }
    int dim() const { return dim_; }
    bool full_dimensional() const { return dim_ == static_cast<int>(rank_); }
    const std::vector<Vec>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    const std::vector<Equality>& equalities() const { return equalities_; }
    const std::string& tag() const { return tag_; }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    bool contains(const Vec& x) const {
        for (const Equality& e : equalities_)
            if (dot(e.normal, x) != e.value) return false;
        for (const Facet& f : facets_)
            if (dot(f.normal, x) < -f.offset) return false;
        return true;
    }

    bool contains_relative_interior(const Vec& x) const {
        for (const Equality& e : equalities_)
            if (dot(e.normal, x) != e.value) return false;
        for (const Facet& f : facets_)
            if (dot(f.normal, x) <= -f.offset) return false;
        return true;
    }

    std::vector<std::size_t> tight_vertices(const Facet& f) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (dot(f.normal, vertices_[i]) == -f.offset) out.push_back(i);
        return out;
    }

    std::size_t vertex_index(const Vec& v) const {
        auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
        if (it == vertices_.end() || *it != v) return vertices_.size();
        return static_cast<std::size_t>(it - vertices_.begin());
    }

    bool operator==(const LatticePolytope& o) const {
        return rank_ == o.rank_ && vertices_ == o.vertices_;
    }

private:
    std::size_t rank_ = 0;
    int dim_ = -1;
    std::vector<Vec> vertices_;
    std::vector<Facet> facets_;
    std::vector<Equality> equalities_;
    std::string tag_ = "M";
    std::string name_;

    friend LatticePolytope detail::hull_by_subsets(const std::vector<Vec>& points, const std::string& tag);
};

inline int affine_rank(const std::vector<Vec>& pts) {
    if (pts.empty()) return -1;
    std::vector<Vec> d;
    for (std::size_t i = 1; i < pts.size(); ++i) d.push_back(sub(pts[i], pts[0]));
    return d.empty() ? 0 : rank(d);
}

inline LatticePolytope convex_hull(std::vector<Vec> points, const std::string& tag = "M");

namespace detail {

// Facets by trying every d-subset of the (deduplicated, sorted) input.
inline LatticePolytope hull_by_subsets(const std::vector<Vec>& points, const std::string& tag) {
    const std::size_t n = points[0].size();
    LatticePolytope out;
    out.rank_ = n;
    out.tag_ = tag;

    std::vector<Vec> dirs;
    for (std::size_t i = 1; i < points.size(); ++i) dirs.push_back(sub(points[i], points[0]));
    std::vector<std::size_t> pivots;
    if (!dirs.empty()) pivots = rref(to_q(dirs), n).pivots;
    const std::size_t d = pivots.size();
    out.dim_ = static_cast<int>(d);

    {
        std::vector<Vec> eqs = dirs.empty() ? std::vector<Vec>{} : integer_nullspace(dirs, n);
        if (dirs.empty())
            for (std::size_t i = 0; i < n; ++i) {
                Vec e(n, 0);
                e[i] = 1;
                eqs.push_back(e);
            }
        for (Vec& e : eqs) {
            // canonical sign: first nonzero entry positive
            for (Int x : e)
                if (x != 0) {
                    if (x < 0) e = neg(e);
                    break;
                }
            out.equalities_.push_back({e, dot(e, points[0])});
        }
        std::sort(out.equalities_.begin(), out.equalities_.end());
    }

    if (d == 0) {
        out.vertices_ = {points[0]};
        return out;
    }

    std::vector<Vec> proj;
    for (const Vec& p : points) {
        Vec q;
        for (std::size_t c : pivots) q.push_back(p[c]);
        proj.push_back(q);
    }

    std::set<std::pair<Vec, Int>> found;  // (projected normal, rhs) with <n,x> >= rhs
    if (d == 1) {
        Int lo = proj[0][0], hi = proj[0][0];
        for (const Vec& q : proj) {
            lo = std::min(lo, q[0]);
            hi = std::max(hi, q[0]);
        }
        found.insert({Vec{1}, lo});
        found.insert({Vec{-1}, -hi});
    } else {
        for_each_combination(proj.size(), d, [&](const std::vector<std::size_t>& idx) {
            std::vector<Vec> rows;
            for (std::size_t j = 1; j < d; ++j) rows.push_back(sub(proj[idx[j]], proj[idx[0]]));
            Vec nrm = cofactor_normal(rows, d);
            if (is_zero(nrm)) return;
            nrm = primitive(nrm);
            Int c = dot(nrm, proj[idx[0]]);
            bool below = false, above = false;
            for (const Vec& q : proj) {
                Int v = dot(nrm, q);
                if (v < c) below = true;
                if (v > c) above = true;
                if (below && above) return;
            }
            if (below) found.insert({neg(nrm), -c});
            else found.insert({nrm, c});
        });
    }

    std::vector<std::pair<Vec, Int>> pf(found.begin(), found.end());
    for (std::size_t i = 0; i < proj.size(); ++i) {
        std::vector<Vec> tight;
        for (const auto& [nrm, c] : pf)
            if (dot(nrm, proj[i]) == c) tight.push_back(nrm);
        if (!tight.empty() && rank(tight) == static_cast<int>(d)) out.vertices_.push_back(points[i]);
    }
    for (const auto& [nrm, c] : pf) {
        Vec full(n, 0);
        for (std::size_t k = 0; k < d; ++k) full[pivots[k]] = nrm[k];
        out.facets_.push_back({full, -c});
    }
    std::sort(out.facets_.begin(), out.facets_.end());
    return out;
}

}  // namespace detail

inline LatticePolytope convex_hull(std::vector<Vec> points, const std::string& tag) {
    if (points.empty()) throw PreconditionError("convex_hull: empty point list");
    const std::size_t n = points[0].size();
    for (const Vec& p : points)
        if (p.size() != n) throw PreconditionError("convex_hull: points of mixed rank");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() <= 3 * n + 6) return detail::hull_by_subsets(points, tag);

    // Start from the points extreme along the axes and the diagonals, then add whatever sticks out.
    std::set<Vec> seed;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask)
        for (int s : {1, -1}) {
            Vec dir(n, 0);
            for (std::size_t k = 0; k < n; ++k) dir[k] = s * ((mask >> k & 1u) ? 1 : -1);
            seed.insert(*std::max_element(points.begin(), points.end(),
                                          [&](const Vec& a, const Vec& b) { return dot(dir, a) < dot(dir, b); }));
        }
    for (std::size_t k = 0; k < n; ++k) {
        auto by_k = [k](const Vec& a, const Vec& b) { return a[k] < b[k]; };
        seed.insert(*std::min_element(points.begin(), points.end(), by_k));
        seed.insert(*std::max_element(points.begin(), points.end(), by_k));
    }
    while (true) {
        LatticePolytope h = detail::hull_by_subsets(std::vector<Vec>(seed.begin(), seed.end()), tag);
        std::vector<Vec> outside;
        for (const Vec& p : points)
            if (!h.contains(p)) outside.push_back(p);
        if (outside.empty()) return h;
        seed = std::set<Vec>(h.vertices().begin(), h.vertices().end());
        seed.insert(outside.begin(), outside.end());
    }
}

// Vertices of {x : <a_i, x> >= b_i}; inequalities are (a, b) pairs. Rational output, sorted.
inline std::vector<QVec> vertices_of_inequalities(const std::vector<std::pair<Vec, Int>>& ineqs, std::size_t n) {
    std::set<QVec> out;
    for_each_combination(ineqs.size(), n, [&](const std::vector<std::size_t>& idx) {
        QMatrix a;
        QVec b;
        for (std::size_t i : idx) {
            a.push_back(to_q(ineqs[i].first));
            b.emplace_back(ineqs[i].second);
        }
        if (rank(a) != static_cast<int>(n)) return;
        auto x = solve(a, b, n);
        if (!x) return;
        for (const auto& [nrm, rhs] : ineqs) {
            Q v = 0;
            for (std::size_t k = 0; k < n; ++k) v += Q(nrm[k]) * (*x)[k];
            if (v < rhs) return;
        }
        out.insert(*x);
    });
    return {out.begin(), out.end()};
}

// Lattice polytope cut out by inequalities; throws if a vertex is not a lattice point.
inline LatticePolytope polytope_from_inequalities(const std::vector<std::pair<Vec, Int>>& ineqs, std::size_t n,
                                                  const std::string& tag = "M") {
    auto vs = vertices_of_inequalities(ineqs, n);
    if (vs.empty()) throw StructuralError("inequality system has no vertices (empty or unbounded)");
    std::vector<Vec> pts;
    for (const QVec& v : vs) {
        if (!is_integral(v)) throw StructuralError("inequality system has a non-lattice vertex");
        pts.push_back(to_int(v));
    }
    return convex_hull(pts, tag);
}

inline std::vector<std::vector<std::size_t>> facet_vertex_sets(const LatticePolytope& p) {
    std::vector<std::vector<std::size_t>> out;
    for (const Facet& f : p.facets()) out.push_back(p.tight_vertices(f));
    return out;
}

// All nonempty faces including p itself, sorted by (dim, vertex indices).
inline std::vector<Face> all_faces(const LatticePolytope& p) {
    std::set<std::vector<std::size_t>> sets;
    std::vector<std::size_t> all(p.vertices().size());
    std::iota(all.begin(), all.end(), 0);
    sets.insert(all);
    std::vector<std::vector<std::size_t>> frontier = facet_vertex_sets(p);
    std::vector<std::vector<std::size_t>> facets = frontier;
    for (auto& f : frontier) sets.insert(f);
    while (!frontier.empty()) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& a : frontier)
            for (const auto& b : facets) {
                std::vector<std::size_t> c;
                std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
                if (c.empty()) continue;
                if (sets.insert(c).second) next.push_back(c);
            }
        frontier = std::move(next);
    }
    std::vector<Face> out;
    for (const auto& s : sets) {
        std::vector<Vec> pts;
        for (std::size_t i : s) pts.push_back(p.vertices()[i]);
        out.push_back({s, affine_rank(pts)});
    }
    std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.vertex_indices < b.vertex_indices;
    });
    return out;
}

inline std::vector<Face> faces(const LatticePolytope& p, int l) {
    if (l < 0 || l > p.dim()) throw PreconditionError("faces: dimension " + std::to_string(l) + " out of range");
    std::vector<Face> out;
    for (Face& f : all_faces(p))
        if (f.dim == l) out.push_back(std::move(f));
    return out;
}

inline std::vector<Vec> face_points(const LatticePolytope& p, const Face& f) {
    std::vector<Vec> out;
    for (std::size_t i : f.vertex_indices) out.push_back(p.vertices()[i]);
    return out;
}

template <class Pred>
std::vector<Vec> scan_box(const LatticePolytope& p, Pred&& keep) {
    const std::size_t n = p.ambient_rank();
    Vec lo = p.vertices()[0], hi = p.vertices()[0];
    for (const Vec& v : p.vertices())
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    std::vector<Vec> out;
    Vec x = lo;
    while (true) {
        if (keep(x)) out.push_back(x);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (x[i] < hi[i]) {
                ++x[i];
                for (std::size_t j = i + 1; j < n; ++j) x[j] = lo[j];
                break;
            }
            if (i == 0) return out;
        }
        if (n == 0) return out;
    }
}

inline std::vector<Vec> lattice_points(const LatticePolytope& p) {
    return scan_box(p, [&](const Vec& x) { return p.contains(x); });
}

struct InteriorPoints {
    std::vector<Vec> points;
    bool relative = false;  // true when p is not full-dimensional
};

inline InteriorPoints interior_lattice_points(const LatticePolytope& p) {
    InteriorPoints r;
    r.relative = !p.full_dimensional();
    if (p.dim() == 0) {
        r.points = p.vertices();
        return r;
    }
    r.points = scan_box(p, [&](const Vec& x) { return p.contains_relative_interior(x); });
    return r;
}

inline std::vector<Vec> boundary_lattice_points(const LatticePolytope& p) {
    return scan_box(p, [&](const Vec& x) { return p.contains(x) && !p.contains_relative_interior(x); });
}

struct ReflexiveVerdict {
    bool reflexive = false;
    std::string diagnostic;
};

inline ReflexiveVerdict reflexive_verdict(const LatticePolytope& p) {
    if (!p.full_dimensional()) return {false, "not full-dimensional"};
    Vec origin(p.ambient_rank(), 0);
    if (!p.contains_relative_interior(origin)) return {false, "origin is not an interior point"};
    for (const Facet& f : p.facets())
        if (f.offset != 1) return {false, "facet with offset " + std::to_string(f.offset)};
    return {true, ""};
}

inline bool is_reflexive(const LatticePolytope& p) { return reflexive_verdict(p).reflexive; }

inline LatticePolytope polar_dual(const LatticePolytope& p) {
    auto v = reflexive_verdict(p);
    if (!v.reflexive) throw PreconditionError("polar_dual: input is not reflexive (" + v.diagnostic + ")");
    std::vector<Vec> pts;
    for (const Facet& f : p.facets()) pts.push_back(f.normal);
    return convex_hull(pts, flip_tag(p.tag()));
}

inline LatticePolytope minkowski_sum(const LatticePolytope& a, const LatticePolytope& b) {
    if (a.ambient_rank() != b.ambient_rank()) throw PreconditionError("minkowski_sum: rank mismatch");
    std::vector<Vec> pts;
    for (const Vec& x : a.vertices())
        for (const Vec& y : b.vertices()) pts.push_back(add(x, y));
    return convex_hull(pts, a.tag());
}

// Edges through vertex v as primitive directions; empty if v is not a vertex.
inline std::vector<Vec> edge_directions(const LatticePolytope& p, std::size_t v, const std::vector<Face>& edges) {
    std::vector<Vec> dirs;
    for (const Face& e : edges) {
        const auto& ix = e.vertex_indices;
        if (std::find(ix.begin(), ix.end(), v) == ix.end()) continue;
        std::size_t w = ix[0] == v ? ix[1] : ix[0];
        dirs.push_back(primitive(sub(p.vertices()[w], p.vertices()[v])));
    }
    return dirs;
}

// Smooth here means exactly dim-many edges at every vertex.
inline bool is_simplicial(const LatticePolytope& p) {
    if (p.dim() <= 1) return true;
    auto edges = faces(p, 1);
    for (std::size_t v = 0; v < p.vertices().size(); ++v)
        if (edge_directions(p, v, edges).size() != static_cast<std::size_t>(p.dim())) return false;
    return true;
}

inline bool vertex_is_smooth(const LatticePolytope& p, std::size_t v, const std::vector<Face>& edges) {
    auto dirs = edge_directions(p, v, edges);
    if (dirs.size() != p.ambient_rank()) return false;
    Int d = det(dirs);
    return d == 1 || d == -1;
}

inline bool is_smooth(const LatticePolytope& p) {
    if (!p.full_dimensional()) throw PreconditionError("is_smooth: polytope is not full-dimensional");
    if (p.dim() == 0) return true;
    auto edges = faces(p, 1);
    for (std::size_t v = 0; v < p.vertices().size(); ++v)
        if (!vertex_is_smooth(p, v, edges)) return false;
    return true;
}

// Normalized lattice volume (n! times Euclidean) via a pulling triangulation of the face lattice.
inline Int normalized_volume(const LatticePolytope& p) {
    if (!p.full_dimensional()) return 0;
    auto fl = all_faces(p);
    std::function<std::vector<std::vector<std::size_t>>(const Face&)> tri = [&](const Face& f) {
        std::vector<std::vector<std::size_t>> out;
        if (f.dim == 0) {
            out.push_back({f.vertex_indices[0]});
            return out;
        }
        std::size_t v0 = f.vertex_indices[0];
        for (const Face& g : fl) {
            if (g.dim != f.dim - 1) continue;
            if (!std::includes(f.vertex_indices.begin(), f.vertex_indices.end(), g.vertex_indices.begin(),
                               g.vertex_indices.end()))
                continue;
            if (std::binary_search(g.vertex_indices.begin(), g.vertex_indices.end(), v0)) continue;
            for (auto s : tri(g)) {
                s.push_back(v0);
                out.push_back(std::move(s));
            }
        }
        return out;
    };
    Int vol = 0;
    for (const auto& s : tri(fl.back())) {
        std::vector<Vec> m;
        for (std::size_t i = 0; i + 1 < s.size(); ++i) m.push_back(sub(p.vertices()[s[i]], p.vertices()[s.back()]));
        vol += std::llabs(det(m));
    }
    return vol;
}

// Smallest face of p containing all given points (which must lie in p).
inline Face carrier_face(const LatticePolytope& p, const std::vector<Vec>& pts) {
    std::vector<std::size_t> idx(p.vertices().size());
    std::iota(idx.begin(), idx.end(), 0);
    for (const Facet& f : p.facets()) {
        bool tight = std::all_of(pts.begin(), pts.end(), [&](const Vec& x) { return dot(f.normal, x) == -f.offset; });
        if (!tight) continue;
        auto t = p.tight_vertices(f);
        std::vector<std::size_t> c;
        std::set_intersection(idx.begin(), idx.end(), t.begin(), t.end(), std::back_inserter(c));
        idx = c;
    }
    std::vector<Vec> fp;
    for (std::size_t i : idx) fp.push_back(p.vertices()[i]);
    return {idx, affine_rank(fp)};
}

inline std::vector<std::pair<Vec, Int>> inequality_system(const LatticePolytope& p) {
    std::vector<std::pair<Vec, Int>> out;
    for (const Facet& f : p.facets()) out.push_back({f.normal, -f.offset});
    for (const Equality& e : p.equalities()) {
        out.push_back({e.normal, e.value});
        out.push_back({neg(e.normal), -e.value});
    }
    return out;
}

// Vertices of the intersection of several polytopes (rational; empty if disjoint).
inline std::vector<QVec> intersection_vertices(const std::vector<const LatticePolytope*>& ps) {
    std::vector<std::pair<Vec, Int>> sys;
    for (const LatticePolytope* p : ps) {
        auto s = inequality_system(*p);
        sys.insert(sys.end(), s.begin(), s.end());
    }
    std::sort(sys.begin(), sys.end());
    sys.erase(std::unique(sys.begin(), sys.end()), sys.end());
    return vertices_of_inequalities(sys, ps.front()->ambient_rank());
}

inline Int curve_euler_number(const LatticePolytope& p) {
    if (p.ambient_rank() != 2 || !p.full_dimensional())
        throw PreconditionError("curve_euler_number: rank-2 full-dimensional polytope required");
    return 2 - 2 * static_cast<Int>(interior_lattice_points(p).points.size());
}

}  // namespace mirrorkit
