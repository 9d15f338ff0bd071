#pragma once

// Semi-stable partitions: validation, dual complex, F_Gamma, lifting, central frame, fibration fans.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fan.hpp"

namespace mirrorkit {

class SemistablePartition {
public:
    SemistablePartition(LatticePolytope host, std::vector<LatticePolytope> pieces)
        : host_(std::move(host)), pieces_(std::move(pieces)) {
        if (pieces_.empty()) throw PreconditionError("partition: no pieces");
        for (const auto& p : pieces_) {
            if (p.ambient_rank() != host_.ambient_rank()) throw PreconditionError("partition: piece of wrong rank");
            if (!p.full_dimensional()) throw PreconditionError("partition: piece is not full-dimensional");
        }
    }

    const LatticePolytope& host() const { return host_; }
    const std::vector<LatticePolytope>& pieces() const { return pieces_; }
    std::size_t rank() const { return host_.ambient_rank(); }

private:
    LatticePolytope host_;
    std::vector<LatticePolytope> pieces_;
};

struct TilingReport {
    bool ok = true;
    std::string problem;
};

inline std::vector<Vec> integral_points_or_empty(const std::vector<QVec>& vs, bool& integral) {
    std::vector<Vec> out;
    integral = true;
    for (const QVec& v : vs) {
        if (!is_integral(v)) {
            integral = false;
            continue;
        }
        out.push_back(to_int(v));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Is the point set exactly the vertex set of a face of p?
inline bool is_face_vertex_set(const LatticePolytope& p, const std::vector<Vec>& pts) {
    Face f = carrier_face(p, pts);
    auto fv = face_points(p, f);
    std::sort(fv.begin(), fv.end());
    auto ps = pts;
    std::sort(ps.begin(), ps.end());
    return fv == ps;
}

inline TilingReport check_tiling(const SemistablePartition& g) {
    const auto& host = g.host();
    Int vol = 0;
    for (std::size_t i = 0; i < g.pieces().size(); ++i) {
        const auto& p = g.pieces()[i];
        for (const Vec& v : p.vertices())
            if (!host.contains(v)) return {false, "piece " + std::to_string(i) + " leaves the host at " + vec_str(v)};
        vol += normalized_volume(p);
    }
    if (vol != normalized_volume(host))
        return {false, "piece volumes sum to " + std::to_string(vol) + ", host volume is " +
                           std::to_string(normalized_volume(host))};
    for (std::size_t i = 0; i < g.pieces().size(); ++i)
        for (std::size_t j = i + 1; j < g.pieces().size(); ++j) {
            auto vs = intersection_vertices({&g.pieces()[i], &g.pieces()[j]});
            if (vs.empty()) continue;
            bool integral;
            auto pts = integral_points_or_empty(vs, integral);
            if (!integral || !is_face_vertex_set(g.pieces()[i], pts) || !is_face_vertex_set(g.pieces()[j], pts))
                return {false, "pieces " + std::to_string(i) + " and " + std::to_string(j) + " do not meet in a common face"};
        }
    return {};
}

struct ClauseViolation {
    std::string clause;  // "vertex-uniqueness" or "face-count"
    std::vector<Vec> sigma;  // vertices of the witnessing face of the partition
    std::vector<Vec> tau;    // vertices of the witnessing face of the host
    std::string detail;
};

struct SemistableReport {
    bool tiling_ok = true;
    std::string tiling_problem;
    bool valid = false;
    std::vector<ClauseViolation> violations;
    std::vector<std::size_t> non_simplicial_pieces;
};

// All faces of all pieces, deduplicated by vertex set.
inline std::vector<std::vector<Vec>> partition_faces(const SemistablePartition& g) {
    std::set<std::vector<Vec>> out;
    for (const auto& p : g.pieces())
        for (const Face& f : all_faces(p)) {
            auto pts = face_points(p, f);
            std::sort(pts.begin(), pts.end());
            out.insert(pts);
        }
    return {out.begin(), out.end()};
}

inline SemistableReport validate_semistable(const SemistablePartition& g) {
    SemistableReport r;
    auto t = check_tiling(g);
    if (!t.ok) {
        r.tiling_ok = false;
        r.tiling_problem = t.problem;
        return r;
    }
    const auto& host = g.host();
    for (const Vec& v : host.vertices()) {
        std::size_t count = 0;
        for (const auto& p : g.pieces())
            if (p.contains(v)) ++count;
        if (count != 1)
            r.violations.push_back({"vertex-uniqueness", {v}, {v},
                                    "host vertex " + vec_str(v) + " lies in " + std::to_string(count) + " pieces"});
    }
    for (const auto& sigma : partition_faces(g)) {
        int l = affine_rank(sigma);
        Face tau = carrier_face(host, sigma);
        int k = tau.dim;
        std::size_t count = 0;
        for (const auto& p : g.pieces())
            if (std::all_of(sigma.begin(), sigma.end(), [&](const Vec& x) { return p.contains(x); }) &&
                is_face_vertex_set(p, sigma))
                ++count;
        if (static_cast<int>(count) != k - l + 1) {
            std::string s;
            for (const Vec& x : sigma) s += vec_str(x);
            r.violations.push_back({"face-count", sigma, face_points(host, tau),
                                    "face {" + s + "} of dim " + std::to_string(l) + " in host face of dim " +
                                        std::to_string(k) + " is a face of " + std::to_string(count) + " pieces, expected " +
                                        std::to_string(k - l + 1)});
        }
    }
    for (std::size_t i = 0; i < g.pieces().size(); ++i)
        if (!is_simplicial(g.pieces()[i])) r.non_simplicial_pieces.push_back(i);
    r.valid = r.violations.empty();
    return r;
}

struct DualComplex {
    std::size_t vertex_count = 0;
    std::vector<std::vector<std::size_t>> simplices;  // sorted by size, then lexicographically
    int dimension() const {
        int d = -1;
        for (const auto& s : simplices) d = std::max(d, static_cast<int>(s.size()) - 1);
        return d;
    }
    bool has(const std::vector<std::size_t>& s) const {
        return std::find(simplices.begin(), simplices.end(), s) != simplices.end();
    }
};

inline DualComplex dual_complex(const SemistablePartition& g) {
    DualComplex k;
    const std::size_t m = g.pieces().size();
    k.vertex_count = m;
    for (std::size_t size = 1; size <= m; ++size)
        for_each_combination(m, size, [&](const std::vector<std::size_t>& idx) {
            std::vector<const LatticePolytope*> ps;
            for (std::size_t i : idx) ps.push_back(&g.pieces()[i]);
            if (!intersection_vertices(ps).empty()) k.simplices.push_back(idx);
        });
    return k;
}

inline bool is_central(const SemistablePartition& g) {
    Vec origin(g.rank(), 0);
    return std::all_of(g.pieces().begin(), g.pieces().end(), [&](const LatticePolytope& p) { return p.contains(origin); });
}

// Vertices of pieces that are not vertices of the host.
inline std::vector<Vec> gamma_vertices(const SemistablePartition& g) {
    std::set<Vec> out;
    for (const auto& p : g.pieces())
        for (const Vec& v : p.vertices())
            if (g.host().vertex_index(v) == g.host().vertices().size()) out.insert(v);
    return {out.begin(), out.end()};
}

inline bool is_nonsingular(const SemistablePartition& g) {
    for (const Vec& v : gamma_vertices(g)) {
        bool smooth = false;
        for (const auto& p : g.pieces()) {
            std::size_t i = p.vertex_index(v);
            if (i == p.vertices().size()) continue;
            if (vertex_is_smooth(p, i, faces(p, 1))) smooth = true;
        }
        if (!smooth) return false;
    }
    return true;
}

// Integral affine function x -> <c,x> + b.
struct AffineFunctional {
    Vec c;
    Int b = 0;
    Int operator()(const Vec& x) const { return dot(c, x) + b; }
    bool operator==(const AffineFunctional&) const = default;
};

struct FGamma {
    std::vector<AffineFunctional> m;  // one per piece
    Int evaluate(const Vec& x) const {
        Int v = m[0](x);
        for (const auto& f : m) v = std::min(v, f(x));
        return v;
    }
};

struct Wall {
    std::size_t i, j;
    AffineFunctional g;  // primitive, vanishes on the wall, >= 0 on piece j
};

inline std::vector<Wall> walls(const SemistablePartition& gm) {
    std::vector<Wall> out;
    const std::size_t n = gm.rank();
    for (std::size_t i = 0; i < gm.pieces().size(); ++i)
        for (std::size_t j = i + 1; j < gm.pieces().size(); ++j) {
            auto vs = intersection_vertices({&gm.pieces()[i], &gm.pieces()[j]});
            bool integral;
            auto pts = integral_points_or_empty(vs, integral);
            if (pts.empty() || affine_rank(pts) != static_cast<int>(n) - 1) continue;
            for (const Facet& f : gm.pieces()[i].facets()) {
                bool on = std::all_of(pts.begin(), pts.end(), [&](const Vec& x) { return dot(f.normal, x) == -f.offset; });
                if (!on) continue;
                out.push_back({i, j, {neg(f.normal), -f.offset}});
                break;
            }
        }
    return out;
}

// Concave integral PL function linear on the pieces, found by bounded search over wall bends.
inline FGamma build_F_Gamma(const SemistablePartition& gm, Int bound = 10) {
    auto rep = validate_semistable(gm);
    if (!rep.valid) throw PreconditionError("build_F_Gamma: partition is not semi-stable");
    if (!is_nonsingular(gm)) throw PreconditionError("build_F_Gamma: partition is singular");
    const std::size_t k = gm.pieces().size();
    const std::size_t n = gm.rank();
    FGamma zero;
    zero.m.assign(k, AffineFunctional{Vec(n, 0), 0});
    if (k == 1) return zero;

    auto ws = walls(gm);
    // spanning tree from piece 0
    std::vector<int> parent_wall(k, -1);
    std::vector<bool> seen(k, false);
    std::vector<std::size_t> order{0};
    seen[0] = true;
    for (std::size_t h = 0; h < order.size(); ++h)
        for (std::size_t w = 0; w < ws.size(); ++w) {
            std::size_t a = order[h];
            std::size_t b = ws[w].i == a ? ws[w].j : (ws[w].j == a ? ws[w].i : k);
            if (b == k || seen[b]) continue;
            seen[b] = true;
            parent_wall[b] = static_cast<int>(w);
            order.push_back(b);
        }
    if (order.size() != k) throw StructuralError("build_F_Gamma: pieces are not connected through walls");

    auto assemble = [&](const std::vector<Int>& s) {
        FGamma f = zero;
        for (std::size_t h = 1; h < order.size(); ++h) {
            std::size_t b = order[h];
            const Wall& w = ws[static_cast<std::size_t>(parent_wall[b])];
            std::size_t a = w.i == b ? w.j : w.i;
            // m_j = m_i - s g, with g >= 0 on j; reversed orientation when b is the wall's i-side
            Int sign = (w.j == b) ? -1 : 1;
            Int sv = s[h - 1];
            f.m[b].c = add(f.m[a].c, scale(w.g.c, sign * sv));
            f.m[b].b = f.m[a].b + sign * sv * w.g.b;
        }
        return f;
    };
    auto valid = [&](const FGamma& f) {
        for (const auto& m : f.m) {
            if (m.b < -bound || m.b > bound) return false;
            for (Int c : m.c)
                if (c < -bound || c > bound) return false;
        }
        for (const Wall& w : ws) {
            // m_j - m_i = -s g for some s >= 1
            Vec dc = sub(f.m[w.j].c, f.m[w.i].c);
            Int db = f.m[w.j].b - f.m[w.i].b;
            std::size_t piv = 0;
            while (piv < n && w.g.c[piv] == 0) ++piv;
            if (dc[piv] % w.g.c[piv] != 0) return false;
            Int s = -dc[piv] / w.g.c[piv];
            if (s < 1 || dc != scale(w.g.c, -s) || db != -s * w.g.b) return false;
        }
        for (std::size_t i = 0; i < k; ++i)
            for (const Vec& x : gm.pieces()[i].vertices())
                for (std::size_t j = 0; j < k; ++j)
                    if (f.m[j](x) < f.m[i](x)) return false;
        return true;
    };
    auto flat = [&](const FGamma& f) {
        Vec v;
        for (const auto& m : f.m) {
            v.insert(v.end(), m.c.begin(), m.c.end());
            v.push_back(m.b);
        }
        return v;
    };
    const std::size_t t = k - 1;
    for (Int total = static_cast<Int>(t); total <= bound * static_cast<Int>(t); ++total) {
        std::optional<FGamma> best;
        std::vector<Int> s(t, 1);
        // compositions of total into t parts each in [1, bound]
        std::function<void(std::size_t, Int)> rec = [&](std::size_t pos, Int left) {
            if (pos + 1 == t) {
                if (left < 1 || left > bound) return;
                s[pos] = left;
                FGamma f = assemble(s);
                if (valid(f) && (!best || flat(f) < flat(*best))) best = f;
                return;
            }
            for (Int v = 1; v <= bound && v <= left - static_cast<Int>(t - pos - 1); ++v) {
                s[pos] = v;
                rec(pos + 1, left - v);
            }
        };
        rec(0, total);
        if (best) return *best;
    }
    throw StructuralError("build_F_Gamma: search exhausted within bound " + std::to_string(bound));
}

struct LiftedPolyhedron {
    std::size_t rank = 0;                          // n + 1, coordinates (y, x)
    std::vector<Facet> inequalities;               // <normal, (y,x)> >= -offset
    std::vector<Vec> recession_rays;               // (1, 0, ..., 0)
    std::vector<Vec> vertices;
    bool projection_ok = true;                     // bounded faces project to faces of host or pieces
    std::vector<std::vector<Vec>> bounded_faces;   // vertex sets
};

inline LiftedPolyhedron lifting_polyhedron(const SemistablePartition& gm, const FGamma& f) {
    const std::size_t n = gm.rank();
    LiftedPolyhedron lp;
    lp.rank = n + 1;
    std::set<Facet> ineq;
    for (const auto& m : f.m) {
        Vec nrm{1};
        for (Int c : m.c) nrm.push_back(-c);
        ineq.insert({nrm, -m.b});
    }
    for (const Facet& hf : gm.host().facets()) {
        Vec nrm{0};
        nrm.insert(nrm.end(), hf.normal.begin(), hf.normal.end());
        ineq.insert({nrm, hf.offset});
    }
    lp.inequalities.assign(ineq.begin(), ineq.end());
    Vec up(n + 1, 0);
    up[0] = 1;
    lp.recession_rays.push_back(up);

    std::vector<std::pair<Vec, Int>> sys;
    for (const Facet& q : lp.inequalities) sys.push_back({q.normal, -q.offset});
    for (const QVec& v : vertices_of_inequalities(sys, n + 1)) lp.vertices.push_back(to_int(v));

    // bounded faces: closures of tight-constraint sets that include a graph constraint (y coefficient 1)
    std::vector<std::set<std::size_t>> tight(lp.vertices.size());
    for (std::size_t v = 0; v < lp.vertices.size(); ++v)
        for (std::size_t c = 0; c < lp.inequalities.size(); ++c)
            if (dot(lp.inequalities[c].normal, lp.vertices[v]) == -lp.inequalities[c].offset) tight[v].insert(c);
    std::set<std::set<std::size_t>> constraint_sets;
    std::vector<std::set<std::size_t>> frontier(tight.begin(), tight.end());
    for (auto& s : frontier) constraint_sets.insert(s);
    while (!frontier.empty()) {
        std::vector<std::set<std::size_t>> next;
        for (const auto& a : frontier)
            for (const auto& b : tight) {
                std::set<std::size_t> c;
                std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(c, c.begin()));
                if (c.empty()) continue;
                if (constraint_sets.insert(c).second) next.push_back(c);
            }
        frontier = std::move(next);
    }
    std::set<std::vector<Vec>> bounded;
    for (const auto& cs : constraint_sets) {
        bool graph = std::any_of(cs.begin(), cs.end(), [&](std::size_t c) { return lp.inequalities[c].normal[0] == 1; });
        if (!graph) continue;
        std::vector<Vec> fv;
        for (std::size_t v = 0; v < lp.vertices.size(); ++v)
            if (std::includes(tight[v].begin(), tight[v].end(), cs.begin(), cs.end())) fv.push_back(lp.vertices[v]);
        bounded.insert(fv);
    }
    lp.bounded_faces.assign(bounded.begin(), bounded.end());
    for (const auto& fv : lp.bounded_faces) {
        std::vector<Vec> proj;
        for (const Vec& v : fv) proj.emplace_back(v.begin() + 1, v.end());
        bool ok = is_face_vertex_set(gm.host(), proj);
        for (const auto& p : gm.pieces())
            if (!ok && std::all_of(proj.begin(), proj.end(), [&](const Vec& x) { return p.contains(x); }))
                ok = is_face_vertex_set(p, proj);
        if (!ok) lp.projection_ok = false;
    }
    return lp;
}

// Lattice polytope obtained by cutting the lifting at height y <= top (display helper).
inline LatticePolytope truncate_lifting(const LiftedPolyhedron& lp, Int top) {
    std::vector<std::pair<Vec, Int>> sys;
    for (const Facet& q : lp.inequalities) sys.push_back({q.normal, -q.offset});
    Vec cap(lp.rank, 0);
    cap[0] = -1;
    sys.push_back({cap, -top});
    return polytope_from_inequalities(sys, lp.rank);
}

struct CentralFrame {
    std::size_t l = 0;                   // dim K_Gamma
    std::vector<Vec> l_basis;            // lattice basis of L
    std::vector<Vec> quotient;           // l x n integer matrix M -> M/L
    std::vector<Vec> v_quotient;         // v_i in quotient coordinates
    std::vector<Vec> v;                  // v_i as primitive vectors of M in L-perp
    bool dimension_check = true;         // dim K + dim common face == n
};

inline CentralFrame central_frame(const SemistablePartition& gm) {
    if (!is_central(gm)) throw PreconditionError("central_frame: partition is not central");
    const std::size_t n = gm.rank();
    CentralFrame fr;
    fr.l = static_cast<std::size_t>(dual_complex(gm).dimension());

    std::vector<const LatticePolytope*> ps;
    for (const auto& p : gm.pieces()) ps.push_back(&p);
    std::vector<Vec> common;
    for (const QVec& v : intersection_vertices(ps)) common.push_back(clear_denominators(v));
    std::vector<Vec> span;
    for (const Vec& v : common)
        if (!is_zero(v)) span.push_back(v);
    std::size_t dim_l = span.empty() ? 0 : static_cast<std::size_t>(rank(span));
    fr.dimension_check = fr.l + dim_l == n;

    std::vector<Vec> perp = span.empty() ? std::vector<Vec>{} : integer_nullspace(span, n);
    if (span.empty())
        for (std::size_t i = 0; i < n; ++i) {
            Vec e(n, 0);
            e[i] = 1;
            perp.push_back(e);
        }
    LatticeSplit ls = lattice_split(perp, n);
    const std::size_t q = ls.rank;
    for (std::size_t c = q; c < n; ++c) {
        Vec col(n);
        for (std::size_t r = 0; r < n; ++r) col[r] = ls.u[r][c];
        fr.l_basis.push_back(col);
    }
    for (std::size_t r = 0; r < q; ++r) fr.quotient.push_back(ls.u_inverse[r]);
    if (q != fr.l)
        throw StructuralError("central_frame: quotient rank " + std::to_string(q) + " differs from dim K_Gamma " +
                              std::to_string(fr.l));
    if (q == 0) return fr;

    auto project = [&](const Vec& x) {
        Vec y(q);
        for (std::size_t r = 0; r < q; ++r) y[r] = dot(fr.quotient[r], x);
        return y;
    };
    std::vector<std::vector<Vec>> piece_rays;
    std::set<Vec> all;
    for (const auto& p : gm.pieces()) {
        std::vector<Vec> dirs;
        for (const Vec& v : p.vertices()) {
            Vec y = project(v);
            if (!is_zero(y)) dirs.push_back(y);
        }
        if (dirs.empty()) throw StructuralError("central_frame: a piece projects to the origin");
        auto g = minimal_generators(dirs);
        piece_rays.push_back(g);
        all.insert(g.begin(), g.end());
    }
    if (all.size() != q + 1) throw StructuralError("central_frame: projected pieces do not have l+1 rays");
    std::vector<Vec> rays(all.begin(), all.end());
    std::set<Vec> omitted;
    for (const auto& pr : piece_rays) {
        if (pr.size() != q) throw StructuralError("central_frame: projected piece is not a simplicial cone of the quotient fan");
        for (const Vec& r : rays)
            if (std::find(pr.begin(), pr.end(), r) == pr.end()) {
                fr.v_quotient.push_back(r);
                omitted.insert(r);
            }
    }
    if (omitted.size() != gm.pieces().size()) throw StructuralError("central_frame: omitted rays are not distinct");
    Fan qf(q, piece_rays);
    if (!qf.validate().ok || !qf.is_complete()) throw StructuralError("central_frame: projected pieces are not a complete fan");
    // representative in L-perp: w = perp^T t with Q w = v
    for (const Vec& vq : fr.v_quotient) {
        QMatrix a(q, QVec(perp.size(), Q(0)));
        for (std::size_t r = 0; r < q; ++r)
            for (std::size_t k = 0; k < perp.size(); ++k) a[r][k] = Q(dot(fr.quotient[r], perp[k]));
        auto t = solve(a, to_q(vq), perp.size());
        if (!t) throw StructuralError("central_frame: no representative in L-perp");
        QVec w(n, Q(0));
        for (std::size_t k = 0; k < perp.size(); ++k)
            for (std::size_t i = 0; i < n; ++i) w[i] += (*t)[k] * perp[k][i];
        fr.v.push_back(clear_denominators(w));
    }
    return fr;
}

struct FibrationFans {
    Fan sigma_delta;   // face fan of the host
    Fan sigma_prime;   // boundary-ray refinement plus the v_i
    Fan sigma_v;       // quotient fan on the v_i
    Fan sigma_gamma;   // product of sigma_v (lifted to L-perp) with the fan of Delta cap L
    std::vector<Vec> sigma_prime_gamma_rays;
    std::vector<std::vector<Vec>> sigma_prime_gamma_cones;
    std::vector<Vec> forced_rays;   // v_i that had to be inserted into sigma_prime
    bool prime_refines_gamma = true;
};

inline FibrationFans build_fibration_fans(const SemistablePartition& gm, const CentralFrame& fr) {
    const std::size_t n = gm.rank();
    if (n > 3) throw PreconditionError("build_fibration_fans: rank > 3 is unsupported");
    const LatticePolytope& host = gm.host();
    FibrationFans out;
    out.sigma_delta = face_fan(host);
    out.sigma_prime = refine_with_boundary_rays(out.sigma_delta, host);
    for (const Vec& v : fr.v)
        if (!out.sigma_prime.has_ray(v)) {
            out.sigma_prime = stellar_insert(out.sigma_prime, v);
            out.forced_rays.push_back(v);
        }

    const std::size_t l = fr.l;
    std::vector<std::vector<Vec>> v_cones_q, v_cones_m;
    if (l == 0) {
        out.sigma_v = point_fan();
        v_cones_m.push_back({});
    } else {
        for_each_combination(l + 1, l, [&](const std::vector<std::size_t>& idx) {
            std::vector<Vec> cq, cm;
            for (std::size_t i : idx) {
                cq.push_back(fr.v_quotient[i]);
                cm.push_back(fr.v[i]);
            }
            v_cones_q.push_back(cq);
            v_cones_m.push_back(cm);
        });
        out.sigma_v = Fan(l, v_cones_q);
    }

    // fan of Delta cap L in L-coordinates, refined by its boundary lattice points
    const std::size_t dl = fr.l_basis.size();
    std::vector<std::vector<Vec>> l_cones_m;
    if (dl == 0) {
        l_cones_m.push_back({});
    } else {
        std::vector<std::pair<Vec, Int>> sys;
        for (const Facet& f : host.facets()) {
            Vec a(dl);
            for (std::size_t k = 0; k < dl; ++k) a[k] = dot(f.normal, fr.l_basis[k]);
            sys.push_back({a, -f.offset});
        }
        auto vs = vertices_of_inequalities(sys, dl);
        std::vector<Vec> box;
        // lattice points of the (possibly rational) slice
        Vec lo(dl, 0), hi(dl, 0);
        for (const QVec& v : vs)
            for (std::size_t k = 0; k < dl; ++k) {
                Int fl = floor_q(v[k]);
                Int ce = ceil_q(v[k]);
                lo[k] = std::min(lo[k], fl);
                hi[k] = std::max(hi[k], ce);
            }
        Vec x = lo;
        while (true) {
            bool in = std::all_of(sys.begin(), sys.end(), [&](const auto& s) { return dot(s.first, x) >= s.second; });
            if (in) box.push_back(x);
            std::size_t i = dl;
            bool done = false;
            while (true) {
                --i;
                if (x[i] < hi[i]) {
                    ++x[i];
                    for (std::size_t j = i + 1; j < dl; ++j) x[j] = lo[j];
                    break;
                }
                if (i == 0) {
                    done = true;
                    break;
                }
            }
            if (done) break;
        }
        LatticePolytope slice = convex_hull(box);
        Fan lf = refine_face_fan(slice);
        for (std::size_t c = 0; c < lf.cones().size(); ++c) {
            std::vector<Vec> cm;
            for (const Vec& t : lf.cone_rays(c)) {
                Vec y(n, 0);
                for (std::size_t k = 0; k < dl; ++k) y = add(y, scale(fr.l_basis[k], t[k]));
                cm.push_back(primitive(y));
            }
            l_cones_m.push_back(cm);
        }
    }
    out.sigma_gamma = product_fan(n, v_cones_m, l_cones_m);

    // rays of sigma_prime on walls between pieces, plus the v_i; cones inherited from sigma_prime
    std::set<Vec> gr(fr.v.begin(), fr.v.end());
    for (const Vec& r : out.sigma_prime.rays()) {
        std::size_t count = 0;
        for (const auto& p : gm.pieces())
            if (p.contains(r)) ++count;
        if (count >= 2) gr.insert(r);
    }
    out.sigma_prime_gamma_rays.assign(gr.begin(), gr.end());
    std::set<std::vector<Vec>> inherited;
    for (std::size_t c = 0; c < out.sigma_prime.cones().size(); ++c) {
        std::vector<Vec> sub;
        for (const Vec& r : out.sigma_prime.cone_rays(c))
            if (gr.count(r)) sub.push_back(r);
        if (!sub.empty()) inherited.insert(sub);
    }
    for (const auto& c : inherited) {
        bool maximal = std::none_of(inherited.begin(), inherited.end(), [&](const std::vector<Vec>& d) {
            return d != c && std::includes(d.begin(), d.end(), c.begin(), c.end());
        });
        if (maximal) out.sigma_prime_gamma_cones.push_back(c);
    }

    for (std::size_t c = 0; c < out.sigma_prime.cones().size(); ++c) {
        auto rs = out.sigma_prime.cone_rays(c);
        bool inside = false;
        for (std::size_t d = 0; d < out.sigma_gamma.cones().size() && !inside; ++d) {
            ConeHRep h = cone_hrep(out.sigma_gamma.cone_rays(d), n);
            inside = std::all_of(rs.begin(), rs.end(), [&](const Vec& r) { return h.contains(r); });
        }
        if (!inside) out.prime_refines_gamma = false;
    }
    return out;
}

}  // namespace mirrorkit
