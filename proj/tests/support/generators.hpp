#pragma once

// Seeded generators and independent oracles shared by the unit, property and acceptance binaries.

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "mirrorkit/io.hpp"
#include "mirrorkit/spectral.hpp"
#include "mirrorkit/strata.hpp"

namespace mktest {

using namespace mirrorkit;
using Rng = std::mt19937_64;

inline Int uniform(Rng& rng, Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); }

inline std::string corpus(const std::string& name) { return std::string(MIRRORKIT_CORPUS_DIR) + "/" + name; }

// ---------------------------------------------------------------- lattice

inline std::vector<Vec> random_unimodular(Rng& rng, std::size_t n, int steps = 6) {
    std::vector<Vec> u(n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
    for (int s = 0; s < steps; ++s) {
        auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<Int>(n) - 1));
        auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<Int>(n) - 1));
        switch (uniform(rng, 0, 2)) {
        case 0:
            if (i != j) {
                Int c = uniform(rng, -2, 2);
                for (std::size_t k = 0; k < n; ++k) u[i][k] += c * u[j][k];
            }
            break;
        case 1: std::swap(u[i], u[j]); break;
        default:
            for (Int& x : u[i]) x = -x;
        }
    }
    return u;
}

inline Vec apply(const std::vector<Vec>& u, const Vec& v) {
    Vec out(u.size(), 0);
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = dot(u[i], v);
    return out;
}

inline LatticePolytope transform(const LatticePolytope& p, const std::vector<Vec>& u) {
    std::vector<Vec> pts;
    for (const Vec& v : p.vertices()) pts.push_back(apply(u, v));
    return convex_hull(pts, p.tag());
}

inline std::vector<Vec> random_points(Rng& rng, std::size_t dim, std::size_t count, Int box) {
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < count; ++i) {
        Vec v(dim);
        for (Int& x : v) x = uniform(rng, -box, box);
        pts.push_back(v);
    }
    return pts;
}

// Counterclockwise order around an interior origin, exact.
inline std::vector<Vec> cyclic_order(std::vector<Vec> vs) {
    auto half = [](const Vec& v) { return v[1] < 0 || (v[1] == 0 && v[0] < 0); };
    std::sort(vs.begin(), vs.end(), [&](const Vec& a, const Vec& b) {
        if (half(a) != half(b)) return !half(a);
        return a[0] * b[1] - a[1] * b[0] > 0;
    });
    return vs;
}

// Lex-min row HNF of the vertex matrix over all cyclic starts and both orientations.
inline std::vector<Vec> polygon_normal_form(const LatticePolytope& p) {
    auto cyc = cyclic_order(p.vertices());
    const std::size_t k = cyc.size();
    std::optional<std::vector<Vec>> best;
    for (int dir : {1, -1})
        for (std::size_t s = 0; s < k; ++s) {
            std::vector<Vec> m(2, Vec(k));
            for (std::size_t i = 0; i < k; ++i) {
                const std::size_t idx = dir > 0 ? (s + i) % k : (s + k - i) % k;
                m[0][i] = cyc[idx][0];
                m[1][i] = cyc[idx][1];
            }
            auto h = hermite_rows(m);
            if (!best || h < *best) best = h;
        }
    return *best;
}

// Reflexive polygons with vertices among the primitive points of [-2,2]^2, one per unimodular class.
inline std::vector<LatticePolytope> reflexive_polygons() {
    std::vector<Vec> prim;
    for (Int x = -2; x <= 2; ++x)
        for (Int y = -2; y <= 2; ++y)
            if (std::gcd(x, y) == 1) prim.push_back({x, y});
    std::map<std::vector<Vec>, LatticePolytope> classes;
    for (std::size_t size = 3; size <= 6; ++size)
        for_each_combination(prim.size(), size, [&](const std::vector<std::size_t>& idx) {
            std::vector<Vec> pts;
            for (std::size_t i : idx) pts.push_back(prim[i]);
            auto p = convex_hull(pts);
            if (p.vertices().size() != size || !p.full_dimensional() || !is_reflexive(p)) return;
            classes.emplace(polygon_normal_form(p), p);
        });
    std::vector<LatticePolytope> out;
    for (auto& [nf, p] : classes) out.push_back(p);
    return out;
}

inline std::vector<LatticePolytope> reflexive_solids() {
    return {
        convex_hull({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}),
        convex_hull({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}),
        convex_hull({{-1, -1, -1}, {-1, -1, 1}, {-1, 1, -1}, {-1, 1, 1}, {1, -1, -1}, {1, -1, 1}, {1, 1, -1}, {1, 1, 1}}),
        convex_hull({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0}, {0, -1, -1}}),
    };
}

// ---------------------------------------------------------------- Euler data

inline StrataEuler random_strata_euler(Rng& rng, int components, Side side, int n = 2) {
    StrataEuler d;
    d.n = n;
    d.components = components;
    d.side = side;
    for (const IndexSet& i : nonempty_subsets(components)) d.entries[i] = uniform(rng, -6, 6);
    return d;
}

inline IndexSet relabel(const IndexSet& i, const std::vector<int>& perm) {
    IndexSet out;
    for (int c : i) out.push_back(perm[static_cast<std::size_t>(c)]);
    std::sort(out.begin(), out.end());
    return out;
}

inline StrataEuler permute_labels(const StrataEuler& d, const std::vector<int>& perm) {
    StrataEuler out = d;
    out.entries.clear();
    for (const auto& [i, e] : d.entries) out.entries[relabel(i, perm)] = e;
    return out;
}

// Euler number of the open part of X_I: Moebius inversion over the closed strata above it.
inline Int open_stratum_euler(const StrataEuler& d, unsigned mask) {
    Int s = 0;
    const unsigned full = (1u << d.components) - 1;
    for (unsigned sup = mask; sup <= full; sup = (sup + 1) | mask) {
        IndexSet j;
        for (int c = 0; c < d.components; ++c)
            if (sup >> c & 1u) j.push_back(c);
        s += ((std::popcount(sup) - std::popcount(mask)) % 2 ? -1 : 1) * d.value(j);
        if (sup == full) break;
    }
    return s;
}

// X_c is the disjoint union of the open strata.
inline Int brute_snc(const StrataEuler& d) {
    Int s = 0;
    for (unsigned mask = 1; mask < (1u << d.components); ++mask) s += open_stratum_euler(d, mask);
    return s;
}

// Over an open stratum of depth k the nearby fiber is a (S^1)^(k-1)-bundle, so only depth one survives.
inline Int brute_smoothing(const StrataEuler& d) {
    Int s = 0;
    for (int c = 0; c < d.components; ++c) s += open_stratum_euler(d, 1u << c);
    return s;
}

// Inclusion-exclusion over the cover of Y_{I,sm} by the charts of the remaining components.
inline Int cover_generic_fiber(const StrataEuler& d, unsigned mask) {
    const unsigned full = (1u << d.components) - 1;
    const unsigned rest = full & ~mask;
    Int s = 0;
    for (unsigned sub = rest; sub; sub = (sub - 1) & rest) {
        IndexSet u;
        for (int c = 0; c < d.components; ++c)
            if ((sub | mask) >> c & 1u) u.push_back(c);
        s += (std::popcount(sub) % 2 ? 1 : -1) * d.value(u);
    }
    return s;
}

// ---------------------------------------------------------------- strata complexes

// Each component family behaves like projective space: X_I carries t^b for b <= n + 1 - |I| in degree 2b + shift.
// Restriction keeps t^b, Gysin along the divisor of component x multiplies by (-1)^{|J|} alpha_x t.
struct AlphaCopy {
    int label = 0;
    int shift = 0;
};

struct AlphaSpec {
    int big_n = 1;
    int n = 1;
    Vec alpha;  // sums to zero
    std::vector<AlphaCopy> copies;
};

inline AlphaSpec random_alpha_spec(Rng& rng, bool symmetric_labels = true) {
    AlphaSpec s;
    s.big_n = static_cast<int>(uniform(rng, 1, 3));
    s.n = s.big_n + static_cast<int>(uniform(rng, 0, s.big_n < 3 ? 1 : 0));
    Int sum = 0;
    for (int i = 0; i < s.big_n; ++i) {
        s.alpha.push_back(uniform(rng, -3, 3));
        sum += s.alpha.back();
    }
    s.alpha.push_back(-sum);
    s.copies.push_back({0, 0});
    if (uniform(rng, 0, 1)) {
        int a = static_cast<int>(uniform(rng, 1, 2));
        s.copies.push_back({a, 1});
        if (symmetric_labels) s.copies.push_back({-a, 1});
    }
    return s;
}

struct ClassTag {
    int copy;
    int b;
    auto operator<=>(const ClassTag&) const = default;
};

using Basis = std::map<int, std::vector<ClassTag>>;  // degree -> ordered classes

inline Basis alpha_basis(const AlphaSpec& s, const IndexSet& i) {
    Basis basis;
    const int m = s.n + 1 - static_cast<int>(i.size());
    for (std::size_t c = 0; c < s.copies.size(); ++c)
        for (int b = 0; b <= m; ++b) basis[2 * b + s.copies[c].shift].push_back({static_cast<int>(c), b});
    for (auto& [k, v] : basis)
        std::stable_sort(v.begin(), v.end(), [&](const ClassTag& x, const ClassTag& y) {
            return s.copies[static_cast<std::size_t>(x.copy)].label < s.copies[static_cast<std::size_t>(y.copy)].label;
        });
    return basis;
}

inline QMatrix zero_q(std::size_t r, std::size_t c) { return QMatrix(r, QVec(c, Q(0))); }

inline StrataComplexData alpha_degeneration(const AlphaSpec& s) {
    StrataComplexData d;
    d.n = s.n;
    d.components = s.big_n + 1;
    auto sets = nonempty_subsets(d.components);
    std::map<IndexSet, Basis> bases;
    for (const IndexSet& i : sets) {
        bases[i] = alpha_basis(s, i);
        StratumCohomology sc;
        sc.i = i;
        for (const auto& [k, v] : bases[i]) {
            sc.dims[k] = static_cast<int>(v.size());
            for (const ClassTag& t : v) sc.hodge[k][s.copies[static_cast<std::size_t>(t.copy)].label] += 1;
        }
        d.strata.push_back(sc);
    }
    for (const IndexSet& i : sets)
        for (int x = 0; x < d.components; ++x) {
            if (std::binary_search(i.begin(), i.end(), x)) continue;
            IndexSet j = i;
            j.insert(std::upper_bound(j.begin(), j.end(), x), x);
            const Basis& bi = bases[i];
            const Basis& bj = bases[j];
            for (const auto& [k, src] : bi) {
                auto it = bj.find(k);
                if (it == bj.end()) continue;
                QMatrix m = zero_q(it->second.size(), src.size());
                for (std::size_t r = 0; r < it->second.size(); ++r)
                    for (std::size_t c = 0; c < src.size(); ++c)
                        if (it->second[r] == src[c]) m[r][c] = 1;
                d.maps.push_back({i, j, MapKind::restrict, k, m});
            }
            const Q coef = Q(sign_pow(j.size()) * s.alpha[static_cast<std::size_t>(x)]);
            for (const auto& [k, src] : bj) {
                auto it = bi.find(k + 2);
                if (it == bi.end()) continue;
                QMatrix m = zero_q(it->second.size(), src.size());
                for (std::size_t r = 0; r < it->second.size(); ++r)
                    for (std::size_t c = 0; c < src.size(); ++c)
                        if (it->second[r].copy == src[c].copy && it->second[r].b == src[c].b + 1) m[r][c] = coef;
                d.maps.push_back({j, i, MapKind::gysin, k, m});
            }
        }
    return d;
}

// Random unimodular base change in every H^k(X_I), block diagonal in the Hodge labels.
inline StrataComplexData gauge(const StrataComplexData& d, Rng& rng) {
    std::map<std::pair<IndexSet, int>, std::pair<QMatrix, QMatrix>> g;  // (g, g^-1)
    for (const auto& s : d.strata)
        for (const auto& [k, dim] : s.dims) {
            QMatrix full = zero_q(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
            std::vector<int> blocks;
            auto h = s.hodge.find(k);
            if (h != s.hodge.end())
                for (const auto& [a, c] : h->second) blocks.push_back(c);
            else
                blocks.push_back(dim);
            std::size_t off = 0;
            for (int c : blocks) {
                auto u = random_unimodular(rng, static_cast<std::size_t>(c), 2 * c);
                for (std::size_t r = 0; r < u.size(); ++r)
                    for (std::size_t cc = 0; cc < u.size(); ++cc) full[off + r][off + cc] = u[r][cc];
                off += static_cast<std::size_t>(c);
            }
            g[{s.i, k}] = {full, *inverse(full)};
        }
    StrataComplexData out = d;
    for (auto& m : out.maps) {
        const int tdeg = m.degree + degree_shift(m.kind);
        std::size_t rows = static_cast<std::size_t>(d.dim(m.to, tdeg));
        std::size_t cols = static_cast<std::size_t>(d.dim(m.from, m.degree));
        if (rows == 0 || cols == 0) continue;
        const auto& gt = g.at({m.to, tdeg}).first;
        const auto& gs_inv = g.at({m.from, m.degree}).second;
        m.matrix = matmul(matmul(gt, m.matrix, rows, cols), gs_inv, cols, cols);
    }
    return out;
}

// Mirror data: H^{n_I + a}(Y_I, Y_I,sm) collects every class of X_I with label a; rho is Gysin, rho_dual is restriction.
inline StrataComplexData hybrid_mirror(const StrataComplexData& deg) {
    StrataComplexData h;
    h.n = deg.n;
    h.components = deg.components;
    struct Piece {
        int degree;
        int block_off;
        int count;
        int agg_off;
    };
    std::map<std::pair<IndexSet, int>, std::vector<Piece>> layout;  // (I, a) -> pieces in aggregate order
    std::map<std::pair<IndexSet, int>, int> agg_dim;
    auto labels = deg.hodge_labels();
    for (const auto& s : deg.strata) {
        StratumCohomology y;
        y.i = s.i;
        const int ni = deg.n + 1 - static_cast<int>(s.i.size());
        for (int a : labels) {
            int total = 0;
            for (const auto& [k, dim] : s.dims) {
                auto [off, c] = deg.block(s.i, k, a);
                if (c == 0) continue;
                layout[{s.i, a}].push_back({k, off, c, total});
                total += c;
            }
            agg_dim[{s.i, a}] = total;
            if (total) y.dims[ni + a] = total;
        }
        h.strata.push_back(y);
    }
    auto aggregate = [&](const IndexSet& from, const IndexSet& to, MapKind src_kind, int a) {
        QMatrix m = zero_q(static_cast<std::size_t>(agg_dim[{to, a}]), static_cast<std::size_t>(agg_dim[{from, a}]));
        for (const Piece& ps : layout[{from, a}])
            for (const Piece& pt : layout[{to, a}]) {
                if (pt.degree != ps.degree + degree_shift(src_kind)) continue;
                const StrataMap* sm = deg.find_map(from, to, src_kind, ps.degree);
                if (!sm) continue;
                for (int r = 0; r < pt.count; ++r)
                    for (int c = 0; c < ps.count; ++c)
                        m[static_cast<std::size_t>(pt.agg_off + r)][static_cast<std::size_t>(ps.agg_off + c)] =
                            sm->matrix[static_cast<std::size_t>(pt.block_off + r)][static_cast<std::size_t>(ps.block_off + c)];
            }
        return m;
    };
    for (const auto& sj : deg.strata)
        for (const auto& si : deg.strata) {
            if (!one_step(si.i, sj.i)) continue;
            const int nj = deg.n + 1 - static_cast<int>(sj.i.size());
            const int ni = nj + 1;
            for (int a : labels) {
                if (agg_dim[{sj.i, a}] && agg_dim[{si.i, a}]) {
                    h.maps.push_back({sj.i, si.i, MapKind::rho, nj + a, aggregate(sj.i, si.i, MapKind::gysin, a)});
                    h.maps.push_back({si.i, sj.i, MapKind::rho_dual, ni + a, aggregate(si.i, sj.i, MapKind::restrict, a)});
                }
            }
        }
    return h;
}

inline StrataEuler euler_of(const StrataComplexData& d, Side side) {
    StrataEuler e;
    e.n = d.n;
    e.components = d.components;
    e.side = side;
    for (const IndexSet& i : nonempty_subsets(d.components)) {
        Int v = 0;
        for (int k = -8; k <= 4 * d.n + 8; ++k) v += sign_pow(static_cast<std::size_t>(std::abs(k))) * d.dim(i, k);
        e.entries[i] = v;
    }
    return e;
}

inline Int binom(Int n, Int k) {
    if (k < 0 || k > n) return 0;
    Int r = 1;
    for (Int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Row 2b + shift of the weight page is the cochain complex of the (n-b)-skeleton of the N-simplex,
// a wedge of C(N, n-b+1) spheres when the skeleton is proper.
inline std::map<PageKey, int> weight_e2_oracle(const AlphaSpec& s, std::optional<int> label = std::nullopt) {
    std::map<PageKey, int> out;
    for (const AlphaCopy& c : s.copies) {
        if (label && c.label != *label) continue;
        for (int b = 0; b <= s.n; ++b) {
            const int top = s.n - b;
            const int q = 2 * b + c.shift;
            out[{0, q}] += 1;
            if (top < s.big_n) out[{top, q}] += static_cast<int>(binom(s.big_n, top + 1));
        }
    }
    return out;
}

inline std::map<int, int> totals_of(const std::map<PageKey, int>& e2) {
    std::map<int, int> t;
    for (const auto& [k, v] : e2) t[k.first + k.second] += v;
    return t;
}

inline Int alternating(const std::map<int, int>& totals) {
    Int s = 0;
    for (const auto& [k, v] : totals) s += sign_pow(static_cast<std::size_t>(std::abs(k))) * v;
    return s;
}

}  // namespace mktest
