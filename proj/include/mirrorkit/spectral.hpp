#pragma once

// E1 pages over strata cohomology data: weight, monodromy-weight, flag G and its dual, delta-flag.
// E2 dimensions, d1^2 witnesses, Poincare duality and mirror P=W comparisons.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "strata.hpp"

namespace mirrorkit {

enum class MapKind { gysin, restrict, rho, rho_dual };

inline std::string kind_name(MapKind k) {
    switch (k) {
        case MapKind::gysin: return "gysin";
        case MapKind::restrict: return "restrict";
        case MapKind::rho: return "rho";
        case MapKind::rho_dual: return "rho_dual";
    }
    return "?";
}

inline int degree_shift(MapKind k) {
    switch (k) {
        case MapKind::gysin: return 2;
        case MapKind::restrict: return 0;
        case MapKind::rho: return 1;
        case MapKind::rho_dual: return -1;
    }
    return 0;
}

// |to| - |from|
inline int size_change(MapKind k) { return (k == MapKind::gysin || k == MapKind::rho) ? -1 : 1; }

struct StratumCohomology {
    IndexSet i;
    std::map<int, int> dims;                      // degree -> dim
    std::map<int, std::map<int, int>> hodge;      // degree -> label a -> multiplicity; basis ordered by a
    std::map<int, QMatrix> pairing;               // degree t -> rows H^t, cols H^{2 n_I - t}
};

struct StrataMap {
    IndexSet from, to;
    MapKind kind = MapKind::restrict;
    int degree = 0;   // source degree
    QMatrix matrix;   // rows: target basis, cols: source basis
};

struct StrataComplexData {
    int n = 0;
    int components = 0;
    std::vector<StratumCohomology> strata;
    std::vector<StrataMap> maps;
    std::map<std::string, std::map<int, int>> abutment;  // page name -> total degree -> dim

    const StratumCohomology* stratum(const IndexSet& i) const {
        for (const auto& s : strata)
            if (s.i == i) return &s;
        return nullptr;
    }

    int dim(const IndexSet& i, int degree) const {
        const auto* s = stratum(i);
        if (!s) return 0;
        auto it = s->dims.find(degree);
        return it == s->dims.end() ? 0 : it->second;
    }

    bool has_hodge() const {
        return !strata.empty() && std::all_of(strata.begin(), strata.end(), [](const StratumCohomology& s) {
            for (const auto& [k, d] : s.dims)
                if (d > 0 && !s.hodge.count(k)) return false;
            return true;
        });
    }

    std::set<int> hodge_labels() const {
        std::set<int> out;
        for (const auto& s : strata)
            for (const auto& [k, h] : s.hodge)
                for (const auto& [a, c] : h)
                    if (c > 0) out.insert(a);
        return out;
    }

    // (offset, count) of label a inside H^k(X_I); whole space when a is absent.
    std::pair<int, int> block(const IndexSet& i, int degree, std::optional<int> a) const {
        int d = dim(i, degree);
        if (!a) return {0, d};
        const auto* s = stratum(i);
        if (!s || d == 0) return {0, 0};
        auto it = s->hodge.find(degree);
        if (it == s->hodge.end()) throw PreconditionError("strata: no Hodge labels for " + index_label(i) + " in degree " + std::to_string(degree));
        int off = 0;
        for (const auto& [lab, c] : it->second) {
            if (lab == *a) return {off, c};
            off += c;
        }
        return {off, 0};
    }

    const StrataMap* find_map(const IndexSet& from, const IndexSet& to, MapKind kind, int degree) const {
        for (const auto& m : maps)
            if (m.kind == kind && m.degree == degree && m.from == from && m.to == to) return &m;
        return nullptr;
    }

    void validate() const {
        std::set<IndexSet> seen;
        for (const auto& s : strata) {
            if (s.i.empty() || !std::is_sorted(s.i.begin(), s.i.end()) || std::adjacent_find(s.i.begin(), s.i.end()) != s.i.end())
                throw PreconditionError("strata: malformed index set " + index_label(s.i));
            if (s.i.front() < 0 || (components > 0 && s.i.back() >= components))
                throw PreconditionError("strata: index set " + index_label(s.i) + " out of range");
            if (!seen.insert(s.i).second) throw PreconditionError("strata: duplicate stratum " + index_label(s.i));
            for (const auto& [k, h] : s.hodge) {
                int total = 0;
                for (const auto& [a, c] : h) total += c;
                if (total != dim(s.i, k))
                    throw PreconditionError("strata: Hodge labels of " + index_label(s.i) + " in degree " + std::to_string(k) +
                                            " do not add up to the dimension");
            }
        }
        for (const auto& m : maps) {
            std::string tag = kind_name(m.kind) + " " + index_label(m.from) + "->" + index_label(m.to) + " in degree " +
                              std::to_string(m.degree);
            if (static_cast<int>(m.to.size()) - static_cast<int>(m.from.size()) != size_change(m.kind))
                throw PreconditionError("map " + tag + ": index sets have the wrong sizes");
            const IndexSet& big = m.from.size() > m.to.size() ? m.from : m.to;
            const IndexSet& small = m.from.size() > m.to.size() ? m.to : m.from;
            if (!std::includes(big.begin(), big.end(), small.begin(), small.end()))
                throw PreconditionError("map " + tag + ": index sets are not nested");
            int rows = dim(m.to, m.degree + degree_shift(m.kind)), cols = dim(m.from, m.degree);
            bool shape = static_cast<int>(m.matrix.size()) == rows &&
                         std::all_of(m.matrix.begin(), m.matrix.end(), [&](const QVec& r) { return static_cast<int>(r.size()) == cols; });
            // an all-empty matrix stands for a map with zero-dimensional source
            if (!shape && !(cols == 0 && std::all_of(m.matrix.begin(), m.matrix.end(), [](const QVec& r) { return r.empty(); }) &&
                            static_cast<int>(m.matrix.size()) == rows))
                throw PreconditionError("map " + tag + ": matrix is " + std::to_string(m.matrix.size()) + "x" +
                                        std::to_string(m.matrix.empty() ? 0 : m.matrix[0].size()) + ", expected " +
                                        std::to_string(rows) + "x" + std::to_string(cols));
            if (has_hodge()) {
                const auto* ss = stratum(m.from);
                const auto* ts = stratum(m.to);
                if (!ss || !ts) continue;
                auto sh = ss->hodge.find(m.degree);
                auto th = ts->hodge.find(m.degree + degree_shift(m.kind));
                if (sh == ss->hodge.end() || th == ts->hodge.end()) continue;
                std::vector<int> rl, cl;
                for (const auto& [a, c] : th->second) rl.insert(rl.end(), static_cast<std::size_t>(c), a);
                for (const auto& [a, c] : sh->second) cl.insert(cl.end(), static_cast<std::size_t>(c), a);
                for (std::size_t r = 0; r < rl.size(); ++r)
                    for (std::size_t c = 0; c < cl.size(); ++c)
                        if (rl[r] != cl[c] && m.matrix[r][c] != 0)
                            throw PreconditionError("map " + tag + ": mixes Hodge labels " + std::to_string(cl[c]) + " and " +
                                                    std::to_string(rl[r]));
            }
        }
    }
};

// Sign of the face map between index sets differing in one element: (-1)^(pos-1) for the extra index.
inline int mv_sign(const IndexSet& a, const IndexSet& b) {
    const IndexSet& big = a.size() > b.size() ? a : b;
    const IndexSet& small = a.size() > b.size() ? b : a;
    for (std::size_t pos = 0; pos < big.size(); ++pos)
        if (pos >= small.size() || big[pos] != small[pos]) return pos % 2 ? -1 : 1;
    return 1;
}

inline QMatrix submatrix(const QMatrix& m, std::pair<int, int> rows, std::pair<int, int> cols) {
    QMatrix out(static_cast<std::size_t>(rows.second), QVec(static_cast<std::size_t>(cols.second), Q(0)));
    for (int r = 0; r < rows.second; ++r)
        for (int c = 0; c < cols.second; ++c)
            out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                m[static_cast<std::size_t>(rows.first + r)][static_cast<std::size_t>(cols.first + c)];
    return out;
}

using PageKey = std::pair<int, int>;

struct Summand {
    IndexSet i;
    int degree = 0;
    int slot = 0;  // monodromy: k; delta: |I|
    auto operator<=>(const Summand&) const = default;
};

struct PageTerm {
    std::vector<Summand> summands;
    std::vector<int> dims;
    int dim() const {
        int s = 0;
        for (int d : dims) s += d;
        return s;
    }
};

struct BigradedPage {
    std::string name;
    std::optional<int> label;
    std::map<PageKey, PageTerm> terms;
    std::map<PageKey, QMatrix> d;  // d: (p,q) -> (p+1,q)
    std::map<PageKey, int> ranks;
    std::map<PageKey, int> e2;
    bool d_squared_zero = true;
    std::string witness;
    std::vector<std::string> flags;

    int e1_dim(int p, int q) const {
        auto it = terms.find({p, q});
        return it == terms.end() ? 0 : it->second.dim();
    }
    int e2_dim(int p, int q) const {
        auto it = e2.find({p, q});
        return it == e2.end() ? 0 : it->second;
    }
    std::map<int, int> totals_e1() const {
        std::map<int, int> t;
        for (const auto& [k, term] : terms) t[k.first + k.second] += term.dim();
        return t;
    }
    std::map<int, int> totals_e2() const {
        std::map<int, int> t;
        for (const auto& [k, v] : e2) t[k.first + k.second] += v;
        return t;
    }
};

// The block of d from source summand s to target summand t, already signed; nullopt when zero.
using BlockFn = std::function<std::optional<QMatrix>(int p, const Summand& s, const Summand& t)>;

inline std::string summand_label(const Summand& s) {
    return "H^" + std::to_string(s.degree) + index_label(s.i);
}

inline void finalize_page(BigradedPage& page, const BlockFn& block) {
    // assemble differentials
    for (const auto& [key, src] : page.terms) {
        auto tit = page.terms.find({key.first + 1, key.second});
        if (tit == page.terms.end()) continue;
        const PageTerm& tgt = tit->second;
        QMatrix m(static_cast<std::size_t>(tgt.dim()), QVec(static_cast<std::size_t>(src.dim()), Q(0)));
        int col = 0;
        for (std::size_t si = 0; si < src.summands.size(); ++si) {
            int row = 0;
            for (std::size_t ti = 0; ti < tgt.summands.size(); ++ti) {
                auto b = block(key.first, src.summands[si], tgt.summands[ti]);
                if (b)
                    for (int r = 0; r < tgt.dims[ti]; ++r)
                        for (int c = 0; c < src.dims[si]; ++c)
                            m[static_cast<std::size_t>(row + r)][static_cast<std::size_t>(col + c)] =
                                (*b)[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
                row += tgt.dims[ti];
            }
            col += src.dims[si];
        }
        page.d[key] = m;
        page.ranks[key] = rank(m);
    }
    // d^2
    for (const auto& [key, d1] : page.d) {
        auto it = page.d.find({key.first + 1, key.second});
        if (it == page.d.end()) continue;
        const QMatrix& d2 = it->second;
        const PageTerm& src = page.terms.at(key);
        const PageTerm& mid = page.terms.at({key.first + 1, key.second});
        const PageTerm& tgt = page.terms.at({key.first + 2, key.second});
        QMatrix prod = matmul(d2, d1, static_cast<std::size_t>(mid.dim()), static_cast<std::size_t>(src.dim()));
        for (std::size_t r = 0; r < prod.size() && page.d_squared_zero; ++r)
            for (std::size_t c = 0; c < prod[r].size(); ++c) {
                if (prod[r][c] == 0) continue;
                auto locate = [](const PageTerm& t, std::size_t idx) {
                    std::size_t i = 0;
                    while (idx >= static_cast<std::size_t>(t.dims[i])) idx -= static_cast<std::size_t>(t.dims[i++]);
                    return t.summands[i];
                };
                page.d_squared_zero = false;
                page.witness = "d1^2 != 0 from E1^{" + std::to_string(key.first) + "," + std::to_string(key.second) + "} " +
                               summand_label(locate(src, c)) + " to " + summand_label(locate(tgt, r)) + ": entry " +
                               to_string(prod[r][c]);
                break;
            }
    }
    for (const auto& [key, term] : page.terms) {
        int out = page.ranks.count(key) ? page.ranks[key] : 0;
        int in = page.ranks.count({key.first - 1, key.second}) ? page.ranks[{key.first - 1, key.second}] : 0;
        int v = term.dim() - out - in;
        if (v != 0) page.e2[key] = v;
    }
}

inline void add_summand(BigradedPage& page, const StrataComplexData& data, PageKey key, Summand s) {
    int d = data.block(s.i, s.degree, page.label).second;
    if (d == 0) return;
    auto& term = page.terms[key];
    auto pos = std::lower_bound(term.summands.begin(), term.summands.end(), s);
    auto off = pos - term.summands.begin();
    term.summands.insert(pos, s);
    term.dims.insert(term.dims.begin() + off, d);
}

// Filtered block of a stored map, or an error when a needed map is absent.
inline QMatrix map_block(const StrataComplexData& data, const Summand& s, const Summand& t, MapKind kind,
                         std::optional<int> label, std::vector<std::string>* flags = nullptr) {
    auto sb = data.block(s.i, s.degree, label);
    auto tb = data.block(t.i, t.degree, label);
    if (const StrataMap* m = data.find_map(s.i, t.i, kind, s.degree)) return submatrix(m->matrix, tb, sb);
    if (kind == MapKind::gysin) {
        // transpose of the restriction in the Poincare-dual degree
        int dj = data.n + 1 - static_cast<int>(s.i.size());
        int dual = 2 * dj - s.degree;
        if (const StrataMap* r = data.find_map(t.i, s.i, MapKind::restrict, dual)) {
            if (flags && std::find(flags->begin(), flags->end(), "pairing-default") == flags->end())
                flags->push_back("pairing-default");
            QMatrix tr = transpose(r->matrix, r->matrix.empty() ? 0 : r->matrix[0].size());
            if (tr.size() == static_cast<std::size_t>(data.dim(t.i, t.degree)) &&
                (tr.empty() || tr[0].size() == static_cast<std::size_t>(data.dim(s.i, s.degree))))
                return submatrix(tr, tb, sb);
        }
    }
    throw PreconditionError("missing " + kind_name(kind) + " map " + index_label(s.i) + "->" + index_label(t.i) +
                            " in degree " + std::to_string(s.degree));
}

inline QMatrix scaled(QMatrix m, int c) {
    for (auto& r : m)
        for (auto& x : r) x *= c;
    return m;
}

inline bool one_step(const IndexSet& small, const IndexSet& big) {
    return big.size() == small.size() + 1 && std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// E1^{p,q} = (+)_{|I|=p+1} H^q(X_I), d1 = signed sum of restrictions.
inline BigradedPage build_weight_E1(const StrataComplexData& data, std::optional<int> label = std::nullopt) {
    data.validate();
    BigradedPage page{"weight", label, {}, {}, {}, {}, true, "", {}};
    for (const auto& s : data.strata)
        for (const auto& [k, d] : s.dims) add_summand(page, data, {static_cast<int>(s.i.size()) - 1, k}, {s.i, k, 0});
    finalize_page(page, [&](int, const Summand& s, const Summand& t) -> std::optional<QMatrix> {
        if (!one_step(s.i, t.i) || s.degree != t.degree) return std::nullopt;
        return scaled(map_block(data, s, t, MapKind::restrict, label), mv_sign(s.i, t.i));
    });
    return page;
}

// E1^{p,q} = (+)_{k >= max(0,p)} H^{q+2p-2k}(E(2k-p+1)), d1 = G + (-1)^p r.
inline BigradedPage build_monodromy_E1(const StrataComplexData& data, std::optional<int> label = std::nullopt) {
    data.validate();
    BigradedPage page{"monodromy", label, {}, {}, {}, {}, true, "", {}};
    const int big_n = data.components - 1;
    for (const auto& s : data.strata) {
        const int m = static_cast<int>(s.i.size());
        for (const auto& [deg, d] : s.dims)
            for (int k = 0; k <= m - 1; ++k) {
                int p = 2 * k + 1 - m;
                if (p < -big_n || p > big_n) continue;
                int q = deg - 2 * p + 2 * k;
                add_summand(page, data, {p, q}, {s.i, deg, k});
            }
    }
    finalize_page(page, [&](int p, const Summand& s, const Summand& t) -> std::optional<QMatrix> {
        if (t.slot == s.slot && one_step(t.i, s.i) && t.degree == s.degree + 2)
            return scaled(map_block(data, s, t, MapKind::gysin, label, &page.flags), mv_sign(s.i, t.i));
        if (t.slot == s.slot + 1 && one_step(s.i, t.i) && t.degree == s.degree)
            return scaled(map_block(data, s, t, MapKind::restrict, label), mv_sign(s.i, t.i) * (p % 2 ? -1 : 1));
        return std::nullopt;
    });
    return page;
}

// E1^{p,q} = (+)_{|I|=1-p} H^{p+q}(Y_I, Y_I,sm), d1 = signed sum of rho.
inline BigradedPage build_G_flag_E1(const StrataComplexData& data) {
    data.validate();
    BigradedPage page{"gflag", std::nullopt, {}, {}, {}, {}, true, "", {}};
    for (const auto& s : data.strata) {
        int p = 1 - static_cast<int>(s.i.size());
        for (const auto& [k, d] : s.dims) add_summand(page, data, {p, k - p}, {s.i, k, 0});
    }
    finalize_page(page, [&](int, const Summand& s, const Summand& t) -> std::optional<QMatrix> {
        if (!one_step(t.i, s.i) || t.degree != s.degree + 1) return std::nullopt;
        return scaled(map_block(data, s, t, MapKind::rho, std::nullopt), mv_sign(s.i, t.i));
    });
    return page;
}

// E1^{l,q} = (+)_{|I|=l+1} H^{q-l}(Y_I, Y_I,sm), d1 = signed sum of rho_dual.
inline BigradedPage build_G_dual_E1(const StrataComplexData& data) {
    data.validate();
    BigradedPage page{"gdual", std::nullopt, {}, {}, {}, {}, true, "", {}};
    for (const auto& s : data.strata) {
        int l = static_cast<int>(s.i.size()) - 1;
        for (const auto& [k, d] : s.dims) add_summand(page, data, {l, k + l}, {s.i, k, 0});
    }
    finalize_page(page, [&](int, const Summand& s, const Summand& t) -> std::optional<QMatrix> {
        if (!one_step(s.i, t.i) || t.degree != s.degree - 1) return std::nullopt;
        return scaled(map_block(data, s, t, MapKind::rho_dual, std::nullopt), mv_sign(s.i, t.i));
    });
    return page;
}

// E1^{l,q} = (+)_{m >= |l|+1, m = l+1 mod 2} (+)_{|I|=m} H^{q-m+1}(Y_I, Y_I,sm), d1 = d_I + (-1)^l d_II.
inline BigradedPage build_delta_E1(const StrataComplexData& data, bool twist = true) {
    data.validate();
    BigradedPage page{"delta", std::nullopt, {}, {}, {}, {}, true, "", {}};
    if (!twist) page.flags.push_back("untwisted");
    for (const auto& s : data.strata) {
        const int m = static_cast<int>(s.i.size());
        for (const auto& [k, d] : s.dims)
            for (int l = -(m - 1); l <= m - 1; l += 2) add_summand(page, data, {l, k + m - 1}, {s.i, k, m});
    }
    finalize_page(page, [&](int l, const Summand& s, const Summand& t) -> std::optional<QMatrix> {
        if (one_step(t.i, s.i) && t.degree == s.degree + 1)
            return scaled(map_block(data, s, t, MapKind::rho, std::nullopt), mv_sign(s.i, t.i));
        if (one_step(s.i, t.i) && t.degree == s.degree - 1) {
            int tw = (twist && l % 2 != 0) ? -1 : 1;
            return scaled(map_block(data, s, t, MapKind::rho_dual, std::nullopt), mv_sign(s.i, t.i) * tw);
        }
        return std::nullopt;
    });
    return page;
}

struct AbutmentCheck {
    bool supplied = false;
    bool ok = true;
    std::vector<std::string> mismatches;
    bool euler_ok = true;
};

inline AbutmentCheck check_abutment(const BigradedPage& page, const StrataComplexData& data) {
    AbutmentCheck r;
    Int e1 = 0, e2 = 0;
    for (const auto& [k, v] : page.totals_e1()) e1 += sign_pow(static_cast<std::size_t>(std::abs(k))) * v;
    for (const auto& [k, v] : page.totals_e2()) e2 += sign_pow(static_cast<std::size_t>(std::abs(k))) * v;
    r.euler_ok = e1 == e2;
    auto it = data.abutment.find(page.name);
    if (it == data.abutment.end()) return r;
    r.supplied = true;
    auto totals = page.totals_e2();
    std::set<int> degrees;
    for (const auto& [k, v] : totals) degrees.insert(k);
    for (const auto& [k, v] : it->second) degrees.insert(k);
    for (int k : degrees) {
        int have = totals.count(k) ? totals[k] : 0;
        int want = it->second.count(k) ? it->second.at(k) : 0;
        if (have != want) {
            r.ok = false;
            r.mismatches.push_back("H^" + std::to_string(k) + ": E2 total " + std::to_string(have) + ", declared " + std::to_string(want));
        }
    }
    return r;
}

// Positions where a d2: E2^{p,q} -> E2^{p+2,q-1} could be nonzero for dimensional reasons.
inline std::vector<PageKey> d2_candidates(const BigradedPage& page) {
    std::vector<PageKey> out;
    for (const auto& [k, v] : page.e2)
        if (page.e2_dim(k.first + 2, k.second - 1) > 0) out.push_back(k);
    return out;
}

struct PDReport {
    bool dims_ok = true;
    std::vector<std::string> failures;
    bool pairing_checked = false;
    bool maps_ok = true;
    std::map<int, std::string> level_sign;  // |I| of the source of rho_dual -> "+", "-" or "none"
    bool ok() const { return dims_ok && maps_ok; }
};

inline PDReport check_poincare_duality(const StrataComplexData& data) {
    data.validate();
    PDReport r;
    for (const auto& s : data.strata) {
        int ni = data.n - static_cast<int>(s.i.size()) + 1;
        for (const auto& [a, d] : s.dims) {
            int other = data.dim(s.i, 2 * ni - a);
            if (d != other) {
                r.dims_ok = false;
                r.failures.push_back(index_label(s.i) + ": dim H^" + std::to_string(a) + " = " + std::to_string(d) + " but dim H^" +
                                     std::to_string(2 * ni - a) + " = " + std::to_string(other));
            }
        }
    }
    // rho_dual = +-(G_I rho G_J^{-1})^T, one sign per level
    std::map<int, std::set<int>> candidates;
    for (const auto& m : data.maps) {
        if (m.kind != MapKind::rho_dual) continue;
        const auto* si = data.stratum(m.from);
        const auto* sj = data.stratum(m.to);
        if (!si || !sj) continue;
        int s = m.degree;
        int nj = data.n - static_cast<int>(m.to.size()) + 1;
        int ni = nj + 1;
        auto gi = si->pairing.find(s);
        auto gj = sj->pairing.find(s - 1);
        if (gi == si->pairing.end() || gj == sj->pairing.end()) continue;
        int rho_deg = 2 * ni - s - 1;
        const StrataMap* rho = data.find_map(m.to, m.from, MapKind::rho, rho_deg);
        if (!rho) continue;
        r.pairing_checked = true;
        auto ginv = inverse(gj->second);
        if (!ginv) throw PreconditionError("pairing of " + index_label(m.to) + " in degree " + std::to_string(s - 1) + " is singular");
        std::size_t hs2 = static_cast<std::size_t>(data.dim(m.from, 2 * ni - s));
        std::size_t hr = static_cast<std::size_t>(data.dim(m.to, rho_deg));
        std::size_t hs1 = static_cast<std::size_t>(data.dim(m.to, s - 1));
        QMatrix gr = matmul(gi->second, rho->matrix, hs2, hr);
        QMatrix full = matmul(gr, *ginv, hr, hs1);
        QMatrix expect = transpose(full, hs1);
        std::set<int> ok;
        for (int sign : {1, -1})
            if (scaled(expect, sign) == m.matrix) ok.insert(sign);
        int level = static_cast<int>(m.from.size());
        if (!candidates.count(level)) candidates[level] = ok;
        else {
            std::set<int> both;
            std::set_intersection(candidates[level].begin(), candidates[level].end(), ok.begin(), ok.end(),
                                  std::inserter(both, both.begin()));
            candidates[level] = both;
        }
    }
    for (const auto& [level, signs] : candidates) {
        if (signs.empty()) {
            r.maps_ok = false;
            r.level_sign[level] = "none";
            r.failures.push_back("rho_dual from level " + std::to_string(level) + " is not a pairing conjugate of rho");
        } else {
            r.level_sign[level] = signs.count(1) ? "+" : "-";
        }
    }
    return r;
}

struct PWRow {
    int a = 0, l = 0;
    int lhs = 0, rhs = 0;
    std::optional<int> rhs_secondary;
    bool holds() const { return lhs == rhs && (!rhs_secondary || *rhs_secondary == rhs); }
};

struct PWReport {
    std::string mode;
    bool total_dimension_mode = false;
    std::vector<PWRow> rows;
    std::vector<std::string> notes;
    bool ok() const {
        return std::all_of(rows.begin(), rows.end(), [](const PWRow& r) { return r.holds(); });
    }
};

inline void add_pw_row(PWReport& rep, int a, int l, int lhs, int rhs, std::optional<int> sec = std::nullopt) {
    if (lhs == 0 && rhs == 0 && (!sec || *sec == 0)) return;
    rep.rows.push_back({a, l, lhs, rhs, sec});
}

inline std::map<int, int> column_sums(const BigradedPage& p) {
    std::map<int, int> out;
    for (const auto& [k, v] : p.e2) out[k.first] += v;
    return out;
}

// Monodromy-weight side of a smoothing against the delta-flag page of the mirror.
inline PWReport check_mirror_pw_smoothing(const StrataComplexData& deg, const StrataComplexData& hyb) {
    PWReport rep;
    rep.mode = "smoothing";
    auto delta = build_delta_E1(hyb);
    if (!delta.d_squared_zero) rep.notes.push_back("delta page: " + delta.witness);
    const int n = hyb.n;
    if (!deg.has_hodge()) {
        rep.total_dimension_mode = true;
        rep.notes.push_back("no Hodge labels on the degeneration side: total-dimension comparison");
        auto mono = build_monodromy_E1(deg);
        if (!mono.d_squared_zero) rep.notes.push_back("monodromy page: " + mono.witness);
        auto lhs = column_sums(mono);
        auto rhs = column_sums(delta);
        std::set<int> ls;
        for (auto& [l, v] : lhs) ls.insert(l);
        for (auto& [l, v] : rhs) ls.insert(l);
        for (int l : ls) add_pw_row(rep, 0, l, lhs[l], rhs[l]);
        return rep;
    }
    std::set<int> labels = deg.hodge_labels();
    for (const auto& [k, v] : delta.e2) labels.insert(k.second - n);
    for (int a : labels) {
        auto mono = build_monodromy_E1(deg, a);
        if (!mono.d_squared_zero) rep.notes.push_back("monodromy page a=" + std::to_string(a) + ": " + mono.witness);
        auto lhs = column_sums(mono);
        std::set<int> ls;
        for (auto& [l, v] : lhs) ls.insert(l);
        for (const auto& [k, v] : delta.e2)
            if (k.second == n + a) ls.insert(k.first);
        for (int l : ls) add_pw_row(rep, a, l, lhs[l], delta.e2_dim(l, n + a));
    }
    return rep;
}

// Weight page of the central fiber against the flag page (and its dual) of the mirror.
inline PWReport check_mirror_pw_central(const StrataComplexData& deg, const StrataComplexData& hyb) {
    PWReport rep;
    rep.mode = "central_fiber";
    auto g = build_G_flag_E1(hyb);
    auto gd = build_G_dual_E1(hyb);
    const int n = hyb.n;
    if (!deg.has_hodge()) {
        rep.total_dimension_mode = true;
        rep.notes.push_back("no Hodge labels on the degeneration side: total-dimension comparison");
        auto w = build_weight_E1(deg);
        auto lhs = column_sums(w);
        std::map<int, int> rhs, sec;
        for (const auto& [k, v] : g.e2) rhs[-k.first] += v;
        for (const auto& [k, v] : gd.e2) sec[k.first] += v;
        std::set<int> ls;
        for (auto& [l, v] : lhs) ls.insert(l);
        for (auto& [l, v] : rhs) ls.insert(l);
        for (int l : ls) add_pw_row(rep, 0, l, lhs[l], rhs[l], sec[l]);
        return rep;
    }
    std::set<int> labels = deg.hodge_labels();
    for (const auto& [k, v] : g.e2) labels.insert(n - k.second);
    for (int a : labels) {
        auto w = build_weight_E1(deg, a);
        auto lhs = column_sums(w);
        std::set<int> ls;
        for (auto& [l, v] : lhs) ls.insert(l);
        for (const auto& [k, v] : g.e2)
            if (k.second == n - a) ls.insert(-k.first);
        for (int l : ls) add_pw_row(rep, a, l, lhs[l], g.e2_dim(-l, n - a), gd.e2_dim(l, n + a));
    }
    return rep;
}

struct CubicalData {
    int label = 0;
    std::map<IndexSet, int> dims;
    std::map<std::pair<IndexSet, IndexSet>, QMatrix> maps;  // (J, I) with I subset of J: map J -> I
};

// Degeneration side: (+)_s H^s(X_I)_a with Gysin maps.
inline CubicalData cubical_from_degeneration(const StrataComplexData& data, int a) {
    data.validate();
    CubicalData c;
    c.label = a;
    std::optional<int> lab;
    if (data.has_hodge()) lab = a;
    std::map<IndexSet, std::vector<std::pair<int, int>>> layout;  // (degree, block dim) in basis order
    for (const auto& s : data.strata) {
        int total = 0;
        for (const auto& [k, d] : s.dims) {
            int b = data.block(s.i, k, lab).second;
            if (b == 0) continue;
            layout[s.i].push_back({k, b});
            total += b;
        }
        c.dims[s.i] = total;
    }
    for (const auto& sj : data.strata)
        for (const auto& si : data.strata) {
            if (!one_step(si.i, sj.i)) continue;
            QMatrix m(static_cast<std::size_t>(c.dims[si.i]), QVec(static_cast<std::size_t>(c.dims[sj.i]), Q(0)));
            int col = 0;
            for (auto [ks, bs] : layout[sj.i]) {
                int row = 0;
                for (auto [kt, bt] : layout[si.i]) {
                    if (kt == ks + 2) {
                        QMatrix b = map_block(data, {sj.i, ks, 0}, {si.i, kt, 0}, MapKind::gysin, lab);
                        for (int r = 0; r < bt; ++r)
                            for (int cc = 0; cc < bs; ++cc)
                                m[static_cast<std::size_t>(row + r)][static_cast<std::size_t>(col + cc)] =
                                    b[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)];
                    }
                    row += bt;
                }
                col += bs;
            }
            c.maps[{sj.i, si.i}] = m;
        }
    return c;
}

// Hybrid side: H^{n_I + a}(Y_I, Y_I,sm) with rho maps.
inline CubicalData cubical_from_hybrid(const StrataComplexData& data, int a) {
    data.validate();
    CubicalData c;
    c.label = a;
    for (const auto& s : data.strata) c.dims[s.i] = data.dim(s.i, data.n - static_cast<int>(s.i.size()) + 1 + a);
    for (const auto& sj : data.strata)
        for (const auto& si : data.strata) {
            if (!one_step(si.i, sj.i)) continue;
            int deg = data.n - static_cast<int>(sj.i.size()) + 1 + a;
            if (c.dims[si.i] == 0 || c.dims[sj.i] == 0) {
                c.maps[{sj.i, si.i}] = QMatrix(static_cast<std::size_t>(c.dims[si.i]), QVec(static_cast<std::size_t>(c.dims[sj.i]), Q(0)));
                continue;
            }
            c.maps[{sj.i, si.i}] = map_block(data, {sj.i, deg, 0}, {si.i, deg + 1, 0}, MapKind::rho, std::nullopt);
        }
    return c;
}

struct CubicalReport {
    bool ok = true;
    std::vector<std::string> failures;
    bool degeneration_paths_commute = true;
    bool hybrid_paths_commute = true;
};

inline bool paths_commute(const CubicalData& c, std::string& witness) {
    auto abs_matrix = [](QMatrix m) {
        for (auto& r : m)
            for (auto& x : r) x = abs(x);
        return m;
    };
    for (const auto& [k, dk] : c.dims)
        for (const auto& [i, di] : c.dims) {
            if (k.size() != i.size() + 2 || !std::includes(k.begin(), k.end(), i.begin(), i.end())) continue;
            std::optional<QMatrix> first;
            for (const auto& [j, dj] : c.dims) {
                if (!one_step(i, j) || !one_step(j, k)) continue;
                auto a = c.maps.find({k, j});
                auto b = c.maps.find({j, i});
                if (a == c.maps.end() || b == c.maps.end()) continue;
                QMatrix comp = abs_matrix(matmul(b->second, a->second, static_cast<std::size_t>(dj), static_cast<std::size_t>(dk)));
                if (!first) first = comp;
                else if (*first != comp) {
                    witness = "paths " + index_label(k) + "->" + index_label(i) + " differ";
                    return false;
                }
            }
        }
    return true;
}

inline CubicalReport check_cubical_mirror(const CubicalData& b, const CubicalData& a) {
    CubicalReport r;
    std::set<IndexSet> family;
    for (const auto& [i, d] : b.dims) family.insert(i);
    for (const auto& [i, d] : a.dims) family.insert(i);
    for (const IndexSet& i : family) {
        int db = b.dims.count(i) ? b.dims.at(i) : 0;
        int da = a.dims.count(i) ? a.dims.at(i) : 0;
        if (db != da) {
            r.ok = false;
            r.failures.push_back(index_label(i) + ": dimension " + std::to_string(db) + " vs " + std::to_string(da));
        }
    }
    std::set<std::pair<IndexSet, IndexSet>> pairs;
    for (const auto& [k, m] : b.maps) pairs.insert(k);
    for (const auto& [k, m] : a.maps) pairs.insert(k);
    for (const auto& p : pairs) {
        auto x = b.maps.find(p);
        auto y = a.maps.find(p);
        int rb = x == b.maps.end() ? 0 : rank(x->second);
        int ra = y == a.maps.end() ? 0 : rank(y->second);
        if (rb != ra) {
            r.ok = false;
            r.failures.push_back(index_label(p.second) + " in " + index_label(p.first) + ": map ranks " + std::to_string(rb) +
                                 " vs " + std::to_string(ra));
        }
    }
    std::string w;
    r.degeneration_paths_commute = paths_commute(b, w);
    if (!r.degeneration_paths_commute) r.failures.push_back("degeneration side: " + w);
    r.hybrid_paths_commute = paths_commute(a, w);
    if (!r.hybrid_paths_commute) r.failures.push_back("hybrid side: " + w);
    r.ok = r.ok && r.degeneration_paths_commute && r.hybrid_paths_commute;
    return r;
}

}  // namespace mirrorkit
