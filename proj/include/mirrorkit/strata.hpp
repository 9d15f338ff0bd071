#pragma once

// Euler characteristics of normal-crossing strata on both sides, chart combinatorics, monodromy gluing.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "arith.hpp"

namespace mirrorkit {

using IndexSet = std::vector<int>;  // sorted

inline std::string index_label(const IndexSet& i) {
    std::string s = "{";
    for (std::size_t k = 0; k < i.size(); ++k) s += (k ? "," : "") + std::to_string(i[k]);
    return s + "}";
}

// All nonempty subsets of {0..m-1}, ordered by size then lexicographically.
inline std::vector<IndexSet> nonempty_subsets(int m) {
    std::vector<IndexSet> out;
    for (int size = 1; size <= m; ++size)
        for_each_combination(static_cast<std::size_t>(m), static_cast<std::size_t>(size), [&](const std::vector<std::size_t>& c) {
            out.push_back(IndexSet(c.begin(), c.end()));
        });
    return out;
}

inline Int sign_pow(std::size_t e) { return e % 2 ? -1 : 1; }

enum class Side { degeneration, hybrid };

struct StrataEuler {
    int n = 0;
    int components = 0;  // N + 1
    Side side = Side::degeneration;
    std::map<IndexSet, Int> entries;
    std::set<IndexSet> empty;  // strata declared empty (e = 0)

    Int value(const IndexSet& i) const {
        auto it = entries.find(i);
        if (it != entries.end()) return it->second;
        if (empty.count(i)) return 0;
        throw PreconditionError("strata: missing entry for " + index_label(i));
    }

    void check_shape() const {
        if (components < 1) throw PreconditionError("strata: no components");
        for (const auto& [i, e] : entries) {
            if (i.empty() || !std::is_sorted(i.begin(), i.end()) || std::adjacent_find(i.begin(), i.end()) != i.end())
                throw PreconditionError("strata: malformed index set " + index_label(i));
            if (i.front() < 0 || i.back() >= components)
                throw PreconditionError("strata: index set " + index_label(i) + " out of range");
        }
    }
};

// e(X_c): inclusion-exclusion over the strata.
inline Int euler_snc(const StrataEuler& d) {
    d.check_shape();
    Int s = 0;
    for (const IndexSet& i : nonempty_subsets(d.components)) s += sign_pow(i.size() - 1) * d.value(i);
    return s;
}

// e(X) of the smoothing. Only the |I| = 1 charts survive; each carries the open part of X_i.
inline Int euler_smoothing(const StrataEuler& d) {
    d.check_shape();
    if (d.components < 2) throw PreconditionError("euler_smoothing: needs at least two components");
    Int s = 0;
    for (const IndexSet& i : nonempty_subsets(d.components))
        s += sign_pow(i.size() - 1) * static_cast<Int>(i.size()) * d.value(i);
    return s;
}

struct GenericFiber {
    Int value = 0;
    bool rank0 = false;  // I is the full index set, no potential left
};

// e(Y_{I,sm}) from the gluing property.
inline GenericFiber euler_generic_fiber(const StrataEuler& d, const IndexSet& i) {
    d.check_shape();
    std::vector<int> rest;
    for (int c = 0; c < d.components; ++c)
        if (!std::binary_search(i.begin(), i.end(), c)) rest.push_back(c);
    if (rest.empty()) return {0, true};
    Int s = 0;
    for (const IndexSet& jj : nonempty_subsets(static_cast<int>(rest.size()))) {
        IndexSet u = i;
        for (int k : jj) u.push_back(rest[static_cast<std::size_t>(k)]);
        std::sort(u.begin(), u.end());
        s += sign_pow(jj.size() - 1) * d.value(u);
    }
    return {s, false};
}

inline Int euler_relative(const StrataEuler& d, const IndexSet& i) { return d.value(i) - euler_generic_fiber(d, i).value; }

// e(Y~) summed over relative strata.
inline Int euler_tilde_total(const StrataEuler& d) {
    Int s = 0;
    for (const IndexSet& i : nonempty_subsets(d.components)) s += euler_relative(d, i);
    return s;
}

// Same quantity after resummation.
inline Int euler_tilde_resummed(const StrataEuler& d) {
    Int s = 0;
    for (const IndexSet& i : nonempty_subsets(d.components)) s += sign_pow(i.size() - 1) * d.value(i);
    return s;
}

// e(Y): torus-bundle charts with |I| > 1 contribute nothing.
inline Int euler_glued_total(const StrataEuler& d) {
    Int s = 0;
    for (int c = 0; c < d.components; ++c) s += d.value({c});
    return s;
}

inline Int euler_glued_resummed(const StrataEuler& d) {
    Int s = 0;
    for (const IndexSet& i : nonempty_subsets(d.components)) s += static_cast<Int>(i.size()) * euler_relative(d, i);
    return s;
}

struct StratumVerdict {
    IndexSet i;
    Int lhs = 0;  // e(X_I)
    Int rhs = 0;  // (-1)^{n-|I|+1} e(Y_I, Y_{I,sm})
    bool holds() const { return lhs == rhs; }
};

struct MirrorReport {
    Int e_x = 0, e_xc = 0, e_y = 0, e_ytilde = 0;
    bool total_holds = false;        // e(Y) = (-1)^n e(X)
    bool tilde_holds = false;        // e(Y~) = (-1)^n e(X_c), as proved
    bool tilde_statement_holds = false;  // e(Y~) = (-1)^n e(X), as stated
    std::vector<StratumVerdict> strata;
    std::vector<IndexSet> failing;
    bool ok() const { return total_holds && tilde_holds && failing.empty(); }
};

inline MirrorReport check_topological_mirror(const StrataEuler& deg, const StrataEuler& hyb) {
    if (deg.side != Side::degeneration || hyb.side != Side::hybrid)
        throw PreconditionError("check_topological_mirror: expected a degeneration and a hybrid document");
    if (deg.n != hyb.n || deg.components != hyb.components)
        throw PreconditionError("check_topological_mirror: shape mismatch between the two sides");
    MirrorReport r;
    const Int s = sign_pow(static_cast<std::size_t>(deg.n));
    r.e_x = euler_smoothing(deg);
    r.e_xc = euler_snc(deg);
    r.e_y = euler_glued_total(hyb);
    r.e_ytilde = euler_tilde_total(hyb);
    r.total_holds = r.e_y == s * r.e_x;
    r.tilde_holds = r.e_ytilde == s * r.e_xc;
    r.tilde_statement_holds = r.e_ytilde == s * r.e_x;
    for (const IndexSet& i : nonempty_subsets(deg.components)) {
        StratumVerdict v{i, deg.value(i), 0};
        v.rhs = sign_pow(static_cast<std::size_t>(deg.n + 1) + i.size()) * euler_relative(hyb, i);
        if (!v.holds()) r.failing.push_back(i);
        r.strata.push_back(v);
    }
    return r;
}

struct ChartIntersection {
    IndexSet i;
    int torus_rank = 0;
    int disk_rank = 0;
};

inline std::vector<ChartIntersection> chart_intersections(int big_n) {
    if (big_n < 0) throw PreconditionError("chart_intersections: N must be non-negative");
    std::vector<ChartIntersection> out;
    for (const IndexSet& i : nonempty_subsets(big_n + 1))
        out.push_back({i, static_cast<int>(i.size()) - 1, big_n + 1 - static_cast<int>(i.size())});
    return out;
}

struct MonodromyReps {
    std::size_t dim = 0;
    std::map<std::pair<int, int>, std::vector<Vec>> pair_reps;  // phi_{T_ij}
    std::map<int, std::vector<Vec>> single_reps;                // phi_{T_j}
};

struct MonodromyReport {
    bool holds = true;
    std::vector<std::string> failures;
};

inline std::vector<Vec> int_matmul(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    std::vector<Vec> c(a.size(), Vec(b.empty() ? 0 : b[0].size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < c[i].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline MonodromyReport monodromy_relation_check(const MonodromyReps& reps) {
    auto square = [&](const std::vector<Vec>& m) {
        return m.size() == reps.dim && std::all_of(m.begin(), m.end(), [&](const Vec& r) { return r.size() == reps.dim; });
    };
    for (const auto& [ij, m] : reps.pair_reps)
        if (!square(m)) throw PreconditionError("monodromy: representation (" + std::to_string(ij.first) + "," +
                                                std::to_string(ij.second) + ") is not " + std::to_string(reps.dim) + "x" +
                                                std::to_string(reps.dim));
    for (const auto& [j, m] : reps.single_reps)
        if (!square(m)) throw PreconditionError("monodromy: representation " + std::to_string(j) + " has the wrong size");
    std::vector<Vec> id(reps.dim, Vec(reps.dim, 0));
    for (std::size_t i = 0; i < reps.dim; ++i) id[i][i] = 1;
    MonodromyReport r;
    for (const auto& [ij, a] : reps.pair_reps) {
        std::string tag = "(" + std::to_string(ij.first) + "," + std::to_string(ij.second) + ")";
        if (ij.first == ij.second) throw PreconditionError("monodromy: pair " + tag + " has equal indices");
        auto it = reps.single_reps.find(ij.second);
        if (it == reps.single_reps.end()) {
            r.holds = false;
            r.failures.push_back(tag + ": no representation for T_" + std::to_string(ij.second));
            continue;
        }
        if (int_matmul(a, it->second) != id) {
            r.holds = false;
            r.failures.push_back(tag + ": composition is not the identity");
        }
    }
    return r;
}

}  // namespace mirrorkit
