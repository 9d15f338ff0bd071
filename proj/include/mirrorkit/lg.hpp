#pragma once

// Givental (hybrid) LG models, compactified fiber equations, and the monomial map of a toric fibration.

#include <map>
#include <string>
#include <vector>

#include "nef.hpp"
#include "partition.hpp"

namespace mirrorkit {

struct LaurentTerm {
    Vec rho;  // lattice point of M; the coefficient is the symbol a_rho
};

struct SymbolicLaurent {
    std::vector<LaurentTerm> terms;  // lex order on rho

    std::vector<Vec> support() const {
        std::vector<Vec> out;
        for (const auto& t : terms) out.push_back(t.rho);
        return out;
    }
};

struct HybridLGModel {
    std::size_t k = 0;  // number of constraints
    std::size_t r = 0;  // rank of the potential
    std::vector<SymbolicLaurent> constraints;
    std::vector<SymbolicLaurent> potentials;
};

inline std::string point_label(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

inline SymbolicLaurent laurent_of(const LatticePolytope& p) {
    SymbolicLaurent s;
    for (const Vec& rho : lattice_points(p)) s.terms.push_back({rho});
    return s;
}

inline HybridLGModel givental_hybrid(const NefPartition& nef, std::size_t k) {
    if (k >= nef.parts.size()) throw PreconditionError("givental_hybrid: need at least one potential");
    HybridLGModel m;
    m.k = k;
    m.r = nef.parts.size() - k;
    for (std::size_t i = 0; i < nef.parts.size(); ++i) {
        auto s = laurent_of(delta_piece(i, nef));
        (i < k ? m.constraints : m.potentials).push_back(s);
    }
    return m;
}

struct HomogeneousTerm {
    std::string coef;       // "a_(p,q)" or "lambda_j"
    int sign = 1;
    std::optional<Vec> rho; // absent for lambda terms
    Vec exps;               // one per ray, in the order of the ray list
};

struct HomogeneousEquation {
    std::vector<HomogeneousTerm> terms;
};

struct NablaData {
    std::vector<LatticePolytope> pieces;  // nabla_1 .. nabla_{k+r}
    std::vector<Vec> rays;                // rays of the refined fan over nabla (boundary lattice points)
};

inline NablaData nabla_data(const NefPartition& nef) {
    NablaData d;
    for (std::size_t i = 0; i < nef.parts.size(); ++i) d.pieces.push_back(nabla(i, nef));
    auto hull = nabla_hull(nef);
    for (const Vec& b : boundary_lattice_points(hull))
        if (is_primitive(b)) d.rays.push_back(b);
    return d;
}

inline Int sigma_min(const Vec& sigma, const std::vector<Vec>& support) {
    Int m = dot(sigma, support.at(0));
    for (const Vec& rho : support) m = std::min(m, dot(sigma, rho));
    return m;
}

inline Vec term_exponents(const Vec& rho, const std::vector<Vec>& rays, const std::vector<Vec>& support) {
    Vec e;
    for (const Vec& s : rays) {
        Int x = dot(s, rho) - sigma_min(s, support);
        if (x < 0) throw StructuralError("compactify: negative exponent at ray " + point_label(s));
        e.push_back(x);
    }
    return e;
}

inline HomogeneousTerm lambda_term(std::size_t j, const LatticePolytope& nab, const std::vector<Vec>& rays) {
    HomogeneousTerm t{"lambda_" + std::to_string(j), 1, std::nullopt, {}};
    for (const Vec& s : rays) t.exps.push_back(nab.contains(s) && !is_zero(s) ? 1 : 0);
    for (const Vec& p : lattice_points(nab))
        if (!is_zero(p) && std::find(rays.begin(), rays.end(), p) == rays.end())
            throw StructuralError("compactify: lattice point " + point_label(p) + " of nabla is not a ray");
    return t;
}

inline std::vector<HomogeneousEquation> compactify_fiber(const HybridLGModel& m, const NablaData& nd) {
    if (nd.pieces.size() != m.k + m.r) throw PreconditionError("compactify_fiber: nabla data does not match the model");
    std::vector<HomogeneousEquation> out;
    for (std::size_t i = 0; i < m.k; ++i) {
        auto sup = m.constraints[i].support();
        HomogeneousEquation eq;
        for (const Vec& rho : sup) eq.terms.push_back({"a_" + point_label(rho), 1, rho, term_exponents(rho, nd.rays, sup)});
        out.push_back(eq);
    }
    for (std::size_t j = 0; j < m.r; ++j) {
        auto sup = m.potentials[j].support();
        HomogeneousEquation eq;
        eq.terms.push_back(lambda_term(j + 1, nd.pieces[m.k + j], nd.rays));
        for (const Vec& rho : sup)
            if (!is_zero(rho)) eq.terms.push_back({"a_" + point_label(rho), -1, rho, term_exponents(rho, nd.rays, sup)});
        out.push_back(eq);
    }
    return out;
}

// Potential side with E_{k+1} split into groups of lattice points that need not be nef.
inline std::vector<HomogeneousEquation> non_nef_split_fiber(const HybridLGModel& m, const NablaData& nd,
                                                            const std::vector<std::vector<Vec>>& groups) {
    if (m.r != 1) throw PreconditionError("non_nef_split_fiber: model must have a single potential");
    auto sup = m.potentials[0].support();
    std::set<Vec> seen;
    for (const auto& g : groups)
        for (const Vec& rho : g) {
            if (is_zero(rho) || std::find(sup.begin(), sup.end(), rho) == sup.end())
                throw PreconditionError("non_nef_split_fiber: " + point_label(rho) + " is not a nonzero point of the last piece");
            if (!seen.insert(rho).second) throw PreconditionError("non_nef_split_fiber: " + point_label(rho) + " in two groups");
        }
    if (seen.size() + 1 != sup.size()) throw PreconditionError("non_nef_split_fiber: groups do not cover the last piece");
    std::vector<HomogeneousEquation> out;
    for (std::size_t j = 0; j < groups.size(); ++j) {
        HomogeneousEquation eq;
        eq.terms.push_back(lambda_term(j + 1, nd.pieces[m.k], nd.rays));
        auto g = groups[j];
        std::sort(g.begin(), g.end());
        for (const Vec& rho : g) eq.terms.push_back({"a_" + point_label(rho), -1, rho, term_exponents(rho, nd.rays, sup)});
        out.push_back(eq);
    }
    return out;
}

// All terms of an equation define the same divisor class: exponent vectors differ by (<sigma, m>)_sigma.
inline bool degree_consistent(const HomogeneousEquation& eq, const std::vector<Vec>& rays) {
    if (eq.terms.empty()) return true;
    const std::size_t n = rays.empty() ? 0 : rays[0].size();
    const Vec& base = eq.terms[0].exps;
    for (const auto& t : eq.terms) {
        Vec d = sub(t.exps, base);
        QMatrix a;
        for (const Vec& s : rays) a.push_back(to_q(s));
        auto m = solve(a, to_q(d), n);
        if (!m || !is_integral(*m)) return false;
    }
    return true;
}

inline std::string equation_text(const HomogeneousEquation& eq, const std::vector<Vec>& rays) {
    std::string s;
    for (std::size_t i = 0; i < eq.terms.size(); ++i) {
        const auto& t = eq.terms[i];
        if (i) s += t.sign < 0 ? " - " : " + ";
        else if (t.sign < 0) s += "-";
        s += t.coef;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (t.exps[r] == 0) continue;
            s += " z_" + point_label(rays[r]);
            if (t.exps[r] > 1) s += "^" + std::to_string(t.exps[r]);
        }
    }
    return s + " = 0";
}

struct MonomialMap {
    std::vector<Vec> rays;         // rays of Sigma'
    std::vector<Vec> components;   // exponent vector over rays, one per v_i
};

inline MonomialMap pi_gamma_monomials(const Fan& sigma_prime, const CentralFrame& fr) {
    MonomialMap mm;
    mm.rays = sigma_prime.rays();
    mm.components.assign(fr.v_quotient.size(), Vec(mm.rays.size(), 0));
    for (std::size_t r = 0; r < mm.rays.size(); ++r) {
        Vec y;
        for (const Vec& q : fr.quotient) y.push_back(dot(q, mm.rays[r]));
        if (is_zero(y)) continue;
        bool placed = false;
        for (std::size_t i = 0; i < fr.v_quotient.size() && !placed; ++i) {
            const Vec& v = fr.v_quotient[i];
            std::size_t piv = 0;
            while (v[piv] == 0) ++piv;
            if (y[piv] % v[piv] != 0) continue;
            Int c = y[piv] / v[piv];
            if (c >= 1 && scale(v, c) == y) {
                mm.components[i][r] = c;
                placed = true;
            }
        }
        if (!placed) throw StructuralError("pi_gamma: ray " + point_label(mm.rays[r]) + " projects outside all v_i");
    }
    return mm;
}

inline std::string monomial_text(const Vec& exps, const std::vector<Vec>& rays) {
    std::string s;
    for (std::size_t r = 0; r < rays.size(); ++r) {
        if (exps[r] == 0) continue;
        if (!s.empty()) s += " ";
        s += "z_" + point_label(rays[r]);
        if (exps[r] > 1) s += "^" + std::to_string(exps[r]);
    }
    return s.empty() ? "1" : s;
}

}  // namespace mirrorkit
