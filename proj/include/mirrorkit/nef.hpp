#pragma once

// Nef partitions of a reflexive polytope and the dual pieces nabla_i.

#include <string>
#include <vector>

#include "fan.hpp"

namespace mirrorkit {

struct NefPartition {
    LatticePolytope host;
    std::vector<std::vector<std::size_t>> parts;  // vertex indices into host.vertices()
    std::vector<PLFunction> phi;                  // certificates on the face fan of host
};

struct NefVerdict {
    bool valid = false;
    std::string witness;
    std::optional<NefPartition> partition;
};

inline NefVerdict validate_nef(const LatticePolytope& host, const std::vector<std::vector<std::size_t>>& parts) {
    if (!is_reflexive(host)) throw PreconditionError("validate_nef: host is not reflexive");
    const std::size_t nv = host.vertices().size();
    std::vector<int> owner(nv, -1);
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t v : parts[i]) {
            if (v >= nv) throw PreconditionError("validate_nef: vertex index " + std::to_string(v) + " out of range");
            if (owner[v] != -1) throw PreconditionError("validate_nef: vertex " + std::to_string(v) + " in two parts");
            owner[v] = static_cast<int>(i);
        }
    for (std::size_t v = 0; v < nv; ++v)
        if (owner[v] == -1) throw PreconditionError("validate_nef: vertex " + std::to_string(v) + " in no part");

    Fan fan = face_fan(host);
    if (!fan.simplicial()) return {false, "face fan has a non-simplicial cone", std::nullopt};
    NefPartition nef{host, parts, {}};
    for (std::size_t i = 0; i < parts.size(); ++i) {
        PLFunction phi{fan, {}};
        for (const Vec& r : fan.rays()) {
            // reflexive: the rays of the face fan are exactly the vertices
            std::size_t v = host.vertex_index(r);
            phi.values.push_back(owner[v] == static_cast<int>(i) ? 1 : 0);
        }
        for (std::size_t c = 0; c < fan.cones().size(); ++c) {
            auto u = phi.linear_piece(c);
            if (!u || !is_integral(*u))
                return {false, "part " + std::to_string(i) + ": no integral linear extension on cone " + std::to_string(c),
                        std::nullopt};
        }
        auto chk = pl_function_checks(phi);
        if (!chk.is_convex) return {false, "part " + std::to_string(i) + ": " + chk.witness, std::nullopt};
        nef.phi.push_back(phi);
    }
    return {true, "", nef};
}

// nabla_i = { u : <u, r> >= -phi_i(r) for every ray r }.
inline LatticePolytope nabla(std::size_t i, const NefPartition& nef) {
    if (i >= nef.phi.size()) throw PreconditionError("nabla: part index out of range");
    const PLFunction& phi = nef.phi[i];
    std::vector<std::pair<Vec, Int>> sys;
    for (std::size_t r = 0; r < phi.fan.rays().size(); ++r) sys.push_back({phi.fan.rays()[r], -phi.values[r]});
    auto vs = vertices_of_inequalities(sys, nef.host.ambient_rank());
    std::vector<Vec> pts;
    for (const QVec& v : vs) {
        if (!is_integral(v)) throw StructuralError("nabla: non-integral vertex");
        pts.push_back(to_int(v));
    }
    if (pts.empty()) throw StructuralError("nabla: empty region");
    LatticePolytope out = convex_hull(pts, flip_tag(nef.host.tag()));
    // boundedness: a region cut by the rays of a complete fan is bounded; recheck via containment in the polar dual
    if (!std::all_of(out.vertices().begin(), out.vertices().end(), [&](const Vec& v) { return polar_dual(nef.host).contains(v); }))
        throw StructuralError("nabla: region leaves the polar dual");
    return out;
}

inline LatticePolytope nabla_hull(const NefPartition& nef) {
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < nef.parts.size(); ++i) {
        auto p = nabla(i, nef);
        pts.insert(pts.end(), p.vertices().begin(), p.vertices().end());
    }
    return convex_hull(pts, flip_tag(nef.host.tag()));
}

inline bool minkowski_check(const NefPartition& nef) {
    LatticePolytope sum = nabla(0, nef);
    for (std::size_t i = 1; i < nef.parts.size(); ++i) sum = minkowski_sum(sum, nabla(i, nef));
    return sum.vertices() == polar_dual(nef.host).vertices();
}

// Delta_i = conv(0, E_i).
inline LatticePolytope delta_piece(std::size_t i, const NefPartition& nef) {
    std::vector<Vec> pts{Vec(nef.host.ambient_rank(), 0)};
    for (std::size_t v : nef.parts.at(i)) pts.push_back(nef.host.vertices()[v]);
    return convex_hull(pts, nef.host.tag());
}

}  // namespace mirrorkit
