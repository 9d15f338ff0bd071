#include <filesystem>
#include <fstream>
#include <numeric>

#include <gtest/gtest.h>

#include "support/generators.hpp"

using namespace mirrorkit;
using mktest::corpus;

namespace {

StrataEuler euler(int components, Side side, std::map<IndexSet, Int> entries, int n = 1) {
    StrataEuler d;
    d.n = n;
    d.components = components;
    d.side = side;
    d.entries = std::move(entries);
    return d;
}

StrataEuler elliptic_degeneration() { return euler(2, Side::degeneration, {{{0}, 2}, {{1}, 2}, {{0, 1}, 2}}); }
StrataEuler elliptic_hybrid() { return euler(2, Side::hybrid, {{{0}, 0}, {{1}, 0}, {{0, 1}, 2}}); }

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "mirrorkit-tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

// Hybrid data is produced first; the degeneration side is then forced by the per-stratum identity.
StrataEuler degeneration_from(const StrataEuler& hyb) {
    StrataEuler d = hyb;
    d.side = Side::degeneration;
    for (auto& [i, e] : d.entries) e = sign_pow(static_cast<std::size_t>(hyb.n + 1) + i.size()) * euler_relative(hyb, i);
    return d;
}

}  // namespace

// ------------------------------------------------------------------ Euler calculus

TEST(EulerCalculus, CentralFiber) {
    EXPECT_EQ(euler_snc(elliptic_degeneration()), 2);
    EXPECT_EQ(euler_snc(euler(1, Side::degeneration, {{{0}, 7}})), 7);
    mktest::Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto d = mktest::random_strata_euler(rng, 3, Side::degeneration);
        EXPECT_EQ(euler_snc(d), mktest::brute_snc(d));
    }
}

TEST(EulerCalculus, Smoothing) {
    EXPECT_EQ(euler_smoothing(elliptic_degeneration()), 0);
    // two lines meeting once smooth to a conic
    EXPECT_EQ(euler_smoothing(euler(2, Side::degeneration, {{{0}, 2}, {{1}, 2}, {{0, 1}, 1}})), 2);
    EXPECT_THROW(euler_smoothing(euler(1, Side::degeneration, {{{0}, 2}})), PreconditionError);
    mktest::Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        auto d = mktest::random_strata_euler(rng, 2 + trial % 3, Side::degeneration);
        EXPECT_EQ(euler_smoothing(d), mktest::brute_smoothing(d));
    }
}

TEST(EulerCalculus, MissingEntries) {
    auto d = euler(2, Side::degeneration, {{{0}, 2}, {{1}, 2}});
    EXPECT_THROW(euler_snc(d), PreconditionError);
    d.empty.insert({0, 1});
    EXPECT_EQ(euler_snc(d), 4);
    EXPECT_THROW(euler_snc(euler(2, Side::degeneration, {{{0, 2}, 1}})), PreconditionError);
}

TEST(EulerCalculus, GenericFiber) {
    EXPECT_EQ(euler_generic_fiber(elliptic_hybrid(), {0}).value, 2);
    auto deepest = euler_generic_fiber(elliptic_hybrid(), {0, 1});
    EXPECT_TRUE(deepest.rank0);
    EXPECT_EQ(deepest.value, 0);
    mktest::Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        auto d = mktest::random_strata_euler(rng, 3, Side::hybrid);
        for (unsigned mask = 1; mask < 7; ++mask) {
            IndexSet i;
            for (int c = 0; c < 3; ++c)
                if (mask >> c & 1u) i.push_back(c);
            EXPECT_EQ(euler_generic_fiber(d, i).value, mktest::cover_generic_fiber(d, mask));
        }
    }
}

TEST(EulerCalculus, RelativeAndGlued) {
    auto h = elliptic_hybrid();
    EXPECT_EQ(euler_relative(h, {0}), -2);
    EXPECT_EQ(euler_relative(h, {1}), -2);
    EXPECT_EQ(euler_relative(h, {0, 1}), 2);
    EXPECT_EQ(euler_tilde_total(h), -2);
    EXPECT_EQ(euler_glued_total(h), 0);
    mktest::Rng rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        auto d = mktest::random_strata_euler(rng, 2 + trial % 3, Side::hybrid);
        EXPECT_EQ(euler_tilde_total(d), euler_tilde_resummed(d));
        EXPECT_EQ(euler_glued_total(d), euler_glued_resummed(d));
        IndexSet all(static_cast<std::size_t>(d.components));
        std::iota(all.begin(), all.end(), 0);
        EXPECT_EQ(euler_relative(d, all), d.value(all));
    }
}

TEST(EulerCalculus, TopologicalMirrorOnEllipticPair) {
    auto deg = io::read_strata_euler(corpus("elliptic-degeneration-euler.json"));
    auto hyb = io::read_strata_euler(corpus("elliptic-hybrid-euler.json"));
    auto r = check_topological_mirror(deg, hyb);
    EXPECT_EQ(r.e_x, 0);
    EXPECT_EQ(r.e_xc, 2);
    EXPECT_EQ(r.e_y, 0);
    EXPECT_EQ(r.e_ytilde, -2);
    EXPECT_TRUE(r.total_holds);
    EXPECT_TRUE(r.tilde_holds);
    EXPECT_FALSE(r.tilde_statement_holds);
    EXPECT_TRUE(r.ok());
    ASSERT_EQ(r.strata.size(), 3u);
    EXPECT_EQ(r.strata[0].i, (IndexSet{0}));
    EXPECT_EQ(r.strata[0].lhs, 2);
    EXPECT_EQ(r.strata[0].rhs, 2);
}

TEST(EulerCalculus, CorruptedHybridNamesStratum) {
    auto deg = io::read_strata_euler(corpus("elliptic-degeneration-euler.json"));
    auto bad = io::read_strata_euler(corpus("elliptic-hybrid-euler-corrupted.json"));
    auto r = check_topological_mirror(deg, bad);
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.failing, (std::vector<IndexSet>{{1}}));
    EXPECT_THROW(check_topological_mirror(bad, deg), PreconditionError);
}

// With the per-stratum identity imposed, both global identities follow.
TEST(EulerCalculus, StratumIdentitiesImplyTotals) {
    mktest::Rng rng(15);
    for (int trial = 0; trial < 200; ++trial) {
        auto hyb = mktest::random_strata_euler(rng, 2 + trial % 3, Side::hybrid, 1 + trial % 3);
        auto r = check_topological_mirror(degeneration_from(hyb), hyb);
        EXPECT_TRUE(r.failing.empty());
        EXPECT_TRUE(r.total_holds) << "trial " << trial;
        EXPECT_TRUE(r.tilde_holds) << "trial " << trial;
    }
}

TEST(EulerCalculus, ChartIntersections) {
    auto c = chart_intersections(2);
    ASSERT_EQ(c.size(), 7u);
    std::map<std::pair<int, int>, int> kinds;
    for (const auto& x : c) {
        EXPECT_EQ(x.torus_rank + x.disk_rank + 1, 3);
        ++kinds[{x.torus_rank, x.disk_rank}];
    }
    EXPECT_EQ(kinds, (std::map<std::pair<int, int>, int>{{{0, 2}, 3}, {{1, 1}, 3}, {{2, 0}, 1}}));
}

TEST(EulerCalculus, MonodromyRelation) {
    std::vector<Vec> id{{1, 0}, {0, 1}}, a{{1, 1}, {0, 1}}, a_inv{{1, -1}, {0, 1}};
    MonodromyReps reps{2, {{{0, 1}, id}}, {{1, id}}};
    EXPECT_TRUE(monodromy_relation_check(reps).holds);
    mktest::Rng rng(16);
    for (int trial = 0; trial < 20; ++trial) {
        auto u = mktest::random_unimodular(rng, 3, 8);
        auto inv = inverse(to_q(u));
        std::vector<Vec> ui;
        for (const QVec& r : *inv) ui.push_back(to_int(r));
        EXPECT_TRUE(monodromy_relation_check({3, {{{0, 1}, u}}, {{1, ui}}}).holds);
    }
    EXPECT_FALSE(monodromy_relation_check({2, {{{0, 1}, a}}, {{1, a}}}).holds);
    EXPECT_TRUE(monodromy_relation_check({2, {{{0, 1}, a}}, {{1, a_inv}}}).holds);
    EXPECT_THROW(monodromy_relation_check({3, {{{0, 1}, a}}, {{1, a_inv}}}), PreconditionError);
    EXPECT_TRUE(monodromy_relation_check(io::read_monodromy(corpus("monodromy-inverse.json"))).holds);
    EXPECT_FALSE(monodromy_relation_check(io::read_monodromy(corpus("monodromy-broken.json"))).holds);
}

// ------------------------------------------------------------------ spectral pages

TEST(SpectralPages, WeightPageOfNodalCurve) {
    auto deg = io::read_strata_complex(corpus("elliptic-degeneration.json"));
    auto w = build_weight_E1(deg);
    EXPECT_TRUE(w.d_squared_zero);
    EXPECT_EQ(w.e2, (std::map<PageKey, int>{{{0, 0}, 1}, {{1, 0}, 1}, {{0, 2}, 2}}));
    auto ab = check_abutment(w, deg);
    EXPECT_TRUE(ab.supplied);
    EXPECT_TRUE(ab.ok);
    EXPECT_TRUE(ab.euler_ok);
    EXPECT_TRUE(d2_candidates(w).empty());
}

TEST(SpectralPages, MonodromyPageOfSmoothing) {
    auto deg = io::read_strata_complex(corpus("elliptic-degeneration.json"));
    auto m = build_monodromy_E1(deg);
    EXPECT_TRUE(m.d_squared_zero);
    EXPECT_EQ(m.e2, (std::map<PageKey, int>{{{-1, 2}, 1}, {{0, 0}, 1}, {{0, 2}, 1}, {{1, 0}, 1}}));
    EXPECT_TRUE(check_abutment(m, deg).ok);
    // Betti numbers of the elliptic curve
    EXPECT_EQ(m.totals_e2(), (std::map<int, int>{{0, 1}, {1, 2}, {2, 1}}));
}

TEST(SpectralPages, SmoothFiberIsPure) {
    StrataComplexData d;
    d.n = 1;
    d.components = 1;
    d.strata.push_back({{0}, {{0, 1}, {1, 2}, {2, 1}}, {}, {}});
    auto w = build_weight_E1(d);
    auto m = build_monodromy_E1(d);
    for (const auto* page : {&w, &m}) {
        EXPECT_EQ(page->e2, (std::map<PageKey, int>{{{0, 0}, 1}, {{0, 1}, 2}, {{0, 2}, 1}}));
        EXPECT_TRUE(page->d_squared_zero);
    }
}

TEST(SpectralPages, ZeroMapsKeepE1) {
    auto s = mktest::AlphaSpec{1, 1, {0, 0}, {{0, 0}}};
    auto deg = mktest::alpha_degeneration(s);
    for (auto& m : deg.maps)
        for (auto& r : m.matrix)
            for (auto& x : r) x = 0;
    auto hyb = mktest::hybrid_mirror(deg);
    for (const auto& page : {build_G_flag_E1(hyb), build_G_dual_E1(hyb), build_delta_E1(hyb)})
        for (const auto& [k, t] : page.terms) EXPECT_EQ(page.e2_dim(k.first, k.second), t.dim()) << page.name;
}

TEST(SpectralPages, FlagPagesOfEllipticMirror) {
    auto hyb = io::read_strata_complex(corpus("elliptic-hybrid.json"));
    auto g = build_G_flag_E1(hyb);
    auto gd = build_G_dual_E1(hyb);
    auto dl = build_delta_E1(hyb);
    for (const auto* p : {&g, &gd, &dl}) EXPECT_TRUE(p->d_squared_zero) << p->name;
    EXPECT_EQ(g.e2, (std::map<PageKey, int>{{{-1, 1}, 1}, {{0, 1}, 3}}));
    EXPECT_EQ(gd.e2, (std::map<PageKey, int>{{{0, 1}, 3}, {{1, 1}, 1}}));
    EXPECT_EQ(dl.e2, (std::map<PageKey, int>{{{-1, 1}, 1}, {{0, 1}, 2}, {{1, 1}, 1}}));
    // Euler characteristic of the G page is e(Y~) from the Euler documents
    auto he = io::read_strata_euler(corpus("elliptic-hybrid-euler.json"));
    EXPECT_EQ(mktest::alternating(g.totals_e1()), euler_tilde_total(he));
    // delta page totals are the Betti numbers of the elliptic curve
    std::map<int, int> by_q;
    for (const auto& [k, v] : dl.e2) by_q[k.first + 1] += v;
    EXPECT_EQ(by_q, (std::map<int, int>{{0, 1}, {1, 2}, {2, 1}}));
    EXPECT_TRUE(check_abutment(dl, hyb).ok);
}

TEST(SpectralPages, DeltaTwistIsNeeded) {
    auto hyb = mktest::hybrid_mirror(mktest::alpha_degeneration({2, 2, {1, 2, -3}, {{0, 0}}}));
    EXPECT_TRUE(build_delta_E1(hyb).d_squared_zero);
    auto untwisted = build_delta_E1(hyb, false);
    EXPECT_FALSE(untwisted.d_squared_zero);
    EXPECT_NE(untwisted.witness.find("d1^2 != 0"), std::string::npos);
}

TEST(SpectralPages, MissingMapIsReported) {
    auto deg = io::read_strata_complex(corpus("elliptic-degeneration.json"));
    deg.maps.erase(deg.maps.begin());
    EXPECT_THROW(build_weight_E1(deg), PreconditionError);
}

TEST(SpectralPages, GysinDefaultsToPairingTranspose) {
    auto deg = io::read_strata_complex(corpus("elliptic-degeneration.json"));
    std::erase_if(deg.maps, [](const StrataMap& m) { return m.kind == MapKind::gysin; });
    auto m = build_monodromy_E1(deg);
    EXPECT_NE(std::find(m.flags.begin(), m.flags.end(), "pairing-default"), m.flags.end());
    EXPECT_TRUE(m.d_squared_zero);
}

// ------------------------------------------------------------------ duality and mirror checks

TEST(MirrorChecks, PoincareDuality) {
    auto hyb = io::read_strata_complex(corpus("elliptic-hybrid.json"));
    auto r = check_poincare_duality(hyb);
    EXPECT_TRUE(r.ok());
    EXPECT_TRUE(r.pairing_checked);
    EXPECT_EQ(r.level_sign.at(1), "+");

    StrataComplexData bad;
    bad.n = 1;
    bad.components = 1;
    bad.strata.push_back({{0}, {{0, 0}, {1, 2}, {2, 1}}, {}, {}});
    auto rb = check_poincare_duality(bad);
    EXPECT_FALSE(rb.dims_ok);
    ASSERT_FALSE(rb.failures.empty());
    EXPECT_NE(rb.failures.front().find("H^0"), std::string::npos);

    auto flipped = hyb;
    for (auto& m : flipped.maps)
        if (m.kind == MapKind::rho_dual && m.from == IndexSet{0}) m.matrix = scaled(m.matrix, -1);
    EXPECT_FALSE(check_poincare_duality(flipped).maps_ok);
}

TEST(MirrorChecks, PWTablesOnEllipticPair) {
    auto deg = io::read_strata_complex(corpus("elliptic-degeneration.json"));
    auto hyb = io::read_strata_complex(corpus("elliptic-hybrid.json"));
    auto s = check_mirror_pw_smoothing(deg, hyb);
    EXPECT_TRUE(s.ok());
    EXPECT_FALSE(s.total_dimension_mode);
    std::vector<std::tuple<int, int, int, int>> rows;
    for (const auto& r : s.rows) rows.emplace_back(r.a, r.l, r.lhs, r.rhs);
    EXPECT_EQ(rows, (std::vector<std::tuple<int, int, int, int>>{{0, -1, 1, 1}, {0, 0, 2, 2}, {0, 1, 1, 1}}));

    auto c = check_mirror_pw_central(deg, hyb);
    EXPECT_TRUE(c.ok());
    rows.clear();
    for (const auto& r : c.rows) rows.emplace_back(r.a, r.l, r.lhs, r.rhs);
    EXPECT_EQ(rows, (std::vector<std::tuple<int, int, int, int>>{{0, 0, 3, 3}, {0, 1, 1, 1}}));
}

TEST(MirrorChecks, PWWithoutHodgeLabels) {
    auto deg = io::read_strata_complex(corpus("elliptic-degeneration.json"));
    for (auto& s : deg.strata) s.hodge.clear();
    auto hyb = io::read_strata_complex(corpus("elliptic-hybrid.json"));
    auto s = check_mirror_pw_smoothing(deg, hyb);
    EXPECT_TRUE(s.total_dimension_mode);
    EXPECT_TRUE(s.ok());
}

TEST(MirrorChecks, PWMismatchNamesRows) {
    auto deg = mktest::alpha_degeneration({1, 1, {1, -1}, {{0, 0}}});
    auto other = mktest::hybrid_mirror(mktest::alpha_degeneration({1, 1, {1, -1}, {{0, 0}, {0, 0}}}));
    auto r = check_mirror_pw_smoothing(deg, other);
    EXPECT_FALSE(r.ok());
    EXPECT_TRUE(std::any_of(r.rows.begin(), r.rows.end(), [](const PWRow& x) { return !x.holds(); }));
}

TEST(MirrorChecks, Cubical) {
    auto deg = io::read_strata_complex(corpus("elliptic-degeneration.json"));
    auto hyb = io::read_strata_complex(corpus("elliptic-hybrid.json"));
    auto b = cubical_from_degeneration(deg, 0);
    auto a = cubical_from_hybrid(hyb, 0);
    EXPECT_EQ(b.dims, (std::map<IndexSet, int>{{{0}, 2}, {{1}, 2}, {{0, 1}, 2}}));
    EXPECT_EQ(a.dims, b.dims);
    EXPECT_TRUE(check_cubical_mirror(b, a).ok);
    EXPECT_TRUE(check_cubical_mirror(CubicalData{}, CubicalData{}).ok);

    auto broken = a;
    broken.maps[{{0, 1}, {0}}] = QMatrix{{1, 0}, {0, 1}};
    auto r = check_cubical_mirror(b, broken);
    EXPECT_FALSE(r.ok);
    ASSERT_FALSE(r.failures.empty());
    EXPECT_NE(r.failures.front().find("{0,1}"), std::string::npos);
}

// ------------------------------------------------------------------ documents

TEST(Documents, StrataEulerRoundTrip) {
    mktest::Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        auto d = mktest::random_strata_euler(rng, 3, trial % 2 ? Side::hybrid : Side::degeneration);
        auto p = scratch("euler.json");
        write(p, io::to_json(d).dump());
        auto back = io::read_strata_euler(p);
        EXPECT_EQ(back.entries, d.entries);
        EXPECT_EQ(back.side, d.side);
        EXPECT_EQ(back.n, d.n);
    }
}

TEST(Documents, StrataComplexRoundTrip) {
    mktest::Rng rng(18);
    auto deg = mktest::gauge(mktest::alpha_degeneration(mktest::random_alpha_spec(rng)), rng);
    Q* entry = nullptr;
    for (auto& m : deg.maps)
        for (auto& r : m.matrix)
            for (auto& x : r)
                if (!entry && x != 0) entry = &x;
    ASSERT_NE(entry, nullptr);
    *entry /= 3;
    const Q expected = *entry;
    deg.abutment["weight"] = {{0, 1}};
    auto p = scratch("complex.json");
    write(p, io::to_json(deg).dump());
    auto back = io::read_strata_complex(p);
    EXPECT_EQ(io::to_json(back), io::to_json(deg));
    bool found = false;
    for (const auto& m : back.maps)
        for (const auto& r : m.matrix)
            for (const auto& x : r) found = found || x == expected;
    EXPECT_TRUE(found);

    auto hyb = io::read_strata_complex(corpus("elliptic-hybrid.json"));
    write(p, io::to_json(hyb).dump());
    EXPECT_EQ(io::to_json(io::read_strata_complex(p)), io::to_json(hyb));
}

TEST(Documents, PolytopeRoundTrip) {
    auto sq = io::read_polytope(corpus("square.json"));
    auto p = scratch("poly.json");
    write(p, io::to_json(polar_dual(sq)).dump());
    auto back = io::read_polytope(p);
    EXPECT_EQ(back, polar_dual(sq));
    EXPECT_EQ(back.tag(), "N");
}

TEST(Documents, ParseErrors) {
    EXPECT_THROW(io::read_polytope(corpus("malformed.json")), ParseError);
    auto p = scratch("bad-complex.json");
    write(p, R"({"n": 1, "strata": [{"I": [0], "dims": {"0": 1}}, {"I": [0, 1], "dims": {"0": 1}}],
                 "maps": [{"from": [0], "to": [0, 1], "kind": "restrict", "degree": 0, "matrix": [[1, 2]]}]})");
    EXPECT_THROW(io::read_strata_complex(p), ParseError);
    write(p, R"({"n": 1, "components": 2, "side": "sideways", "entries": []})");
    EXPECT_THROW(io::read_strata_euler(p), ParseError);
    write(p, R"({"n": 1, "strata": [{"I": [0], "dims": {"0": 1}}], "maps": [{"from": [0], "to": [0], "kind": "twist", "matrix": []}]})");
    EXPECT_THROW(io::read_strata_complex(p), ParseError);
}
