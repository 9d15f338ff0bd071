// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include <chrono>
#include <iostream>

#include "mirrorkit/lg.hpp"
#include "support/properties.hpp"

using namespace mirrorkit;
using mktest::corpus;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3fs", s);
    return buf;
}

std::set<Vec> support(const Vec& exps, const std::vector<Vec>& rays) {
    std::set<Vec> s;
    for (std::size_t r = 0; r < rays.size(); ++r)
        if (exps[r] != 0) s.insert(rays[r]);
    return s;
}

Outcome square_pipeline() {
    auto t0 = Clock::now();
    auto g = io::read_partition(corpus("square-vsplit.json"));
    if (!validate_semistable(g).valid) return {false, "vertical split rejected"};
    auto k = dual_complex(g);
    if (k.vertex_count != 2 || k.dimension() != 1) return {false, "dual complex is not a 1-simplex"};
    auto fr = central_frame(g);
    auto fans = build_fibration_fans(g, fr);
    const std::size_t a = fans.sigma_delta.rays().size(), b = fans.sigma_prime.rays().size(), c = fans.sigma_v.rays().size();
    if (a != 4 || b != 8 || c != 2)
        return {false, "ray counts " + std::to_string(a) + "/" + std::to_string(b) + "/" + std::to_string(c)};
    auto mm = pi_gamma_monomials(fans.sigma_prime, fr);
    std::set<std::set<Vec>> got;
    for (const Vec& e : mm.components) {
        if (std::any_of(e.begin(), e.end(), [](Int x) { return x > 1; })) return {false, "repeated ray in a monomial"};
        got.insert(support(e, mm.rays));
    }
    const std::set<std::set<Vec>> want{{{-1, 1}, {-1, 0}, {-1, -1}}, {{1, 1}, {1, 0}, {1, -1}}};
    if (mm.components.size() != 2 || got != want) return {false, "pi_Gamma monomials differ"};
    std::string text;
    for (const Vec& e : mm.components) text += (text.empty() ? "" : " : ") + monomial_text(e, mm.rays);
    double s = since(t0);
    return {s < 1.0, "K = 1-simplex, rays 4/8/2, pi = [" + text + "], " + fmt_seconds(s)};
}

std::map<Vec, Int> by_ray(const HomogeneousTerm& t, const std::vector<Vec>& rays) {
    std::map<Vec, Int> out;
    for (std::size_t r = 0; r < rays.size(); ++r)
        if (t.exps[r]) out[rays[r]] = t.exps[r];
    return out;
}

Outcome givental_compactification() {
    auto t0 = Clock::now();
    auto doc = io::read_nef(corpus("diamond-nef.json"));
    auto v = validate_nef(doc.host, doc.parts);
    if (!v.valid) return {false, "diamond nef partition rejected: " + v.witness};
    auto nd = nabla_data(*v.partition);
    auto eqs = compactify_fiber(givental_hybrid(*v.partition, 1), nd);
    if (eqs.size() != 2) return {false, std::to_string(eqs.size()) + " equations"};
    using Terms = std::map<std::pair<std::string, int>, std::map<Vec, Int>>;
    const Terms first{
        {{"a_(0,0)", 1}, {{{0, 1}, 1}, {{-1, 1}, 1}, {{-1, 0}, 1}, {{-1, -1}, 1}, {{0, -1}, 1}}},
        {{"a_(1,0)", 1}, {{{0, 1}, 1}, {{0, -1}, 1}, {{1, 0}, 1}}},
        {{"a_(0,1)", 1}, {{{0, 1}, 2}, {{-1, 1}, 2}, {{-1, 0}, 1}}},
        {{"a_(0,-1)", 1}, {{{0, -1}, 2}, {{-1, -1}, 2}, {{-1, 0}, 1}}},
    };
    const Terms second{
        {{"lambda_1", 1}, {{{1, 0}, 1}}},
        {{"a_(-1,0)", -1}, {{{-1, 1}, 1}, {{-1, 0}, 1}, {{-1, -1}, 1}}},
    };
    for (std::size_t e = 0; e < 2; ++e) {
        Terms got;
        for (const auto& t : eqs[e].terms) got[{t.coef, t.sign}] = by_ray(t, nd.rays);
        if (eqs[e].terms.size() != (e ? second : first).size() || got != (e ? second : first))
            return {false, "equation " + std::to_string(e + 1) + " differs: " + equation_text(eqs[e], nd.rays)};
    }
    double s = since(t0);
    return {s < 1.0, "both equations match term by term, " + fmt_seconds(s)};
}

Outcome euler_mirror() {
    auto t0 = Clock::now();
    auto r = check_topological_mirror(io::read_strata_euler(corpus("elliptic-degeneration-euler.json")),
                                      io::read_strata_euler(corpus("elliptic-hybrid-euler.json")));
    bool values = r.e_x == 0 && r.e_xc == 2 && r.e_y == 0 && r.e_ytilde == -2;
    std::string d = "e(X)=" + std::to_string(r.e_x) + " e(X_c)=" + std::to_string(r.e_xc) + " e(Y)=" + std::to_string(r.e_y) +
                    " e(Y~)=" + std::to_string(r.e_ytilde) + ", " + std::to_string(r.strata.size() - r.failing.size()) + "/" +
                    std::to_string(r.strata.size()) + " strata";
    double s = since(t0);
    return {values && r.ok() && s < 1.0, d + ", " + fmt_seconds(s)};
}

Outcome spectral_dimensions() {
    auto t0 = Clock::now();
    auto deg = io::read_strata_complex(corpus("elliptic-degeneration.json"));
    auto w = build_weight_E1(deg);
    auto m = build_monodromy_E1(deg);
    const std::map<PageKey, int> w_want{{{0, 0}, 1}, {{1, 0}, 1}, {{0, 2}, 2}};
    const std::map<PageKey, int> m_want{{{-1, 2}, 1}, {{0, 0}, 1}, {{0, 2}, 1}, {{1, 0}, 1}};
    bool ok = w.d_squared_zero && m.d_squared_zero && w.e2 == w_want && m.e2 == m_want && check_abutment(w, deg).ok &&
              check_abutment(m, deg).ok;
    double s = since(t0);
    return {ok && s < 1.0, std::string(ok ? "weight and monodromy E2 match" : "graded dimensions differ") + ", " + fmt_seconds(s)};
}

std::string table(const PWReport& r) {
    std::string t;
    for (const auto& row : r.rows)
        t += "(" + std::to_string(row.a) + "," + std::to_string(row.l) + "):" + std::to_string(row.lhs) + "=" + std::to_string(row.rhs) + " ";
    return t;
}

Outcome mirror_pw() {
    auto deg = io::read_strata_complex(corpus("elliptic-degeneration.json"));
    auto hyb = io::read_strata_complex(corpus("elliptic-hybrid.json"));
    auto sm = check_mirror_pw_smoothing(deg, hyb);
    auto cf = check_mirror_pw_central(deg, hyb);
    auto rows = [](const PWReport& r) {
        std::vector<std::tuple<int, int, int, int>> out;
        for (const auto& x : r.rows) out.emplace_back(x.a, x.l, x.lhs, x.rhs);
        return out;
    };
    const std::vector<std::tuple<int, int, int, int>> sm_want{{0, -1, 1, 1}, {0, 0, 2, 2}, {0, 1, 1, 1}};
    const std::vector<std::tuple<int, int, int, int>> cf_want{{0, 0, 3, 3}, {0, 1, 1, 1}};
    bool ok = sm.ok() && cf.ok() && rows(sm) == sm_want && rows(cf) == cf_want && !sm.total_dimension_mode;
    return {ok, "smoothing " + table(sm) + "| central " + table(cf)};
}

Outcome property_suites() {
    auto t0 = Clock::now();
    bool ok = true;
    for (const auto& r : mktest::all_suites()) {
        ok = ok && r.ok() && r.cases >= 1000;
        std::cout << "    " << r.name << ": " << r.cases - r.failures << "/" << r.cases << " in " << fmt_seconds(r.seconds)
                  << (r.witness.empty() ? "" : "  first failure " + r.witness) << "\n";
    }
    double s = since(t0);
    return {ok && s < 60.0, "7 suites, " + fmt_seconds(s)};
}

Outcome negative_tests() {
    std::string d;
    auto diag = validate_semistable(io::read_partition(corpus("square-diag.json")));
    bool a = !diag.valid && std::any_of(diag.violations.begin(), diag.violations.end(),
                                        [](const ClauseViolation& v) { return v.clause == "vertex-uniqueness"; });
    d += std::string("diagonal split ") + (a ? "rejected by vertex-uniqueness" : "NOT rejected");

    auto r = check_topological_mirror(io::read_strata_euler(corpus("elliptic-degeneration-euler.json")),
                                      io::read_strata_euler(corpus("elliptic-hybrid-euler-corrupted.json")));
    bool b = !r.ok() && r.failing == std::vector<IndexSet>{{1}};
    d += std::string("; corrupted Euler ") + (b ? "fails at {1}" : "not pinned to {1}");

    auto hyb = mktest::hybrid_mirror(mktest::alpha_degeneration({2, 2, {1, 2, -3}, {{0, 0}}}));
    bool c = build_delta_E1(hyb).d_squared_zero && !build_delta_E1(hyb, false).d_squared_zero;
    d += std::string("; untwisted delta ") + (c ? "breaks d^2" : "keeps d^2");
    return {a && b && c, d};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, Outcome (*)()>> criteria{
        {"square pipeline", square_pipeline},
        {"compactified fiber equations", givental_compactification},
        {"Euler mirror on the elliptic pair", euler_mirror},
        {"weight and monodromy dimensions", spectral_dimensions},
        {"P=W in both modes", mirror_pw},
        {"property suites", property_suites},
        {"negative tests", negative_tests},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail << std::endl;
    }
    return failures;
}
