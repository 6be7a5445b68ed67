#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nfih/asymptotic.hpp"
#include "nfih/errors.hpp"
#include "nfih/parser.hpp"

using namespace nfih;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> AB{"alpha", "beta"};

PolyMap M(const std::string& a, const std::string& b) { return PolyMap({parse_poly(a, XY), parse_poly(b, XY)}); }
MultiPoly T(const std::string& s) { return parse_poly(s, AB); }

PolyMap swapped(const PolyMap& F) {
    std::vector<MultiPoly> out;
    MultiPoly X = MultiPoly::variable(XY, "x"), Y = MultiPoly::variable(XY, "y");
    for (const auto& p : F.components()) {
        // p(y, x) via a temporary ring.
        std::vector<std::string> r{"x", "y", "s"};
        MultiPoly q = p.with_vars(r).substitute(0, MultiPoly::variable(r, "s"));
        q = q.substitute(1, MultiPoly::variable(r, "x")).substitute(2, MultiPoly::variable(r, "y"));
        out.push_back(q.with_vars(XY));
    }
    return PolyMap(out);
}

// Points on the zero set of g, parametrized by the first coordinate (or the
// second when g does not involve beta).
std::vector<std::vector<cd>> points_on(const MultiPoly& g, int count) {
    std::vector<std::vector<cd>> pts;
    for (int k = 0; k < count; ++k) {
        cd s(0.3 * k - 1.1, 0.17 * k + 0.2);
        std::vector<cd> pt(2);
        std::size_t w = g.depends_on(1) ? 1 : 0;
        pt[1 - w] = s;
        auto roots = polynomial_roots(specialize(g, w, pt));
        if (roots.empty()) continue;
        pt[w] = roots.front();
        pts.push_back(pt);
    }
    return pts;
}

std::vector<std::vector<cd>> points_of(const AlgebraicSet& s) {
    std::vector<std::vector<cd>> out;
    for (const auto& c : s.live_components()) {
        if (c.generators.size() == 1)
            for (auto& p : points_on(c.generators[0], 10)) out.push_back(p);
        else
            for (auto& p : solve_two(c.generators[0], c.generators[1])) out.push_back(p);
    }
    return out;
}

// Mutual sampling membership between a computed set and a single expected curve.
void check_same_curve(const AlgebraicSet& got, const MultiPoly& expected) {
    for (const auto& pt : points_on(expected, 20)) CHECK(got.contains(pt));
    for (const auto& g : got.generators())
        for (const auto& pt : points_on(g, 20)) CHECK(relative_residual(expected, pt) < 1e-8);
}

}  // namespace

TEST_CASE("singular locus") {
    CHECK(singular_locus(M("x", "x^2*y*(y+2)")).generators().front() == parse_poly("x*y + x", XY));
    CHECK(singular_locus(M("x", "y + x^2")).is_empty());
    CHECK(singular_locus(M("x^2", "y")).generators().front() == parse_poly("x", XY));
}

TEST_CASE("critical values") {
    auto K = critical_values(M("x", "x^2*y*(y+2)"));
    REQUIRE(K.live_components().size() == 1);
    check_same_curve(K, T("beta + alpha^2"));
    CHECK(critical_values(M("x", "y + x^2")).is_empty());
    check_same_curve(critical_values(M("x^2", "y")), T("alpha"));
    // A contracted line gives an isolated critical value.
    auto P = critical_values(M("x", "x*y"));
    std::vector<cd> origin{0, 0}, off{0, 1};
    CHECK(P.contains(origin));
    CHECK_FALSE(P.contains(off));
    CHECK_THROWS_AS(critical_values(M("x", "x")), AnalysisError);
    CHECK_THROWS_AS(critical_values(PolyMap({parse_poly("x", {"x"})})), DomainError);
}

TEST_CASE("Jelonek set") {
    for (const auto& F : {M("x", "x^2*y*(y+2)"), M("x", "x*y")}) {
        auto r = jelonek_analysis(F);
        check_same_curve(r.set, T("alpha"));
        // Each confirmed component carries a witness that reaches its point.
        REQUIRE(r.witnesses.size() == r.set.live_components().size());
        for (std::size_t k = 0; k < r.witnesses.size(); ++k) {
            CHECK(r.witnesses[k].escapes());
            CHECK(r.set.contains(r.witness_targets[k]));
            auto err = arc_image_errors(F, r.witnesses[k], r.witness_targets[k]);
            CHECK(err.back() < 1e-4);
        }
        // Dimension contract: confirmed generators are nonconstant.
        for (const auto& g : r.set.generators()) CHECK_FALSE(g.is_constant());
    }
    for (const auto& F : {M("x", "y + x^2"), M("x + y^3", "y"), M("y", "x + y^2 + y^3")}) CHECK(jelonek_set(F).is_empty());
    CHECK_THROWS_AS(jelonek_set(M("x+y", "(x+y)^2")), AnalysisError);
}

TEST_CASE("outputs do not depend on the order of the source variables") {
    for (const auto& F : {M("x", "x^2*y*(y+2)"), M("x", "x*y"), M("x^2", "y")}) {
        PolyMap G = swapped(F);
        auto k1 = critical_values(F), k2 = critical_values(G);
        auto s1 = jelonek_set(F), s2 = jelonek_set(G);
        for (const auto& [a, b] : {std::pair{&k1, &k2}, std::pair{&s1, &s2}}) {
            for (const auto& pt : points_of(*a)) CHECK(b->contains(pt));
            for (const auto& pt : points_of(*b)) CHECK(a->contains(pt));
        }
    }
}

TEST_CASE("real Jelonek set of the built-in family") {
    auto S = real_jelonek_set(M("x", "x^2*y*(y+2)"));
    CHECK(S.flavor() == SetFlavor::RealSemialgebraic);
    CHECK(S.to_string() == "{alpha = 0, beta >= 0}");
    std::vector<GaussianRational> in{0, 3}, out{0, -3};
    CHECK(S.contains_exact(in));
    CHECK_FALSE(S.contains_exact(out));
    CHECK_THROWS_AS(real_jelonek_set(M("x", "x*y")), DomainError);
    CHECK(recognize_real_family(M("x", "x^4*(y^2 - 3*y + 1)")));
    CHECK_FALSE(recognize_real_family(M("x", "x^3*(y^2 + 1)")));
}

TEST_CASE("fiber counts") {
    PolyMap E = M("x", "x^2*y*(y+2)");
    std::vector<GaussianRational> above{1, 1}, below{1, -2};
    CHECK(fiber_count(E, above, FiberMode::Real) == 2);
    CHECK(fiber_count(E, below, FiberMode::Real) == 0);
    CHECK(fiber_count(E, below, FiberMode::Complex) == 2);
    std::vector<GaussianRational> on{1, -1};
    CHECK_THROWS_AS(fiber_count(E, on, FiberMode::Real), DomainError);
    std::vector<GaussianRational> cplx{1, GaussianRational::i()};
    CHECK_THROWS_AS(fiber_count(E, cplx, FiberMode::Real), DomainError);
    // Constant on sampled points of each region.
    for (int k = 1; k <= 10; ++k) {
        mpq_class a(k * ((k % 2) ? 1 : -1), 3);
        mpq_class aa = a * a;
        std::vector<GaussianRational> up{a, mpq_class(mpq_class(k, 7) - aa)}, down{a, mpq_class(-aa - mpq_class(k, 5))};
        CHECK(fiber_count(E, up, FiberMode::Real) == 2);
        CHECK(fiber_count(E, down, FiberMode::Real) == 0);
        CHECK(fiber_count(E, down, FiberMode::Complex) == 2);
    }
    std::vector<GaussianRational> t{2, 3};
    CHECK(fiber_count(M("x^2", "y"), t, FiberMode::Complex) == 2);
    CHECK(fiber_count(M("x", "x*y"), t, FiberMode::Complex) == 1);
}

TEST_CASE("numeric fiber solve") {
    std::vector<cd> t{cd(1, 0), cd(1, 0)};
    auto s = solve_fiber(M("x", "x^2*y*(y+2)"), t);
    REQUIRE(s.points.size() == 2);
    for (const auto& p : s.points) {
        CHECK(std::abs(p[0] - 1.0) < 1e-9);
        CHECK(std::abs(p[1] * (p[1] + 2.0) - 1.0) < 1e-9);
    }
    std::vector<cd> origin{0, 0};
    CHECK(solve_fiber(M("x", "x*y"), origin).positive_dimensional);
}

TEST_CASE("witness arcs") {
    std::vector<cd> t{0, 1};
    auto a = witness_arc_search(M("x", "x*y"), t);
    REQUIRE(a);
    CHECK(a->exponents() == std::vector<int>{1, -1});
    for (double s : {1e-2, 1e-4}) {
        auto z = a->eval(s);
        CHECK(std::abs(z[0] * z[1] - 1.0) < 1e-6);
    }
    CHECK_FALSE(witness_arc_search(M("x", "y + x^2"), std::vector<cd>{1, 2}));
    CHECK_FALSE(witness_arc_search(M("x", "y + x^2"), std::nullopt));
    std::vector<cd> t4{0, 4};
    auto b = witness_arc_search(M("x", "x^2*y*(y+2)"), t4);
    REQUIRE(b);
    auto err = arc_image_errors(M("x", "x^2*y*(y+2)"), *b, t4);
    CHECK(err[0] > err[1]);
    CHECK(err[1] > err[2]);
    // Same seed, same arc.
    auto b2 = witness_arc_search(M("x", "x^2*y*(y+2)"), t4);
    CHECK(b->to_string(XY) == b2->to_string(XY));
}

TEST_CASE("arc text round-trip") {
    WitnessArc a({{{cd(1, 0), 1}}, {{cd(-0.5, 2), 0}, {cd(1, 0), -1}}});
    std::string s = a.to_string(XY);
    CHECK(s == "x: (1+0i)*t^1\ny: (-0.5+2i)*t^0 + (1+0i)*t^-1\n");
    CHECK(parse_arc(s, XY).to_string(XY) == s);
    CHECK_THROWS_AS(parse_arc("x: 1*t\n", XY), ParseError);
}

TEST_CASE("properness") {
    auto p = properness_test(M("x", "y + x^2"));
    CHECK(p.verdict == Verdict::Proper);
    REQUIRE(p.jelonek);
    CHECK(p.jelonek->is_empty());
    auto q = properness_test(M("x", "x*y"));
    CHECK(q.verdict == Verdict::NonProper);
    REQUIRE(q.jelonek);
    check_same_curve(*q.jelonek, T("alpha"));
    CHECK(q.witness);
    CHECK(properness_test(M("x", "x^2*y*(y+2)")).verdict == Verdict::NonProper);
    // Three variables: witness search only.
    std::vector<std::string> xyz{"x", "y", "z"};
    PolyMap G({parse_poly("x", xyz), parse_poly("x*y", xyz), parse_poly("z", xyz)});
    CHECK(properness_test(G).verdict == Verdict::NonProper);
    PolyMap H({parse_poly("x", xyz), parse_poly("y", xyz), parse_poly("z + x^2", xyz)});
    CHECK(properness_test(H).verdict == Verdict::Unknown);
}
