#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nfih/asymptotic.hpp"
#include "nfih/errors.hpp"
#include "nfih/infinity.hpp"
#include "nfih/parser.hpp"

using namespace nfih;

namespace {

const std::vector<std::string> XY{"x", "y"};

PolyMap M(const std::string& a, const std::string& b) { return PolyMap({parse_poly(a, XY), parse_poly(b, XY)}); }

PolyMap precompose(const PolyMap& F, const std::vector<std::vector<long>>& B) {
    std::vector<std::string> r{"x", "y", "u", "v"};
    MultiPoly nx = MultiPoly::variable(r, "u") * GaussianRational(B[0][0]) + MultiPoly::variable(r, "v") * GaussianRational(B[0][1]);
    MultiPoly ny = MultiPoly::variable(r, "u") * GaussianRational(B[1][0]) + MultiPoly::variable(r, "v") * GaussianRational(B[1][1]);
    std::vector<MultiPoly> out;
    for (const auto& p : F.components()) {
        MultiPoly q = p.with_vars(r).substitute(0, nx).substitute(1, ny);
        q = q.substitute(2, MultiPoly::variable(r, "x")).substitute(3, MultiPoly::variable(r, "y"));
        out.push_back(q.with_vars(XY));
    }
    return PolyMap(out);
}

PolyMap postcompose(const PolyMap& F, const std::vector<std::vector<long>>& A) {
    std::vector<MultiPoly> out;
    for (std::size_t i = 0; i < 2; ++i) out.push_back(F[0] * GaussianRational(A[i][0]) + F[1] * GaussianRational(A[i][1]));
    return PolyMap(out);
}

}  // namespace

TEST_CASE("leading map") {
    CHECK(leading_map(M("x", "x^2*y^2 + 2*x^2*y"))[1] == parse_poly("x^2*y^2", XY));
    CHECK(leading_map(M("x", "y"))[0] == parse_poly("x", XY));
    auto L = leading_map(M("x + y + 1", "x^2"));
    CHECK(L[0] == parse_poly("x + y", XY));
    CHECK(L[1] == parse_poly("x^2", XY));
    CHECK_THROWS_AS(leading_map(M("x", "0")), DomainError);
    // Homogeneity p(s z) = s^d p(z).
    for (const auto& F : {M("x^3 + y - 2", "x*y + 7"), M("x", "x^2*y*(y+2)")}) {
        const PolyMap L = leading_map(F);
        for (const auto& p : L.components()) {
            GaussianRational s(mpq_class(3, 7), mpq_class(-1, 2));
            std::vector<GaussianRational> z{GaussianRational(mpq_class(2, 5)), GaussianRational(-3, 1)};
            std::vector<GaussianRational> sz{s * z[0], s * z[1]};
            CHECK(evaluate(p, sz) == s.pow(static_cast<unsigned>(p.degree())) * evaluate(p, z));
        }
    }
}

TEST_CASE("leading rank") {
    auto r = leading_rank(M("x", "x^2*y*(y+2)"));
    CHECK(r.rank == 2);
    CHECK(r.condition);
    CHECK(leading_rank(M("x", "y")).rank == 2);
    auto s = leading_rank(M("x^2", "x^2 + y"));
    CHECK(s.rank == 1);
    CHECK(s.condition);
    CHECK(s.trials_used == 32);
    std::vector<std::string> xyz{"x", "y", "z"};
    PolyMap G({parse_poly("x^2", xyz), parse_poly("x^2 + y", xyz), parse_poly("x^2 - z", xyz)});
    CHECK(leading_rank(G).rank == 1);
    CHECK_FALSE(leading_rank(G).condition);
}

TEST_CASE("leading rank is invariant under linear changes") {
    std::vector<std::vector<std::vector<long>>> changes{{{1, 2}, {3, 5}}, {{2, -1}, {1, 1}}, {{0, 1}, {1, 3}}};
    for (const auto& F : {M("x", "x^2*y*(y+2)"), M("x^2", "x^2 + y"), M("x", "x*y"), M("x + y^3", "y")}) {
        std::size_t r = leading_rank(F).rank;
        for (const auto& B : changes) CHECK(leading_rank(precompose(F, B)).rank == r);
        // Scalings and swaps keep the degree pattern of the components.
        CHECK(leading_rank(postcompose(F, {{0, 3}, {-2, 0}})).rank == r);
    }
    for (const auto& F : {M("x + y", "x - y"), M("x^2 + y", "x*y - x")}) {
        std::size_t r = leading_rank(F).rank;
        for (const auto& A : changes) CHECK(leading_rank(postcompose(F, A)).rank == r);
    }
    // Replacing components by combinations of themselves never raises the rank.
    PolyMap F = M("x^2 + y", "x*y - x");
    CHECK(leading_rank(PolyMap({F[0], F[0] * GaussianRational(3)})).rank <= leading_rank(F).rank);
}

TEST_CASE("leading zero locus") {
    auto V = leading_zero_locus(M("x", "x^2*y*(y+2)"));
    for (const auto& g : V.generators()) CHECK(g.is_homogeneous());
    std::vector<cd> on{0, cd(0.3, 2)}, off{1, 0};
    CHECK(V.contains(on));
    CHECK_FALSE(V.contains(off));
    auto I = leading_zero_locus(M("x+y", "x-y"));
    std::vector<cd> origin{0, 0};
    CHECK(I.contains(origin));
    CHECK_FALSE(I.contains(on));
}

TEST_CASE("dimension bound on V") {
    auto e = dim_bound_check(M("x", "x^2*y*(y+2)"));
    CHECK(e.pass);
    CHECK(e.sphere_dim == 1);
    CHECK(e.complex_dim == 1);
    CHECK(e.corank == 0);
    auto id = dim_bound_check(M("x", "y"));
    CHECK(id.pass);
    CHECK(id.sphere_dim == -1);
    auto d = dim_bound_check(M("x", "x"));
    CHECK(d.pass);
    CHECK(d.rank.rank == 1);
    CHECK(d.sphere_dim == 1);
}

TEST_CASE("tangent cone at infinity") {
    WitnessArc diag({{{cd(1), -1}}, {{cd(1), -1}}});
    auto d = tangent_cone_at_infinity({diag});
    REQUIRE(d.directions.size() == 1);
    CHECK(std::abs(d.directions[0][0] - 1 / std::sqrt(2.0)) < 1e-6);
    CHECK(std::abs(d.directions[0][2] - 1 / std::sqrt(2.0)) < 1e-6);
    WitnessArc steep({{{cd(1), -2}}, {{cd(1), -1}}});
    auto s = tangent_cone_at_infinity({steep, steep, diag});
    CHECK(s.directions.size() == 2);
    CHECK(std::abs(s.directions[0][0] - 1) < 1e-6);
    CHECK(std::abs(s.directions[0][2]) < 1e-6);
    CHECK_THROWS_AS(tangent_cone_at_infinity({}), DomainError);
}

TEST_CASE("directions of bounded-image arcs lie in V") {
    PolyMap E = M("x", "x^2*y*(y+2)");
    std::vector<WitnessArc> arcs;
    for (double b : {1.0, 4.0, -3.0}) {
        std::vector<cd> t{0, cd(b, 0.5)};
        auto a = witness_arc_search(E, t);
        REQUIRE(a);
        arcs.push_back(*a);
    }
    auto d = tangent_cone_at_infinity(arcs);
    CHECK_FALSE(d.directions.empty());
    CHECK(d.flagged.empty());
    CHECK(leading_forms_on_directions(E, d) <= 1e-6);
    for (const auto& v : d.directions) CHECK(std::abs(v[0]) + std::abs(v[1]) < 1e-6);
}
