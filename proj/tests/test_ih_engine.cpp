#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <random>
#include <set>
#include <sstream>

#include "nfih/complex_library.hpp"
#include "nfih/errors.hpp"
#include "nfih/ih_engine.hpp"

using namespace nfih;

namespace {

using Vec = std::vector<mpq_class>;
using V = std::vector<long>;

// Dense row reduction; returns rank and leaves `rows` in reduced echelon form.
std::size_t rref(std::vector<Vec>& rows, std::vector<std::size_t>* pivots = nullptr) {
    if (rows.empty()) return 0;
    const std::size_t n = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        mpq_class inv = 1 / rows[r][c];
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t q = 0; q < rows.size(); ++q) {
            if (q == r || rows[q][c] == 0) continue;
            mpq_class f = rows[q][c];
            for (std::size_t k = 0; k < n; ++k) rows[q][k] -= f * rows[r][k];
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return r;
}

std::size_t dense_rank(std::vector<Vec> rows) { return rref(rows); }

// Basis of {x : A x = 0}, A given by rows over n unknowns.
std::vector<Vec> nullspace(std::vector<Vec> A, std::size_t n) {
    std::vector<std::size_t> piv;
    std::size_t r = rref(A, &piv);
    std::vector<Vec> basis;
    std::set<std::size_t> pset(piv.begin(), piv.end());
    for (std::size_t f = 0; f < n; ++f) {
        if (pset.count(f)) continue;
        Vec x(n, 0);
        x[f] = 1;
        for (std::size_t i = 0; i < r; ++i) x[piv[i]] = -A[i][f];
        basis.push_back(x);
    }
    return basis;
}

// Dense ∂_d as a (#(d-1)-cells) x (#d-cells) matrix.
std::vector<Vec> dense_boundary(const FilteredComplex& K, int d) {
    std::vector<Vec> M(K.count(d - 1), Vec(K.count(d), 0));
    for (std::size_t j = 0; j < K.count(d); ++j)
        for (auto [f, c] : K.boundary(d, static_cast<int>(j))) M[f][j] += c;
    return M;
}

Vec mat_vec(const std::vector<Vec>& M, const Vec& x) {
    Vec y(M.size(), 0);
    for (std::size_t i = 0; i < M.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            if (x[j] != 0) y[i] += M[i][j] * x[j];
    return y;
}

// Allowability read off vertex labels of a simplicial complex: dim(σ ∩ X_j) = max |τ|-1 over vertex subsets τ at level <= j.
std::vector<std::vector<bool>> oracle_allowable(const FilteredComplex& K, const std::vector<int>& p) {
    const int m = K.dim();
    std::map<std::string, int> level;
    for (int d = 0; d <= m; ++d)
        for (std::size_t i = 0; i < K.count(d); ++i) level[K.label(d, static_cast<int>(i))] = K.level(d, static_cast<int>(i));
    std::vector<std::vector<bool>> out(m + 1);
    for (int d = 0; d <= m; ++d)
        for (std::size_t i = 0; i < K.count(d); ++i) {
            std::vector<std::string> verts;
            std::stringstream ss(K.label(d, static_cast<int>(i)));
            for (std::string t; std::getline(ss, t, ',');) verts.push_back(t);
            bool ok = true;
            for (int k = 2; k <= m; ++k) {
                int best = -100;
                for (unsigned mask = 1; mask < (1u << verts.size()); ++mask) {
                    std::string lab;
                    int sz = 0;
                    for (std::size_t b = 0; b < verts.size(); ++b)
                        if (mask & (1u << b)) {
                            lab += (lab.empty() ? "" : ",") + verts[b];
                            ++sz;
                        }
                    if (level.at(lab) <= m - k) best = std::max(best, sz - 1);
                }
                if (best >= 0 && best > d - k + p[k - 2]) ok = false;
            }
            out[d].push_back(ok);
        }
    return out;
}

// Explicit IC bases and homology; relative when `rel` is set.
V oracle_ih(const FilteredComplex& K, const std::vector<int>& p, bool rel = false) {
    const int m = K.dim();
    auto allow = oracle_allowable(K, p);
    std::vector<std::vector<Vec>> IC(m + 2), ICB(m + 2);
    std::vector<std::vector<Vec>> Dm(m + 2);
    for (int d = 1; d <= m; ++d) Dm[d] = dense_boundary(K, d);
    for (int d = 0; d <= m; ++d) {
        const std::size_t n = K.count(d);
        std::vector<Vec> cons;
        for (std::size_t j = 0; j < n; ++j)
            if (!allow[d][j]) {
                Vec e(n, 0);
                e[j] = 1;
                cons.push_back(e);
            }
        if (d >= 1)
            for (std::size_t r = 0; r < K.count(d - 1); ++r)
                if (!allow[d - 1][r]) cons.push_back(Dm[d][r]);
        IC[d] = nullspace(cons, n);
        if (rel) {
            for (std::size_t j = 0; j < n; ++j)
                if (!K.on_boundary(d, static_cast<int>(j))) {
                    Vec e(n, 0);
                    e[j] = 1;
                    cons.push_back(e);
                }
            ICB[d] = nullspace(cons, n);
        }
    }
    V betti;
    for (int i = 0; i <= m; ++i) {
        // cycles: ξ ∈ IC_i with ∂ξ ∈ C(B) (rel) or ∂ξ = 0
        std::vector<Vec> imgs;
        for (const auto& b : IC[i]) {
            Vec y = i ? mat_vec(Dm[i], b) : Vec{};
            if (rel)
                for (std::size_t r = 0; r < y.size(); ++r)
                    if (K.on_boundary(i - 1, static_cast<int>(r))) y[r] = 0;
            imgs.push_back(y);
        }
        long z = static_cast<long>(IC[i].size());
        if (i > 0 && !imgs.empty() && !imgs[0].empty()) z -= static_cast<long>(dense_rank(imgs));
        std::vector<Vec> bnd;
        if (i < m)
            for (const auto& b : IC[i + 1]) bnd.push_back(mat_vec(Dm[i + 1], b));
        if (rel)
            for (const auto& b : ICB[i]) bnd.push_back(b);
        long bdim = bnd.empty() ? 0 : static_cast<long>(dense_rank(bnd));
        betti.push_back(z - bdim);
    }
    return betti;
}

FilteredComplex rp2() {
    return simplicial_complex(2, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                  {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}});
}

}  // namespace

TEST_CASE("exact rank matches a dense oracle") {
    std::mt19937_64 g(7);
    for (int trial = 0; trial < 60; ++trial) {
        const int rows = 1 + static_cast<int>(g() % 12), cols = 1 + static_cast<int>(g() % 12);
        const bool big = trial % 3 == 0;
        std::vector<SparseColumn> sparse(cols);
        std::vector<Vec> dense(rows, Vec(cols, 0));
        for (int c = 0; c < cols; ++c)
            for (int r = 0; r < rows; ++r) {
                if (g() % 3) continue;
                long v = big ? static_cast<long>(g() % 2000000000) - 1000000000 : static_cast<long>(g() % 5) - 2;
                if (!v) continue;
                sparse[c].emplace_back(r, v);
                dense[r][c] = v;
            }
        // low-rank structure: duplicate a scaled column sometimes
        if (cols > 2 && trial % 2) {
            sparse[1] = sparse[0];
            for (auto& e : sparse[1]) e.second *= 3;
            for (int r = 0; r < rows; ++r) dense[r][1] = dense[r][0] * 3;
        }
        CHECK(exact_rank(sparse) == dense_rank(dense));
    }
}

TEST_CASE("complex construction and checks") {
    for (const auto& nc : duality_corpus()) {
        CAPTURE(nc.name);
        CHECK_NOTHROW(nc.complex.validate());
    }
    FilteredComplex bad(2);
    bad.add_cell(0, {}, 0);
    bad.add_cell(0, {}, 0);
    bad.add_cell(1, {{0, -1}, {1, 1}}, 1);
    bad.add_cell(1, {{0, -1}, {1, 1}}, 1);
    bad.add_cell(2, {{0, 1}, {1, 1}}, 2);
    CHECK_THROWS_AS(bad.validate(), ComplexError);
    CHECK_THROWS_AS(bad.add_cell(1, {{5, 1}}, 1), ComplexError);
    FilteredComplex low(1);
    low.add_cell(0, {}, 1);
    low.add_cell(0, {}, 1);
    low.add_cell(1, {{0, -1}, {1, 1}}, 0);
    CHECK_THROWS_AS(low.validate(), ComplexError);  // dimension above level
    FilteredComplex open(1);
    open.add_cell(0, {}, 1);
    open.add_cell(0, {}, 1);
    open.add_cell(1, {{0, -1}, {1, 1}}, 1, "", true);
    CHECK_THROWS_AS(open.validate(), ComplexError);  // boundary subcomplex not closed
    auto sd = barycentric_subdivision(torus());
    CHECK_NOTHROW(sd.validate());
    CHECK(sd.euler_characteristic() == 0);
    CHECK(sd.count(2) == 14 * 6);
}

TEST_CASE("ordinary homology") {
    CHECK(homology(sphere(2)) == V{1, 0, 1});
    CHECK(homology(torus()) == V{1, 2, 1});
    CHECK(homology(pinched_torus()) == V{1, 1, 1});
    CHECK(homology(suspended_torus()) == V{1, 0, 2, 1});
    CHECK(homology(sphere(3)) == V{1, 0, 0, 1});
    CHECK(homology(circle_join_torus()) == V{1, 0, 0, 2, 1});
    CHECK(homology(rp2()) == V{1, 0, 0});
    CHECK(homology(disk()) == V{1, 0, 0});
    CHECK(relative_homology(disk()) == V{0, 0, 1});
    CHECK_THROWS_AS(relative_homology(torus()), DomainError);
    for (const auto& nc : duality_corpus()) {
        auto h = homology(nc.complex);
        long chi = 0;
        for (std::size_t i = 0; i < h.size(); ++i) chi += (i % 2 ? -1 : 1) * h[i];
        CHECK(chi == nc.complex.euler_characteristic());
    }
}

TEST_CASE("allowability") {
    auto z4 = Perversity::make(PerversityKind::Zero, 4);
    CHECK(allowable({0, -1, -1}, z4, 2));  // meets X_2 in a point: 0 <= 2 - 2 + 0
    CHECK_FALSE(allowable({1, -1, -1}, z4, 2));
    auto t3 = Perversity::make(PerversityKind::Max, 3);
    CHECK_FALSE(allowable({-1, 0}, t3, 1));  // dim(Y ∩ Sing) = i - 1
    CHECK(allowable({-1, -1, -1}, z4, 0));
    CHECK_THROWS_AS(allowable({0}, z4, 1), DomainError);
}

TEST_CASE("intersection homology against the explicit-basis oracle") {
    for (const auto& nc : duality_corpus()) {
        CAPTURE(nc.name);
        const int m = nc.complex.dim();
        for (const auto& p : all_perversities(m)) {
            CAPTURE(p.to_string());
            auto r = ih_betti(nc.complex, p);
            CHECK(r.betti == oracle_ih(nc.complex, p.values()));
            for (int i = 0; i <= m; ++i) CHECK(r.betti[i] <= r.chain_dims[i]);
        }
    }
    auto z2 = Perversity::make(PerversityKind::Zero, 2);
    CHECK(ih_betti(pinched_torus(), z2).betti == V{1, 0, 1});
    CHECK(ih_betti(sphere(2), z2).betti == V{1, 0, 1});
    CHECK(ih_betti(suspended_torus(), Perversity::make(PerversityKind::Zero, 3)).betti == V{1, 2, 0, 1});
    CHECK(ih_betti(suspended_torus(), Perversity::make(PerversityKind::Max, 3)).betti == V{1, 0, 2, 1});
    auto rel = ih_betti(disk(), z2, IHVariant::Relative);
    CHECK(rel.betti == V{0, 0, 1});
    CHECK(rel.betti == oracle_ih(disk(), {0}, true));
    CHECK_THROWS_AS(ih_betti(torus(), z2, IHVariant::Relative), DomainError);
    CHECK_THROWS_AS(ih_betti(torus(), Perversity::make(PerversityKind::Zero, 3)), DomainError);
}

TEST_CASE("chain dimensions grow with the perversity; no singular strata means IH = H") {
    for (const auto& nc : duality_corpus()) {
        const int m = nc.complex.dim();
        auto ps = all_perversities(m);
        for (const auto& p : ps)
            for (const auto& q : ps)
                if (p.below(q)) {
                    auto a = intersection_chain_complex(nc.complex, p).dims;
                    auto b = intersection_chain_complex(nc.complex, q).dims;
                    for (int i = 0; i <= m; ++i) CHECK(a[i] <= b[i]);
                }
    }
    for (auto K : {sphere(2), torus(), sphere(3)})
        for (const auto& p : all_perversities(K.dim())) {
            CHECK(ih_betti(K, p).betti == homology(K));
            auto ic = intersection_chain_complex(K, p);
            for (int d = 0; d <= K.dim(); ++d) CHECK(ic.dims[d] == static_cast<long>(K.count(d)));
        }
}

TEST_CASE("pseudomanifold validation") {
    auto s = validate_pseudomanifold(sphere(2));
    CHECK(s.pseudomanifold);
    CHECK(s.singular_cells.empty());
    auto pt = validate_pseudomanifold(pinched_torus());
    CHECK(pt.pseudomanifold);
    REQUIRE(pt.singular_cells.size() == 1);
    CHECK(pt.singular_cells[0].dim == 0);
    CHECK(pt.singular_codim == 2);
    auto st = validate_pseudomanifold(suspended_torus());
    CHECK(st.pseudomanifold);
    CHECK(st.singular_cells.size() == 2);
    CHECK(st.singular_codim == 3);
    auto cj = validate_pseudomanifold(circle_join_torus());
    CHECK(cj.pseudomanifold);
    CHECK(cj.singular_codim == 3);
    // three triangles on a common edge
    auto book = simplicial_complex(2, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}}, vertex_stratum(2, {0, 1}, 1));
    auto b = validate_pseudomanifold(book);
    CHECK_FALSE(b.pseudomanifold);
    CHECK(b.singular_codim == 1);
    // an edge dangling off a triangle is not dense
    auto dangling = simplicial_complex(2, {{0, 1, 2}, {2, 3}});
    CHECK_FALSE(validate_pseudomanifold(dangling).dense);
}

TEST_CASE("orientation and duality") {
    CHECK(orientation(torus()).has_value());
    CHECK_FALSE(orientation(rp2()).has_value());
    CHECK(orientation(disk()).has_value());
    for (const auto& nc : duality_corpus()) {
        CAPTURE(nc.name);
        for (const auto& p : all_perversities(nc.complex.dim())) {
            auto rep = duality_check(nc.complex, p, p.complement());
            CHECK(rep.pass);
        }
    }
    auto z2 = Perversity::make(PerversityKind::Zero, 2);
    CHECK(duality_check(disk(), z2, z2).pass);
    CHECK_THROWS_AS(duality_check(rp2(), z2, z2), DomainError);
    CHECK_THROWS_AS(duality_check(suspended_torus(), Perversity::make(PerversityKind::Zero, 3),
                                  Perversity::make(PerversityKind::Zero, 3)),
                    DomainError);
    auto ord = ordinary_duality_check(suspended_torus());
    CHECK_FALSE(ord.pass);
    CHECK(ord.left == V{1, 0, 2, 1});
    CHECK(ordinary_duality_check(torus()).pass);
}

TEST_CASE("invariance under subdivision and a fake stratum") {
    auto z2 = Perversity::make(PerversityKind::Zero, 2);
    auto K = sphere(2);
    std::vector<std::vector<int>> alt(3);
    for (int d = 0; d <= 2; ++d) alt[d].assign(K.count(d), 2);
    alt[0][0] = 0;
    auto rep = invariance_check(K, z2, alt);
    CHECK(rep.pass);
    CHECK(*rep.alternative == V{1, 0, 1});
    CHECK(invariance_check(pinched_torus(), z2).pass);
    CHECK(invariance_check(disk(), z2, std::nullopt, IHVariant::Relative).pass);
    // an edge at level 0 violates dim <= level
    alt[1][0] = 0;
    CHECK_THROWS_AS(invariance_check(K, z2, alt), ComplexError);
}
