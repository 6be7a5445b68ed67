// Acceptance run: one PASS/FAIL line per criterion, with wall time.

#include <gmpxx.h>

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "nfih/asymptotic.hpp"
#include "nfih/complex_library.hpp"
#include "nfih/errors.hpp"
#include "nfih/ih_engine.hpp"
#include "nfih/nf_models.hpp"
#include "nfih/parser.hpp"
#include "nfih/perversity.hpp"
#include "nfih/whitney.hpp"

using namespace nfih;

namespace {

using V = std::vector<long>;
using Vec = std::vector<mpq_class>;
const std::vector<std::string> XY{"x", "y"};

PolyMap M(const std::string& a, const std::string& b) { return PolyMap({parse_poly(a, XY), parse_poly(b, XY)}); }

std::vector<std::string> failures;
void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
}

// ---- dense rational oracle for IH ------------------------------------------

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

std::vector<Vec> nullspace(std::vector<Vec> A, std::size_t n) {
    std::vector<std::size_t> piv;
    const std::size_t r = rref(A, &piv);
    std::set<std::size_t> pset(piv.begin(), piv.end());
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (pset.count(f)) continue;
        Vec x(n, 0);
        x[f] = 1;
        for (std::size_t i = 0; i < r; ++i) x[piv[i]] = -A[i][f];
        basis.push_back(x);
    }
    return basis;
}

// IH from explicit IC bases; allowability read off vertex subsets of simplex labels.
V oracle_ih(const FilteredComplex& K, const std::vector<int>& p) {
    const int m = K.dim();
    std::map<std::string, int> level;
    for (int d = 0; d <= m; ++d)
        for (std::size_t i = 0; i < K.count(d); ++i) level[K.label(d, static_cast<int>(i))] = K.level(d, static_cast<int>(i));
    std::vector<std::vector<bool>> allow(m + 1);
    for (int d = 0; d <= m; ++d)
        for (std::size_t i = 0; i < K.count(d); ++i) {
            std::vector<std::string> verts;
            std::stringstream ss(K.label(d, static_cast<int>(i)));
            for (std::string t; std::getline(ss, t, ',');) verts.push_back(t);
            bool ok = true;
            for (int k = 2; k <= m; ++k) {
                int best = -1;
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
            allow[d].push_back(ok);
        }
    std::vector<std::vector<Vec>> D(m + 1), IC(m + 1);
    for (int d = 1; d <= m; ++d) {
        D[d].assign(K.count(d - 1), Vec(K.count(d), 0));
        for (std::size_t j = 0; j < K.count(d); ++j)
            for (auto [f, c] : K.boundary(d, static_cast<int>(j))) D[d][f][j] += c;
    }
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
                if (!allow[d - 1][r]) cons.push_back(D[d][r]);
        IC[d] = nullspace(cons, n);
    }
    auto image = [&](int d, const std::vector<Vec>& basis) {
        std::vector<Vec> out;
        for (const auto& b : basis) {
            Vec y(K.count(d - 1), 0);
            for (std::size_t i = 0; i < y.size(); ++i)
                for (std::size_t j = 0; j < b.size(); ++j)
                    if (b[j] != 0) y[i] += D[d][i][j] * b[j];
            out.push_back(y);
        }
        return out;
    };
    V betti;
    for (int i = 0; i <= m; ++i) {
        long z = static_cast<long>(IC[i].size());
        if (i > 0 && !IC[i].empty() && K.count(i - 1) > 0) {
            auto im = image(i, IC[i]);
            z -= static_cast<long>(rref(im));
        }
        long b = 0;
        if (i < m && !IC[i + 1].empty()) {
            auto im = image(i + 1, IC[i + 1]);
            b = static_cast<long>(rref(im));
        }
        betti.push_back(z - b);
    }
    return betti;
}

// ---- criteria ---------------------------------------------------------------

bool on_sing(double x, double y) { return std::abs(x) < 1e-12 || std::abs(y + 1) < 1e-12; }

void c1() {
    auto F = M("x", "x^2*y*(y + 2)");
    auto sing = singular_locus(F);
    auto k0 = critical_values(F);
    auto sf = real_jelonek_set(F);
    expect(sing.to_string() == "{x*y + x = 0}", "Sing string " + sing.to_string());
    expect(k0.to_string() == "{alpha^2 + beta = 0}", "K_0 string " + k0.to_string());
    expect(sf.to_string() == "{alpha = 0, beta >= 0}", "S_F string " + sf.to_string());
    // zero sets of x(y+1) and beta + alpha^2 by membership
    std::mt19937_64 g(1);
    std::uniform_real_distribution<double> U(-3, 3);
    for (int t = 0; t < 20; ++t) {
        const double a = U(g), b = U(g);
        std::vector<cd> on1{{0, 0}, {b, 0}}, on2{{a, 0}, {-1, 0}}, off{{a, 0}, {b, 0}};
        expect(sing.contains(on1) && sing.contains(on2), "Sing misses a point of x(y+1) = 0");
        expect(sing.contains(off) == on_sing(a, b), "Sing contains a point off x(y+1) = 0");
        std::vector<cd> k_on{{a, 0}, {-a * a, 0}}, k_off{{a, 0}, {-a * a + 0.5, 0}};
        expect(k0.contains(k_on) && !k0.contains(k_off), "K_0 is not beta = -alpha^2");
    }
}

// Real solutions of a^2 y (y + 2) = b for fixed x = a: two when a^2 + b > 0.
void c2() {
    auto F = M("x", "x^2*y*(y + 2)");
    struct P {
        long a, b;
        std::size_t real;
    };
    for (auto [a, b, expected] : std::vector<P>{{1, 0, 2}, {2, 3, 2}, {-1, 5, 2}, {1, -2, 0}, {-3, -10, 0}, {2, -7, 0}}) {
        std::vector<GaussianRational> t{GaussianRational(a), GaussianRational(b)};
        const bool above = a * a + b > 0;
        expect((above ? 2u : 0u) == expected, "oracle table");
        expect(fiber_count(F, t, FiberMode::Real) == expected,
               "real count at (" + std::to_string(a) + "," + std::to_string(b) + ")");
        expect(fiber_count(F, t, FiberMode::Complex) == 2, "complex count off the discriminant");
    }
    std::vector<GaussianRational> z{GaussianRational(2, 1), GaussianRational(1, -1)};
    expect(fiber_count(F, z, FiberMode::Complex) == 2, "complex count at a non-real point");
}

void c3() {
    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> U(-3, 3);
    for (auto F : {M("x", "x^2*y*(y + 2)"), M("x", "x*y")}) {
        auto S = jelonek_set(F);
        for (int t = 0; t < 20; ++t) {
            const cd b{U(g), U(g)}, a{U(g), U(g)};
            std::vector<cd> on{{0, 0}, b}, off{a, b};
            expect(S.contains(on), "S_F misses a point of alpha = 0");
            expect(!S.contains(off), "S_F contains a point off alpha = 0");
        }
    }
    for (auto F : {M("x", "y + x^2"), M("x + y^3", "y"), M("y", "x + y^2 + y^3")}) {
        auto S = jelonek_set(F);
        expect(S.is_empty(), "automorphism with nonempty S_F");
        for (int t = 0; t < 20; ++t) {
            std::vector<cd> p{{U(g), U(g)}, {U(g), U(g)}};
            expect(!S.contains(p), "automorphism S_F contains a point");
        }
    }
}

void c4() {
    auto P = pinched_torus();
    auto z2 = Perversity::make(PerversityKind::Zero, 2);
    expect(ih_betti(P, z2).betti == V{1, 0, 1}, "pinched torus IH");
    expect(oracle_ih(P, z2.values()) == V{1, 0, 1}, "pinched torus oracle");
    expect(homology(P) == V{1, 1, 1}, "pinched torus H");
    auto S = suspended_torus();
    auto H = homology(S);
    expect(H == V{1, 0, 2, 1}, "suspended torus H");
    expect(!ordinary_duality_check(S).pass, "ordinary duality should fail");
    auto lo = Perversity::make(PerversityKind::LowerMiddle, 3), up = Perversity::make(PerversityKind::UpperMiddle, 3);
    expect(ih_betti(S, lo).betti == oracle_ih(S, lo.values()), "suspended torus lower-middle vs oracle");
    expect(ih_betti(S, up).betti == oracle_ih(S, up.values()), "suspended torus upper-middle vs oracle");
    expect(duality_check(S, lo, up).pass, "suspended torus duality");
}

void c5() {
    auto corpus = duality_corpus();
    expect(corpus.size() >= 5, "corpus too small");
    for (const auto& nc : corpus)
        for (const auto& p : all_perversities(nc.complex.dim()))
            expect(duality_check(nc.complex, p, p.complement()).pass, "duality " + nc.name + " " + p.to_string());
}

void c6() {
    for (const auto& nc : duality_corpus()) {
        const auto& K = nc.complex;
        const int m = K.dim();
        std::vector<std::vector<int>> alt(m + 1);
        for (int d = 0; d <= m; ++d)
            for (std::size_t i = 0; i < K.count(d); ++i) alt[d].push_back(K.level(d, static_cast<int>(i)));
        // one regular vertex becomes a point stratum
        for (std::size_t v = K.count(0); v-- > 0;)
            if (alt[0][v] == m) {
                alt[0][v] = 0;
                break;
            }
        for (const auto& p : all_perversities(m)) {
            auto r = invariance_check(K, p, alt);
            expect(r.pass && r.alternative && *r.alternative == r.original, "invariance " + nc.name + " " + p.to_string());
        }
    }
}

void c7() {
    struct Case {
        std::vector<int> p;
        int i;
        std::vector<int> dims;
        bool expected;
    };
    // dims[k-2] = dim(cell ∩ X_{m-k}), -1 for empty; m = p.size() + 1
    const std::vector<Case> table{
        {{0}, 2, {0}, true},   {{0}, 1, {0}, false},  {{0}, 1, {-1}, true}, {{0}, 0, {0}, false},
        {{0}, 2, {-1}, true},  {{0}, 0, {-1}, true},
        {{0, 0}, 3, {1, 0}, true},   {{0, 0}, 2, {1, 0}, false},   {{0, 0}, 2, {0, -1}, true},
        {{0, 0}, 2, {0, 0}, false},  {{0, 0}, 1, {-1, -1}, true},  {{0, 0}, 1, {0, -1}, false},
        {{0, 1}, 2, {0, 0}, true},   {{0, 1}, 1, {-1, -1}, true},  {{0, 1}, 1, {0, 0}, false},
        {{0, 1}, 3, {1, 1}, true},
        {{0, 1, 2}, 2, {0, 0, 0}, true},    {{0, 1, 2}, 2, {1, 0, 0}, false},  {{0, 1, 2}, 3, {1, 1, -1}, true},
        {{0, 1, 2}, 4, {2, 1, 0}, true},    {{0, 1, 2}, 1, {-1, -1, -1}, true}, {{0, 1, 2}, 1, {0, -1, -1}, false},
        {{0, 1, 2}, 3, {2, 1, 0}, false},
        {{0, 0, 0}, 4, {2, 1, 0}, true},    {{0, 0, 0}, 3, {1, 0, -1}, true},  {{0, 0, 0}, 3, {1, 0, 0}, false},
        {{0, 0, 0}, 2, {0, -1, -1}, true},  {{0, 0, 0}, 2, {0, 0, -1}, false},
        {{0, 1, 1}, 2, {0, 0, -1}, true},   {{0, 1, 1}, 2, {0, 0, 0}, false},
        {{0, 0, 1}, 3, {1, 0, 0}, true},    {{0, 0, 1}, 2, {0, -1, -1}, true},
    };
    expect(table.size() >= 30, "table size");
    for (const auto& c : table) {
        const int m = static_cast<int>(c.p.size()) + 1;
        auto p = Perversity::make(PerversityKind::Custom, m, c.p);
        for (std::size_t k = 0; k + 1 < c.dims.size(); ++k) expect(c.dims[k + 1] <= c.dims[k], "table row not nested");
        std::ostringstream os;
        os << "allowable p=" << p.to_string() << " i=" << c.i;
        expect(allowable(c.dims, p, c.i) == c.expected, os.str());
        // top perversity: allowable exactly when dim(cell ∩ Sing) < i - 1, with dim of the empty set -infinity
        std::vector<int> top(m - 1);
        for (int k = 2; k <= m; ++k) top[k - 2] = k - 2;
        if (c.p == top)
            expect(allowable(c.dims, p, c.i) == (c.dims[0] < 0 || c.dims[0] < c.i - 1), os.str() + " top criterion");
    }
}

void c8() {
    std::mt19937_64 g(8);
    int accepted = 0;
    for (int t = 0; t < 1000; ++t) {
        const int m = 2 + static_cast<int>(g() % 7);
        std::vector<int> v(m - 1);
        if (t % 2) {
            int cur = 0;
            for (auto& x : v) {
                x = cur;
                cur += static_cast<int>(g() % 2);
            }
            if (g() % 4 == 0) v[g() % v.size()] += static_cast<int>(g() % 3) - 1;
        } else {
            for (auto& x : v) x = static_cast<int>(g() % 4) - (g() % 8 == 0 ? 1 : 0);
        }
        bool law = v[0] == 0;
        for (std::size_t k = 0; k + 1 < v.size(); ++k) law = law && (v[k + 1] == v[k] || v[k + 1] == v[k] + 1);
        bool ok = true;
        try {
            Perversity::make(PerversityKind::Custom, m, v);
        } catch (const DomainError&) {
            ok = false;
        }
        expect(ok == law, "perversity law disagreement");
        expect(growth_violation(v).has_value() != law, "growth_violation disagreement");
        accepted += law;
    }
    expect(accepted > 100 && accepted < 900, "degenerate sample");
}

void c9() {
    auto W = worked_example();
    expect(W.model.total_sheets() == 4, "4 sheets");
    expect(W.model.gluing_pairs() == std::vector<std::pair<int, int>>{{1, 2}, {3, 4}}, "gluing pairs 1-2, 3-4");
    std::set<std::string> curves;
    for (const auto& gr : W.model.gluing) curves.insert(gr.curve);
    expect(curves.size() == 3, "gluing along both K_0 branches and S_F");
    auto rep = validate_pseudomanifold(W.complex.complex);
    expect(!rep.pseudomanifold && rep.singular_codim == 1, "codim-1 singular set flagged");
}

void c10() {
    for (auto F : {M("x", "y + x^2"), M("x + y^2", "y"), M("x + y^3", "y")}) {
        auto rep = equivalence_harness(F);
        expect(rep.verdict == Verdict::Proper, "proper verdict");
        expect(rep.h2() == 0, "H_2 = 0");
        for (const auto& r : rep.closed) expect(r.betti[2] == 0, "IH_2 = 0");
        expect(rep.homology == V{1, 0, 0, 0, 0}, "contractible model");
        expect(rep.consistency == Consistency::Consistent, "consistent");
    }
    auto rep = equivalence_harness(M("x", "x*y"));
    for (const auto& r : rep.closed) expect(r.betti[2] != 0, "(x, xy) IH_2 nonzero");
    for (bool w : rep.witness_nonbounding) expect(w, "(x, xy) witness nonbounding");
    expect(rep.consistency == Consistency::Consistent, "(x, xy) consistent");
}

void c11() {
    const std::uint64_t seed = 11;
    auto parabola = make_parametrization({"s"}, {"s", "s^2"});
    auto origin = make_parametrization({}, {"0", "0"});
    auto umbrella = make_parametrization({"u", "v"}, {"u*v", "v", "u^2"});
    auto handle = make_parametrization({"s"}, {"0", "0", "s"});
    auto bad = make_parametrization({"t", "z"}, {"t^2 - z^2", "t*(t^2 - z^2)", "z"});
    auto a = whitney_b_sample_test(parabola, origin, {0}, {}, 8, seed);
    auto b = whitney_b_sample_test(umbrella, handle, {1, 0}, {1}, 8, seed);
    auto c = whitney_b_sample_test(bad, handle, {0, 0}, {0}, 8, seed);
    expect(a.pass, "parabola over its vertex");
    expect(b.pass, "umbrella along its handle");
    expect(!c.pass, "failing pair flagged");
    auto c2 = whitney_b_sample_test(bad, handle, {0, 0}, {0}, 8, seed);
    auto b2 = whitney_b_sample_test(umbrella, handle, {1, 0}, {1}, 8, seed);
    expect(c2.max_distance == c.max_distance && b2.max_distance == b.max_distance, "deterministic under seed");
}

}  // namespace

int main() {
    struct Criterion {
        std::string name;
        std::function<void()> run;
        double limit;  // seconds, 0 for none
    };
    const std::vector<Criterion> criteria{
        {"worked example: Sing(F), K_0(F), real S_F", c1, 5},
        {"fiber counts", c2, 1},
        {"Jelonek sets", c3, 10},
        {"IH engine: pinched torus and suspended torus", c4, 10},
        {"duality on the corpus", c5, 60},
        {"invariance under subdivision and an alternative filtration", c6, 0},
        {"allowability truth table", c7, 0},
        {"perversity growth law on 1000 tuples", c8, 0},
        {"worked example model: sheets, gluing, codim-1 singular set", c9, 0},
        {"equivalence harness", c10, 0},
        {"Whitney (b) sampler", c11, 0},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        failures.clear();
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[k].run();
        } catch (const std::exception& e) {
            failures.push_back(std::string("exception: ") + e.what());
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (criteria[k].limit > 0 && s > criteria[k].limit) failures.push_back("over the time limit");
        const bool ok = failures.empty();
        failed += !ok;
        std::cout << (ok ? "PASS " : "FAIL ") << std::setw(2) << k + 1 << "  " << criteria[k].name << "  ("
                  << std::fixed << std::setprecision(2) << s << " s)\n";
        for (std::size_t i = 0; i < failures.size() && i < 5; ++i) std::cout << "      " << failures[i] << "\n";
    }
    return failed ? 1 : 0;
}
