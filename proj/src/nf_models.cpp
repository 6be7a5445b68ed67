#include "nfih/nf_models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <functional>
#include <sstream>

#include "nfih/complex_library.hpp"
#include "nfih/errors.hpp"
#include "nfih/numeric.hpp"

namespace nfih {

std::string to_string(ModelKind k) {
    switch (k) {
        case ModelKind::RealFamily: return "real-family";
        case ModelKind::ComplexTriangular: return "complex-triangular";
        case ModelKind::ComplexAutomorphism: return "complex-automorphism";
    }
    return "?";
}

std::string to_string(Consistency c) {
    switch (c) {
        case Consistency::Consistent: return "consistent";
        case Consistency::Inconsistent: return "inconsistent";
        case Consistency::NoVerdict: return "no verdict";
    }
    return "?";
}

std::size_t NFModel::total_sheets() const {
    std::size_t n = 0;
    for (const auto& r : regions) n += r.sheets;
    return n;
}

std::vector<std::pair<int, int>> NFModel::gluing_pairs() const {
    std::map<int, std::set<std::size_t>> seen;  // sheet -> segments it borders
    for (std::size_t s = 0; s < gluing.size(); ++s)
        for (const auto& g : gluing[s].groups)
            for (int id : g) seen[id].insert(s);
    std::vector<std::pair<int, int>> out;
    for (auto a = seen.begin(); a != seen.end(); ++a)
        for (auto b = std::next(a); b != seen.end(); ++b) {
            if (a->second != b->second || a->second.empty()) continue;
            bool all = true;
            for (std::size_t s : a->second) {
                bool together = false;
                for (const auto& g : gluing[s].groups)
                    if (std::count(g.begin(), g.end(), a->first) && std::count(g.begin(), g.end(), b->first))
                        together = true;
                all = all && together;
            }
            if (all) out.emplace_back(a->first, b->first);
        }
    return out;
}

namespace {

struct Triangular {
    MultiPoly g, h;
};

std::optional<Triangular> recognize_triangular(const PolyMap& F) {
    if (F.n() != 2) return std::nullopt;
    const auto& vars = F.vars();
    if (F[0] != MultiPoly::variable(vars, vars[0])) return std::nullopt;
    if (F[1].degree_in(1) != 1) return std::nullopt;
    Triangular t{F[1].coeff_in(1, 1), F[1].coeff_in(1, 0)};
    if (t.g.is_constant()) return std::nullopt;
    return t;
}

bool satisfies(const std::vector<SignCondition>& signs, const std::vector<cd>& a) {
    for (const auto& s : signs) {
        const double v = s.poly.eval_complex(a).real();
        if (s.relation == SignRelation::Gt && !(v > 1e-12)) return false;
        if (s.relation == SignRelation::Ge && !(v >= 0)) return false;
        if (s.relation == SignRelation::Eq && std::abs(v) > 1e-12) return false;
    }
    return true;
}

std::vector<std::vector<GaussianRational>> sample_region(const std::vector<SignCondition>& signs, Rng& rng,
                                                         std::size_t count) {
    std::vector<std::vector<GaussianRational>> out;
    for (int tries = 0; tries < 4000 && out.size() < count; ++tries) {
        mpq_class a = rng.rational(27, 9), b = rng.rational(27, 9);
        std::vector<cd> z{cd(a.get_d(), 0), cd(b.get_d(), 0)};
        if (satisfies(signs, z)) out.push_back({GaussianRational(a), GaussianRational(b)});
    }
    if (out.size() < count) throw DomainError("degenerate region: no interior sample points found");
    return out;
}

std::vector<cd> to_cd(const std::vector<GaussianRational>& a) {
    std::vector<cd> z;
    for (const auto& v : a) z.emplace_back(v.re().get_d(), v.im().get_d());
    return z;
}

// Newton path continuation of one fiber point from target a0 to b.
struct Tracked {
    std::vector<cd> z;
    bool escaped = false;
};

Tracked track(const PolyMap& F, std::vector<cd> z, const std::vector<cd>& a0, const std::vector<cd>& b) {
    std::vector<MultiPoly> D;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) D.push_back(derivative(F[i], j));
    std::vector<double> steps;
    for (int k = 1; k <= 99; ++k) steps.push_back(k * 1e-2);
    for (int k = 3; k <= 6; ++k) steps.push_back(1 - std::pow(10.0, -k));
    double s_prev = 0;
    for (double s : steps) {
        // halve the step when the corrector fails
        double s_try = s;
        for (int attempt = 0; attempt < 30; ++attempt) {
            std::vector<cd> a{a0[0] + s_try * (b[0] - a0[0]), a0[1] + s_try * (b[1] - a0[1])};
            std::vector<cd> w = z;
            bool ok = false;
            for (int it = 0; it < 200; ++it) {
                cd r0 = F[0].eval_complex(w) - a[0], r1 = F[1].eval_complex(w) - a[1];
                cd j00 = D[0].eval_complex(w), j01 = D[1].eval_complex(w), j10 = D[2].eval_complex(w),
                   j11 = D[3].eval_complex(w);
                cd det = j00 * j11 - j01 * j10;
                if (std::abs(det) == 0) break;
                cd dx = (j11 * r0 - j01 * r1) / det, dy = (-j10 * r0 + j00 * r1) / det;
                w[0] -= dx;
                w[1] -= dy;
                const double scale = 1 + std::abs(w[0]) + std::abs(w[1]);
                if (std::abs(dx) + std::abs(dy) < 1e-6 * scale) {
                    ok = true;
                    break;
                }
            }
            if (ok) {
                z = w;
                s_prev = s_try;
                if (s_try == s) break;
                s_try = s;  // retry the full step from the intermediate point
                continue;
            }
            s_try = 0.5 * (s_prev + s_try);
        }
    }
    Tracked t{z, false};
    t.escaped = std::abs(z[0]) + std::abs(z[1]) > 1e3;
    return t;
}

std::vector<std::vector<cd>> sorted_fiber(const PolyMap& F, const std::vector<cd>& a, bool real) {
    auto sol = solve_fiber(F, a);
    if (sol.positive_dimensional) throw AnalysisError("fiber is positive dimensional near a gluing curve");
    std::vector<std::vector<cd>> pts;
    for (auto& p : sol.points) {
        if (real && (std::abs(p[0].imag()) > 1e-7 || std::abs(p[1].imag()) > 1e-7)) continue;
        if (real) p = {cd(p[0].real(), 0), cd(p[1].real(), 0)};
        pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end(), [](const auto& u, const auto& v) {
        return std::make_tuple(u[0].real(), u[1].real(), u[0].imag(), u[1].imag()) <
               std::make_tuple(v[0].real(), v[1].real(), v[0].imag(), v[1].imag());
    });
    return pts;
}

struct Side {
    const Region* region;
    std::vector<cd> start;
};

// Groups of sheets meeting over boundary point b.
std::pair<std::vector<std::vector<int>>, std::vector<int>> glue_at(const PolyMap& F, const std::vector<cd>& b,
                                                                   const std::vector<Side>& sides, bool real) {
    std::vector<int> ids;
    std::vector<Tracked> ends;
    for (const auto& side : sides) {
        if (side.region->sheets == 0) continue;
        if (!side.region->signs.empty() && !satisfies(side.region->signs, side.start))
            throw AnalysisError("continuation start point left its region");
        auto pts = sorted_fiber(F, side.start, real);
        if (pts.size() != side.region->sheets) throw AnalysisError("fiber count changed near a gluing curve");
        for (std::size_t k = 0; k < pts.size(); ++k) {
            ids.push_back(side.region->sheet_ids[k]);
            ends.push_back(track(F, pts[k], side.start, b));
        }
    }
    const std::size_t n = ids.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<int> escaping;
    std::optional<std::size_t> first_escape;
    for (std::size_t i = 0; i < n; ++i) {
        if (!ends[i].escaped) continue;
        escaping.push_back(ids[i]);
        if (first_escape)
            parent[find(i)] = find(*first_escape);
        else
            first_escape = i;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (ends[i].escaped || ends[j].escaped) continue;
            double d = std::abs(ends[i].z[0] - ends[j].z[0]) + std::abs(ends[i].z[1] - ends[j].z[1]);
            if (d < 1e-2) parent[find(i)] = find(j);
        }
    std::map<std::size_t, std::vector<int>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(ids[i]);
    std::vector<std::vector<int>> out;
    for (auto& [k, g] : groups) {
        std::sort(g.begin(), g.end());
        out.push_back(g);
    }
    std::sort(out.begin(), out.end());
    std::sort(escaping.begin(), escaping.end());
    return {out, escaping};
}

double coefficient_radius(const std::vector<const AlgebraicSet*>& sets) {
    double big = 1;
    for (const auto* s : sets)
        for (const auto& g : s->generators())
            for (const auto& [e, c] : g.terms()) big = std::max(big, std::abs(cd(c.re().get_d(), c.im().get_d())));
    return 2 * (1 + big);
}

void check_counts(const PolyMap& F, Region& r, Rng& rng, const AnalysisOptions& opts, FiberMode mode,
                  std::size_t samples) {
    auto pts = sample_region(r.signs, rng, samples);
    r.sample = {pts[0][0].re().get_d(), pts[0][1].re().get_d()};
    std::optional<std::size_t> count;
    for (const auto& p : pts) {
        std::size_t c = fiber_count(F, p, mode, opts);
        if (count && *count != c) throw AnalysisError("fiber count is not constant on region " + r.name);
        count = c;
    }
    r.sheets = *count;
}

NFModel build_real(const PolyMap& F, const RealFamily& fam, const AnalysisOptions& opts) {
    NFModel M;
    M.kind = ModelKind::RealFamily;
    M.map = F;
    M.target = target_vars(F);
    const auto& tv = M.target;
    M.sing = singular_locus(F);
    M.k0 = critical_values(F, opts);
    M.sf = real_jelonek_set(F);
    MultiPoly alpha = MultiPoly::variable(tv, tv[0]), beta = MultiPoly::variable(tv, tv[1]);
    MultiPoly apow = MultiPoly::constant(tv, GaussianRational(1));
    for (unsigned k = 0; k < fam.power; ++k) apow *= alpha;
    MultiPoly above = beta - apow * GaussianRational(fam.qmin());
    Region right{"right", {{alpha, SignRelation::Gt}, {above, SignRelation::Gt}}, "", {}, 0, {}};
    Region left{"left", {{-alpha, SignRelation::Gt}, {above, SignRelation::Gt}}, "", {}, 0, {}};
    Region below{"below", {{-above, SignRelation::Gt}}, "", {}, 0, {}};
    Rng rng(opts.seed);
    for (Region* r : {&right, &left, &below}) {
        check_counts(F, *r, rng, opts, FiberMode::Real, opts.samples);
        std::ostringstream os;
        for (std::size_t i = 0; i < r->signs.size(); ++i) os << (i ? ", " : "") << r->signs[i].to_string();
        r->description = os.str();
    }
    int next = 1;
    for (Region* r : {&right, &left, &below})
        for (std::size_t k = 0; k < r->sheets; ++k) r->sheet_ids.push_back(next++);
    M.regions = {right, left, below};
    const double qmin = fam.qmin().get_d();
    const double delta = 0.05;
    auto curve = [&](double t) { return std::vector<cd>{cd(t, 0), cd(qmin * std::pow(t, static_cast<double>(fam.power)), 0)}; };
    struct Segment {
        std::string name;
        std::function<std::vector<cd>(double)> point;
        double lo, hi;
        std::vector<std::pair<std::size_t, std::vector<double>>> sides;  // region, offset
    };
    std::vector<Segment> segs = {
        {above.to_string() + " = 0, " + tv[0] + " > 0", curve, 0.3, 1.5, {{0, {0, delta}}, {2, {0, -delta}}}},
        {above.to_string() + " = 0, " + tv[0] + " < 0", curve, -1.5, -0.3, {{1, {0, delta}}, {2, {0, -delta}}}},
        {tv[0] + " = 0, " + tv[1] + " >= 0", [](double t) { return std::vector<cd>{cd(0, 0), cd(t, 0)}; }, 0.3,
         2.0, {{0, {delta, 0}}, {1, {-delta, 0}}}},
    };
    for (const auto& seg : segs) {
        GluingRecord rec;
        rec.curve = seg.name;
        for (const auto& [ri, off] : seg.sides) rec.regions.push_back(M.regions[ri].name);
        for (int k = 0; k < 3; ++k) {
            const double t = seg.lo + (seg.hi - seg.lo) * (0.2 + 0.3 * k) + rng.uniform(-0.05, 0.05);
            auto b = seg.point(t);
            std::vector<Side> sides;
            for (const auto& [ri, off] : seg.sides)
                sides.push_back(Side{&M.regions[ri], {b[0] + off[0], b[1] + off[1]}});
            auto [groups, esc] = glue_at(F, b, sides, true);
            if (k == 0) {
                rec.groups = groups;
                rec.escaping = esc;
            } else if (groups != rec.groups || esc != rec.escaping) {
                throw AnalysisError("gluing along " + seg.name + " disagrees between sample points");
            }
        }
        M.gluing.push_back(rec);
    }
    M.radius = coefficient_radius({&M.k0, &M.sf});
    return M;
}

NFModel build_complex(const PolyMap& F, const std::optional<Triangular>& tri, const AnalysisOptions& opts) {
    NFModel M;
    M.map = F;
    M.target = target_vars(F);
    const auto& tv = M.target;
    M.sing = singular_locus(F);
    M.k0 = critical_values(F, opts);
    Rng rng(opts.seed);
    Region r;
    r.sheet_ids = {1};
    if (tri) {
        M.kind = ModelKind::ComplexTriangular;
        M.sf = jelonek_set(F, opts);
        // distinct roots of g
        MultiPoly g = squarefree(tri->g);
        std::vector<cd> coeffs(static_cast<std::size_t>(g.degree_in(0)) + 1, 0);
        for (const auto& [e, c] : g.terms()) coeffs[e[0]] = cd(c.re().get_d(), c.im().get_d());
        M.roots = polynomial_roots(coeffs);
        std::sort(M.roots.begin(), M.roots.end(),
                  [](cd a, cd b) { return std::make_pair(a.real(), a.imag()) < std::make_pair(b.real(), b.imag()); });
        MultiPoly galpha(tv);
        for (const auto& [e, c] : tri->g.terms()) galpha.add_term({e[0], 0}, c);
        r.name = "complement";
        r.description = tv[0] + ", " + tv[1] + " with " + galpha.to_string() + " != 0";
    } else {
        M.kind = ModelKind::ComplexAutomorphism;
        M.sf = AlgebraicSet(tv, SetFlavor::ComplexAlgebraic);
        r.name = "plane";
        r.description = "all of " + tv[0] + ", " + tv[1];
    }
    // complex sheet count at samples off the curves
    std::optional<std::size_t> count;
    std::size_t taken = 0;
    for (int tries = 0; tries < 200 && taken < opts.samples; ++tries) {
        std::vector<GaussianRational> a{rng.gaussian(false), rng.gaussian(false)};
        auto z = to_cd(a);
        if (!M.sf.is_empty() && M.sf.contains(z, 1e-9)) continue;
        if (M.k0.contains_exact(a)) continue;
        std::size_t c = fiber_count(F, a, FiberMode::Complex, opts);
        if (count && *count != c) throw AnalysisError("fiber count is not constant on the complement of S_F");
        count = c;
        if (taken == 0) r.sample = {z[0].real(), z[0].imag(), z[1].real(), z[1].imag()};
        ++taken;
    }
    if (!count) throw DomainError("degenerate region: no sample points found");
    if (*count != 1) throw DomainError("complex models need one-point generic fibers");
    r.sheets = 1;
    M.regions = {r};
    for (cd a : M.roots) {
        GluingRecord rec;
        std::ostringstream os;
        os << tv[0] << " = " << a.real() << (a.imag() < 0 ? "-" : "+") << std::abs(a.imag()) << "i";
        rec.curve = os.str();
        rec.regions = {r.name};
        for (int k = 0; k < 3; ++k) {
            std::vector<cd> b{a, cd(0.5 + 0.4 * k + rng.uniform(-0.05, 0.05), 0.3)};
            Side side{&M.regions[0], {b[0] + cd(0.05, 0.02), b[1]}};
            auto [groups, esc] = glue_at(F, b, {side}, false);
            if (k == 0) {
                rec.groups = groups;
                rec.escaping = esc;
            } else if (groups != rec.groups || esc != rec.escaping) {
                throw AnalysisError("gluing along " + rec.curve + " disagrees between sample points");
            }
        }
        M.gluing.push_back(rec);
    }
    M.radius = coefficient_radius({&M.k0, &M.sf});
    return M;
}

}  // namespace

NFModel build_nf_model(const PolyMap& F, const AnalysisOptions& opts) {
    if (F.n() != 2) throw DomainError("models are built for plane maps only");
    if (F.is_real())
        if (auto fam = recognize_real_family(F)) return build_real(F, *fam, opts);
    if (auto tri = recognize_triangular(F)) return build_complex(F, tri, opts);
    MultiPoly J = jacobian_det(F);
    if (J.is_constant() && !J.is_zero()) {
        auto pr = properness_test(F, opts);
        if (pr.verdict == Verdict::Proper) return build_complex(F, std::nullopt, opts);
    }
    throw DomainError(
        "unsupported map: no exact region decomposition available (supported: real maps (x, x^(2j) q(y)), complex "
        "maps (x, g(x) y + h(x)), proper maps with constant Jacobian)");
}

namespace {

ModelComplex triangulate_real(const NFModel& M, double R) {
    // segments: 0 = K0 right, 1 = K0 left, 2 = S_F; vertex copies per gluing group
    std::map<std::string, int> ids;
    auto vid = [&](const std::string& key) {
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        int n = static_cast<int>(ids.size());
        ids.emplace(key, n);
        return n;
    };
    auto group_of = [&](std::size_t seg, int sheet) {
        const auto& groups = M.gluing.at(seg).groups;
        for (std::size_t g = 0; g < groups.size(); ++g)
            if (std::count(groups[g].begin(), groups[g].end(), sheet)) return static_cast<int>(g);
        throw AnalysisError("sheet " + std::to_string(sheet) + " missing from gluing data");
    };
    std::set<int> curve_vertices, boundary_vertices;
    std::set<std::pair<int, int>> boundary_edges;
    std::vector<Simplex> facets;
    std::vector<std::pair<int, Simplex>> owner;
    const int origin = vid("origin");
    curve_vertices.insert(origin);
    for (std::size_t ri = 0; ri < 2; ++ri) {
        const Region& r = M.regions.at(ri);
        for (int sheet : r.sheet_ids) {
            const std::size_t kseg = ri;  // K0 half on this side
            const std::string sf = "sf" + std::to_string(group_of(2, sheet));
            const std::string k0 = "k" + std::to_string(kseg) + "_" + std::to_string(group_of(kseg, sheet));
            const std::string own = "s" + std::to_string(sheet);
            int H = vid(sf + "_mid"), T = vid(sf + "_end"), Q = vid(k0 + "_end"), P = vid(k0 + "_mid");
            int C = vid(own + "_arc"), Z = vid(own + "_center");
            curve_vertices.insert({H, T, Q, P});
            boundary_vertices.insert({T, C, Q});
            boundary_edges.insert({std::min(T, C), std::max(T, C)});
            boundary_edges.insert({std::min(C, Q), std::max(C, Q)});
            std::vector<int> ring{origin, H, T, C, Q, P};
            for (std::size_t k = 0; k < ring.size(); ++k) {
                Simplex s{Z, ring[k], ring[(k + 1) % ring.size()]};
                facets.push_back(s);
                std::sort(s.begin(), s.end());
                owner.emplace_back(sheet, s);
            }
        }
    }
    if (facets.empty()) throw DomainError("degenerate model: no sheets");
    // curve edges: consecutive ring vertices both on curves, except arc edges
    auto level = [&](const Simplex& s) {
        if (s.size() == 1 && s[0] == origin) return 0;
        for (int v : s)
            if (!curve_vertices.count(v)) return 2;
        if (s.size() == 3) return 2;
        if (s.size() == 2 && boundary_edges.count({s[0], s[1]})) return 2;
        return 1;
    };
    auto on_boundary = [&](const Simplex& s) {
        if (s.size() == 1) return boundary_vertices.count(s[0]) > 0;
        if (s.size() == 2) return boundary_edges.count({s[0], s[1]}) > 0;
        return false;
    };
    ModelComplex out{simplicial_complex(2, facets, level, on_boundary), {}, {}};
    (void)R;
    out.sheet_cells.resize(M.total_sheets() + 1);
    for (const auto& [sheet, s] : owner) {
        std::string label;
        for (int v : s) label += (label.empty() ? "" : ",") + std::to_string(v);
        out.sheet_cells[sheet].push_back(out.complex.find(2, label));
    }
    return out;
}

ModelComplex triangulate_product(const NFModel& M) {
    const int r = static_cast<int>(M.roots.size());
    const int squares = std::max(r, 1);
    // alpha factor: strip of squares with centres, spheres wedged at the centres of roots
    std::vector<Simplex> A;
    auto bot = [](int i) { return i; };
    auto top = [&](int i) { return squares + 1 + i; };
    auto centre = [&](int i) { return 2 * (squares + 1) + i; };
    auto sph = [&](int i, int k) { return 2 * (squares + 1) + squares + 3 * i + k; };
    const int NA = 2 * (squares + 1) + squares + 3 * r;
    std::set<std::pair<int, int>> a_bd_edges;
    std::set<int> a_bd_verts;
    for (int i = 0; i < squares; ++i) {
        const int c = centre(i);
        A.push_back({c, bot(i), bot(i + 1)});
        A.push_back({c, bot(i + 1), top(i + 1)});
        A.push_back({c, top(i + 1), top(i)});
        A.push_back({c, top(i), bot(i)});
        a_bd_edges.insert({bot(i), bot(i + 1)});
        a_bd_edges.insert({top(i), top(i + 1)});
    }
    a_bd_edges.insert({bot(0), top(0)});
    a_bd_edges.insert({bot(squares), top(squares)});
    for (int i = 0; i <= squares; ++i) a_bd_verts.insert({bot(i), top(i)});
    for (int i = 0; i < r; ++i) {
        const int v[4] = {centre(i), sph(i, 0), sph(i, 1), sph(i, 2)};
        for (int skip = 0; skip < 4; ++skip) {
            Simplex s;
            for (int k = 0; k < 4; ++k)
                if (k != skip) s.push_back(v[k]);
            A.push_back(s);
        }
    }
    // beta factor: cone over a triangle, apex 0
    const int NB = 4;
    std::vector<Simplex> B = {{0, 1, 2}, {0, 2, 3}, {0, 1, 3}};
    auto b_boundary = [](const std::set<int>& w) {
        if (w.count(0)) return false;
        return w.size() <= 2;
    };
    std::vector<Simplex> facets;
    for (auto s : A) {
        std::sort(s.begin(), s.end());
        for (auto t : B) {
            std::sort(t.begin(), t.end());
            // lattice paths with two steps in each factor
            for (unsigned mask = 0; mask < 16; ++mask) {
                if (__builtin_popcount(mask) != 2) continue;
                int i = 0, j = 0;
                Simplex f{s[0] * NB + t[0]};
                for (int step = 0; step < 4; ++step) {
                    if (mask & (1u << step))
                        ++i;
                    else
                        ++j;
                    f.push_back(s[i] * NB + t[j]);
                }
                facets.push_back(f);
            }
        }
    }
    std::set<int> singular_a;
    for (int i = 0; i < r; ++i) singular_a.insert(centre(i));
    auto proj = [&](const Simplex& s) {
        std::set<int> a, b;
        for (int v : s) {
            a.insert(v / NB);
            b.insert(v % NB);
        }
        return std::make_pair(a, b);
    };
    auto level = [&](const Simplex& s) {
        auto [a, b] = proj(s);
        if (a.size() == 1 && singular_a.count(*a.begin())) return (b.size() == 1 && *b.begin() == 0) ? 0 : 2;
        return 4;
    };
    auto on_boundary = [&](const Simplex& s) {
        auto [a, b] = proj(s);
        bool a_bd = false;
        if (a.size() == 1) a_bd = a_bd_verts.count(*a.begin()) > 0;
        if (a.size() == 2) a_bd = a_bd_edges.count({*a.begin(), *a.rbegin()}) > 0;
        return a_bd || b_boundary(b);
    };
    (void)NA;
    ModelComplex out{simplicial_complex(4, facets, level, on_boundary), {}, {}};
    // sphere at root i times the beta vertex 1
    for (int i = 0; i < r; ++i) {
        const int v[4] = {centre(i), sph(i, 0), sph(i, 1), sph(i, 2)};
        std::vector<int> u(v, v + 4);
        std::sort(u.begin(), u.end());
        std::vector<std::pair<int, long>> chain;
        for (int skip = 0; skip < 4; ++skip) {
            std::string label;
            for (int k = 0; k < 4; ++k)
                if (k != skip) label += (label.empty() ? "" : ",") + std::to_string(u[k] * NB + 1);
            const int idx = out.complex.find(2, label);
            if (idx < 0) throw AnalysisError("witness triangle missing from the product complex");
            chain.emplace_back(idx, skip % 2 ? -1 : 1);
        }
        out.witness_cycles.push_back(chain);
    }
    out.sheet_cells.resize(2);
    for (std::size_t i = 0; i < out.complex.count(4); ++i) out.sheet_cells[1].push_back(static_cast<int>(i));
    return out;
}

}  // namespace

ModelComplex triangulate_model(const NFModel& M, std::optional<double> radius) {
    if (M.regions.empty()) throw DomainError("degenerate model: no regions");
    const double R = radius.value_or(M.radius);
    if (!(R > 0)) throw DomainError("radius must be positive");
    ModelComplex mc = M.kind == ModelKind::RealFamily ? triangulate_real(M, R) : triangulate_product(M);
    mc.complex.validate();
    return mc;
}

long EquivalenceReport::h2() const { return homology.size() > 2 ? homology[2] : 0; }

std::string EquivalenceReport::to_string() const {
    auto vec = [](const std::vector<long>& v) {
        std::ostringstream os;
        os << "(";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
        os << ")";
        return os.str();
    };
    std::ostringstream os;
    os << "properness: " << nfih::to_string(verdict) << "\n";
    os << "leading rank: " << rank.rank << (rank.condition ? " (rank hypothesis holds)" : " (rank hypothesis fails)")
       << "\n";
    os << "H: " << vec(homology) << "\n";
    os << "H_2: " << h2() << "\n";
    if (!relative_homology.empty()) os << "relative H: " << vec(relative_homology) << "\n";
    for (std::size_t i = 0; i < closed.size(); ++i) {
        os << "IH^" << closed[i].perversity.to_string() << ": " << vec(closed[i].betti) << "; IH_2 = "
           << (closed[i].betti.size() > 2 ? closed[i].betti[2] : 0);
        if (i < relative.size()) {
            const auto& rb = relative[i].betti;
            const std::size_t top = rb.size() >= 3 ? rb.size() - 3 : 0;  // degree 2n-2 for 2n-dimensional models
            os << "; relative " << vec(rb) << ", relative IH_" << top << " = " << rb[top];
        }
        if (i < witness_nonbounding.size())
            os << "; witness cycle " << (witness_nonbounding[i] ? "nonbounding" : "bounds");
        os << "\n";
    }
    for (const auto& n : notes) os << "note: " << n << "\n";
    os << "consistency: " << nfih::to_string(consistency) << "\n";
    return os.str();
}

namespace {

struct HomologicalInput {
    FilteredComplex model;
    std::vector<std::vector<std::pair<int, long>>> witnesses;
    bool real_family = false;
    bool sf_empty = true;
};

EquivalenceReport run_harness(const PolyMap& F, const HomologicalInput& in, std::vector<Perversity> perversities,
                              const HarnessOptions& opts) {
    EquivalenceReport rep;
    FilteredComplex K = in.model;
    K.validate();
    for (int s = 0; s < opts.subdivisions; ++s) K = barycentric_subdivision(K);
    const int m = K.dim();
    if (perversities.empty()) perversities = all_perversities(m);
    rep.verdict = properness_test(F, opts.analysis).verdict;
    rep.rank = leading_rank(F, 8, opts.analysis.seed);
    MultiPoly J = jacobian_det(F);
    rep.jacobian_vanishes = !(J.is_constant() && !J.is_zero());
    rep.homology = homology(K);
    const bool rel = K.has_boundary();
    if (rel) rep.relative_homology = relative_homology(K);
    for (const auto& p : perversities) {
        rep.closed.push_back(ih_betti(K, p, IHVariant::Closed));
        if (rel) rep.relative.push_back(ih_betti(K, p, IHVariant::Relative));
        if (!in.witnesses.empty()) {
            // witness chains index cells of the unsubdivided model
            bool nb = true;
            for (const auto& z : in.witnesses) nb = nb && !ic_cycle_bounds(in.model, p, 2, z);
            rep.witness_nonbounding.push_back(nb);
        }
    }
    const int top = m - 2;
    auto all_zero = [&] {
        if (rep.h2() != 0) return false;
        for (const auto& r : rep.closed)
            if (r.betti[2] != 0) return false;
        for (const auto& r : rep.relative)
            if (r.betti[top] != 0) return false;
        return true;
    };
    if (in.real_family) {
        rep.notes.push_back(
            "outside theorem hypotheses: real map with nonempty vanishing Jacobian locus; numbers are informational");
        rep.consistency = Consistency::NoVerdict;
        return rep;
    }
    if (rep.jacobian_vanishes)
        rep.notes.push_back("outside theorem hypotheses: the Jacobian vanishes somewhere; implications checked on the model");
    if (rep.verdict == Verdict::Proper) {
        rep.consistency = all_zero() ? Consistency::Consistent : Consistency::Inconsistent;
    } else if (rep.verdict == Verdict::NonProper && !in.sf_empty && rep.rank.condition) {
        bool ok = true;
        for (const auto& r : rep.closed) ok = ok && r.betti[2] != 0;
        for (bool nb : rep.witness_nonbounding) ok = ok && nb;
        rep.consistency = ok ? Consistency::Consistent : Consistency::Inconsistent;
    } else {
        rep.notes.push_back("no checkable implication for this verdict");
        rep.consistency = Consistency::NoVerdict;
    }
    return rep;
}

}  // namespace

EquivalenceReport equivalence_harness(const PolyMap& F, std::vector<Perversity> perversities,
                                      const HarnessOptions& opts) {
    NFModel M = build_nf_model(F, opts.analysis);
    ModelComplex mc = triangulate_model(M, opts.radius);
    HomologicalInput in{std::move(mc.complex), std::move(mc.witness_cycles), M.kind == ModelKind::RealFamily,
                        M.sf.is_empty()};
    return run_harness(F, in, std::move(perversities), opts);
}

EquivalenceReport equivalence_harness(const PolyMap& F, const FilteredComplex& model,
                                      std::vector<Perversity> perversities, const HarnessOptions& opts) {
    HomologicalInput in{model, {}, false, jelonek_set(F, opts.analysis).is_empty()};
    return run_harness(F, in, std::move(perversities), opts);
}

WorkedExample worked_example() {
    const std::vector<std::string> xy{"x", "y"};
    MultiPoly x = MultiPoly::variable(xy, "x"), y = MultiPoly::variable(xy, "y");
    PolyMap F({x, x * x * y * (y + MultiPoly::constant(xy, GaussianRational(2)))});
    NFModel M = build_nf_model(F);
    ModelComplex mc = triangulate_model(M);
    return {F, M, mc};
}

}  // namespace nfih
