#include "nfih/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Dense>

#include "nfih/errors.hpp"

namespace nfih {

namespace {

void require_plane(const PolyMap& F) {
    if (F.n() != 2) throw DomainError("exact analysis needs n = 2");
}

std::vector<std::string> ring4(const PolyMap& F) {
    auto r = F.vars();
    for (const auto& t : target_vars(F)) r.push_back(t);
    return r;
}

// F(x - c*y, y) - target, resultant in y: an eliminant whose roots in the
// first slot are the values of x + c*y over the fiber.
struct Eliminant {
    mpq_class shear;
    MultiPoly g1, g2, r;
};

Eliminant make_eliminant(const PolyMap& F, const mpq_class& c) {
    const auto ring = ring4(F);
    MultiPoly X = MultiPoly::variable(ring, ring[0]);
    MultiPoly Y = MultiPoly::variable(ring, ring[1]);
    MultiPoly shifted = X - Y * GaussianRational(c);
    Eliminant e{c, F[0].with_vars(ring).substitute(0, shifted) - MultiPoly::variable(ring, ring[2]),
                F[1].with_vars(ring).substitute(0, shifted) - MultiPoly::variable(ring, ring[3]), {}};
    if (!e.g1.depends_on(1) && !e.g2.depends_on(1)) throw AnalysisError("map is not generically finite");
    e.r = resultant(e.g1, e.g2, 1);
    if (e.r.is_zero()) throw AnalysisError("map is not generically finite (eliminant vanishes)");
    return e;
}

std::vector<Eliminant> eliminants(const PolyMap& F, std::uint64_t seed, std::size_t count = 3) {
    Rng rng(seed ^ 0x5eedULL);
    std::vector<Eliminant> out;
    std::vector<mpq_class> used;
    for (int attempt = 0; attempt < 60 && out.size() < count; ++attempt) {
        mpq_class c = rng.rational(7, 5);
        if (sgn(c) == 0 || std::find(used.begin(), used.end(), c) != used.end()) continue;
        used.push_back(c);
        Eliminant e = make_eliminant(F, c);
        if (!e.g1.leading_coeff_in(1).is_constant() && !e.g2.leading_coeff_in(1).is_constant()) continue;
        out.push_back(std::move(e));
    }
    if (out.empty()) throw AnalysisError("no admissible shear found");
    return out;
}

MultiPoly specialize_exact(const MultiPoly& r, std::span<const GaussianRational> t) {
    return r.substitute(2, t[0]).substitute(3, t[1]);
}

bool exact_is_critical(const std::vector<Eliminant>& elims, std::span<const GaussianRational> t) {
    for (const auto& e : elims) {
        MultiPoly rt = specialize_exact(e.r, t);
        if (rt.is_zero()) return true;
        if (squarefree(rt).degree_in(0) == rt.degree_in(0)) return false;
    }
    return true;
}

std::vector<MultiPoly> lifted_jacobian(const PolyMap& F) {
    std::vector<MultiPoly> d;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) d.push_back(derivative(F[i], j));
    return d;
}

FiberSolution solve_with(const PolyMap& F, const Eliminant& e, std::span<const cd> t) {
    FiberSolution out;
    std::vector<cd> p4{0, 0, t[0], t[1]};
    std::vector<cd> rc = specialize(e.r, 0, p4);
    double ref = 0;
    for (const auto& [ex, c] : e.r.terms())
        ref += std::abs(c.to_complex()) * std::pow(std::abs(t[0]), ex[2]) * std::pow(std::abs(t[1]), ex[3]);
    double big = 0;
    for (const auto& v : rc) big = std::max(big, std::abs(v));
    if (big <= 1e-10 * ref) {
        out.positive_dimensional = true;
        return out;
    }
    while (!rc.empty() && std::abs(rc.back()) <= 1e-12 * big) rc.pop_back();
    const auto jac = lifted_jacobian(F);
    const double c = e.shear.get_d();
    for (cd u : polynomial_roots(rc)) {
        std::vector<cd> q{u, 0, t[0], t[1]};
        const MultiPoly& g = e.g1.depends_on(1) ? e.g1 : e.g2;
        std::vector<cd> yc = specialize(g, 1, q);
        double yb = 0;
        for (const auto& v : yc) yb = std::max(yb, std::abs(v));
        while (!yc.empty() && std::abs(yc.back()) <= 1e-12 * yb) yc.pop_back();
        for (cd y : polynomial_roots(yc)) {
            std::vector<cd> z{u - c * y, y};
            for (int it = 0; it < 30; ++it) {
                cd f0 = F[0].eval_complex(z) - t[0], f1 = F[1].eval_complex(z) - t[1];
                cd a = jac[0].eval_complex(z), b = jac[1].eval_complex(z), cc = jac[2].eval_complex(z),
                   d = jac[3].eval_complex(z);
                cd det = a * d - b * cc;
                if (std::abs(det) < 1e-300) break;
                cd dx = (d * f0 - b * f1) / det, dy = (a * f1 - cc * f0) / det;
                if (!std::isfinite(std::abs(dx)) || !std::isfinite(std::abs(dy))) break;
                z[0] -= dx;
                z[1] -= dy;
                if (std::abs(dx) + std::abs(dy) < 1e-15 * (1 + std::abs(z[0]) + std::abs(z[1]))) break;
            }
            double r0 = std::abs(F[0].eval_complex(z) - t[0]) / (1 + std::abs(t[0]));
            double r1 = std::abs(F[1].eval_complex(z) - t[1]) / (1 + std::abs(t[1]));
            if (r0 > 1e-7 || r1 > 1e-7) continue;
            bool dup = false;
            for (const auto& p : out.points)
                if (std::abs(p[0] - z[0]) + std::abs(p[1] - z[1]) < 1e-6 * (1 + std::abs(z[0]) + std::abs(z[1])))
                    dup = true;
            if (!dup) out.points.push_back(z);
        }
    }
    return out;
}

bool numeric_is_critical(const PolyMap& F, const MultiPoly& J, const Eliminant& e, std::span<const cd> t) {
    FiberSolution s = solve_with(F, e, t);
    if (s.positive_dimensional) return true;
    for (const auto& p : s.points)
        if (relative_residual(J, p) < 1e-6) return true;
    return false;
}

std::optional<std::size_t> smaller_degree_var(const MultiPoly& c) {
    std::optional<std::size_t> best;
    for (std::size_t v : {std::size_t{1}, std::size_t{0}}) {
        if (!c.depends_on(v)) continue;
        if (!best || c.degree_in(v) < c.degree_in(*best)) best = v;
    }
    return best;
}

}  // namespace

std::vector<std::string> target_vars(const PolyMap& F) {
    std::vector<std::string> base = F.n() == 2 ? std::vector<std::string>{"alpha", "beta"} : std::vector<std::string>{};
    if (F.n() != 2)
        for (std::size_t k = 1; k <= F.n(); ++k) base.push_back("w" + std::to_string(k));
    for (auto& t : base)
        while (std::find(F.vars().begin(), F.vars().end(), t) != F.vars().end()) t += "_";
    return base;
}

AlgebraicSet singular_locus(const PolyMap& F) {
    MultiPoly J = jacobian_det(F);
    if (J.is_zero()) return AlgebraicSet::from_generators(F.vars(), {});
    return AlgebraicSet::from_generators(F.vars(), {squarefree(J)});
}

AlgebraicSet critical_values(const PolyMap& F, const AnalysisOptions& opts) {
    require_plane(F);
    const MultiPoly J = jacobian_det(F);
    if (J.is_zero()) throw AnalysisError("identically zero Jacobian");
    const auto tv = target_vars(F);
    const auto ring = ring4(F);
    AlgebraicSet out(tv);
    if (J.is_constant()) return out;
    const MultiPoly A = MultiPoly::variable(ring, ring[2]), B = MultiPoly::variable(ring, ring[3]);
    const MultiPoly P1 = F[0].with_vars(ring) - A, P2 = F[1].with_vars(ring) - B;

    std::vector<SetComponent> curves, points;
    auto seen = [](const std::vector<SetComponent>& list, const SetComponent& c) {
        return std::any_of(list.begin(), list.end(), [&](const SetComponent& o) { return o.generators == c.generators; });
    };
    for (const MultiPoly& c0 : split_components(J)) {
        const MultiPoly C = c0.with_vars(ring);
        const std::size_t v = *smaller_degree_var(c0);
        const std::size_t w = 1 - v;
        MultiPoly R1 = resultant(P1, C, v), R2 = resultant(P2, C, v);
        if (!R1.depends_on(w) && !R2.depends_on(w)) {
            SetComponent pc;
            pc.generators = {squarefree(R1).with_vars(tv), squarefree(R2).with_vars(tv)};
            std::sort(pc.generators.begin(), pc.generators.end(),
                      [](const MultiPoly& a, const MultiPoly& b) { return a.to_string() < b.to_string(); });
            if (!seen(points, pc)) points.push_back(pc);
            continue;
        }
        MultiPoly G = resultant(R1, R2, w);
        if (G.is_zero()) throw AnalysisError("degenerate elimination for component " + c0.to_string());
        if (G.is_constant()) continue;
        for (const MultiPoly& g : split_components(G)) {
            SetComponent cc;
            cc.generators = {g.with_vars(tv)};
            if (!seen(curves, cc)) curves.push_back(cc);
        }
    }

    const auto elims = eliminants(F, opts.seed);
    Rng rng(opts.seed);
    auto verify = [&](SetComponent& comp) {
        bool ok = false;
        for (const auto& s : sample_component(comp, tv, opts.samples, rng)) {
            ok = s.exact ? exact_is_critical(elims, *s.exact) : numeric_is_critical(F, J, elims.front(), s.z);
            if (ok) break;
        }
        comp.status = ok ? ComponentStatus::Confirmed : ComponentStatus::Spurious;
        if (!ok) comp.note = "no sampled point is a critical value";
    };
    for (auto& c : curves) verify(c);
    for (auto& p : points) verify(p);
    std::sort(curves.begin(), curves.end(), [](const SetComponent& a, const SetComponent& b) {
        return a.generators[0].to_string() < b.generators[0].to_string();
    });
    for (auto& c : curves) out.add(c);
    for (auto& p : points) {
        if (p.status == ComponentStatus::Confirmed) {
            // Points lying on a confirmed curve add nothing to the zero set.
            bool inside = true;
            for (const auto& s : sample_component(p, tv, 8, rng)) {
                bool on_curve = false;
                for (const auto& c : curves)
                    if (c.status == ComponentStatus::Confirmed && relative_residual(c.generators[0], s.z) < 1e-8)
                        on_curve = true;
                if (!on_curve) inside = false;
            }
            if (inside) continue;
        }
        out.add(p);
    }
    return out;
}

FiberSolution solve_fiber(const PolyMap& F, std::span<const cd> target, const AnalysisOptions& opts) {
    require_plane(F);
    return solve_with(F, eliminants(F, opts.seed, 1).front(), target);
}

std::size_t fiber_count(const PolyMap& F, std::span<const GaussianRational> target, FiberMode mode,
                        const AnalysisOptions& opts) {
    require_plane(F);
    if (target.size() != 2) throw DomainError("target must have two coordinates");
    if (mode == FiberMode::Real) {
        if (!F.is_real()) throw DomainError("real fiber count needs real coefficients");
        if (!target[0].is_real() || !target[1].is_real()) throw DomainError("real fiber count needs a real target");
    }
    if (critical_values(F, opts).contains_exact(target)) throw DomainError("target lies on the critical-value set");
    std::optional<std::size_t> best;
    for (const auto& e : eliminants(F, opts.seed)) {
        MultiPoly rt = specialize_exact(e.r, target);
        if (rt.is_zero()) throw AnalysisError("fiber is not finite");
        std::size_t count;
        if (mode == FiberMode::Complex) {
            count = static_cast<std::size_t>(std::max(0, squarefree(rt).degree_in(0)));
            best = std::max(best.value_or(0), count);
        } else {
            RatPoly up(static_cast<std::size_t>(rt.degree_in(0)) + 1, 0);
            for (const auto& [ex, c] : rt.terms()) up[ex[0]] = c.re();
            count = sturm_real_root_count(up);
            best = best ? std::min(*best, count) : count;
        }
    }
    return *best;
}

// ---------------------------------------------------------------------------
// Witness arcs

namespace {

struct Laurent {
    int lo = 0;
    std::vector<cd> c;

    static Laurent constant(cd v) { return {0, {v}}; }
    Laurent operator*(const Laurent& o) const {
        Laurent r{lo + o.lo, std::vector<cd>(c.size() + o.c.size() - 1, cd(0))};
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] != cd(0))
                for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
        return r;
    }
    void add_scaled(const Laurent& o, cd s) {
        int nlo = std::min(lo, o.lo);
        int nhi = std::max(lo + static_cast<int>(c.size()), o.lo + static_cast<int>(o.c.size()));
        std::vector<cd> n(static_cast<std::size_t>(nhi - nlo), cd(0));
        for (std::size_t i = 0; i < c.size(); ++i) n[static_cast<std::size_t>(lo - nlo) + i] += c[i];
        for (std::size_t i = 0; i < o.c.size(); ++i) n[static_cast<std::size_t>(o.lo - nlo) + i] += s * o.c[i];
        lo = nlo;
        c = std::move(n);
    }
    cd at(int e) const {
        int k = e - lo;
        if (k < 0 || k >= static_cast<int>(c.size())) return 0;
        return c[static_cast<std::size_t>(k)];
    }
};

struct CompiledMap {
    std::vector<std::vector<std::pair<Exponent, cd>>> comps;
    std::vector<unsigned> maxpow;
};

CompiledMap compile(const PolyMap& F) {
    CompiledMap m;
    m.maxpow.assign(F.n(), 0);
    for (const auto& p : F.components()) {
        std::vector<std::pair<Exponent, cd>> t;
        for (const auto& [e, c] : p.terms()) {
            t.emplace_back(e, c.to_complex());
            for (std::size_t k = 0; k < e.size(); ++k) m.maxpow[k] = std::max(m.maxpow[k], e[k]);
        }
        m.comps.push_back(std::move(t));
    }
    return m;
}

std::vector<Laurent> image(const CompiledMap& m, const std::vector<Laurent>& coords) {
    std::vector<std::vector<Laurent>> pw(coords.size());
    for (std::size_t j = 0; j < coords.size(); ++j) {
        pw[j].push_back(Laurent::constant(1));
        for (unsigned k = 0; k < m.maxpow[j]; ++k) pw[j].push_back(pw[j].back() * coords[j]);
    }
    std::vector<Laurent> out;
    for (const auto& comp : m.comps) {
        Laurent s = Laurent::constant(0);
        for (const auto& [e, c] : comp) {
            Laurent t = Laurent::constant(1);
            for (std::size_t j = 0; j < e.size(); ++j)
                if (e[j]) t = t * pw[j][e[j]];
            s.add_scaled(t, c);
        }
        out.push_back(std::move(s));
    }
    return out;
}

// gamma_j = b_j + c_j t^{a_j}; the first escaping coordinate has c = 1.
// Offsets of escaping coordinates are held at zero unless `free_offsets`.
struct Ansatz {
    std::vector<int> a;
    std::size_t pinned;
    bool free_offsets = false;

    bool has_offset(std::size_t j) const { return free_offsets || a[j] >= 0; }
    void unpack(const std::vector<double>& x, std::vector<cd>& b, std::vector<cd>& c) const {
        b.assign(a.size(), 0);
        c.assign(a.size(), 0);
        std::size_t k = 0;
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (has_offset(j)) {
                b[j] = {x[k], x[k + 1]};
                k += 2;
            }
            if (j == pinned) c[j] = 1;
            else if (a[j] != 0) {
                c[j] = {x[k], x[k + 1]};
                k += 2;
            }
        }
    }
    std::vector<Laurent> coords(const std::vector<cd>& b, const std::vector<cd>& c) const {
        std::vector<Laurent> out;
        for (std::size_t j = 0; j < a.size(); ++j) {
            Laurent l = Laurent::constant(b[j]);
            if (a[j] != 0) l.add_scaled(Laurent{a[j], {cd(1)}}, c[j]);
            out.push_back(l);
        }
        return out;
    }
};

std::vector<std::vector<int>> exponent_grid(std::size_t n, int K) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n, -K);
    while (true) {
        if (std::any_of(cur.begin(), cur.end(), [](int v) { return v < 0; })) out.push_back(cur);
        std::size_t k = 0;
        while (k < n && cur[k] == K) cur[k++] = -K;
        if (k == n) break;
        ++cur[k];
    }
    std::stable_sort(out.begin(), out.end(), [](const std::vector<int>& x, const std::vector<int>& y) {
        int sx = 0, sy = 0;
        for (int v : x) sx += std::abs(v);
        for (int v : y) sy += std::abs(v);
        return sx < sy;
    });
    return out;
}

}  // namespace

std::vector<double> arc_image_errors(const PolyMap& F, const WitnessArc& arc, std::span<const cd> target) {
    std::vector<double> out;
    for (double t : {1e-2, 1e-4, 1e-6}) {
        auto z = arc.eval(t);
        double err = 0;
        for (std::size_t k = 0; k < F.n(); ++k) err = std::max(err, std::abs(F[k].eval_complex(z) - target[k]));
        out.push_back(err);
    }
    return out;
}

std::optional<WitnessArc> witness_arc_search(const PolyMap& F, std::optional<std::vector<cd>> target,
                                             const ArcSearchParams& params) {
    const std::size_t n = F.n();
    if (target && target->size() != n) throw DomainError("target dimension mismatch");
    const CompiledMap cm = compile(F);
    Rng rng(params.seed);
    double tscale = 1;
    if (target)
        for (cd v : *target) tscale = std::max(tscale, std::abs(v));

    for (const auto& a : exponent_grid(n, params.max_exponent))
    for (bool free_offsets : {false, true}) {
        Ansatz ans{a, static_cast<std::size_t>(std::find_if(a.begin(), a.end(), [](int v) { return v < 0; }) - a.begin()),
                   free_offsets};
        auto residual = [&](const std::vector<double>& x) {
            std::vector<cd> b, c;
            ans.unpack(x, b, c);
            auto img = image(cm, ans.coords(b, c));
            std::vector<double> r;
            for (std::size_t k = 0; k < n; ++k) {
                for (int e = img[k].lo; e < 0; ++e) {
                    cd v = img[k].at(e);
                    r.push_back(v.real());
                    r.push_back(v.imag());
                }
                if (target) {
                    cd v = img[k].at(0) - (*target)[k];
                    r.push_back(v.real());
                    r.push_back(v.imag());
                }
            }
            return r;
        };
        for (int rs = 0; rs < params.restarts; ++rs) {
            std::vector<double> x0;
            for (std::size_t j = 0; j < n; ++j) {
                cd b = rs == 0 ? cd(0) : 2.0 * rng.complex_unit_disk();
                if (ans.has_offset(j)) {
                    x0.push_back(b.real());
                    x0.push_back(b.imag());
                }
                if (j != ans.pinned && a[j] != 0) {
                    cd c = rs == 0 ? cd(1) : std::polar(rng.uniform(0.5, 2.0), rng.uniform(0, 2 * M_PI));
                    x0.push_back(c.real());
                    x0.push_back(c.imag());
                }
            }
            auto res = levenberg_marquardt(residual, x0, 150, 1e-13 * tscale);
            if (!(res.residual_norm < 1e-10 * tscale)) continue;
            std::vector<cd> b, c;
            ans.unpack(res.x, b, c);
            bool degenerate = false;
            for (std::size_t j = 0; j < n; ++j)
                if (a[j] != 0 && std::abs(c[j]) < params.min_coeff) degenerate = true;
            if (degenerate) continue;
            // Validate on the expansion, treating the solved negative-power
            // coefficients as zero.
            auto img = image(cm, ans.coords(b, c));
            std::vector<cd> limit(n);
            for (std::size_t k = 0; k < n; ++k) limit[k] = target ? (*target)[k] : img[k].at(0);
            std::vector<std::vector<ArcTerm>> terms(n);
            for (std::size_t j = 0; j < n; ++j) {
                if (std::abs(b[j]) > 1e-12) terms[j].push_back({b[j], 0});
                if (a[j] != 0) terms[j].push_back({c[j], a[j]});
            }
            WitnessArc arc(terms);
            bool ok = true;
            double prev_err = INFINITY, prev_norm = 0;
            for (double t : {1e-2, 1e-4, 1e-6}) {
                double err = 0;
                for (std::size_t k = 0; k < n; ++k) {
                    cd s = img[k].at(0) - limit[k];
                    for (int e = 1; e < img[k].lo + static_cast<int>(img[k].c.size()); ++e) s += img[k].at(e) * std::pow(t, e);
                    err = std::max(err, std::abs(s));
                }
                double norm = 0;
                for (cd z : arc.eval(t)) norm += std::norm(z);
                norm = std::sqrt(norm);
                if (err > prev_err + 1e-9 * tscale || norm <= prev_norm) ok = false;
                prev_err = err;
                prev_norm = norm;
            }
            if (prev_err > 1e-4 * tscale || prev_norm < 1e3) ok = false;
            if (ok) return arc;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Jelonek set

JelonekResult jelonek_analysis(const PolyMap& F, const AnalysisOptions& opts) {
    require_plane(F);
    const auto tv = target_vars(F);
    const auto ring = ring4(F);
    const MultiPoly P1 = F[0].with_vars(ring) - MultiPoly::variable(ring, ring[2]);
    const MultiPoly P2 = F[1].with_vars(ring) - MultiPoly::variable(ring, ring[3]);
    MultiPoly r, rp;
    try {
        r = resultant(P1, P2, 1);
        rp = resultant(P1, P2, 0);
    } catch (const DomainError&) {
        throw AnalysisError("map is not generically finite");
    }
    if (r.is_zero() || rp.is_zero()) throw AnalysisError("map is not generically finite (resultant vanishes)");
    if (!r.depends_on(0) || !rp.depends_on(1)) throw AnalysisError("map is not dominant");

    std::vector<MultiPoly> cands;
    for (const MultiPoly& lc : {r.leading_coeff_in(0), rp.leading_coeff_in(1)}) {
        if (lc.is_constant()) continue;
        for (const MultiPoly& g : split_components(lc)) {
            MultiPoly h = g.with_vars(tv);
            if (std::find(cands.begin(), cands.end(), h) == cands.end()) cands.push_back(h);
        }
    }
    std::sort(cands.begin(), cands.end(), [](const MultiPoly& a, const MultiPoly& b) { return a.to_string() < b.to_string(); });

    JelonekResult out{AlgebraicSet(tv), {}, {}};
    Rng rng(opts.seed);
    ArcSearchParams ap{opts.seed, opts.max_exponent, opts.restarts, 1e-3};
    for (const MultiPoly& g : cands) {
        SetComponent comp;
        comp.generators = {g};
        comp.status = ComponentStatus::Spurious;
        comp.note = "no witness arc at sampled points";
        for (const auto& s : sample_component(comp, tv, opts.samples, rng)) {
            if (auto arc = witness_arc_search(F, s.z, ap)) {
                comp.status = ComponentStatus::Confirmed;
                comp.note.clear();
                out.witnesses.push_back(*arc);
                out.witness_targets.push_back(s.z);
                break;
            }
        }
        out.set.add(comp);
    }
    return out;
}

AlgebraicSet jelonek_set(const PolyMap& F, const AnalysisOptions& opts) { return jelonek_analysis(F, opts).set; }

std::optional<RealFamily> recognize_real_family(const PolyMap& F) {
    if (F.n() != 2 || !F.is_real()) return std::nullopt;
    if (F[0] != MultiPoly::variable(F.vars(), F.vars()[0])) return std::nullopt;
    const MultiPoly& g = F[1];
    if (g.is_zero()) return std::nullopt;
    std::optional<unsigned> k;
    RealFamily fam;
    fam.a2 = fam.a1 = fam.a0 = 0;
    for (const auto& [e, c] : g.terms()) {
        if (k && *k != e[0]) return std::nullopt;
        k = e[0];
        if (e[1] > 2) return std::nullopt;
        (e[1] == 2 ? fam.a2 : e[1] == 1 ? fam.a1 : fam.a0) = c.re();
    }
    if (*k < 2 || *k % 2 || sgn(fam.a2) <= 0) return std::nullopt;
    fam.power = *k;
    return fam;
}

AlgebraicSet real_jelonek_set(const PolyMap& F) {
    if (!recognize_real_family(F))
        throw DomainError("real Jelonek set is only available for maps (x, x^(2j)*q(y)) with q quadratic, leading coefficient > 0");
    const auto tv = target_vars(F);
    AlgebraicSet s(tv, SetFlavor::RealSemialgebraic);
    SetComponent c;
    c.generators = {MultiPoly::variable(tv, tv[0])};
    c.signs = {SignCondition{MultiPoly::variable(tv, tv[1]), SignRelation::Ge}};
    c.status = ComponentStatus::Confirmed;
    s.add(c);
    return s;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Proper: return "Proper";
        case Verdict::NonProper: return "NonProper";
        case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

PropernessReport properness_test(const PolyMap& F, const AnalysisOptions& opts) {
    PropernessReport rep;
    ArcSearchParams ap{opts.seed, opts.max_exponent, opts.restarts, 1e-3};
    if (F.n() == 2) {
        try {
            JelonekResult jr = jelonek_analysis(F, opts);
            rep.jelonek = jr.set;
            if (!jr.set.is_empty()) {
                rep.verdict = Verdict::NonProper;
                if (!jr.witnesses.empty()) rep.witness = jr.witnesses.front();
                return rep;
            }
        } catch (const AnalysisError& e) {
            rep.note = e.what();
        }
    }
    if (auto arc = witness_arc_search(F, std::nullopt, ap)) {
        rep.verdict = Verdict::NonProper;
        rep.witness = arc;
        return rep;
    }
    if (F.n() == 2 && rep.jelonek) rep.verdict = Verdict::Proper;
    else {
        rep.verdict = Verdict::Unknown;
        if (rep.note.empty()) rep.note = "no exact backend for n != 2 and no witness arc found";
    }
    return rep;
}

}  // namespace nfih
