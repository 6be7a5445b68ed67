#include "nfih/algebraic_set.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nfih/errors.hpp"

namespace nfih {

std::string to_string(SignRelation r) {
    switch (r) {
        case SignRelation::Ge: return ">=";
        case SignRelation::Gt: return ">";
        case SignRelation::Eq: return "=";
    }
    return "?";
}

std::string to_string(ComponentStatus s) {
    switch (s) {
        case ComponentStatus::Unverified: return "unverified";
        case ComponentStatus::Confirmed: return "confirmed";
        case ComponentStatus::Spurious: return "spurious";
    }
    return "?";
}

std::string SignCondition::to_string() const { return poly.to_string() + " " + nfih::to_string(relation) + " 0"; }

std::string SetComponent::to_string() const {
    std::string s;
    for (const auto& g : generators) {
        if (!s.empty()) s += ", ";
        s += g.to_string() + " = 0";
    }
    for (const auto& c : signs) s += ", " + c.to_string();
    return s;
}

AlgebraicSet AlgebraicSet::from_generators(std::vector<std::string> vars, std::vector<MultiPoly> gens) {
    AlgebraicSet s(std::move(vars));
    SetComponent c;
    c.generators = std::move(gens);
    s.add(std::move(c));
    return s;
}

void AlgebraicSet::add(SetComponent c) {
    for (auto& g : c.generators) {
        if (g.is_zero()) throw DomainError("zero generator");
        g = g.with_vars(vars_);
    }
    for (auto& sc : c.signs) sc.poly = sc.poly.with_vars(vars_);
    components_.push_back(std::move(c));
}

std::vector<SetComponent> AlgebraicSet::live_components() const {
    std::vector<SetComponent> out;
    for (const auto& c : components_)
        if (c.status != ComponentStatus::Spurious) out.push_back(c);
    return out;
}

std::vector<MultiPoly> AlgebraicSet::generators() const {
    std::vector<MultiPoly> out;
    for (const auto& c : live_components())
        for (const auto& g : c.generators) out.push_back(g);
    return out;
}

std::vector<SignCondition> AlgebraicSet::sign_conditions() const {
    std::vector<SignCondition> out;
    for (const auto& c : live_components())
        for (const auto& s : c.signs) out.push_back(s);
    return out;
}

namespace {

bool component_is_empty(const SetComponent& c) {
    return std::any_of(c.generators.begin(), c.generators.end(), [](const MultiPoly& g) { return g.is_constant(); });
}

}  // namespace

bool AlgebraicSet::is_empty() const {
    for (const auto& c : components_)
        if (c.status != ComponentStatus::Spurious && !component_is_empty(c)) return false;
    return true;
}

double relative_residual(const MultiPoly& p, std::span<const cd> z) {
    double scale = 0;
    for (const auto& [e, c] : p.terms()) {
        double m = std::abs(c.to_complex());
        for (std::size_t k = 0; k < e.size(); ++k) m *= std::pow(std::abs(z[k]), e[k]);
        scale += m;
    }
    if (scale == 0) return 0;
    return std::abs(p.eval_complex(z)) / scale;
}

bool AlgebraicSet::contains(std::span<const cd> point, double tol) const {
    for (const auto& c : components_) {
        if (c.status == ComponentStatus::Spurious || component_is_empty(c)) continue;
        bool ok = true;
        for (const auto& g : c.generators)
            if (relative_residual(g, point) > tol) ok = false;
        for (const auto& s : c.signs) {
            cd v = s.poly.eval_complex(point);
            if (std::abs(v.imag()) > tol * (1 + std::abs(v))) ok = false;
            if (s.relation == SignRelation::Ge && v.real() < -tol) ok = false;
            if (s.relation == SignRelation::Gt && v.real() <= tol) ok = false;
            if (s.relation == SignRelation::Eq && std::abs(v.real()) > tol) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

bool AlgebraicSet::contains_exact(std::span<const GaussianRational> point) const {
    for (const auto& c : components_) {
        if (c.status == ComponentStatus::Spurious || component_is_empty(c)) continue;
        bool ok = true;
        for (const auto& g : c.generators)
            if (!evaluate(g, point).is_zero()) ok = false;
        for (const auto& s : c.signs) {
            GaussianRational v = evaluate(s.poly, point);
            if (!v.is_real()) ok = false;
            int sg = sgn(v.re());
            if (s.relation == SignRelation::Ge && sg < 0) ok = false;
            if (s.relation == SignRelation::Gt && sg <= 0) ok = false;
            if (s.relation == SignRelation::Eq && sg != 0) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

std::string AlgebraicSet::to_string() const {
    if (is_empty()) return "empty";
    std::string s;
    for (const auto& c : live_components()) {
        if (component_is_empty(c)) continue;
        if (!s.empty()) s += " | ";
        s += "{" + c.to_string() + "}";
    }
    return s;
}

std::vector<cd> specialize(const MultiPoly& p, std::size_t free_var, std::span<const cd> point) {
    std::vector<cd> out(static_cast<std::size_t>(std::max(0, p.degree_in(free_var))) + 1, cd(0));
    for (const auto& [e, c] : p.terms()) {
        cd v = c.to_complex();
        for (std::size_t k = 0; k < e.size(); ++k)
            if (k != free_var && e[k]) v *= std::pow(point[k], static_cast<int>(e[k]));
        out[e[free_var]] += v;
    }
    return out;
}

namespace {

std::vector<cd> roots_of(std::vector<cd> c) {
    double scale = 0;
    for (const auto& v : c) scale = std::max(scale, std::abs(v));
    while (!c.empty() && std::abs(c.back()) <= 1e-12 * scale) c.pop_back();
    return polynomial_roots(c);
}

}  // namespace

std::vector<std::vector<cd>> solve_two(const MultiPoly& p, const MultiPoly& q) {
    if (p.nvars() != 2) throw DomainError("solve_two needs two variables");
    std::vector<std::vector<cd>> out;
    // Eliminate the second variable unless neither uses it.
    std::size_t elim = (p.depends_on(1) || q.depends_on(1)) ? 1 : 0;
    std::size_t keep = 1 - elim;
    MultiPoly r = (p.depends_on(elim) || q.depends_on(elim)) ? resultant(p, q, elim) : p;
    if (r.is_zero()) throw DomainError("infinitely many common zeros");
    std::vector<cd> probe(2, cd(0));
    std::vector<cd> rc = specialize(r, keep, probe);
    for (cd a : roots_of(rc)) {
        std::vector<cd> pt(2, cd(0));
        pt[keep] = a;
        const MultiPoly& base = p.depends_on(elim) ? p : q;
        const MultiPoly& other = p.depends_on(elim) ? q : p;
        std::vector<cd> cands;
        if (base.depends_on(elim)) cands = roots_of(specialize(base, elim, pt));
        else cands.push_back(0);
        for (cd b : cands) {
            pt[elim] = b;
            if (relative_residual(p, pt) < 1e-6 && relative_residual(other, pt) < 1e-6) out.push_back(pt);
        }
    }
    return out;
}

std::vector<SamplePoint> sample_component(const SetComponent& c, const std::vector<std::string>& vars,
                                          std::size_t count, Rng& rng, bool real_only) {
    if (vars.size() != 2) throw DomainError("sampling implemented for two ambient variables");
    std::vector<MultiPoly> gens;
    for (const auto& g : c.generators) {
        if (g.is_constant()) return {};
        gens.push_back(g.with_vars(vars));
    }
    std::vector<SamplePoint> out;
    if (gens.empty()) {
        for (std::size_t k = 0; k < count; ++k) {
            std::vector<GaussianRational> e{rng.gaussian(real_only), rng.gaussian(real_only)};
            out.push_back({{e[0].to_complex(), e[1].to_complex()}, e});
        }
        return out;
    }
    if (gens.size() >= 2) {
        for (const auto& pt : solve_two(gens[0], gens[1])) {
            bool ok = true;
            for (std::size_t k = 2; k < gens.size(); ++k)
                if (relative_residual(gens[k], pt) > 1e-6) ok = false;
            if (ok && out.size() < count) {
                SamplePoint s{pt, std::nullopt};
                // Recover exact coordinates when they are small rationals.
                std::vector<GaussianRational> ex;
                for (cd z : pt) {
                    mpq_class re(std::round(z.real() * 5040), 5040), im(std::round(z.imag() * 5040), 5040);
                    re.canonicalize();
                    im.canonicalize();
                    ex.emplace_back(re, im);
                }
                bool exact = true;
                for (const auto& g : gens)
                    if (!evaluate(g, ex).is_zero()) exact = false;
                if (exact) s.exact = ex;
                out.push_back(s);
            }
        }
        return out;
    }
    const MultiPoly& g = gens[0];
    // Solve for a variable in which g is linear when possible.
    std::size_t w = g.depends_on(1) ? 1 : 0;
    if (g.depends_on(0) && g.degree_in(0) == 1 && g.degree_in(1) != 1) w = 0;
    std::size_t o = 1 - w;
    for (std::size_t attempt = 0; attempt < 20 * count && out.size() < count; ++attempt) {
        GaussianRational a = rng.gaussian(real_only);
        MultiPoly u = g.substitute(o, a);
        if (u.degree_in(w) != g.degree_in(w)) continue;
        std::vector<GaussianRational> ex(2);
        ex[o] = a;
        if (u.degree_in(w) == 1) {
            GaussianRational lc = u.coeff_in(w, 1).constant_term();
            GaussianRational c0 = u.coeff_in(w, 0).constant_term();
            ex[w] = -c0 / lc;
            if (real_only && !ex[w].is_real()) continue;
            out.push_back({{ex[0].to_complex(), ex[1].to_complex()}, ex});
            continue;
        }
        std::vector<cd> pt(2);
        pt[o] = a.to_complex();
        auto rs = roots_of(specialize(g, w, pt));
        if (rs.empty()) continue;
        cd r = rs[static_cast<std::size_t>(rng.integer(0, static_cast<long>(rs.size()) - 1))];
        if (real_only) {
            bool found = false;
            for (cd z : rs)
                if (std::abs(z.imag()) < 1e-9 * (1 + std::abs(z))) {
                    r = {z.real(), 0};
                    found = true;
                    break;
                }
            if (!found) continue;
        }
        pt[w] = r;
        out.push_back({pt, std::nullopt});
    }
    return out;
}

}  // namespace nfih
