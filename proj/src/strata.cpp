#include "nfih/strata.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "nfih/errors.hpp"
#include "nfih/whitney.hpp"

namespace nfih {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::Ambient: return "ambient";
        case Provenance::Jelonek: return "jelonek";
        case Provenance::Sing: return "sing";
        case Provenance::JelonekOfRestriction: return "jelonek-of-restriction";
        case Provenance::WhitneyFailureApprox: return "whitney-failure-approx";
    }
    return "?";
}

std::string Filtration::to_string() const {
    std::string s;
    for (int k = static_cast<int>(levels.size()) - 1; k >= 0; --k) {
        const auto& L = levels[static_cast<std::size_t>(k)];
        s += "W" + std::to_string(k) + ": ";
        if (L.provenance.size() == 1 && L.provenance[0] == Provenance::Ambient) s += "whole space";
        else s += L.set->to_string();
        std::string prov;
        for (auto p : L.provenance) prov += (prov.empty() ? "" : ",") + nfih::to_string(p);
        if (!prov.empty()) s += " [" + prov + "]";
        if (L.advisory) s += " (advisory)";
        s += "\n";
    }
    return s;
}

AlgebraicSet singular_points(const AlgebraicSet& W) {
    const auto& tv = W.ambient_vars();
    AlgebraicSet out(tv);
    std::vector<MultiPoly> curves;
    for (const auto& c : W.live_components())
        if (c.generators.size() == 1 && !c.generators[0].is_constant()) curves.push_back(c.generators[0]);
    auto nonempty = [&](std::vector<MultiPoly> gens) {
        std::erase_if(gens, [](const MultiPoly& p) { return p.is_zero(); });
        for (const auto& g : gens)
            if (g.is_constant()) return false;
        SetComponent c;
        c.generators = gens;
        Rng rng(0);
        return !sample_component(c, tv, 1, rng).empty();
    };
    for (const auto& g : curves) {
        std::vector<MultiPoly> gens{g, derivative(g, 0), derivative(g, 1)};
        if (nonempty(gens)) {
            SetComponent c;
            std::erase_if(gens, [](const MultiPoly& p) { return p.is_zero(); });
            c.generators = gens;
            c.status = ComponentStatus::Confirmed;
            c.note = "singular point of " + g.to_string();
            out.add(c);
        }
    }
    for (std::size_t i = 0; i < curves.size(); ++i)
        for (std::size_t j = i + 1; j < curves.size(); ++j)
            if (nonempty({curves[i], curves[j]})) {
                SetComponent c;
                c.generators = {curves[i], curves[j]};
                c.status = ComponentStatus::Confirmed;
                c.note = "crossing";
                out.add(c);
            }
    return out;
}

AlgebraicSet restricted_jelonek(const PolyMap& F, const AlgebraicSet& W) {
    if (F.n() != 2) throw DomainError("restricted analysis needs n = 2");
    const auto& tv = W.ambient_vars();
    std::vector<std::string> ring4 = F.vars();
    ring4.insert(ring4.end(), tv.begin(), tv.end());
    std::vector<std::string> ring3 = F.vars();
    ring3.push_back("tau_");
    const MultiPoly tau = MultiPoly::variable(ring3, "tau_");
    AlgebraicSet out(tv);
    for (const auto& D : W.live_components()) {
        if (D.generators.size() != 1) continue;
        const MultiPoly& g = D.generators[0];
        MultiPoly h = g.with_vars(ring4).substitute(2, F[0].with_vars(ring4)).substitute(3, F[1].with_vars(ring4));
        h = h.with_vars(F.vars());
        if (h.is_zero()) throw AnalysisError("the image of F lies in " + g.to_string());
        if (h.is_constant()) continue;
        for (const MultiPoly& c0 : split_components(h)) {
            const MultiPoly C = c0.with_vars(ring3);
            const std::size_t w = c0.depends_on(1) ? 1 : 0;
            const std::size_t v = 1 - w;
            std::optional<MultiPoly> value[2];
            std::vector<MultiPoly> cands[2];
            for (std::size_t k = 0; k < 2; ++k) {
                MultiPoly R = resultant(C, F[k].with_vars(ring3) - tau, w);
                MultiPoly cont = content_in(R, v);
                MultiPoly part = *exact_divide(R, cont);
                auto in_target = [&](const MultiPoly& p) {
                    // p only involves tau; rename it to the k-th target variable.
                    std::vector<std::string> r{tv[k]};
                    MultiPoly q(r);
                    for (const auto& [e, cf] : p.terms()) q.add_term({e[2]}, cf);
                    return q.with_vars(tv);
                };
                if (!part.depends_on(2)) {
                    value[k] = in_target(squarefree(cont));
                    continue;
                }
                std::vector<MultiPoly> lcs{R.leading_coeff_in(v)};
                if (c0.depends_on(v)) lcs.push_back(resultant(C, F[k].with_vars(ring3) - tau, v).leading_coeff_in(w));
                for (const auto& lc : lcs)
                    if (lc.depends_on(2)) cands[k].push_back(in_target(squarefree(lc)));
            }
            std::vector<MultiPoly> base{g};
            for (std::size_t k = 0; k < 2; ++k)
                if (value[k]) base.push_back(*value[k]);
            if (value[0] && value[1]) {
                SetComponent pc;
                pc.generators = {*value[0], *value[1]};
                pc.status = ComponentStatus::Confirmed;
                pc.note = "F is constant on " + c0.to_string() + " = 0";
                out.add(pc);
                continue;
            }
            for (std::size_t k = 0; k < 2; ++k)
                for (const auto& cand : cands[k]) {
                    SetComponent pc;
                    pc.generators = base;
                    pc.generators.push_back(cand);
                    pc.status = ComponentStatus::Unverified;
                    pc.note = "leading-coefficient candidate on " + c0.to_string() + " = 0";
                    out.add(pc);
                }
        }
    }
    return out;
}

namespace {

// Real parametrization of a plane curve that is linear in one coordinate
// with constant coefficient, as a map R^2 -> R^4.
std::optional<std::pair<RealParametrization, std::size_t>> curve_parametrization(const MultiPoly& g,
                                                                                  const std::vector<std::string>& tv) {
    for (std::size_t s = 0; s < 2; ++s) {
        if (g.degree_in(s) != 1 || !g.coeff_in(s, 1).is_constant()) continue;
        const std::size_t f = 1 - s;
        MultiPoly solved = g.coeff_in(s, 0) * (GaussianRational(-1) / g.coeff_in(s, 1).constant_term());
        // Write solved(a1 + i a2) as real and imaginary parts in (a1, a2).
        std::vector<std::string> ring{tv[0], tv[1], "a1_", "a2_"};
        std::vector<std::string> pr{"a1_", "a2_"};
        MultiPoly arg = MultiPoly::variable(ring, "a1_") + MultiPoly::variable(ring, "a2_") * GaussianRational::i();
        MultiPoly val = solved.with_vars(ring).substitute(f, arg).with_vars(pr);
        MultiPoly re(pr), im(pr);
        for (const auto& [e, c] : val.terms()) {
            re.add_term(e, GaussianRational(c.re()));
            im.add_term(e, GaussianRational(c.im()));
        }
        RealParametrization p{pr, std::vector<MultiPoly>(4, MultiPoly(pr))};
        p.coords[2 * f] = MultiPoly::variable(pr, "a1_");
        p.coords[2 * f + 1] = MultiPoly::variable(pr, "a2_");
        p.coords[2 * s] = re;
        p.coords[2 * s + 1] = im;
        return std::make_pair(p, f);
    }
    return std::nullopt;
}

}  // namespace

Filtration build_filtration(const PolyMap& F, const AnalysisOptions& opts) {
    if (F.n() != 2) throw DomainError("filtrations are built for n = 2 only");
    Filtration fl;
    fl.vars = target_vars(F);
    const auto& tv = fl.vars;

    auto whole = std::make_shared<AlgebraicSet>(tv);
    whole->add(SetComponent{{}, {}, ComponentStatus::Confirmed, "whole space"});

    JelonekResult jr = jelonek_analysis(F, opts);
    auto w2 = std::make_shared<AlgebraicSet>(tv);
    for (const auto& c : jr.set.components())
        if (c.status == ComponentStatus::Confirmed) w2->add(c);

    auto w0 = std::make_shared<AlgebraicSet>(tv);
    std::vector<Provenance> prov0;
    AlgebraicSet sing = singular_points(*w2);
    for (const auto& c : sing.components()) w0->add(c);
    if (!sing.is_empty()) prov0.push_back(Provenance::Sing);
    AlgebraicSet rj = restricted_jelonek(F, *w2);
    for (const auto& c : rj.components()) w0->add(c);
    if (!rj.is_empty()) prov0.push_back(Provenance::JelonekOfRestriction);

    FiltrationLevel L4{whole, {Provenance::Ambient}, false, ""};
    FiltrationLevel L2{w2, {Provenance::Jelonek}, false, ""};
    FiltrationLevel L0{w0, prov0, false, ""};

    // Whitney (b) sampling for (W2 \ W0, points of W0) and (complement, W2).
    Rng rng(opts.seed);
    std::vector<std::string> p4{"p1", "p2", "p3", "p4"};
    RealParametrization top{p4, {}};
    for (const auto& v : p4) top.coords.push_back(MultiPoly::variable(p4, v));
    std::size_t tested = 0;
    for (const auto& c : w2->live_components()) {
        auto param = curve_parametrization(c.generators[0], tv);
        if (!param) continue;
        const auto& [P, free] = *param;
        auto samples = sample_component(c, tv, 2, rng);
        for (const auto& s : samples) {
            std::vector<double> sb{s.z[free].real(), s.z[free].imag()};
            auto base = P.eval(sb);
            auto rep = whitney_b_sample_test(top, P, base, sb, 4, opts.seed);
            ++tested;
            if (!rep.pass) fl.whitney_candidates.push_back(s.z);
        }
        for (const auto& pc : w0->live_components()) {
            SetComponent copy = pc;
            Rng r2(opts.seed);
            for (const auto& s : sample_component(copy, tv, 4, r2)) {
                if (relative_residual(c.generators[0], s.z) > 1e-8) continue;
                std::vector<double> bb{s.z[free].real(), s.z[free].imag()};
                RealParametrization pt{{}, {}};
                for (double v : P.eval(bb)) pt.coords.push_back(MultiPoly::constant({}, GaussianRational(mpq_class(v))));
                auto rep = whitney_b_sample_test(P, pt, bb, {}, 4, opts.seed);
                ++tested;
                if (!rep.pass) fl.whitney_candidates.push_back(s.z);
            }
        }
    }
    if (!fl.whitney_candidates.empty()) {
        L0.provenance.push_back(Provenance::WhitneyFailureApprox);
        L0.advisory = true;
    }
    L0.note = "Whitney sampler ran on " + std::to_string(tested) + " base points, " +
              std::to_string(fl.whitney_candidates.size()) + " failures (advisory)";

    // Descending check: points of W0 must lie on W2.
    for (const auto& pc : w0->live_components()) {
        Rng r3(opts.seed);
        for (const auto& s : sample_component(pc, tv, 4, r3))
            if (!w2->contains(s.z)) L0.note += "; warning: a point of W0 is not on W2";
    }
    fl.levels = {L0, L0, L2, L2, L4};
    return fl;
}

}  // namespace nfih
