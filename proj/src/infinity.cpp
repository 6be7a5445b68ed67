#include "nfih/infinity.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "nfih/errors.hpp"

namespace nfih {

PolyMap leading_map(const PolyMap& F) {
    std::vector<MultiPoly> out;
    for (const auto& p : F.components()) {
        if (p.is_zero()) throw DomainError("leading map of a zero component");
        out.push_back(leading_form(p));
    }
    return PolyMap(out);
}

std::size_t exact_rank(std::vector<std::vector<GaussianRational>> m) {
    std::size_t rank = 0;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (m[r][c].is_zero()) continue;
            GaussianRational f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

RankReport leading_rank(const PolyMap& F, std::size_t trials, std::uint64_t seed) {
    const PolyMap L = leading_map(F);
    const std::size_t n = F.n();
    std::vector<std::vector<MultiPoly>> D(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) D[i].push_back(derivative(L[i], j));
    Rng rng(seed);
    RankReport rep;
    const std::size_t limit = std::max<std::size_t>(trials, 32);
    for (std::size_t t = 0; t < limit; ++t) {
        if (t >= trials && rep.rank == n) break;
        std::vector<GaussianRational> pt;
        for (std::size_t k = 0; k < n; ++k) pt.push_back(rng.gaussian(false, 9, 5));
        std::vector<std::vector<GaussianRational>> m(n, std::vector<GaussianRational>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m[i][j] = evaluate(D[i][j], pt);
        rep.rank = std::max(rep.rank, exact_rank(m));
        rep.trials_used = t + 1;
    }
    rep.condition = static_cast<long>(rep.rank) > static_cast<long>(n) - 2;
    return rep;
}

AlgebraicSet leading_zero_locus(const PolyMap& F) {
    return AlgebraicSet::from_generators(F.vars(), leading_map(F).components());
}

namespace {

std::vector<cd> to_complex(const std::vector<double>& x) {
    std::vector<cd> z;
    for (std::size_t k = 0; k + 1 < x.size(); k += 2) z.emplace_back(x[k], x[k + 1]);
    return z;
}

// Projects x onto V intersected with the unit sphere by least squares.
std::optional<std::vector<double>> project(const PolyMap& L, std::vector<double> x) {
    auto residual = [&](const std::vector<double>& v) {
        auto z = to_complex(v);
        std::vector<double> r;
        double nrm = 0;
        for (double e : v) nrm += e * e;
        for (const auto& p : L.components()) {
            cd f = p.eval_complex(z);
            r.push_back(f.real());
            r.push_back(f.imag());
        }
        r.push_back(nrm - 1);
        return r;
    };
    auto res = levenberg_marquardt(residual, std::move(x), 200, 1e-13);
    if (res.residual_norm > 1e-10) return std::nullopt;
    double nrm = 0;
    for (double e : res.x) nrm += e * e;
    for (double& e : res.x) e /= std::sqrt(nrm);
    return res.x;
}

}  // namespace

DimBoundReport dim_bound_check(const PolyMap& F, std::uint64_t seed) {
    DimBoundReport rep;
    rep.rank = leading_rank(F, 8, seed);
    rep.corank = F.n() - rep.rank.rank;
    const PolyMap L = leading_map(F);
    const std::size_t n = F.n();
    Rng rng(seed);
    std::vector<std::vector<double>> pts;
    for (int attempt = 0; attempt < 60 && pts.size() < 12; ++attempt) {
        std::vector<double> x;
        for (std::size_t k = 0; k < 2 * n; ++k) x.push_back(rng.uniform(-1, 1));
        if (auto p = project(L, x)) pts.push_back(*p);
    }
    rep.samples = pts.size();
    if (pts.empty()) {
        rep.sphere_dim = -1;
        rep.complex_dim = 0;
    } else {
        int best = 0;
        for (const auto& p : pts) {
            // Local PCA of nearby projected points.
            std::vector<std::vector<double>> cloud;
            for (int k = 0; k < 4 * static_cast<int>(n) + 4; ++k) {
                std::vector<double> q = p;
                for (double& e : q) e += 1e-3 * rng.uniform(-1, 1);
                if (auto r = project(L, q)) cloud.push_back(*r);
            }
            if (cloud.size() < 2) continue;
            Eigen::MatrixXd D(static_cast<long>(cloud.size()), static_cast<long>(2 * n));
            for (std::size_t i = 0; i < cloud.size(); ++i)
                for (std::size_t j = 0; j < 2 * n; ++j) D(static_cast<long>(i), static_cast<long>(j)) = cloud[i][j] - p[j];
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(D);
            const auto& s = svd.singularValues();
            int d = 0;
            for (long k = 0; k < s.size(); ++k)
                if (s(k) > 0.1 * s(0) && s(0) > 1e-9) ++d;
            best = std::max(best, d);
        }
        rep.sphere_dim = best;
        rep.complex_dim = (best + 1) / 2;
    }
    if (!rep.rank.condition) {
        rep.pass = true;
        rep.note = "rank hypothesis not met; bound not required";
    } else {
        rep.pass = rep.sphere_dim <= 1;
    }
    return rep;
}

DirectionSet tangent_cone_at_infinity(const std::vector<WitnessArc>& arcs) {
    if (arcs.empty()) throw DomainError("no arcs given");
    DirectionSet out;
    auto dir = [](const WitnessArc& a, double t) {
        std::vector<double> v;
        double nrm = 0;
        for (cd z : a.eval(t)) {
            v.push_back(z.real());
            v.push_back(z.imag());
            nrm += std::norm(z);
        }
        for (double& e : v) e /= std::sqrt(nrm);
        return v;
    };
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        auto d2 = dir(arcs[k], 1e-2), d3 = dir(arcs[k], 1e-3), d4 = dir(arcs[k], 1e-4);
        std::vector<double> r1(d2.size()), r2(d2.size());
        double gap = 0, nrm = 0;
        for (std::size_t i = 0; i < d2.size(); ++i) {
            r1[i] = (10 * d3[i] - d2[i]) / 9;
            r2[i] = (10 * d4[i] - d3[i]) / 9;
            gap = std::max(gap, std::abs(r1[i] - r2[i]));
            nrm += r2[i] * r2[i];
        }
        if (gap > out.tolerance) {
            out.flagged.push_back(k);
            continue;
        }
        for (double& e : r2) e /= std::sqrt(nrm);
        bool dup = false;
        for (const auto& d : out.directions) {
            double m = 0;
            for (std::size_t i = 0; i < d.size(); ++i) m = std::max(m, std::abs(d[i] - r2[i]));
            if (m <= out.tolerance) dup = true;
        }
        if (!dup) out.directions.push_back(r2);
    }
    return out;
}

double leading_forms_on_directions(const PolyMap& F, const DirectionSet& d) {
    const PolyMap L = leading_map(F);
    double worst = 0;
    for (const auto& v : d.directions) {
        auto z = to_complex(v);
        for (const auto& p : L.components()) worst = std::max(worst, std::abs(p.eval_complex(z)));
    }
    return worst;
}

}  // namespace nfih
