#include "nfih/whitney.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "nfih/errors.hpp"
#include "nfih/numeric.hpp"
#include "nfih/parser.hpp"

namespace nfih {

std::vector<double> RealParametrization::eval(const std::vector<double>& u) const {
    std::vector<cd> z(u.begin(), u.end());
    std::vector<double> out;
    for (const auto& c : coords) out.push_back(c.eval_complex(z).real());
    return out;
}

std::vector<std::vector<double>> RealParametrization::jacobian(const std::vector<double>& u) const {
    std::vector<cd> z(u.begin(), u.end());
    std::vector<std::vector<double>> J;
    for (const auto& c : coords) {
        std::vector<double> row;
        for (std::size_t j = 0; j < params.size(); ++j) row.push_back(derivative(c, j).eval_complex(z).real());
        J.push_back(row);
    }
    return J;
}

RealParametrization make_parametrization(const std::vector<std::string>& params, const std::vector<std::string>& coords) {
    RealParametrization p{params, {}};
    for (const auto& c : coords) {
        MultiPoly q = parse_poly(c, params);
        if (!q.is_real()) throw DomainError("parametrizations must have real coefficients");
        p.coords.push_back(q);
    }
    return p;
}

namespace {

double dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(s);
}

// Nearest point of the small stratum, by Gauss-Newton from `start`.
std::vector<double> nearest(const RealParametrization& small, const std::vector<double>& x, std::vector<double> s) {
    if (small.source_dim() == 0) return small.eval(s);
    for (int it = 0; it < 50; ++it) {
        auto y = small.eval(s);
        auto J = small.jacobian(s);
        Eigen::MatrixXd A(static_cast<long>(J.size()), static_cast<long>(s.size()));
        Eigen::VectorXd r(static_cast<long>(J.size()));
        for (std::size_t i = 0; i < J.size(); ++i) {
            r(static_cast<long>(i)) = x[i] - y[i];
            for (std::size_t j = 0; j < s.size(); ++j) A(static_cast<long>(i), static_cast<long>(j)) = J[i][j];
        }
        Eigen::VectorXd step = A.colPivHouseholderQr().solve(r);
        for (std::size_t j = 0; j < s.size(); ++j) s[j] += step(static_cast<long>(j));
        if (step.norm() < 1e-15 * (1 + r.norm())) break;
    }
    return small.eval(s);
}

// Parameter value along u0 + r*dir whose image is at distance d from the base point.
std::optional<std::vector<double>> point_at(const RealParametrization& big, const std::vector<double>& u0,
                                            const std::vector<double>& dir, const std::vector<double>& base, double d) {
    auto at = [&](double r) {
        std::vector<double> u = u0;
        for (std::size_t k = 0; k < u.size(); ++k) u[k] += r * dir[k];
        return u;
    };
    double lo = 0, hi = 1e-6;
    while (dist(big.eval(at(hi)), base) < d) {
        lo = hi;
        hi *= 2;
        if (hi > 10) return std::nullopt;
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (dist(big.eval(at(mid)), base) < d) lo = mid;
        else hi = mid;
    }
    return at(hi);
}

// sin of the angle between v and the column span of J.
double distance_to_span(const std::vector<double>& v, const std::vector<std::vector<double>>& J) {
    Eigen::MatrixXd A(static_cast<long>(J.size()), static_cast<long>(J[0].size()));
    Eigen::VectorXd b(static_cast<long>(v.size()));
    for (std::size_t i = 0; i < J.size(); ++i) {
        b(static_cast<long>(i)) = v[i];
        for (std::size_t j = 0; j < J[0].size(); ++j) A(static_cast<long>(i), static_cast<long>(j)) = J[i][j];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    long rank = 0;
    for (long k = 0; k < s.size(); ++k)
        if (s(k) > 1e-10 * s(0)) ++rank;
    if (rank < static_cast<long>(J[0].size())) throw DomainError("degenerate parametrization (rank-deficient Jacobian at a sample)");
    Eigen::MatrixXd U = svd.matrixU().leftCols(rank);
    Eigen::VectorXd perp = b - U * (U.transpose() * b);
    return perp.norm() / b.norm();
}

}  // namespace

WhitneyReport whitney_b_sample_test(const RealParametrization& big, const RealParametrization& small,
                                    const std::vector<double>& big_base, const std::vector<double>& small_base,
                                    std::size_t random_directions, std::uint64_t seed) {
    if (big.target_dim() != small.target_dim()) throw DomainError("strata live in different spaces");
    if (big_base.size() != big.source_dim() || small_base.size() != small.source_dim())
        throw DomainError("base parameter has the wrong dimension");
    const auto base = small.eval(small_base);
    if (dist(big.eval(big_base), base) > 1e-9 * (1 + dist(base, std::vector<double>(base.size(), 0))))
        throw DomainError("big_base does not map to the base point");
    const std::size_t k = big.source_dim();
    std::vector<std::vector<double>> dirs;
    for (std::size_t i = 0; i < k; ++i)
        for (double sg : {1.0, -1.0}) {
            std::vector<double> d(k, 0);
            d[i] = sg;
            dirs.push_back(d);
        }
    if (k == 2) {
        for (int a = 0; a < 16; ++a) {
            double th = M_PI * (a + 0.5) / 8;
            dirs.push_back({std::cos(th), std::sin(th)});
        }
        for (double sx : {1.0, -1.0})
            for (double sy : {1.0, -1.0}) dirs.push_back({sx * M_SQRT1_2, sy * M_SQRT1_2});
    }
    Rng rng(seed);
    for (std::size_t r = 0; r < random_directions; ++r) {
        std::vector<double> d(k);
        double nrm = 0;
        for (auto& e : d) {
            e = rng.uniform(-1, 1);
            nrm += e * e;
        }
        for (auto& e : d) e /= std::sqrt(nrm);
        dirs.push_back(d);
    }

    WhitneyReport rep;
    for (const auto& dir : dirs) {
        std::vector<double> sines;
        bool skip = false;
        for (double d : {1e-2, 1e-3, 1e-4}) {
            auto u = point_at(big, big_base, dir, base, d);
            if (!u) {
                skip = true;
                break;
            }
            auto x = big.eval(*u);
            auto y = nearest(small, x, small_base);
            std::vector<double> sec(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) sec[i] = x[i] - y[i];
            double len = dist(x, y);
            if (len < 1e-9 * d) {
                // The sample lies on the small stratum.
                skip = true;
                break;
            }
            sines.push_back(distance_to_span(sec, big.jacobian(*u)));
        }
        if (skip) {
            ++rep.skipped;
            continue;
        }
        ++rep.sequences;
        double lim = std::max(0.0, (10 * sines[2] - sines[1]) / 9);
        if (lim > rep.max_distance || rep.worst_direction.empty()) {
            rep.max_distance = std::max(rep.max_distance, lim);
            if (lim >= rep.max_distance) rep.worst_direction = dir;
        }
    }
    if (rep.sequences == 0) throw DomainError("no admissible sample sequences");
    rep.pass = rep.max_distance < rep.tolerance;
    return rep;
}

}  // namespace nfih
