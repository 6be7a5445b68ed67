#include "nfih/numeric.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace nfih {

mpq_class Rng::rational(long bound, long den_bound) {
    long num = integer(-bound, bound);
    long den = integer(1, den_bound);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

GaussianRational Rng::gaussian(bool real_only, long bound, long den_bound) {
    mpq_class re = rational(bound, den_bound);
    mpq_class im = real_only ? mpq_class(0) : rational(bound, den_bound);
    return {re, im};
}

cd Rng::complex_unit_disk() {
    double r = std::sqrt(uniform(0.0, 1.0));
    double th = uniform(0.0, 2 * M_PI);
    return std::polar(r, th);
}

std::vector<cd> polynomial_roots(std::span<const cd> coeffs) {
    std::vector<cd> c(coeffs.begin(), coeffs.end());
    double scale = 0;
    for (const auto& v : c) scale = std::max(scale, std::abs(v));
    if (scale == 0) return {};
    while (!c.empty() && std::abs(c.back()) <= 1e-300) c.pop_back();
    if (c.size() <= 1) return {};
    const int n = static_cast<int>(c.size()) - 1;
    std::vector<cd> roots;
    // Zero roots are peeled off exactly.
    std::size_t zeros = 0;
    while (zeros < c.size() && c[zeros] == cd(0)) ++zeros;
    for (std::size_t k = 0; k < zeros; ++k) roots.emplace_back(0);
    std::vector<cd> rest(c.begin() + static_cast<long>(zeros), c.end());
    const int m = static_cast<int>(rest.size()) - 1;
    if (m >= 1) {
        Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(m, m);
        for (int i = 1; i < m; ++i) comp(i, i - 1) = 1;
        for (int i = 0; i < m; ++i) comp(i, m - 1) = -rest[static_cast<std::size_t>(i)] / rest.back();
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
        for (int i = 0; i < m; ++i) roots.push_back(solver.eigenvalues()(i));
    }
    auto eval = [&](cd z, cd& dz) {
        cd p = 0;
        dz = 0;
        for (int k = n; k >= 0; --k) {
            dz = dz * z + p;
            p = p * z + c[static_cast<std::size_t>(k)];
        }
        return p;
    };
    for (auto& z : roots) {
        for (int it = 0; it < 8; ++it) {
            cd d;
            cd p = eval(z, d);
            if (std::abs(d) < 1e-300) break;
            cd step = p / d;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            z -= step;
            if (std::abs(step) <= 1e-16 * (1 + std::abs(z))) break;
        }
    }
    return roots;
}

void trim(RatPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

RatPoly rat_derivative(const RatPoly& p) {
    RatPoly d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
    trim(d);
    return d;
}

RatPoly rat_remainder(RatPoly a, const RatPoly& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= f * b[k];
        a.pop_back();
        trim(a);
    }
    return a;
}

RatPoly rat_gcd(RatPoly a, RatPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        RatPoly r = rat_remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        mpq_class lc = a.back();
        for (auto& v : a) v /= lc;
    }
    return a;
}

namespace {

int sign_at_infinity(const RatPoly& p, bool positive) {
    if (p.empty()) return 0;
    int s = sgn(p.back());
    if (!positive && (p.size() - 1) % 2 == 1) s = -s;
    return s;
}

}  // namespace

std::size_t sturm_real_root_count(const RatPoly& p0) {
    RatPoly p = p0;
    trim(p);
    if (p.size() <= 1) return 0;
    // Work with the squarefree part so the count is of distinct roots.
    RatPoly g = rat_gcd(p, rat_derivative(p));
    if (g.size() > 1) {
        RatPoly q;
        RatPoly a = p;
        // Exact division a / g.
        q.assign(a.size() - g.size() + 1, 0);
        while (a.size() >= g.size() && !a.empty()) {
            mpq_class f = a.back() / g.back();
            std::size_t shift = a.size() - g.size();
            q[shift] = f;
            for (std::size_t k = 0; k < g.size(); ++k) a[k + shift] -= f * g[k];
            a.pop_back();
            trim(a);
        }
        p = q;
    }
    std::vector<RatPoly> seq{p, rat_derivative(p)};
    while (seq.back().size() > 1) {
        RatPoly r = rat_remainder(seq[seq.size() - 2], seq.back());
        if (r.empty()) break;
        for (auto& v : r) v = -v;
        seq.push_back(r);
    }
    auto variations = [&](bool positive) {
        int count = 0, last = 0;
        for (const auto& s : seq) {
            int v = sign_at_infinity(s, positive);
            if (v == 0) continue;
            if (last != 0 && v != last) ++count;
            last = v;
        }
        return count;
    };
    return static_cast<std::size_t>(variations(false) - variations(true));
}

LeastSquaresResult levenberg_marquardt(const std::function<std::vector<double>(const std::vector<double>&)>& residual,
                                       std::vector<double> x, int max_iter, double tol) {
    const std::size_t n = x.size();
    std::vector<double> r = residual(x);
    auto norm2 = [](const std::vector<double>& v) {
        double s = 0;
        for (double e : v) s += e * e;
        return s;
    };
    double cost = norm2(r);
    double lambda = 1e-3;
    int it = 0;
    for (; it < max_iter && cost > tol * tol; ++it) {
        const std::size_t m = r.size();
        Eigen::MatrixXd J(m, n);
        for (std::size_t j = 0; j < n; ++j) {
            double h = 1e-7 * std::max(1.0, std::abs(x[j]));
            std::vector<double> xp = x;
            xp[j] += h;
            std::vector<double> rp = residual(xp);
            for (std::size_t i = 0; i < m; ++i) J(static_cast<long>(i), static_cast<long>(j)) = (rp[i] - r[i]) / h;
        }
        Eigen::VectorXd rv = Eigen::Map<const Eigen::VectorXd>(r.data(), static_cast<long>(m));
        Eigen::MatrixXd JtJ = J.transpose() * J;
        Eigen::VectorXd g = J.transpose() * rv;
        bool improved = false;
        for (int inner = 0; inner < 12; ++inner) {
            Eigen::MatrixXd A = JtJ;
            for (std::size_t j = 0; j < n; ++j)
                A(static_cast<long>(j), static_cast<long>(j)) += lambda * (1.0 + JtJ(static_cast<long>(j), static_cast<long>(j)));
            Eigen::VectorXd step = A.ldlt().solve(-g);
            std::vector<double> xn = x;
            for (std::size_t j = 0; j < n; ++j) xn[j] += step(static_cast<long>(j));
            std::vector<double> rn = residual(xn);
            double cn = norm2(rn);
            if (std::isfinite(cn) && cn < cost) {
                x = std::move(xn);
                r = std::move(rn);
                cost = cn;
                lambda = std::max(lambda / 5, 1e-12);
                improved = true;
                break;
            }
            lambda *= 8;
        }
        if (!improved) break;
    }
    return {x, std::sqrt(cost), it};
}

}  // namespace nfih
