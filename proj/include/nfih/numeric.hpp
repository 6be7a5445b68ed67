#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "nfih/gaussian_rational.hpp"

namespace nfih {

using cd = std::complex<double>;

/// Seeded generator used by every randomized step.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
    /// Small random rational num/den with |num| <= bound, 1 <= den <= den_bound.
    mpq_class rational(long bound = 9, long den_bound = 7);
    GaussianRational gaussian(bool real_only = false, long bound = 9, long den_bound = 7);
    cd complex_unit_disk();

private:
    std::mt19937_64 engine_;
};

/// Roots of sum_k c[k] z^k (ascending coefficients), polished by Newton steps.
std::vector<cd> polynomial_roots(std::span<const cd> coeffs);

/// Exact univariate polynomial in ascending order with rational coefficients.
using RatPoly = std::vector<mpq_class>;

void trim(RatPoly& p);
RatPoly rat_derivative(const RatPoly& p);
RatPoly rat_remainder(RatPoly a, const RatPoly& b);
RatPoly rat_gcd(RatPoly a, RatPoly b);
/// Number of distinct real roots, by a Sturm sequence.
std::size_t sturm_real_root_count(const RatPoly& p);

struct LeastSquaresResult {
    std::vector<double> x;
    double residual_norm = 0;
    int iterations = 0;
};

/**
 * Levenberg-Marquardt on a real residual vector with a forward-difference
 * Jacobian. Intended for the small systems that arise in arc fitting and
 * projection onto varieties.
 */
LeastSquaresResult levenberg_marquardt(const std::function<std::vector<double>(const std::vector<double>&)>& residual,
                                       std::vector<double> x0, int max_iter = 200, double tol = 1e-14);

}  // namespace nfih
