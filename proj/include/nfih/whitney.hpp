#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nfih/multipoly.hpp"

namespace nfih {

/// Real polynomial map R^k -> R^N given by coordinate polynomials in `params`.
struct RealParametrization {
    std::vector<std::string> params;
    std::vector<MultiPoly> coords;

    std::size_t source_dim() const { return params.size(); }
    std::size_t target_dim() const { return coords.size(); }
    std::vector<double> eval(const std::vector<double>& u) const;
    /// N x k Jacobian, row-major.
    std::vector<std::vector<double>> jacobian(const std::vector<double>& u) const;
};

/// Parses one expression per coordinate over `params` (real coefficients).
RealParametrization make_parametrization(const std::vector<std::string>& params, const std::vector<std::string>& coords);

struct WhitneyReport {
    bool pass = false;
    /// Largest extrapolated sine between a limiting secant and the limiting tangent plane.
    double max_distance = 0;
    std::size_t sequences = 0;
    std::size_t skipped = 0;
    /// Direction in the big stratum's parameter space that realizes max_distance.
    std::vector<double> worst_direction;
    double tolerance = 1e-3;
};

/**
 * Numeric Whitney (b) test at the point small(small_base). Sequences in the
 * big stratum leave big_base along a fixed set of directions and random ones
 * and are stopped at distances 1e-2, 1e-3, 1e-4 from the base point; the
 * matching y_n is the nearest point of the small stratum.
 */
WhitneyReport whitney_b_sample_test(const RealParametrization& big, const RealParametrization& small,
                                    const std::vector<double>& big_base, const std::vector<double>& small_base,
                                    std::size_t random_directions = 8, std::uint64_t seed = 0);

}  // namespace nfih
