#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nfih/algebraic_set.hpp"
#include "nfih/arc.hpp"
#include "nfih/multipoly.hpp"

namespace nfih {

/// Componentwise leading forms. Throws DomainError on a zero component.
PolyMap leading_map(const PolyMap& F);

struct RankReport {
    std::size_t rank = 0;
    /// rank > n - 2
    bool condition = false;
    std::size_t trials_used = 0;
};

/**
 * Generic rank of the Jacobian matrix of the leading map: the largest exact
 * rank seen at random Gaussian-rational points. A rank below n is only
 * reported after escalating to 32 trials.
 */
RankReport leading_rank(const PolyMap& F, std::size_t trials = 8, std::uint64_t seed = 0);

/// Common zeros V of the leading forms.
AlgebraicSet leading_zero_locus(const PolyMap& F);

struct DimBoundReport {
    bool pass = false;
    RankReport rank;
    std::size_t corank = 0;
    /// Estimated real dimension of V on the unit sphere; -1 when no point was found.
    int sphere_dim = -1;
    /// Complex dimension of the cone V implied by sphere_dim (0 for the origin only).
    int complex_dim = 0;
    std::size_t samples = 0;
    std::string note;
};

/// Samples V on the unit sphere and checks it is at most 1-dimensional when the rank condition holds.
DimBoundReport dim_bound_check(const PolyMap& F, std::uint64_t seed = 0);

struct DirectionSet {
    /// Unit vectors in R^{2n}, ordered (Re z1, Im z1, Re z2, ...).
    std::vector<std::vector<double>> directions;
    double tolerance = 1e-4;
    /// Indices of arcs whose direction estimates did not agree.
    std::vector<std::size_t> flagged;
};

DirectionSet tangent_cone_at_infinity(const std::vector<WitnessArc>& arcs);

/// max_i |F^_i(lambda)| over the directions.
double leading_forms_on_directions(const PolyMap& F, const DirectionSet& d);

/// Exact rank over Q(i).
std::size_t exact_rank(std::vector<std::vector<GaussianRational>> m);

}  // namespace nfih
