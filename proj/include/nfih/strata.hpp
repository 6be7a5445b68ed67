#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nfih/algebraic_set.hpp"
#include "nfih/asymptotic.hpp"
#include "nfih/perversity.hpp"

namespace nfih {

enum class Provenance { Ambient, Jelonek, Sing, JelonekOfRestriction, WhitneyFailureApprox };
std::string to_string(Provenance p);

struct FiltrationLevel {
    std::shared_ptr<const AlgebraicSet> set;
    std::vector<Provenance> provenance;
    bool advisory = false;
    std::string note;
};

/**
 * W_4 = C^2 (as R^4) > W_3 = W_2 > W_1 = W_0 in the target of a plane map.
 * Odd levels share the object of the level below.
 */
struct Filtration {
    std::vector<std::string> vars;
    /// levels[k] is W_k.
    std::vector<FiltrationLevel> levels;
    /// Whitney-failure candidates (advisory, never merged into generators).
    std::vector<std::vector<cd>> whitney_candidates;

    const AlgebraicSet& W(int k) const { return *levels.at(static_cast<std::size_t>(k)).set; }
    std::string to_string() const;
};

Filtration build_filtration(const PolyMap& F, const AnalysisOptions& opts = {});

/// Points where the restriction of F to F^-1(W) is not proper, W a curve in the target.
AlgebraicSet restricted_jelonek(const PolyMap& F, const AlgebraicSet& W);

/// Singular points of a union of plane curves (self-singularities and crossings).
AlgebraicSet singular_points(const AlgebraicSet& W);

}  // namespace nfih
