#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nfih/algebraic_set.hpp"
#include "nfih/arc.hpp"
#include "nfih/multipoly.hpp"

namespace nfih {

struct AnalysisOptions {
    std::uint64_t seed = 0;
    /// Sample points per candidate component.
    std::size_t samples = 10;
    int max_exponent = 6;
    int restarts = 3;
};

/// Names of the target coordinates (alpha, beta), renamed if they clash with the source.
std::vector<std::string> target_vars(const PolyMap& F);

AlgebraicSet singular_locus(const PolyMap& F);

/// F(Sing F) for n = 2, over the target variables.
AlgebraicSet critical_values(const PolyMap& F, const AnalysisOptions& opts = {});

struct JelonekResult {
    AlgebraicSet set;
    /// One confirmed arc per live component, with the point it reaches.
    std::vector<WitnessArc> witnesses;
    std::vector<std::vector<cd>> witness_targets;
};

JelonekResult jelonek_analysis(const PolyMap& F, const AnalysisOptions& opts = {});
AlgebraicSet jelonek_set(const PolyMap& F, const AnalysisOptions& opts = {});

/// F = (x, x^power * q(y)), power even, q a real quadratic with positive leading coefficient.
struct RealFamily {
    unsigned power = 2;
    mpq_class a2, a1, a0;
    /// Minimum value of q.
    mpq_class qmin() const { return a0 - a1 * a1 / (4 * a2); }
};

std::optional<RealFamily> recognize_real_family(const PolyMap& F);

/// Real S_F with sign conditions; only for the recognized family.
AlgebraicSet real_jelonek_set(const PolyMap& F);

enum class FiberMode { Complex, Real };

/// Number of distinct solutions of F = target (exact elimination).
std::size_t fiber_count(const PolyMap& F, std::span<const GaussianRational> target, FiberMode mode,
                        const AnalysisOptions& opts = {});

struct FiberSolution {
    bool positive_dimensional = false;
    std::vector<std::vector<cd>> points;
};

/// Numeric solutions of F = target for n = 2.
FiberSolution solve_fiber(const PolyMap& F, std::span<const cd> target, const AnalysisOptions& opts = {});

struct ArcSearchParams {
    std::uint64_t seed = 0;
    int max_exponent = 6;
    int restarts = 3;
    double min_coeff = 1e-3;
};

/**
 * Looks for t -> gamma(t) with |gamma(t)| -> infinity and F(gamma(t)) ->
 * target as t -> 0+. Without a target any finite limit is accepted.
 */
std::optional<WitnessArc> witness_arc_search(const PolyMap& F, std::optional<std::vector<cd>> target,
                                             const ArcSearchParams& params = {});

/// Residual |F(gamma(t)) - target| at the three validation scales.
std::vector<double> arc_image_errors(const PolyMap& F, const WitnessArc& arc, std::span<const cd> target);

enum class Verdict { Proper, NonProper, Unknown };
std::string to_string(Verdict v);

struct PropernessReport {
    Verdict verdict = Verdict::Unknown;
    std::optional<WitnessArc> witness;
    std::optional<AlgebraicSet> jelonek;
    std::string note;
};

PropernessReport properness_test(const PolyMap& F, const AnalysisOptions& opts = {});

}  // namespace nfih
