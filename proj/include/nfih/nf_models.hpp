#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nfih/algebraic_set.hpp"
#include "nfih/asymptotic.hpp"
#include "nfih/filtered_complex.hpp"
#include "nfih/ih_engine.hpp"
#include "nfih/infinity.hpp"

namespace nfih {

enum class ModelKind {
    /// Real maps (x, x^(2j) q(y)).
    RealFamily,
    /// Complex maps (x, g(x) y + h(x)) with g nonconstant.
    ComplexTriangular,
    /// Complex maps with constant nonzero Jacobian that are proper with one-point fibers.
    ComplexAutomorphism,
};
std::string to_string(ModelKind k);

struct Region {
    std::string name;
    /// Strict sign conditions (poly > 0); empty for complex regions.
    std::vector<SignCondition> signs;
    std::string description;
    std::vector<double> sample;
    std::size_t sheets = 0;
    /// Global 1-based sheet labels carried by this region.
    std::vector<int> sheet_ids;
};

/// Sheets meeting along one curve segment: finite merges and escapes to infinity.
struct GluingRecord {
    std::string curve;
    std::vector<std::string> regions;
    /// Each group is glued into one copy of the segment.
    std::vector<std::vector<int>> groups;
    std::vector<int> escaping;
};

struct NFModel {
    ModelKind kind = ModelKind::RealFamily;
    PolyMap map;
    std::vector<std::string> target;
    std::vector<Region> regions;
    std::vector<GluingRecord> gluing;
    AlgebraicSet sing, k0, sf;
    /// Radius of the ball cutting out the compact model.
    double radius = 0;
    /// Distinct roots of g for the triangular family.
    std::vector<cd> roots;

    std::size_t total_sheets() const;
    /// Sheet pairs glued along every curve segment either of them borders.
    std::vector<std::pair<int, int>> gluing_pairs() const;
};

NFModel build_nf_model(const PolyMap& F, const AnalysisOptions& opts = {});

struct ModelComplex {
    FilteredComplex complex;
    /// Two-cycles over generic points of S_F (triangular family), as (2-cell, coefficient).
    std::vector<std::vector<std::pair<int, long>>> witness_cycles;
    /// Top cells per sheet, indexed by the 1-based sheet label (slot 0 unused).
    std::vector<std::vector<int>> sheet_cells;
};

/// Throws DomainError for degenerate input (no regions or an empty region).
ModelComplex triangulate_model(const NFModel& M, std::optional<double> radius = std::nullopt);

enum class Consistency { Consistent, Inconsistent, NoVerdict };
std::string to_string(Consistency c);

struct EquivalenceReport {
    Verdict verdict = Verdict::Unknown;
    RankReport rank;
    bool jacobian_vanishes = false;
    std::vector<long> homology;
    std::vector<long> relative_homology;
    std::vector<IHResult> closed;
    std::vector<IHResult> relative;
    /// Per tested perversity: witness 2-cycle nonbounding.
    std::vector<bool> witness_nonbounding;
    Consistency consistency = Consistency::NoVerdict;
    std::vector<std::string> notes;

    long h2() const;
    std::string to_string() const;
};

struct HarnessOptions {
    AnalysisOptions analysis;
    std::optional<double> radius;
    int subdivisions = 0;
};

/// Perversities default to all perversities for the model dimension when empty.
EquivalenceReport equivalence_harness(const PolyMap& F, std::vector<Perversity> perversities = {},
                                      const HarnessOptions& opts = {});
/// Homological half on a hand-built model; verdict, rank and S_F still come from F.
EquivalenceReport equivalence_harness(const PolyMap& F, const FilteredComplex& model,
                                      std::vector<Perversity> perversities = {}, const HarnessOptions& opts = {});

struct WorkedExample {
    PolyMap map;
    NFModel model;
    ModelComplex complex;
};
/// F = (x, x^2 y (y + 2)) over the reals.
WorkedExample worked_example();

}  // namespace nfih
