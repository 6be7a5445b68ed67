#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nfih/filtered_complex.hpp"
#include "nfih/perversity.hpp"

namespace nfih {

/**
 * dims[k-2] = dim(Y ∩ X_{m-k}) for k = 2..m; any negative entry means empty.
 * True iff dims[k-2] <= i - k + p_k for every k.
 */
bool allowable(const std::vector<int>& dims, const Perversity& p, int i);

/// dim(σ ∩ X_j) for every cell σ and j = 0..m (-1 when empty).
std::vector<std::vector<std::vector<int>>> intersection_dims(const FilteredComplex& K);

enum class IHVariant { Closed, Relative };
std::string to_string(IHVariant v);

struct IHResult {
    Perversity perversity;
    std::vector<long> betti;
    std::vector<long> chain_dims;
    IHVariant variant = IHVariant::Closed;
    std::string to_string() const;
};

/// Explicit description of IC^p: allowable cells per degree and the kernel dimension.
struct ICDescription {
    std::vector<std::vector<bool>> allowable_cells;
    std::vector<long> dims;
};
ICDescription intersection_chain_complex(const FilteredComplex& K, const Perversity& p);

/// Ordinary rational Betti numbers.
std::vector<long> homology(const FilteredComplex& K);
/// Relative to the marked boundary subcomplex.
std::vector<long> relative_homology(const FilteredComplex& K);

IHResult ih_betti(const FilteredComplex& K, const Perversity& p, IHVariant variant = IHVariant::Closed);

/**
 * Whether the i-chain (cell index, coefficient) is a p-allowable cycle that
 * bounds inside IC^p. Throws DomainError when it is not an allowable cycle.
 */
bool ic_cycle_bounds(const FilteredComplex& K, const Perversity& p, int i,
                     const std::vector<std::pair<int, long>>& chain);

struct PseudomanifoldReport {
    bool pseudomanifold = false;
    bool dense = false;
    /// Singular cells (codim-1 branching and non-manifold links among cells at level <= m-1).
    std::vector<CellRef> singular_cells;
    /// Codimension of the singular set; nullopt when empty.
    std::optional<int> singular_codim;
    std::vector<CellRef> bad_codim1;
    std::string to_string() const;
};
PseudomanifoldReport validate_pseudomanifold(const FilteredComplex& K);

/// Top-cell signs with boundary supported on ∂X; nullopt if none exist.
std::optional<std::vector<int>> orientation(const FilteredComplex& K);

struct DualityReport {
    bool pass = false;
    std::vector<long> left;   // IH^p_k
    std::vector<long> right;  // IH^q_{m-k}, indexed by k
    std::string to_string() const;
};
/// Throws DomainError for non-complementary perversities or a non-orientable complex.
DualityReport duality_check(const FilteredComplex& K, const Perversity& p, const Perversity& q);
/// Palindromicity of ordinary homology (closed) or H vs relative H.
DualityReport ordinary_duality_check(const FilteredComplex& K);

struct InvarianceReport {
    bool pass = false;
    std::vector<long> original;
    std::vector<long> subdivided;
    std::optional<std::vector<long>> alternative;
    std::string to_string() const;
};
/// `alt_levels[d][i]` replaces the level of cell (d, i); throws ComplexError when inadmissible.
InvarianceReport invariance_check(const FilteredComplex& K, const Perversity& p,
                                  const std::optional<std::vector<std::vector<int>>>& alt_levels = std::nullopt,
                                  IHVariant variant = IHVariant::Closed);

}  // namespace nfih
