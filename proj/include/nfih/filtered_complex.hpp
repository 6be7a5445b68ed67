#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nfih/sparse_rank.hpp"

namespace nfih {

/// Cell reference: dimension and index within that dimension.
struct CellRef {
    int dim;
    int index;
    friend bool operator==(const CellRef&, const CellRef&) = default;
    friend auto operator<=>(const CellRef&, const CellRef&) = default;
};

/**
 * Finite cell complex of dimension m with a filtration X_0 ⊂ ... ⊂ X_m = X.
 *
 * Each cell stores its level: the least j with the closed cell inside X_j.
 * Boundary entries (face, coefficient) double as the face relation, so a
 * face with incidence 0 may still be listed.
 */
class FilteredComplex {
public:
    explicit FilteredComplex(int m);

    int dim() const { return m_; }
    /// Returns the index of the new cell within its dimension.
    int add_cell(int d, std::vector<std::pair<int, long>> boundary, int level, std::string label = {},
                 bool on_boundary = false);

    std::size_t count(int d) const;
    std::size_t total_cells() const;
    const std::vector<std::pair<int, long>>& boundary(int d, int i) const { return cells_.at(d).at(i).boundary; }
    int level(int d, int i) const { return cells_.at(d).at(i).level; }
    void set_level(int d, int i, int level) { cells_.at(d).at(i).level = level; }
    const std::string& label(int d, int i) const { return cells_.at(d).at(i).label; }
    bool on_boundary(int d, int i) const { return cells_.at(d).at(i).on_boundary; }
    void set_on_boundary(int d, int i, bool b) { cells_.at(d).at(i).on_boundary = b; }
    /// True when at least one cell is marked as part of ∂X.
    bool has_boundary() const;
    /// Index of a cell by label, or -1.
    int find(int d, const std::string& label) const;

    /// Boundary matrix ∂_d as sparse columns (rows = (d-1)-cells).
    std::vector<SparseColumn> boundary_matrix(int d) const;

    /// Throws ComplexError on: bad face indices, ∂∂ ≠ 0, levels out of range,
    /// dim > level, non-closed X_j, non-closed boundary subcomplex.
    void validate() const;
    /// Same checks without ∂∂ = 0; returns a description or empty string.
    std::string filtration_problem() const;
    /// Empty when ∂∂ = 0, else a description of the first failing entry.
    std::string boundary_problem() const;

    /// Euler characteristic from the cell counts.
    long euler_characteristic() const;

private:
    struct Cell {
        std::vector<std::pair<int, long>> boundary;
        int level;
        std::string label;
        bool on_boundary;
    };
    int m_;
    std::vector<std::vector<Cell>> cells_;
};

/// Order complex of the face poset, levels and boundary marks inherited from the top cell of each chain.
FilteredComplex barycentric_subdivision(const FilteredComplex& K);

/// Cells σ ≥ τ for each cell τ (transitive upward closure, excluding τ).
std::vector<std::vector<std::vector<CellRef>>> cofaces_closure(const FilteredComplex& K);

}  // namespace nfih
