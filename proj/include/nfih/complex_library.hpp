#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nfih/filtered_complex.hpp"

namespace nfih {

using Simplex = std::vector<int>;
/// Level of a simplex given its sorted vertex list.
using LevelFn = std::function<int(const Simplex&)>;

/**
 * Simplicial complex generated by its facets (vertex lists). Faces are
 * oriented by increasing vertex order. `level` defaults to m for every
 * simplex; `on_boundary` defaults to false.
 */
FilteredComplex simplicial_complex(int m, const std::vector<Simplex>& facets, const LevelFn& level = {},
                                   const std::function<bool(const Simplex&)>& on_boundary = {});

/// Level function putting simplices with all vertices in `stratum` at level `j`, others at m.
LevelFn vertex_stratum(int m, std::vector<int> stratum, int j);

FilteredComplex sphere(int n);
FilteredComplex torus();
/// Torus with one meridian collapsed to a point (apex at level 0).
FilteredComplex pinched_torus();
/// Suspension of the 7-vertex torus, apexes at level 0.
FilteredComplex suspended_torus();
/// Join of a 3-vertex circle with the 7-vertex torus; the circle is the level-1 stratum.
FilteredComplex circle_join_torus();
/// Cone on a hexagon with its boundary circle marked.
FilteredComplex disk();

struct NamedComplex {
    std::string name;
    FilteredComplex complex;
};
/// Compact orientable pseudomanifolds used for duality and invariance checks.
std::vector<NamedComplex> duality_corpus();

}  // namespace nfih
