#pragma once

#include <string>

#include <json.hpp>

#include "nfih/filtered_complex.hpp"
#include "nfih/multipoly.hpp"
#include "nfih/nf_models.hpp"

namespace nfih {

/**
 * Complex files. Either explicit cells
 *   {"dimension": m, "cells": [[ids of 0-cells], [ids of 1-cells], ...],
 *    "boundary": [[cell, face, coefficient], ...], "levels": {id: level},
 *    "boundary_subcomplex": [ids]}
 * or simplicial facets
 *   {"dimension": m, "facets": [[0, 1, 2], ...], "levels": {"0": 0, "0,1": 1},
 *    "boundary_subcomplex": ["0,1", "0", ...]}
 * where simplices are named by their sorted vertices joined with commas.
 * Cells absent from "levels" sit at level m. Throws FormatError on malformed input;
 * structural checks are left to FilteredComplex::validate.
 */
FilteredComplex complex_from_json(const nlohmann::json& j);
FilteredComplex load_complex(const std::string& path);
/// Explicit-cell form; cells named by label, or "d:i" when unlabeled.
nlohmann::json complex_to_json(const FilteredComplex& K);

struct MapFile {
    PolyMap map;
    /// "real", "complex" or "auto".
    std::string field = "auto";
};
/**
 * Map files: optional "vars: x, y" and "field: real|complex|auto" lines, then
 * one component per line, optionally written "F1 = ...". '#' starts a comment.
 */
MapFile parse_map_text(const std::string& text);
MapFile load_map(const std::string& path);

nlohmann::json set_to_json(const AlgebraicSet& s);
nlohmann::json model_to_json(const NFModel& M);

}  // namespace nfih
