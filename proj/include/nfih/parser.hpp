#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nfih/multipoly.hpp"

namespace nfih {

/**
 * Parses a polynomial expression over `vars`.
 *
 * Grammar: integers, rationals `a/b`, the imaginary unit `i`, identifiers
 * `[a-zA-Z][a-zA-Z0-9_]*`, binary `+ - *`, unary `+ -`, `^` with a
 * nonnegative integer exponent, and parentheses. Juxtaposition is not
 * multiplication. Throws ParseError (with byte offset) on bad syntax or
 * an undeclared identifier.
 */
MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars);

/// True when `name` is a legal variable identifier (and not the reserved `i`).
bool is_valid_var_name(std::string_view name);

}  // namespace nfih
