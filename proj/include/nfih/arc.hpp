#pragma once

#include <string>
#include <vector>

#include "nfih/numeric.hpp"

namespace nfih {

struct ArcTerm {
    cd coeff;
    int exponent = 0;
};

/**
 * Laurent-monomial arc t -> (gamma_1(t), ..., gamma_n(t)), t in (0, epsilon].
 * Each coordinate is a finite sum of c * t^e.
 */
class WitnessArc {
public:
    WitnessArc() = default;
    explicit WitnessArc(std::vector<std::vector<ArcTerm>> coords, double epsilon = 1e-2);

    std::size_t dim() const { return coords_.size(); }
    const std::vector<std::vector<ArcTerm>>& coords() const { return coords_; }
    double epsilon() const { return epsilon_; }

    /// Smallest exponent with a nonzero coefficient, per coordinate.
    std::vector<int> exponents() const;
    /// True when some coordinate has a negative leading exponent.
    bool escapes() const;
    std::vector<cd> eval(double t) const;

    /// One line per coordinate: "x: (1+0i)*t^1 + (2-1i)*t^-1".
    std::string to_string(const std::vector<std::string>& names) const;

private:
    std::vector<std::vector<ArcTerm>> coords_;
    double epsilon_ = 1e-2;
};

/// Reads the text produced by WitnessArc::to_string; `names` fixes the coordinate order.
WitnessArc parse_arc(const std::string& text, const std::vector<std::string>& names);

}  // namespace nfih
