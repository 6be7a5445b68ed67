#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nfih/gaussian_rational.hpp"

namespace nfih {

using Exponent = std::vector<unsigned>;

/// Graded lexicographic order, ascending. The first declared variable is
/// the largest in the lexicographic tie-break.
struct GrlexLess {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

/**
 * Sparse multivariate polynomial with Gaussian-rational coefficients over an
 * ordered variable list. Zero coefficients are never stored; the zero
 * polynomial has degree -1.
 *
 * Binary arithmetic requires both operands to share the same variable list;
 * use with_vars() to re-embed a polynomial into a larger ring first.
 */
class MultiPoly {
public:
    using TermMap = std::map<Exponent, GaussianRational, GrlexLess>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars);

    static MultiPoly constant(std::vector<std::string> vars, const GaussianRational& c);
    static MultiPoly variable(std::vector<std::string> vars, std::string_view name);
    static MultiPoly monomial(std::vector<std::string> vars, Exponent e, const GaussianRational& c);

    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_real() const;
    bool is_homogeneous() const;
    GaussianRational constant_term() const;

    /// Total degree; -1 for the zero polynomial.
    int degree() const;
    /// Degree in one variable; -1 for the zero polynomial.
    int degree_in(std::size_t var) const;
    bool depends_on(std::size_t var) const { return degree_in(var) > 0; }

    /// Index of `name` in the variable list; throws DomainError if absent.
    std::size_t var_index(std::string_view name) const;
    std::optional<std::size_t> find_var(std::string_view name) const;

    /// Coefficient of var^k, returned over the same variable list.
    MultiPoly coeff_in(std::size_t var, unsigned k) const;
    /// All coefficients in `var`, index = power.
    std::vector<MultiPoly> coeffs_in(std::size_t var) const;
    /// Coefficient of the highest power of `var`.
    MultiPoly leading_coeff_in(std::size_t var) const;

    /// Leading term data in grlex order. Undefined for zero.
    const Exponent& leading_exponent() const;
    const GaussianRational& leading_coefficient() const;

    /// Divides by the grlex leading coefficient (zero stays zero).
    MultiPoly monic() const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly& operator*=(const GaussianRational& c);

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const GaussianRational& c) { return a *= c; }
    friend MultiPoly operator*(const GaussianRational& c, MultiPoly a) { return a *= c; }
    MultiPoly operator-() const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b);
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly pow(unsigned e) const;

    /// Re-embeds into `new_vars`. Every variable actually used must appear.
    MultiPoly with_vars(const std::vector<std::string>& new_vars) const;
    /// Replaces a variable by a constant (the variable stays in the list).
    MultiPoly substitute(std::size_t var, const GaussianRational& value) const;
    /// Replaces a variable by a polynomial over the same variable list.
    MultiPoly substitute(std::size_t var, const MultiPoly& value) const;

    std::complex<double> eval_complex(std::span<const std::complex<double>> point) const;

    /// Graded-lex descending text using the input grammar (round-trips).
    std::string to_string() const;

    /// Adds c * x^e; removes the term if the sum cancels.
    void add_term(const Exponent& e, const GaussianRational& c);

private:
    void require_same_ring(const MultiPoly& o) const;

    std::vector<std::string> vars_;
    TermMap terms_;
};

/// Polynomial map C^n -> C^n; all components share one variable list of length n.
class PolyMap {
public:
    PolyMap() = default;
    explicit PolyMap(std::vector<MultiPoly> components);

    std::size_t n() const { return components_.size(); }
    const std::vector<std::string>& vars() const { return components_.front().vars(); }
    const std::vector<MultiPoly>& components() const { return components_; }
    const MultiPoly& operator[](std::size_t i) const { return components_[i]; }
    bool is_real() const;

private:
    std::vector<MultiPoly> components_;
};

MultiPoly derivative(const MultiPoly& p, std::string_view var);
MultiPoly derivative(const MultiPoly& p, std::size_t var);
MultiPoly jacobian_det(const PolyMap& F);
/// Sum of the terms of maximal total degree. Throws DomainError on zero.
MultiPoly leading_form(const MultiPoly& p);
/// Sylvester-matrix resultant with respect to `var`.
MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::string_view var);
MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::size_t var);
GaussianRational evaluate(const MultiPoly& p, std::span<const GaussianRational> point);

/// Fraction-free (Bareiss) determinant of a square polynomial matrix.
MultiPoly determinant(std::vector<std::vector<MultiPoly>> m);
/// Quotient a / b when b divides a exactly.
std::optional<MultiPoly> exact_divide(const MultiPoly& a, const MultiPoly& b);
/// Monic gcd over Q(i); gcd(0, 0) = 0.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);
/// gcd of the coefficients of p viewed as a polynomial in `var`.
MultiPoly content_in(const MultiPoly& p, std::size_t var);
/// Monic squarefree part p / gcd(p, dp/dx_1, ..., dp/dx_n).
MultiPoly squarefree(const MultiPoly& p);
/**
 * Splits p into monic squarefree pieces by repeated content extraction
 * (no factorisation). Constants yield an empty list.
 */
std::vector<MultiPoly> split_components(const MultiPoly& p);

}  // namespace nfih
