#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nfih/multipoly.hpp"
#include "nfih/numeric.hpp"

namespace nfih {

enum class SetFlavor { ComplexAlgebraic, RealSemialgebraic };
enum class SignRelation { Ge, Gt, Eq };
enum class ComponentStatus { Unverified, Confirmed, Spurious };

std::string to_string(SignRelation r);
std::string to_string(ComponentStatus s);

struct SignCondition {
    MultiPoly poly;
    SignRelation relation = SignRelation::Ge;
    std::string to_string() const;  // "beta >= 0"
};

/// One irreducible-ish piece: the common zero set of `generators`,
/// cut down by `signs` in the real flavor.
struct SetComponent {
    std::vector<MultiPoly> generators;
    std::vector<SignCondition> signs;
    ComponentStatus status = ComponentStatus::Unverified;
    std::string note;

    std::string to_string() const;
};

/**
 * Finite union of components over `ambient_vars`. Spurious components are
 * kept for reporting but ignored by membership and emptiness queries.
 */
class AlgebraicSet {
public:
    AlgebraicSet() = default;
    explicit AlgebraicSet(std::vector<std::string> ambient_vars, SetFlavor flavor = SetFlavor::ComplexAlgebraic)
        : vars_(std::move(ambient_vars)), flavor_(flavor) {}

    /// A single-component set cut out by `gens`.
    static AlgebraicSet from_generators(std::vector<std::string> vars, std::vector<MultiPoly> gens);

    const std::vector<std::string>& ambient_vars() const { return vars_; }
    SetFlavor flavor() const { return flavor_; }
    void set_flavor(SetFlavor f) { flavor_ = f; }
    const std::vector<SetComponent>& components() const { return components_; }
    std::vector<SetComponent>& components() { return components_; }
    void add(SetComponent c);

    /// Components whose status is not Spurious.
    std::vector<SetComponent> live_components() const;
    /// Generators of all live components, flattened (one per line in reports).
    std::vector<MultiPoly> generators() const;
    std::vector<SignCondition> sign_conditions() const;

    /// True when every live component has a nonzero constant generator.
    bool is_empty() const;
    bool contains(std::span<const cd> point, double tol = 1e-7) const;
    bool contains_exact(std::span<const GaussianRational> point) const;

    std::string to_string() const;

private:
    std::vector<std::string> vars_;
    SetFlavor flavor_ = SetFlavor::ComplexAlgebraic;
    std::vector<SetComponent> components_;
};

/// |p(z)| scaled by the size of p's coefficients and of z.
double relative_residual(const MultiPoly& p, std::span<const cd> z);

struct SamplePoint {
    std::vector<cd> z;
    std::optional<std::vector<GaussianRational>> exact;
};

/**
 * Up to `count` points on a component in a 2-dimensional ambient space.
 * Curves are sampled by fixing one coordinate at a random Gaussian rational
 * (real rationals when `real_only`) and solving for the other; exact points
 * are returned when the generator is linear in the solved variable.
 * Zero-dimensional components are solved by elimination.
 */
std::vector<SamplePoint> sample_component(const SetComponent& c, const std::vector<std::string>& vars,
                                          std::size_t count, Rng& rng, bool real_only = false);

/// Common zeros of two bivariate polynomials with finitely many of them.
std::vector<std::vector<cd>> solve_two(const MultiPoly& p, const MultiPoly& q);

}  // namespace nfih

namespace nfih {

/// Coefficients (ascending) of p in `free_var` after fixing every other
/// variable to the matching entry of `point`.
std::vector<cd> specialize(const MultiPoly& p, std::size_t free_var, std::span<const cd> point);

}  // namespace nfih
