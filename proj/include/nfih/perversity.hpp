#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nfih/errors.hpp"

namespace nfih {

enum class PerversityKind { Zero, Max, LowerMiddle, UpperMiddle, Custom };

/// Growth-law violation; `index` is the first k (2-based) where it fails.
class PerversityError : public DomainError {
public:
    PerversityError(const std::string& what, int index) : DomainError(what), index_(index) {}
    int index() const { return index_; }

private:
    int index_;
};

/// Tuple (p_2, ..., p_m) with p_2 = 0 and p_{k+1} - p_k in {0, 1}.
class Perversity {
public:
    static Perversity make(PerversityKind kind, int m, const std::vector<int>& custom = {});
    /// "zero", "max", "lower-middle", "upper-middle" or "custom:0,1,1".
    static Perversity parse(const std::string& spec, int m);

    int m() const { return m_; }
    /// p_k for 2 <= k <= m.
    int operator()(int k) const { return values_.at(static_cast<std::size_t>(k - 2)); }
    const std::vector<int>& values() const { return values_; }
    const std::string& name() const { return name_; }
    std::string to_string() const;

    /// The perversity q with p + q = t.
    Perversity complement() const;
    bool complementary_to(const Perversity& q) const;
    /// p_k <= q_k for all k.
    bool below(const Perversity& q) const;

    friend bool operator==(const Perversity& a, const Perversity& b) { return a.m_ == b.m_ && a.values_ == b.values_; }

private:
    Perversity(int m, std::vector<int> values, std::string name) : m_(m), values_(std::move(values)), name_(std::move(name)) {}
    int m_;
    std::vector<int> values_;
    std::string name_;
};

/// First k (2-based) where the growth law fails, if any.
std::optional<int> growth_violation(const std::vector<int>& values);

/// All perversities for a given m, in lexicographic order.
std::vector<Perversity> all_perversities(int m);

}  // namespace nfih
