#include "nfih/perversity.hpp"

#include <sstream>

namespace nfih {

std::optional<int> growth_violation(const std::vector<int>& v) {
    if (v.empty()) return 2;
    if (v[0] != 0) return 2;
    for (std::size_t k = 1; k < v.size(); ++k) {
        int d = v[k] - v[k - 1];
        if (d != 0 && d != 1) return static_cast<int>(k) + 2;
    }
    return std::nullopt;
}

Perversity Perversity::make(PerversityKind kind, int m, const std::vector<int>& custom) {
    if (m < 2) throw DomainError("perversities need m >= 2");
    std::vector<int> v;
    std::string name;
    for (int k = 2; k <= m; ++k) {
        switch (kind) {
            case PerversityKind::Zero: v.push_back(0); name = "zero"; break;
            case PerversityKind::Max: v.push_back(k - 2); name = "max"; break;
            case PerversityKind::LowerMiddle: v.push_back((k - 2) / 2); name = "lower-middle"; break;
            case PerversityKind::UpperMiddle: v.push_back((k - 1) / 2); name = "upper-middle"; break;
            case PerversityKind::Custom: name = "custom"; break;
        }
    }
    if (kind == PerversityKind::Custom) {
        if (custom.size() != static_cast<std::size_t>(m - 1))
            throw PerversityError("perversity needs " + std::to_string(m - 1) + " values", 0);
        if (auto bad = growth_violation(custom))
            throw PerversityError("perversity violates the growth law at k = " + std::to_string(*bad), *bad);
        v = custom;
    }
    return Perversity(m, v, name);
}

Perversity Perversity::parse(const std::string& spec, int m) {
    if (spec == "zero") return make(PerversityKind::Zero, m);
    if (spec == "max") return make(PerversityKind::Max, m);
    if (spec == "lower-middle") return make(PerversityKind::LowerMiddle, m);
    if (spec == "upper-middle") return make(PerversityKind::UpperMiddle, m);
    if (spec.rfind("custom:", 0) == 0) {
        std::vector<int> v;
        std::stringstream ss(spec.substr(7));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                v.push_back(std::stoi(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw DomainError("bad perversity value '" + item + "'");
            }
        }
        return make(PerversityKind::Custom, m, v);
    }
    throw DomainError("unknown perversity '" + spec + "'");
}

std::string Perversity::to_string() const {
    std::string s = "(";
    for (std::size_t k = 0; k < values_.size(); ++k) s += (k ? ", " : "") + std::to_string(values_[k]);
    return s + ")";
}

Perversity Perversity::complement() const {
    std::vector<int> q;
    for (int k = 2; k <= m_; ++k) q.push_back(k - 2 - (*this)(k));
    std::string n = "custom";
    for (auto kind : {PerversityKind::Zero, PerversityKind::Max, PerversityKind::LowerMiddle, PerversityKind::UpperMiddle}) {
        Perversity cand = make(kind, m_);
        if (cand.values_ == q) {
            n = cand.name_;
            break;
        }
    }
    return Perversity(m_, q, n);
}

bool Perversity::complementary_to(const Perversity& q) const {
    if (q.m_ != m_) return false;
    for (int k = 2; k <= m_; ++k)
        if ((*this)(k) + q(k) != k - 2) return false;
    return true;
}

bool Perversity::below(const Perversity& q) const {
    for (int k = 2; k <= m_; ++k)
        if ((*this)(k) > q(k)) return false;
    return true;
}

std::vector<Perversity> all_perversities(int m) {
    std::vector<Perversity> out;
    const int steps = m - 2;
    for (long mask = 0; mask < (1L << steps); ++mask) {
        std::vector<int> v{0};
        for (int k = 0; k < steps; ++k) v.push_back(v.back() + static_cast<int>((mask >> (steps - 1 - k)) & 1));
        out.push_back(Perversity::make(PerversityKind::Custom, m, v));
    }
    return out;
}

}  // namespace nfih
