#include "nfih/multipoly.hpp"

#include <algorithm>
#include <numeric>

#include "nfih/errors.hpp"

namespace nfih {

namespace {

unsigned total(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0u); }

Exponent add_exp(const Exponent& a, const Exponent& b) {
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

bool divides(const Exponent& a, const Exponent& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

}  // namespace

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
    unsigned ta = total(a), tb = total(b);
    if (ta != tb) return ta < tb;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiPoly::MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

MultiPoly MultiPoly::constant(std::vector<std::string> vars, const GaussianRational& c) {
    MultiPoly p(std::move(vars));
    p.add_term(Exponent(p.nvars(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, std::string_view name) {
    MultiPoly p(std::move(vars));
    Exponent e(p.nvars(), 0);
    e[p.var_index(name)] = 1;
    p.add_term(e, 1);
    return p;
}

MultiPoly MultiPoly::monomial(std::vector<std::string> vars, Exponent e, const GaussianRational& c) {
    MultiPoly p(std::move(vars));
    if (e.size() != p.nvars()) throw DomainError("exponent length does not match variable count");
    p.add_term(e, c);
    return p;
}

void MultiPoly::add_term(const Exponent& e, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total(terms_.begin()->first) == 0);
}

bool MultiPoly::is_real() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
}

bool MultiPoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    unsigned d = total(terms_.begin()->first);
    return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return total(t.first) == d; });
}

GaussianRational MultiPoly::constant_term() const {
    auto it = terms_.find(Exponent(nvars(), 0));
    return it == terms_.end() ? GaussianRational(0) : it->second;
}

int MultiPoly::degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(total(terms_.rbegin()->first));
}

int MultiPoly::degree_in(std::size_t var) const {
    if (terms_.empty()) return -1;
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return static_cast<int>(d);
}

std::optional<std::size_t> MultiPoly::find_var(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    return std::nullopt;
}

std::size_t MultiPoly::var_index(std::string_view name) const {
    if (auto i = find_var(name)) return *i;
    throw DomainError("unknown variable '" + std::string(name) + "'");
}

MultiPoly MultiPoly::coeff_in(std::size_t var, unsigned k) const {
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] != k) continue;
        Exponent f = e;
        f[var] = 0;
        r.terms_.emplace(std::move(f), c);
    }
    return r;
}

std::vector<MultiPoly> MultiPoly::coeffs_in(std::size_t var) const {
    int d = degree_in(var);
    std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(d, 0)) + 1, MultiPoly(vars_));
    for (const auto& [e, c] : terms_) {
        Exponent f = e;
        f[var] = 0;
        out[e[var]].terms_.emplace(std::move(f), c);
    }
    return out;
}

MultiPoly MultiPoly::leading_coeff_in(std::size_t var) const {
    int d = degree_in(var);
    if (d < 0) return MultiPoly(vars_);
    return coeff_in(var, static_cast<unsigned>(d));
}

const Exponent& MultiPoly::leading_exponent() const { return terms_.rbegin()->first; }
const GaussianRational& MultiPoly::leading_coefficient() const { return terms_.rbegin()->second; }

MultiPoly MultiPoly::monic() const {
    if (is_zero()) return *this;
    GaussianRational inv = GaussianRational(1) / leading_coefficient();
    MultiPoly r = *this;
    for (auto& [e, c] : r.terms_) c *= inv;
    return r;
}

void MultiPoly::require_same_ring(const MultiPoly& o) const {
    if (vars_ != o.vars_) throw DomainError("polynomials live over different variable lists");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (vars_.empty() && terms_.empty()) vars_ = o.vars_;
    require_same_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    if (vars_.empty() && terms_.empty()) vars_ = o.vars_;
    require_same_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.require_same_ring(b);
    MultiPoly r(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term(add_exp(ea, eb), ca * cb);
    return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const GaussianRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly result = constant(vars_, 1), base = *this;
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return result;
}

MultiPoly MultiPoly::with_vars(const std::vector<std::string>& new_vars) const {
    std::vector<std::size_t> map(vars_.size(), SIZE_MAX);
    for (std::size_t i = 0; i < vars_.size(); ++i)
        for (std::size_t j = 0; j < new_vars.size(); ++j)
            if (vars_[i] == new_vars[j]) map[i] = j;
    MultiPoly r(new_vars);
    for (const auto& [e, c] : terms_) {
        Exponent f(new_vars.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (map[i] == SIZE_MAX) throw DomainError("variable '" + vars_[i] + "' missing from target ring");
            f[map[i]] = e[i];
        }
        r.add_term(f, c);
    }
    return r;
}

MultiPoly MultiPoly::substitute(std::size_t var, const GaussianRational& value) const {
    MultiPoly r(vars_);
    std::vector<GaussianRational> powers{GaussianRational(1)};
    for (const auto& [e, c] : terms_) {
        while (powers.size() <= e[var]) powers.push_back(powers.back() * value);
        Exponent f = e;
        f[var] = 0;
        r.add_term(f, c * powers[e[var]]);
    }
    return r;
}

MultiPoly MultiPoly::substitute(std::size_t var, const MultiPoly& value) const {
    require_same_ring(value);
    MultiPoly r(vars_);
    std::vector<MultiPoly> powers{constant(vars_, 1)};
    for (const auto& [e, c] : terms_) {
        while (powers.size() <= e[var]) powers.push_back(powers.back() * value);
        Exponent f = e;
        f[var] = 0;
        r += monomial(vars_, f, c) * powers[e[var]];
    }
    return r;
}

std::complex<double> MultiPoly::eval_complex(std::span<const std::complex<double>> point) const {
    if (point.size() != nvars()) throw DomainError("point dimension does not match variable count");
    std::complex<double> s = 0;
    for (const auto& [e, c] : terms_) {
        std::complex<double> t = c.to_complex();
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
        s += t;
    }
    return s;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        std::string term;
        if (mono.empty()) term = c.to_string();
        else if (c.is_one()) term = mono;
        else if (c == GaussianRational(-1)) term = "-" + mono;
        else term = c.to_string() + "*" + mono;
        if (first) out = term;
        else if (term[0] == '-') out += " - " + term.substr(1);
        else out += " + " + term;
        first = false;
    }
    return out;
}

PolyMap::PolyMap(std::vector<MultiPoly> components) : components_(std::move(components)) {
    if (components_.empty()) throw DomainError("polynomial map needs at least one component");
    const auto& v = components_.front().vars();
    if (v.size() != components_.size())
        throw DomainError("polynomial map must have as many components as variables");
    for (const auto& c : components_)
        if (c.vars() != v) throw DomainError("map components must share one variable list");
}

bool PolyMap::is_real() const {
    return std::all_of(components_.begin(), components_.end(), [](const MultiPoly& p) { return p.is_real(); });
}

MultiPoly derivative(const MultiPoly& p, std::string_view var) { return derivative(p, p.var_index(var)); }

MultiPoly derivative(const MultiPoly& p, std::size_t var) {
    if (var >= p.nvars()) throw DomainError("derivative variable out of range");
    MultiPoly r(p.vars());
    for (const auto& [e, c] : p.terms()) {
        if (e[var] == 0) continue;
        Exponent f = e;
        f[var] -= 1;
        r.add_term(f, c * GaussianRational(static_cast<long>(e[var])));
    }
    return r;
}

MultiPoly jacobian_det(const PolyMap& F) {
    std::vector<std::vector<MultiPoly>> m(F.n());
    for (std::size_t i = 0; i < F.n(); ++i)
        for (std::size_t j = 0; j < F.n(); ++j) m[i].push_back(derivative(F[i], j));
    return determinant(std::move(m));
}

MultiPoly leading_form(const MultiPoly& p) {
    if (p.is_zero()) throw DomainError("leading form of the zero polynomial");
    int d = p.degree();
    MultiPoly r(p.vars());
    for (const auto& [e, c] : p.terms())
        if (static_cast<int>(total(e)) == d) r.add_term(e, c);
    return r;
}

MultiPoly determinant(std::vector<std::vector<MultiPoly>> m) {
    const std::size_t n = m.size();
    if (n == 0) throw DomainError("determinant of an empty matrix");
    const auto vars = m[0][0].vars();
    for (const auto& row : m)
        if (row.size() != n) throw DomainError("determinant of a non-square matrix");
    MultiPoly prev = MultiPoly::constant(vars, 1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k].is_zero()) ++piv;
            if (piv == n) return MultiPoly(vars);
            std::swap(m[k], m[piv]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                MultiPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                auto q = exact_divide(num, prev);
                if (!q) throw AnalysisError("Bareiss step lost exactness");
                m[i][j] = std::move(*q);
            }
            m[i][k] = MultiPoly(vars);
        }
        prev = m[k][k];
    }
    MultiPoly det = m[n - 1][n - 1];
    return negate ? -det : det;
}

std::optional<MultiPoly> exact_divide(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    MultiPoly r = a, q(a.vars());
    const Exponent& lb = b.leading_exponent();
    const GaussianRational& cb = b.leading_coefficient();
    while (!r.is_zero()) {
        const Exponent& lr = r.leading_exponent();
        if (!divides(lb, lr)) return std::nullopt;
        Exponent e(lr.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = lr[i] - lb[i];
        MultiPoly t = MultiPoly::monomial(a.vars(), e, r.leading_coefficient() / cb);
        q += t;
        r -= t * b;
    }
    return q;
}

GaussianRational evaluate(const MultiPoly& p, std::span<const GaussianRational> point) {
    if (point.size() != p.nvars()) throw DomainError("point dimension does not match variable count");
    std::vector<std::vector<GaussianRational>> powers(point.size(), {GaussianRational(1)});
    GaussianRational s(0);
    for (const auto& [e, c] : p.terms()) {
        GaussianRational t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            auto& pw = powers[i];
            while (pw.size() <= e[i]) pw.push_back(pw.back() * point[i]);
            t *= pw[e[i]];
        }
        s += t;
    }
    return s;
}

MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::string_view var) {
    return resultant(p, q, p.var_index(var));
}

MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::size_t var) {
    if (p.vars() != q.vars()) throw DomainError("resultant operands over different rings");
    if (p.is_zero() || q.is_zero()) throw DomainError("resultant of a zero polynomial");
    const int dp = p.degree_in(var), dq = q.degree_in(var);
    if (dp == 0 && dq == 0) throw DomainError("resultant: both polynomials are constant in '" + p.vars()[var] + "'");
    if (dp == 0) return p.pow(static_cast<unsigned>(dq));
    if (dq == 0) return q.pow(static_cast<unsigned>(dp));
    const auto cp = p.coeffs_in(var), cq = q.coeffs_in(var);
    const std::size_t n = static_cast<std::size_t>(dp + dq);
    std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n, MultiPoly(p.vars())));
    for (std::size_t r = 0; r < static_cast<std::size_t>(dq); ++r)
        for (int k = dp; k >= 0; --k) m[r][r + static_cast<std::size_t>(dp - k)] = cp[static_cast<std::size_t>(k)];
    for (std::size_t r = 0; r < static_cast<std::size_t>(dp); ++r)
        for (int k = dq; k >= 0; --k)
            m[static_cast<std::size_t>(dq) + r][r + static_cast<std::size_t>(dq - k)] = cq[static_cast<std::size_t>(k)];
    return determinant(std::move(m));
}

namespace {

// Pseudo-remainder of a by b with respect to var (no final lc power).
MultiPoly prem(MultiPoly a, const MultiPoly& b, std::size_t var) {
    const int db = b.degree_in(var);
    const MultiPoly lb = b.leading_coeff_in(var);
    while (!a.is_zero() && a.degree_in(var) >= db) {
        const int da = a.degree_in(var);
        Exponent e(a.nvars(), 0);
        e[var] = static_cast<unsigned>(da - db);
        MultiPoly s = a.leading_coeff_in(var) * MultiPoly::monomial(a.vars(), e, 1);
        a = lb * a - s * b;
    }
    return a;
}

std::optional<std::size_t> main_var(const MultiPoly& a, const MultiPoly& b) {
    for (std::size_t v = a.nvars(); v-- > 0;)
        if (a.depends_on(v) || b.depends_on(v)) return v;
    return std::nullopt;
}

MultiPoly primitive_part(const MultiPoly& p, std::size_t var) {
    if (p.is_zero()) return p;
    auto q = exact_divide(p, content_in(p, var));
    return *q;
}

}  // namespace

MultiPoly content_in(const MultiPoly& p, std::size_t var) {
    MultiPoly g(p.vars());
    for (const auto& c : p.coeffs_in(var)) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars() != b.vars() && !a.is_zero() && !b.is_zero())
        throw DomainError("gcd operands over different rings");
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    auto v = main_var(a, b);
    if (!v) return MultiPoly::constant(a.vars(), 1);
    const MultiPoly ca = content_in(a, *v), cb = content_in(b, *v);
    const MultiPoly gc = gcd(ca, cb);
    MultiPoly pa = *exact_divide(a, ca), pb = *exact_divide(b, cb);
    if (pa.degree_in(*v) < pb.degree_in(*v)) std::swap(pa, pb);
    while (!pb.is_zero() && pb.degree_in(*v) > 0) {
        MultiPoly r = prem(pa, pb, *v);
        pa = std::move(pb);
        pb = primitive_part(r, *v);
    }
    MultiPoly g = pb.is_zero() ? primitive_part(pa, *v) : MultiPoly::constant(a.vars(), 1);
    return (gc * g).monic();
}

MultiPoly squarefree(const MultiPoly& p) {
    if (p.is_zero()) return p;
    if (p.is_constant()) return MultiPoly::constant(p.vars(), 1);
    MultiPoly g = p;
    for (std::size_t v = 0; v < p.nvars(); ++v) g = gcd(g, derivative(p, v));
    return exact_divide(p, g)->monic();
}

namespace {

void split_into(const MultiPoly& q, std::vector<MultiPoly>& out) {
    if (q.is_constant()) return;
    for (std::size_t v = 0; v < q.nvars(); ++v) {
        if (!q.depends_on(v)) continue;
        MultiPoly c = content_in(q, v);
        if (!c.is_constant()) {
            split_into(c, out);
            split_into(*exact_divide(q, c), out);
            return;
        }
    }
    MultiPoly m = q.monic();
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(std::move(m));
}

}  // namespace

std::vector<MultiPoly> split_components(const MultiPoly& p) {
    std::vector<MultiPoly> out;
    if (p.is_zero()) throw DomainError("cannot split the zero polynomial");
    split_into(squarefree(p), out);
    // Pieces from different content layers may still share factors.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < out.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < out.size() && !changed; ++j) {
                MultiPoly g = gcd(out[i], out[j]);
                if (g.is_constant()) continue;
                std::vector<MultiPoly> next;
                for (std::size_t k = 0; k < out.size(); ++k)
                    if (k != i && k != j) next.push_back(out[k]);
                for (const MultiPoly* src : {&out[i], &out[j]}) {
                    MultiPoly rest = *exact_divide(*src, g);
                    if (!rest.is_constant()) next.push_back(rest.monic());
                }
                next.push_back(g);
                out.clear();
                for (auto& m : next)
                    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(std::move(m));
                changed = true;
            }
    }
    std::sort(out.begin(), out.end(), [](const MultiPoly& a, const MultiPoly& b) { return a.to_string() < b.to_string(); });
    return out;
}

}  // namespace nfih
