#include "nfih/ih_engine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "nfih/errors.hpp"

namespace nfih {

namespace {

std::string join(const std::vector<long>& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ")";
    return os.str();
}

using Mask = std::vector<std::vector<bool>>;

// Columns of ∂_d whose cell passes col_ok, keeping rows that pass row_ok.
template <typename ColPred, typename RowPred>
long restricted_rank(const FilteredComplex& K, int d, ColPred col_ok, RowPred row_ok) {
    if (d < 1 || d > K.dim()) return 0;
    std::vector<SparseColumn> cols;
    for (std::size_t i = 0; i < K.count(d); ++i) {
        if (!col_ok(static_cast<int>(i))) continue;
        SparseColumn c;
        for (const auto& e : K.boundary(d, static_cast<int>(i)))
            if (e.second != 0 && row_ok(e.first)) c.push_back(e);
        if (!c.empty()) cols.push_back(std::move(c));
    }
    return static_cast<long>(exact_rank(cols));
}

struct Betti {
    std::vector<long> betti, chain_dims;
};

Betti betti_from_mask(const FilteredComplex& K, const Mask& allow, IHVariant variant) {
    const int m = K.dim();
    auto ok = [&](int d, int i) { return d >= 0 && d <= m && allow[d][i]; };
    auto bd = [&](int d, int i) { return K.on_boundary(d, i); };
    std::vector<long> a(m + 2, 0), b(m + 2, 0), rkA(m + 2, 0), rkP(m + 2, 0), rkQ(m + 2, 0), rkD(m + 2, 0);
    for (int d = 0; d <= m; ++d) {
        for (std::size_t i = 0; i < K.count(d); ++i) {
            if (!allow[d][i]) continue;
            ++a[d];
            if (bd(d, static_cast<int>(i))) ++b[d];
        }
        auto col_allow = [&](int i) { return ok(d, i); };
        auto row_bad = [&](int r) { return !ok(d - 1, r); };
        rkP[d] = restricted_rank(K, d, col_allow, row_bad);
        if (variant == IHVariant::Closed) {
            rkA[d] = restricted_rank(K, d, col_allow, [](int) { return true; });
        } else {
            rkQ[d] = restricted_rank(K, d, col_allow, [&](int r) { return !(ok(d - 1, r) && bd(d - 1, r)); });
            rkD[d] = restricted_rank(K, d, [&](int i) { return ok(d, i) && bd(d, i); }, row_bad);
        }
    }
    Betti out;
    for (int i = 0; i <= m; ++i) {
        if (variant == IHVariant::Closed) {
            out.betti.push_back(a[i] - rkA[i] - rkA[i + 1] + rkP[i + 1]);
            out.chain_dims.push_back(a[i] - rkP[i]);
        } else {
            out.betti.push_back(a[i] - rkQ[i] + rkP[i + 1] - b[i] + rkD[i] - rkQ[i + 1]);
            out.chain_dims.push_back((a[i] - rkP[i]) - (b[i] - rkD[i]));
        }
    }
    return out;
}

Mask full_mask(const FilteredComplex& K) {
    Mask m(K.dim() + 1);
    for (int d = 0; d <= K.dim(); ++d) m[d].assign(K.count(d), true);
    return m;
}

void require_boundary(const FilteredComplex& K) {
    if (!K.has_boundary()) throw DomainError("relative variant needs a marked boundary subcomplex");
}

// Reduced Betti numbers of the order complex of a poset given by cells and their strict-upper sets.
std::vector<long> reduced_order_homology(const std::vector<CellRef>& elems,
                                         const std::vector<std::vector<std::vector<CellRef>>>& up) {
    std::map<CellRef, int> pos;
    for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<int>(i);
    // chains as increasing sequences (by dimension), built by extension upward
    std::vector<std::vector<std::vector<int>>> by_len;
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> current;
    for (std::size_t i = 0; i < elems.size(); ++i) current.push_back({static_cast<int>(i)});
    int maxd = 0;
    for (const auto& e : elems) maxd = std::max(maxd, e.dim);
    FilteredComplex oc(std::max<int>(0, static_cast<int>(elems.size() ? maxd : 0)));
    int k = 0;
    while (!current.empty()) {
        if (k > oc.dim()) break;
        std::vector<std::vector<int>> next;
        for (const auto& c : current) {
            std::vector<std::pair<int, long>> bdry;
            if (k > 0)
                for (int v = 0; v <= k; ++v) {
                    auto f = c;
                    f.erase(f.begin() + v);
                    bdry.emplace_back(index.at(f), v % 2 ? -1 : 1);
                }
            int id = oc.add_cell(k, std::move(bdry), oc.dim());
            index.emplace(c, id);
            const CellRef& last = elems[c.back()];
            for (const auto& u : up[last.dim][last.index]) {
                auto it = pos.find(u);
                if (it == pos.end()) continue;
                auto ext = c;
                ext.push_back(it->second);
                next.push_back(std::move(ext));
            }
        }
        current = std::move(next);
        ++k;
    }
    if (elems.empty()) return {};
    auto h = homology(oc);
    h[0] -= 1;
    return h;
}

}  // namespace

bool allowable(const std::vector<int>& dims, const Perversity& p, int i) {
    const int m = p.m();
    if (static_cast<int>(dims.size()) != m - 1)
        throw DomainError("allowability needs " + std::to_string(m - 1) + " intersection dimensions");
    for (int k = 2; k <= m; ++k) {
        const int d = dims[k - 2];
        if (d < 0) continue;
        if (d > i - k + p(k)) return false;
    }
    return true;
}

std::vector<std::vector<std::vector<int>>> intersection_dims(const FilteredComplex& K) {
    const int m = K.dim();
    std::vector<std::vector<std::vector<int>>> D(m + 1);
    for (int d = 0; d <= m; ++d) {
        D[d].resize(K.count(d));
        for (std::size_t i = 0; i < K.count(d); ++i) {
            auto& row = D[d][i];
            row.assign(m + 1, -1);
            const int lev = K.level(d, static_cast<int>(i));
            for (int j = 0; j <= m; ++j) {
                if (lev <= j) {
                    row[j] = d;
                    continue;
                }
                for (const auto& e : K.boundary(d, static_cast<int>(i))) row[j] = std::max(row[j], D[d - 1][e.first][j]);
            }
        }
    }
    return D;
}

std::string to_string(IHVariant v) { return v == IHVariant::Closed ? "closed" : "relative"; }

std::string IHResult::to_string() const {
    return "IH^" + perversity.to_string() + " [" + nfih::to_string(variant) + "] = " + join(betti);
}

namespace {

Mask allowable_mask(const FilteredComplex& K, const Perversity& p) {
    const int m = K.dim();
    if (p.m() != m)
        throw DomainError("perversity is for dimension " + std::to_string(p.m()) + " but the complex has dimension " +
                          std::to_string(m));
    auto D = intersection_dims(K);
    Mask mask(m + 1);
    std::vector<int> dims(m - 1);
    for (int d = 0; d <= m; ++d) {
        mask[d].resize(K.count(d));
        for (std::size_t i = 0; i < K.count(d); ++i) {
            for (int k = 2; k <= m; ++k) dims[k - 2] = D[d][i][m - k];
            mask[d][i] = allowable(dims, p, d);
        }
    }
    return mask;
}

}  // namespace

ICDescription intersection_chain_complex(const FilteredComplex& K, const Perversity& p) {
    K.validate();
    ICDescription out;
    out.allowable_cells = allowable_mask(K, p);
    out.dims = betti_from_mask(K, out.allowable_cells, IHVariant::Closed).chain_dims;
    return out;
}

std::vector<long> homology(const FilteredComplex& K) {
    return betti_from_mask(K, full_mask(K), IHVariant::Closed).betti;
}

std::vector<long> relative_homology(const FilteredComplex& K) {
    require_boundary(K);
    return betti_from_mask(K, full_mask(K), IHVariant::Relative).betti;
}

IHResult ih_betti(const FilteredComplex& K, const Perversity& p, IHVariant variant) {
    K.validate();
    if (variant == IHVariant::Relative) require_boundary(K);
    Mask mask = allowable_mask(K, p);
    Betti b = betti_from_mask(K, mask, variant);
    return IHResult{p, b.betti, b.chain_dims, variant};
}

bool ic_cycle_bounds(const FilteredComplex& K, const Perversity& p, int i,
                     const std::vector<std::pair<int, long>>& chain) {
    K.validate();
    Mask mask = allowable_mask(K, p);
    if (i < 0 || i > K.dim()) throw DomainError("degree out of range");
    SparseColumn z;
    std::map<int, long> acc;
    for (const auto& [c, v] : chain) {
        if (c < 0 || static_cast<std::size_t>(c) >= K.count(i)) throw DomainError("chain cell out of range");
        if (v != 0 && !mask[i][c]) throw DomainError("chain is not allowable");
        acc[c] += v;
    }
    std::map<int, long> bd;
    for (const auto& [c, v] : acc)
        if (i > 0)
            for (const auto& [f, e] : K.boundary(i, c)) bd[f] += v * e;
    for (const auto& [f, v] : bd)
        if (v != 0) throw DomainError("chain is not a cycle");
    for (const auto& [c, v] : acc)
        if (v != 0) z.emplace_back(c, v);
    if (z.empty()) return true;
    // z bounds in IC iff it lies in the span of ∂ of allowable (i+1)-cells.
    std::vector<SparseColumn> cols;
    for (std::size_t j = 0; j < K.count(i + 1); ++j)
        if (mask[i + 1][j]) {
            SparseColumn col;
            for (const auto& e : K.boundary(i + 1, static_cast<int>(j)))
                if (e.second != 0) col.push_back(e);
            cols.push_back(std::move(col));
        }
    const std::size_t r = exact_rank(cols);
    cols.push_back(z);
    return exact_rank(cols) == r;
}

std::string PseudomanifoldReport::to_string() const {
    std::ostringstream os;
    os << (pseudomanifold ? "pseudomanifold" : "not a pseudomanifold") << "; dense: " << (dense ? "yes" : "no")
       << "; singular cells: " << singular_cells.size() << "; singular codimension: ";
    if (singular_codim)
        os << *singular_codim;
    else
        os << "none";
    if (!bad_codim1.empty()) os << "; branching codim-1 cells: " << bad_codim1.size();
    return os.str();
}

PseudomanifoldReport validate_pseudomanifold(const FilteredComplex& K) {
    K.validate();
    const int m = K.dim();
    PseudomanifoldReport rep;
    auto up = cofaces_closure(K);
    rep.dense = true;
    for (int d = 0; d < m; ++d)
        for (std::size_t i = 0; i < K.count(d); ++i) {
            bool has_top = std::any_of(up[d][i].begin(), up[d][i].end(), [&](const CellRef& r) { return r.dim == m; });
            if (!has_top) rep.dense = false;
        }
    std::set<CellRef> singular;
    if (m >= 1) {
        for (std::size_t i = 0; i < K.count(m - 1); ++i) {
            long tops = 0;
            for (const auto& r : up[m - 1][i])
                if (r.dim == m) ++tops;
            const long want = K.on_boundary(m - 1, static_cast<int>(i)) ? 1 : 2;
            if (tops != want) {
                rep.bad_codim1.push_back(CellRef{m - 1, static_cast<int>(i)});
                singular.insert(CellRef{m - 1, static_cast<int>(i)});
            }
        }
    }
    for (int d = 0; d + 2 <= m; ++d)
        for (std::size_t i = 0; i < K.count(d); ++i) {
            if (K.level(d, static_cast<int>(i)) > m - 1) continue;
            auto h = reduced_order_homology(up[d][i], up);
            std::vector<long> want(h.size(), 0);
            const int sphere = m - d - 1;
            if (!K.on_boundary(d, static_cast<int>(i)) && sphere < static_cast<int>(want.size())) want[sphere] = 1;
            if (h != want) singular.insert(CellRef{d, static_cast<int>(i)});
        }
    rep.singular_cells.assign(singular.begin(), singular.end());
    int maxdim = -1;
    for (const auto& c : rep.singular_cells) maxdim = std::max(maxdim, c.dim);
    if (maxdim >= 0) rep.singular_codim = m - maxdim;
    rep.pseudomanifold = rep.dense && (!rep.singular_codim || *rep.singular_codim >= 2);
    return rep;
}

std::optional<std::vector<int>> orientation(const FilteredComplex& K) {
    const int m = K.dim();
    const std::size_t n = K.count(m);
    if (n == 0) return std::nullopt;
    // (m-1)-cell -> list of (top cell, coefficient)
    std::vector<std::vector<std::pair<int, long>>> inc(K.count(m - 1 >= 0 ? m - 1 : 0));
    if (m >= 1)
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& [f, c] : K.boundary(m, static_cast<int>(i)))
                if (c != 0) inc[f].emplace_back(static_cast<int>(i), c);
    std::vector<int> sign(n, 0);
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // neighbour, relation sign
    for (const auto& lst : inc) {
        if (lst.size() != 2) continue;
        if (std::abs(lst[0].second) != 1 || std::abs(lst[1].second) != 1) continue;
        // s0*c0 + s1*c1 = 0  => s1 = -s0*c0/c1
        int rel = static_cast<int>(-lst[0].second * lst[1].second);
        adj[lst[0].first].emplace_back(lst[1].first, rel);
        adj[lst[1].first].emplace_back(lst[0].first, rel);
    }
    for (std::size_t s = 0; s < n; ++s) {
        if (sign[s]) continue;
        sign[s] = 1;
        std::deque<int> q{static_cast<int>(s)};
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (auto [v, rel] : adj[u]) {
                int want = sign[u] * rel;
                if (!sign[v]) {
                    sign[v] = want;
                    q.push_back(v);
                } else if (sign[v] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    if (m >= 1)
        for (std::size_t f = 0; f < inc.size(); ++f) {
            if (K.on_boundary(m - 1, static_cast<int>(f))) continue;
            long total = 0;
            for (const auto& [t, c] : inc[f]) total += sign[t] * c;
            if (total != 0) return std::nullopt;
        }
    return sign;
}

std::string DualityReport::to_string() const {
    return std::string(pass ? "PASS" : "FAIL") + ": " + join(left) + " vs " + join(right);
}

DualityReport duality_check(const FilteredComplex& K, const Perversity& p, const Perversity& q) {
    if (!p.complementary_to(q))
        throw DomainError("perversities " + p.to_string() + " and " + q.to_string() + " are not complementary");
    if (!orientation(K)) throw DomainError("complex is not orientable");
    const int m = K.dim();
    DualityReport rep;
    rep.left = ih_betti(K, p, IHVariant::Closed).betti;
    auto r = ih_betti(K, q, K.has_boundary() ? IHVariant::Relative : IHVariant::Closed).betti;
    for (int k = 0; k <= m; ++k) rep.right.push_back(r[m - k]);
    rep.pass = rep.left == rep.right;
    return rep;
}

DualityReport ordinary_duality_check(const FilteredComplex& K) {
    K.validate();
    const int m = K.dim();
    DualityReport rep;
    rep.left = homology(K);
    auto r = K.has_boundary() ? relative_homology(K) : rep.left;
    for (int k = 0; k <= m; ++k) rep.right.push_back(r[m - k]);
    rep.pass = rep.left == rep.right;
    return rep;
}

std::string InvarianceReport::to_string() const {
    std::string s = std::string(pass ? "PASS" : "FAIL") + ": original " + join(original) + ", subdivided " +
                    join(subdivided);
    if (alternative) s += ", alternative " + join(*alternative);
    return s;
}

InvarianceReport invariance_check(const FilteredComplex& K, const Perversity& p,
                                  const std::optional<std::vector<std::vector<int>>>& alt_levels,
                                  IHVariant variant) {
    InvarianceReport rep;
    rep.original = ih_betti(K, p, variant).betti;
    rep.subdivided = ih_betti(barycentric_subdivision(K), p, variant).betti;
    rep.pass = rep.original == rep.subdivided;
    if (alt_levels) {
        FilteredComplex alt = K;
        if (static_cast<int>(alt_levels->size()) != K.dim() + 1)
            throw ComplexError("alternative filtration has the wrong number of dimensions");
        for (int d = 0; d <= K.dim(); ++d) {
            if ((*alt_levels)[d].size() != K.count(d))
                throw ComplexError("alternative filtration has the wrong number of cells");
            for (std::size_t i = 0; i < K.count(d); ++i) alt.set_level(d, static_cast<int>(i), (*alt_levels)[d][i]);
        }
        if (auto s = alt.filtration_problem(); !s.empty()) throw ComplexError("inadmissible alternative filtration: " + s);
        rep.alternative = ih_betti(alt, p, variant).betti;
        rep.pass = rep.pass && *rep.alternative == rep.original;
    }
    return rep;
}

}  // namespace nfih
