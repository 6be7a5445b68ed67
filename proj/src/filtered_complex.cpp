#include "nfih/filtered_complex.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "nfih/errors.hpp"

namespace nfih {

FilteredComplex::FilteredComplex(int m) : m_(m) {
    if (m < 0) throw DomainError("complex dimension must be nonnegative");
    cells_.resize(static_cast<std::size_t>(m + 1));
}

int FilteredComplex::add_cell(int d, std::vector<std::pair<int, long>> boundary, int level, std::string label,
                              bool on_boundary) {
    if (d < 0 || d > m_) throw ComplexError("cell dimension " + std::to_string(d) + " out of range");
    if (d == 0 && !boundary.empty()) throw ComplexError("0-cells have no faces");
    std::sort(boundary.begin(), boundary.end());
    // merge repeated faces
    std::vector<std::pair<int, long>> merged;
    for (const auto& e : boundary) {
        if (!merged.empty() && merged.back().first == e.first)
            merged.back().second += e.second;
        else
            merged.push_back(e);
    }
    for (const auto& [f, c] : merged)
        if (f < 0 || static_cast<std::size_t>(f) >= cells_[d - 1].size())
            throw ComplexError("face index " + std::to_string(f) + " of a " + std::to_string(d) + "-cell is undefined");
    cells_[d].push_back(Cell{std::move(merged), level, std::move(label), on_boundary});
    return static_cast<int>(cells_[d].size() - 1);
}

std::size_t FilteredComplex::count(int d) const {
    if (d < 0 || d > m_) return 0;
    return cells_[d].size();
}

std::size_t FilteredComplex::total_cells() const {
    std::size_t n = 0;
    for (const auto& c : cells_) n += c.size();
    return n;
}

bool FilteredComplex::has_boundary() const {
    for (const auto& dimcells : cells_)
        for (const auto& c : dimcells)
            if (c.on_boundary) return true;
    return false;
}

int FilteredComplex::find(int d, const std::string& label) const {
    if (d < 0 || d > m_) return -1;
    for (std::size_t i = 0; i < cells_[d].size(); ++i)
        if (cells_[d][i].label == label) return static_cast<int>(i);
    return -1;
}

std::vector<SparseColumn> FilteredComplex::boundary_matrix(int d) const {
    std::vector<SparseColumn> cols;
    if (d < 1 || d > m_) return cols;
    cols.reserve(cells_[d].size());
    for (const auto& c : cells_[d]) {
        SparseColumn col;
        for (const auto& e : c.boundary)
            if (e.second != 0) col.push_back(e);
        cols.push_back(std::move(col));
    }
    return cols;
}

std::string FilteredComplex::boundary_problem() const {
    for (int d = 2; d <= m_; ++d) {
        for (std::size_t i = 0; i < cells_[d].size(); ++i) {
            std::map<int, long> acc;
            for (const auto& [f, c] : cells_[d][i].boundary) {
                if (c == 0) continue;
                for (const auto& [g, e] : cells_[d - 1][f].boundary) acc[g] += c * e;
            }
            for (const auto& [g, v] : acc)
                if (v != 0)
                    return "boundary of boundary is nonzero on " + std::to_string(d) + "-cell " + std::to_string(i);
        }
    }
    return {};
}

std::string FilteredComplex::filtration_problem() const {
    for (int d = 0; d <= m_; ++d) {
        for (std::size_t i = 0; i < cells_[d].size(); ++i) {
            const Cell& c = cells_[d][i];
            const std::string name = std::to_string(d) + "-cell " + std::to_string(i);
            if (c.level < 0 || c.level > m_) return "level of " + name + " out of range";
            if (c.level < d) return name + " has dimension above its level";
            for (const auto& [f, coeff] : c.boundary) {
                const Cell& face = cells_[d - 1][f];
                if (face.level > c.level) return "X_" + std::to_string(c.level) + " is not closed under faces at " + name;
                if (c.on_boundary && !face.on_boundary) return "boundary subcomplex is not closed at " + name;
            }
        }
    }
    return {};
}

void FilteredComplex::validate() const {
    if (auto s = filtration_problem(); !s.empty()) throw ComplexError(s);
    if (auto s = boundary_problem(); !s.empty()) throw ComplexError(s);
}

long FilteredComplex::euler_characteristic() const {
    long chi = 0;
    for (int d = 0; d <= m_; ++d) chi += (d % 2 ? -1 : 1) * static_cast<long>(cells_[d].size());
    return chi;
}

std::vector<std::vector<std::vector<CellRef>>> cofaces_closure(const FilteredComplex& K) {
    const int m = K.dim();
    std::vector<std::vector<std::vector<CellRef>>> up(m + 1);
    for (int d = 0; d <= m; ++d) up[d].resize(K.count(d));
    // immediate cofaces
    std::vector<std::vector<std::vector<int>>> imm(m + 1);
    for (int d = 0; d <= m; ++d) imm[d].resize(K.count(d));
    for (int d = 1; d <= m; ++d)
        for (std::size_t i = 0; i < K.count(d); ++i)
            for (const auto& e : K.boundary(d, static_cast<int>(i))) imm[d - 1][e.first].push_back(static_cast<int>(i));
    for (int d = m; d >= 0; --d) {
        for (std::size_t i = 0; i < K.count(d); ++i) {
            std::set<CellRef> acc;
            for (int c : imm[d][i]) {
                acc.insert(CellRef{d + 1, c});
                for (const auto& r : up[d + 1][c]) acc.insert(r);
            }
            up[d][i].assign(acc.begin(), acc.end());
        }
    }
    return up;
}

FilteredComplex barycentric_subdivision(const FilteredComplex& K) {
    const int m = K.dim();
    // faces closure (downward), as sorted lists of CellRef excluding self
    std::vector<std::vector<std::vector<CellRef>>> down(m + 1);
    for (int d = 0; d <= m; ++d) {
        down[d].resize(K.count(d));
        for (std::size_t i = 0; i < K.count(d); ++i) {
            std::set<CellRef> acc;
            for (const auto& e : K.boundary(d, static_cast<int>(i))) {
                acc.insert(CellRef{d - 1, e.first});
                for (const auto& r : down[d - 1][e.first]) acc.insert(r);
            }
            down[d][i].assign(acc.begin(), acc.end());
        }
    }
    FilteredComplex out(m);
    // a chain is a strictly increasing sequence of cells; simplices keyed by chain
    std::map<std::vector<CellRef>, int> index;
    // chains ending at each cell, grown by dimension of the top cell
    std::vector<std::vector<std::vector<std::vector<CellRef>>>> chains(m + 1);
    for (int d = 0; d <= m; ++d) {
        chains[d].resize(K.count(d));
        for (std::size_t i = 0; i < K.count(d); ++i) {
            const CellRef top{d, static_cast<int>(i)};
            auto& mine = chains[d][i];
            mine.push_back({top});
            for (const auto& f : down[d][i])
                for (const auto& c : chains[f.dim][f.index]) {
                    auto ext = c;
                    ext.push_back(top);
                    mine.push_back(std::move(ext));
                }
        }
    }
    // add simplices in order of simplex dimension
    for (int k = 0; k <= m; ++k) {
        for (int d = 0; d <= m; ++d)
            for (std::size_t i = 0; i < K.count(d); ++i)
                for (const auto& c : chains[d][i]) {
                    if (static_cast<int>(c.size()) != k + 1) continue;
                    std::vector<std::pair<int, long>> bd;
                    for (int v = 0; v <= k && k > 0; ++v) {
                        auto face = c;
                        face.erase(face.begin() + v);
                        bd.emplace_back(index.at(face), v % 2 ? -1 : 1);
                    }
                    std::string label;
                    for (const auto& r : c) {
                        const std::string& l = K.label(r.dim, r.index);
                        label += (label.empty() ? "" : "<") +
                                 (l.empty() ? std::to_string(r.dim) + ":" + std::to_string(r.index) : l);
                    }
                    int id = out.add_cell(k, std::move(bd), K.level(d, static_cast<int>(i)), label,
                                          K.on_boundary(d, static_cast<int>(i)));
                    index.emplace(c, id);
                }
    }
    return out;
}

}  // namespace nfih
