#include "nfih/complex_library.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "nfih/errors.hpp"

namespace nfih {

FilteredComplex simplicial_complex(int m, const std::vector<Simplex>& facets, const LevelFn& level,
                                   const std::function<bool(const Simplex&)>& on_boundary) {
    std::vector<std::set<Simplex>> faces(m + 1);
    for (Simplex f : facets) {
        std::sort(f.begin(), f.end());
        if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw ComplexError("repeated vertex in a facet");
        const int d = static_cast<int>(f.size()) - 1;
        if (d < 0 || d > m) throw ComplexError("facet dimension out of range");
        const unsigned n = static_cast<unsigned>(f.size());
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            Simplex s;
            for (unsigned b = 0; b < n; ++b)
                if (mask & (1u << b)) s.push_back(f[b]);
            faces[s.size() - 1].insert(s);
        }
    }
    FilteredComplex K(m);
    std::vector<std::map<Simplex, int>> index(m + 1);
    for (int d = 0; d <= m; ++d)
        for (const auto& s : faces[d]) {
            std::vector<std::pair<int, long>> bd;
            for (int v = 0; v <= d && d > 0; ++v) {
                Simplex f = s;
                f.erase(f.begin() + v);
                bd.emplace_back(index[d - 1].at(f), v % 2 ? -1 : 1);
            }
            std::string label;
            for (int v : s) label += (label.empty() ? "" : ",") + std::to_string(v);
            const int lev = level ? level(s) : m;
            index[d][s] = K.add_cell(d, std::move(bd), lev, label, on_boundary ? on_boundary(s) : false);
        }
    return K;
}

LevelFn vertex_stratum(int m, std::vector<int> stratum, int j) {
    std::sort(stratum.begin(), stratum.end());
    return [m, j, stratum](const Simplex& s) {
        for (int v : s)
            if (!std::binary_search(stratum.begin(), stratum.end(), v)) return m;
        return j;
    };
}

FilteredComplex sphere(int n) {
    std::vector<Simplex> facets;
    for (int skip = 0; skip <= n + 1; ++skip) {
        Simplex s;
        for (int v = 0; v <= n + 1; ++v)
            if (v != skip) s.push_back(v);
        facets.push_back(s);
    }
    return simplicial_complex(n, facets);
}

namespace {

std::vector<Simplex> torus_facets(int offset) {
    std::vector<Simplex> f;
    for (int i = 0; i < 7; ++i) {
        f.push_back({offset + i, offset + (i + 1) % 7, offset + (i + 3) % 7});
        f.push_back({offset + i, offset + (i + 2) % 7, offset + (i + 3) % 7});
    }
    return f;
}

}  // namespace

FilteredComplex torus() { return simplicial_complex(2, torus_facets(0)); }

FilteredComplex pinched_torus() {
    // apex 0, ring a = 1..4, ring b = 5..8; annulus between the rings, both rings coned to the apex
    std::vector<Simplex> f;
    for (int i = 0; i < 4; ++i) {
        const int a0 = 1 + i, a1 = 1 + (i + 1) % 4, b0 = 5 + i, b1 = 5 + (i + 1) % 4;
        f.push_back({a0, a1, b0});
        f.push_back({a1, b1, b0});
        f.push_back({0, a0, a1});
        f.push_back({0, b0, b1});
    }
    return simplicial_complex(2, f, vertex_stratum(2, {0}, 0));
}

FilteredComplex suspended_torus() {
    std::vector<Simplex> f;
    for (const auto& t : torus_facets(0)) {
        Simplex n = t, s = t;
        n.push_back(7);
        s.push_back(8);
        f.push_back(n);
        f.push_back(s);
    }
    return simplicial_complex(3, f, vertex_stratum(3, {7, 8}, 0));
}

FilteredComplex circle_join_torus() {
    std::vector<Simplex> f;
    const std::vector<std::pair<int, int>> circle = {{7, 8}, {8, 9}, {7, 9}};
    for (const auto& t : torus_facets(0))
        for (const auto& [u, v] : circle) {
            Simplex s = t;
            s.push_back(u);
            s.push_back(v);
            f.push_back(s);
        }
    return simplicial_complex(4, f, vertex_stratum(4, {7, 8, 9}, 1));
}

FilteredComplex disk() {
    std::vector<Simplex> f;
    for (int i = 0; i < 6; ++i) f.push_back({0, 1 + i, 1 + (i + 1) % 6});
    return simplicial_complex(2, f, {}, [](const Simplex& s) { return std::find(s.begin(), s.end(), 0) == s.end(); });
}

std::vector<NamedComplex> duality_corpus() {
    return {{"sphere2", sphere(2)},          {"torus", torus()},
            {"pinched_torus", pinched_torus()}, {"sphere3", sphere(3)},
            {"suspended_torus", suspended_torus()}, {"circle_join_torus", circle_join_torus()}};
}

}  // namespace nfih
