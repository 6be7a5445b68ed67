#include "nfih/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "nfih/complex_library.hpp"
#include "nfih/errors.hpp"
#include "nfih/parser.hpp"

namespace nfih {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string id_string(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long>());
    throw FormatError("cell ids must be strings or integers");
}

int get_dimension(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dimension") || !j["dimension"].is_number_integer())
        throw FormatError("complex file needs an integer \"dimension\"");
    const int m = j["dimension"].get<int>();
    if (m < 0 || m > 16) throw FormatError("dimension out of range");
    return m;
}

std::map<std::string, int> read_levels(const nlohmann::json& j) {
    std::map<std::string, int> levels;
    if (!j.contains("levels")) return levels;
    if (!j["levels"].is_object()) throw FormatError("\"levels\" must be an object");
    for (const auto& [k, v] : j["levels"].items()) {
        if (!v.is_number_integer()) throw FormatError("level of " + k + " must be an integer");
        levels[k] = v.get<int>();
    }
    return levels;
}

std::set<std::string> read_boundary(const nlohmann::json& j) {
    std::set<std::string> out;
    if (!j.contains("boundary_subcomplex")) return out;
    if (!j["boundary_subcomplex"].is_array()) throw FormatError("\"boundary_subcomplex\" must be an array");
    for (const auto& v : j["boundary_subcomplex"]) out.insert(id_string(v));
    return out;
}

}  // namespace

FilteredComplex complex_from_json(const nlohmann::json& j) {
    const int m = get_dimension(j);
    auto levels = read_levels(j);
    auto bd = read_boundary(j);
    std::set<std::string> used;
    if (j.contains("facets")) {
        if (!j["facets"].is_array()) throw FormatError("\"facets\" must be an array");
        std::vector<Simplex> facets;
        for (const auto& f : j["facets"]) {
            if (!f.is_array() || f.empty()) throw FormatError("each facet must be a nonempty array of vertices");
            Simplex s;
            for (const auto& v : f) {
                if (!v.is_number_integer()) throw FormatError("facet vertices must be integers");
                s.push_back(v.get<int>());
            }
            if (static_cast<int>(s.size()) > m + 1) throw FormatError("facet larger than the dimension allows");
            facets.push_back(s);
        }
        auto name = [](const Simplex& s) {
            std::string l;
            for (int v : s) l += (l.empty() ? "" : ",") + std::to_string(v);
            return l;
        };
        FilteredComplex K(0);
        try {
            K = simplicial_complex(
                m, facets,
                [&](const Simplex& s) {
                    auto it = levels.find(name(s));
                    return it == levels.end() ? m : it->second;
                },
                [&](const Simplex& s) { return bd.count(name(s)) > 0; });
        } catch (const ComplexError& e) {
            throw FormatError(e.what());
        }
        for (int d = 0; d <= m; ++d)
            for (std::size_t i = 0; i < K.count(d); ++i) used.insert(K.label(d, static_cast<int>(i)));
        for (const auto& [k, v] : levels)
            if (!used.count(k)) throw FormatError("level given for unknown simplex " + k);
        for (const auto& k : bd)
            if (!used.count(k)) throw FormatError("unknown boundary simplex " + k);
        return K;
    }
    if (!j.contains("cells") || !j["cells"].is_array()) throw FormatError("complex file needs \"cells\" or \"facets\"");
    const auto& cells = j["cells"];
    if (static_cast<int>(cells.size()) != m + 1) throw FormatError("\"cells\" must list dimensions 0..m");
    std::map<std::string, std::pair<int, int>> where;
    std::vector<std::vector<std::string>> ids(m + 1);
    for (int d = 0; d <= m; ++d) {
        if (!cells[d].is_array()) throw FormatError("cells of each dimension must be an array");
        for (const auto& c : cells[d]) {
            std::string id = id_string(c);
            if (where.count(id)) throw FormatError("duplicate cell id " + id);
            where[id] = {d, static_cast<int>(ids[d].size())};
            ids[d].push_back(id);
        }
    }
    std::vector<std::vector<std::vector<std::pair<int, long>>>> faces(m + 1);
    for (int d = 0; d <= m; ++d) faces[d].resize(ids[d].size());
    if (j.contains("boundary")) {
        if (!j["boundary"].is_array()) throw FormatError("\"boundary\" must be an array");
        for (const auto& e : j["boundary"]) {
            if (!e.is_array() || e.size() != 3 || !e[2].is_number_integer())
                throw FormatError("boundary entries are [cell, face, coefficient]");
            const std::string c = id_string(e[0]), f = id_string(e[1]);
            if (!where.count(c)) throw FormatError("unknown cell " + c);
            if (!where.count(f)) throw FormatError("unknown face " + f);
            auto [dc, ic] = where[c];
            auto [df, jf] = where[f];
            if (df != dc - 1) throw FormatError("face " + f + " of " + c + " has the wrong dimension");
            faces[dc][ic].emplace_back(jf, e[2].get<long>());
        }
    }
    for (const auto& [k, v] : levels)
        if (!where.count(k)) throw FormatError("level given for unknown cell " + k);
    for (const auto& k : bd)
        if (!where.count(k)) throw FormatError("unknown boundary cell " + k);
    FilteredComplex K(m);
    for (int d = 0; d <= m; ++d)
        for (std::size_t i = 0; i < ids[d].size(); ++i) {
            auto it = levels.find(ids[d][i]);
            K.add_cell(d, faces[d][i], it == levels.end() ? m : it->second, ids[d][i], bd.count(ids[d][i]) > 0);
        }
    return K;
}

FilteredComplex load_complex(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    return complex_from_json(j);
}

nlohmann::json complex_to_json(const FilteredComplex& K) {
    const int m = K.dim();
    auto name = [&](int d, int i) {
        const std::string& l = K.label(d, i);
        return l.empty() ? std::to_string(d) + ":" + std::to_string(i) : l;
    };
    nlohmann::json j;
    j["dimension"] = m;
    j["cells"] = nlohmann::json::array();
    j["boundary"] = nlohmann::json::array();
    j["levels"] = nlohmann::json::object();
    j["boundary_subcomplex"] = nlohmann::json::array();
    for (int d = 0; d <= m; ++d) {
        nlohmann::json ids = nlohmann::json::array();
        for (std::size_t i = 0; i < K.count(d); ++i) {
            const int ii = static_cast<int>(i);
            ids.push_back(name(d, ii));
            for (const auto& [f, c] : K.boundary(d, ii)) j["boundary"].push_back({name(d, ii), name(d - 1, f), c});
            if (K.level(d, ii) != m) j["levels"][name(d, ii)] = K.level(d, ii);
            if (K.on_boundary(d, ii)) j["boundary_subcomplex"].push_back(name(d, ii));
        }
        j["cells"].push_back(ids);
    }
    return j;
}

MapFile parse_map_text(const std::string& text) {
    MapFile out;
    std::vector<std::string> vars{"x", "y"};
    std::vector<std::string> comps;
    std::istringstream in(text);
    std::string line;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        const auto b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        line = trim(line);
        if (line.empty()) continue;
        if (line.rfind("vars:", 0) == 0) {
            vars.clear();
            std::istringstream vs(line.substr(5));
            for (std::string v; std::getline(vs, v, ',');)
                if (!trim(v).empty()) vars.push_back(trim(v));
            if (vars.empty()) throw FormatError("empty variable list");
            continue;
        }
        if (line.rfind("field:", 0) == 0) {
            out.field = trim(line.substr(6));
            if (out.field != "real" && out.field != "complex" && out.field != "auto")
                throw FormatError("field must be real, complex or auto");
            continue;
        }
        if (auto eq = line.find('='); eq != std::string::npos) line = trim(line.substr(eq + 1));
        comps.push_back(line);
    }
    if (comps.empty()) throw FormatError("map file has no components");
    if (comps.size() != vars.size()) throw FormatError("number of components must equal the number of variables");
    std::vector<MultiPoly> polys;
    for (const auto& c : comps) polys.push_back(parse_poly(c, vars));
    out.map = PolyMap(std::move(polys));
    if (out.field == "real" && !out.map.is_real()) throw FormatError("field: real requires real coefficients");
    return out;
}

MapFile load_map(const std::string& path) { return parse_map_text(read_file(path)); }

nlohmann::json set_to_json(const AlgebraicSet& s) {
    nlohmann::json j;
    j["text"] = s.to_string();
    j["components"] = nlohmann::json::array();
    for (const auto& c : s.components()) {
        nlohmann::json cj;
        cj["generators"] = nlohmann::json::array();
        for (const auto& g : c.generators) cj["generators"].push_back(g.to_string());
        cj["signs"] = nlohmann::json::array();
        for (const auto& sc : c.signs) cj["signs"].push_back(sc.to_string());
        cj["status"] = to_string(c.status);
        j["components"].push_back(cj);
    }
    return j;
}

nlohmann::json model_to_json(const NFModel& M) {
    nlohmann::json j;
    j["kind"] = to_string(M.kind);
    j["target"] = M.target;
    j["sing"] = set_to_json(M.sing);
    j["k0"] = set_to_json(M.k0);
    j["sf"] = set_to_json(M.sf);
    j["radius"] = M.radius;
    j["regions"] = nlohmann::json::array();
    for (const auto& r : M.regions) {
        nlohmann::json rj;
        rj["name"] = r.name;
        rj["description"] = r.description;
        rj["signs"] = nlohmann::json::array();
        for (const auto& s : r.signs) rj["signs"].push_back(s.to_string());
        rj["sheets"] = r.sheets;
        rj["sheet_ids"] = r.sheet_ids;
        j["regions"].push_back(rj);
    }
    j["gluing"] = nlohmann::json::array();
    for (const auto& g : M.gluing) {
        nlohmann::json gj;
        gj["curve"] = g.curve;
        gj["regions"] = g.regions;
        gj["groups"] = g.groups;
        gj["escaping"] = g.escaping;
        j["gluing"].push_back(gj);
    }
    j["gluing_pairs"] = nlohmann::json::array();
    for (const auto& [a, b] : M.gluing_pairs()) j["gluing_pairs"].push_back({a, b});
    return j;
}

}  // namespace nfih
