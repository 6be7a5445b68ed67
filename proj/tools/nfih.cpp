// nfih: command-line front end.
//
// Exit codes: 0 success; 1 usage, parse or malformed input; 2 analysis error or
// invalid complex (boundary of boundary nonzero, bad filtration); 3 inconsistent
// harness verdict or failed selftest.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

#include "nfih/asymptotic.hpp"
#include "nfih/complex_library.hpp"
#include "nfih/errors.hpp"
#include "nfih/ih_engine.hpp"
#include "nfih/infinity.hpp"
#include "nfih/io.hpp"
#include "nfih/nf_models.hpp"
#include "nfih/parser.hpp"
#include "nfih/perversity.hpp"

using namespace nfih;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Config {
    std::uint64_t seed = 0;
    std::string format = "text";
    std::vector<std::string> perversities;
    int subdivide = 1;
    std::optional<double> radius;
    std::string variant = "closed";
    bool duality = false;
    bool invariance = false;
    std::string input;
    std::string complex;
};

std::string vec(const std::vector<long>& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ")";
    return os.str();
}

void emit(const Config& c, const std::string& command, const std::string& text, const json& j) {
    if (c.format == "json") {
        json out = j;
        out["command"] = command;
        out["seed"] = c.seed;
        out["version"] = kVersion;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << text << "# nfih version=" << kVersion << " seed=" << c.seed << " command=" << command << "\n";
    }
}

std::string map_string(const PolyMap& F) {
    std::string s = "(";
    for (std::size_t i = 0; i < F.n(); ++i) s += (i ? ", " : "") + F[i].to_string();
    return s + ")";
}

std::vector<Perversity> perversities(const Config& c, int m) {
    if (c.perversities.empty()) return all_perversities(m);
    std::vector<Perversity> out;
    for (const auto& s : c.perversities) {
        try {
            out.push_back(Perversity::parse(s, m));
        } catch (const DomainError& e) {
            throw FormatError(std::string("--perversity ") + s + ": " + e.what());
        }
    }
    return out;
}

std::string factored(const AlgebraicSet& s) {
    std::ostringstream os;
    bool first = true;
    for (const auto& comp : s.live_components()) {
        for (const auto& g : comp.generators) {
            auto f = split_components(g);
            for (const auto& h : f) {
                os << (first ? "" : "; ") << h.to_string() << " = 0";
                first = false;
            }
        }
    }
    return first ? "empty" : os.str();
}

int cmd_analyze(const Config& c) {
    MapFile mf = load_map(c.input);
    const PolyMap& F = mf.map;
    AnalysisOptions opts;
    opts.seed = c.seed;
    AlgebraicSet sing = singular_locus(F);
    AlgebraicSet k0 = critical_values(F, opts);
    JelonekResult jr = jelonek_analysis(F, opts);
    RankReport rank = leading_rank(F, 8, c.seed);
    PropernessReport pr = properness_test(F, opts);
    std::optional<AlgebraicSet> real_sf;
    if (mf.field != "complex" && F.is_real() && recognize_real_family(F)) real_sf = real_jelonek_set(F);

    std::ostringstream t;
    json j;
    t << "map: " << map_string(F) << "\n";
    t << "Sing(F): " << sing.to_string() << "\n";
    t << "Sing(F) factors: " << factored(sing) << "\n";
    t << "K_0(F): " << k0.to_string() << "\n";
    t << "S_F (complex): " << jr.set.to_string() << "\n";
    for (const auto& comp : jr.set.components())
        t << "  candidate " << comp.to_string() << " [" << to_string(comp.status) << "]\n";
    if (real_sf) t << "S_F (real): " << real_sf->to_string() << "\n";
    t << "leading rank: " << rank.rank << " (rank > n - 2: " << (rank.condition ? "yes" : "no") << ")\n";
    t << "properness: " << to_string(pr.verdict) << "\n";
    if (!pr.note.empty()) t << "note: " << pr.note << "\n";
    const bool all_empty = sing.is_empty() && k0.is_empty() && jr.set.is_empty();
    if (pr.verdict == Verdict::Proper && all_empty)
        t << "summary: Proper; all sets empty\n";
    else
        t << "summary: " << to_string(pr.verdict) << "; S_F: " << jr.set.to_string() << "\n";

    j["map"] = map_string(F);
    j["field"] = mf.field;
    j["sing"] = set_to_json(sing);
    j["k0"] = set_to_json(k0);
    j["sf"] = set_to_json(jr.set);
    if (real_sf) j["sf_real"] = set_to_json(*real_sf);
    j["leading_rank"] = {{"rank", rank.rank}, {"condition", rank.condition}};
    j["properness"] = to_string(pr.verdict);
    emit(c, "analyze", t.str(), j);
    return 0;
}

json ih_json(const IHResult& r) {
    return {{"perversity", r.perversity.to_string()}, {"variant", to_string(r.variant)}, {"betti", r.betti},
            {"chain_dims", r.chain_dims}};
}

int cmd_ih(const Config& c) {
    FilteredComplex K0 = load_complex(c.input);
    K0.validate();
    FilteredComplex K = K0;
    for (int s = 0; s < c.subdivide; ++s) K = barycentric_subdivision(K);
    const int m = K.dim();
    const IHVariant variant = c.variant == "relative" ? IHVariant::Relative : IHVariant::Closed;
    auto ps = perversities(c, m);

    std::ostringstream t;
    json j;
    t << "complex: dimension " << m << ", subdivisions " << c.subdivide << ", cells";
    std::vector<std::size_t> counts;
    for (int d = 0; d <= m; ++d) counts.push_back(K.count(d));
    for (auto n : counts) t << " " << n;
    t << ", euler characteristic " << K.euler_characteristic() << "\n";
    j["dimension"] = m;
    j["subdivisions"] = c.subdivide;
    j["cells"] = counts;
    auto H = homology(K);
    t << "H: " << vec(H) << "\n";
    j["homology"] = H;
    if (K.has_boundary()) {
        auto R = relative_homology(K);
        t << "relative H: " << vec(R) << "\n";
        j["relative_homology"] = R;
    }
    j["ih"] = json::array();
    for (const auto& p : ps) {
        auto r = ih_betti(K, p, variant);
        t << "IH^" << p.to_string() << " [" << to_string(variant) << "]: " << vec(r.betti) << "\n";
        j["ih"].push_back(ih_json(r));
    }
    if (c.duality) {
        j["duality"] = json::array();
        auto od = ordinary_duality_check(K);
        t << "duality ordinary: " << (od.pass ? "PASS" : "FAIL") << " " << vec(od.left) << " vs " << vec(od.right)
          << "\n";
        j["duality"].push_back({{"pair", "ordinary"}, {"pass", od.pass}, {"left", od.left}, {"right", od.right}});
        for (const auto& p : ps) {
            const auto q = p.complement();
            try {
                auto d = duality_check(K, p, q);
                t << "duality " << p.to_string() << " / " << q.to_string() << ": " << (d.pass ? "PASS" : "FAIL")
                  << " " << vec(d.left) << " vs " << vec(d.right) << "\n";
                j["duality"].push_back({{"pair", p.to_string() + " / " + q.to_string()},
                                        {"pass", d.pass},
                                        {"left", d.left},
                                        {"right", d.right}});
            } catch (const DomainError& e) {
                t << "duality " << p.to_string() << ": not applicable (" << e.what() << ")\n";
                j["duality"].push_back({{"pair", p.to_string()}, {"error", e.what()}});
            }
        }
    }
    if (c.invariance) {
        j["invariance"] = json::array();
        for (const auto& p : ps) {
            auto r = invariance_check(K0, p, std::nullopt, variant);
            t << "invariance " << p.to_string() << ": " << (r.pass ? "PASS" : "FAIL") << " "
              << vec(r.original) << " vs " << vec(r.subdivided) << "\n";
            j["invariance"].push_back({{"perversity", p.to_string()},
                                       {"pass", r.pass},
                                       {"original", r.original},
                                       {"subdivided", r.subdivided}});
        }
    }
    emit(c, "ih", t.str(), j);
    return 0;
}

HarnessOptions harness_options(const Config& c) {
    HarnessOptions h;
    h.analysis.seed = c.seed;
    h.radius = c.radius;
    h.subdivisions = c.subdivide;
    return h;
}

int cmd_harness(const Config& c) {
    MapFile mf = load_map(c.input);
    auto h = harness_options(c);
    EquivalenceReport rep;
    std::string model;
    if (!c.complex.empty()) {
        FilteredComplex K = load_complex(c.complex);
        model = "file " + c.complex;
        rep = equivalence_harness(mf.map, K, perversities(c, K.dim()), h);
    } else {
        NFModel M = build_nf_model(mf.map, h.analysis);
        model = to_string(M.kind);
        rep = equivalence_harness(mf.map, perversities(c, M.kind == ModelKind::RealFamily ? 2 : 4), h);
    }
    json j;
    j["map"] = map_string(mf.map);
    j["model"] = model;
    j["properness"] = to_string(rep.verdict);
    j["leading_rank"] = {{"rank", rep.rank.rank}, {"condition", rep.rank.condition}};
    j["jacobian_vanishes"] = rep.jacobian_vanishes;
    j["homology"] = rep.homology;
    j["relative_homology"] = rep.relative_homology;
    j["closed"] = json::array();
    for (const auto& r : rep.closed) j["closed"].push_back(ih_json(r));
    j["relative"] = json::array();
    for (const auto& r : rep.relative) j["relative"].push_back(ih_json(r));
    j["witness_nonbounding"] = rep.witness_nonbounding;
    j["notes"] = rep.notes;
    j["consistency"] = to_string(rep.consistency);
    std::string text = "map: " + map_string(mf.map) + "\nmodel: " + model +
                       "\nsubdivisions: " + std::to_string(c.subdivide) + "\n" + rep.to_string();
    emit(c, "harness", text, j);
    return rep.consistency == Consistency::Inconsistent ? 3 : 0;
}

int cmd_example(const Config& c) {
    auto W = worked_example();
    const auto& M = W.model;
    auto pm = validate_pseudomanifold(W.complex.complex);
    std::ostringstream t;
    t << "map: " << map_string(W.map) << "\n";
    t << "Sing(F): " << M.sing.to_string() << "\n";
    t << "K_0(F): " << M.k0.to_string() << "\n";
    t << "S_F: " << M.sf.to_string() << "\n";
    for (const auto& r : M.regions) {
        t << "region " << r.name << " (" << r.description << "): " << r.sheets << " sheets";
        if (!r.sheet_ids.empty()) {
            t << ", labels";
            for (int s : r.sheet_ids) t << " " << s;
        }
        t << "\n";
    }
    for (const auto& g : M.gluing) {
        t << "gluing along " << g.curve << ":";
        for (const auto& grp : g.groups) {
            t << " {";
            for (std::size_t i = 0; i < grp.size(); ++i) t << (i ? "," : "") << grp[i];
            t << "}";
        }
        if (!g.escaping.empty()) {
            t << "; escaping";
            for (int s : g.escaping) t << " " << s;
        }
        t << "\n";
    }
    t << "total sheets: " << M.total_sheets() << "\n";
    t << "gluing pairs:";
    for (const auto& [a, b] : M.gluing_pairs()) t << " " << a << "-" << b;
    t << "\n";
    t << "pseudomanifold: " << pm.to_string() << "\n";
    json j = model_to_json(M);
    j["map"] = map_string(W.map);
    j["total_sheets"] = M.total_sheets();
    j["pseudomanifold"] = pm.pseudomanifold;
    if (pm.singular_codim) j["singular_codim"] = *pm.singular_codim;
    emit(c, "example32", t.str(), j);
    return 0;
}

int cmd_selftest(const Config& c) {
    std::ostringstream t;
    json j = json::array();
    bool all = true;
    auto line = [&](const std::string& name, bool ok) {
        t << (ok ? "PASS " : "FAIL ") << name << "\n";
        j.push_back({{"check", name}, {"pass", ok}});
        all = all && ok;
    };
    {
        auto K = pinched_torus();
        auto r = ih_betti(K, Perversity::make(PerversityKind::Zero, 2), IHVariant::Closed);
        line("pinched torus IH zero perversity (1, 0, 1)", r.betti == std::vector<long>{1, 0, 1});
        line("pinched torus H (1, 1, 1)", homology(K) == std::vector<long>{1, 1, 1});
    }
    {
        bool ok = true;
        for (const auto& nc : duality_corpus())
            for (const auto& p : all_perversities(nc.complex.dim())) ok = ok && duality_check(nc.complex, p, p.complement()).pass;
        line("duality on the corpus", ok);
    }
    {
        auto W = worked_example();
        auto pairs = W.model.gluing_pairs();
        line("worked example has 4 sheets", W.model.total_sheets() == 4);
        line("worked example gluing 1-2 and 3-4", pairs == std::vector<std::pair<int, int>>{{1, 2}, {3, 4}});
    }
    {
        const std::vector<std::string> xy{"x", "y"};
        PolyMap F({parse_poly("x", xy), parse_poly("x*y", xy)});
        HarnessOptions h;
        h.analysis.seed = c.seed;
        auto rep = equivalence_harness(F, {}, h);
        line("(x, xy) harness consistent", rep.consistency == Consistency::Consistent);
    }
    emit(c, "selftest", t.str(), json{{"checks", j}, {"pass", all}});
    return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nfih: singularities at infinity and intersection homology"};
    app.require_subcommand(1);
    Config c;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", c.seed, "seed for all randomized steps");
        sub->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    };
    auto* analyze = app.add_subcommand("analyze", "Sing(F), K_0(F), S_F, leading rank and properness of a map file");
    common(analyze);
    analyze->add_option("map", c.input, "map file")->required();

    auto* ih = app.add_subcommand("ih", "intersection homology of a complex file");
    common(ih);
    ih->add_option("complex", c.input, "complex file (JSON)")->required();
    ih->add_option("--perversity", c.perversities, "zero|max|lower-middle|upper-middle|custom:p2,p3,...");
    ih->add_option("--subdivide", c.subdivide, "barycentric subdivisions before computing (default 1)")
        ->check(CLI::Range(0, 2));
    ih->add_option("--variant", c.variant, "closed or relative")->check(CLI::IsMember({"closed", "relative"}));
    ih->add_flag("--duality", c.duality, "check duality for each perversity and its complement");
    ih->add_flag("--invariance", c.invariance, "compare against one further subdivision of the input");

    auto* harness = app.add_subcommand("harness", "build the model of a map and run the equivalence checks");
    common(harness);
    harness->add_option("map", c.input, "map file")->required();
    harness->add_option("--perversity", c.perversities, "zero|max|lower-middle|upper-middle|custom:p2,p3,...");
    harness->add_option("--subdivide", c.subdivide, "barycentric subdivisions of the model (default 1)")
        ->check(CLI::Range(0, 2));
    harness->add_option("--complex", c.complex, "hand-built model complex (JSON) instead of the built-in model");
    harness->add_option("--radius", c.radius, "radius of the compactifying ball")->check(CLI::PositiveNumber);

    auto* example = app.add_subcommand("example32", "the built-in real example (x, x^2 y (y + 2))");
    common(example);
    auto* selftest = app.add_subcommand("selftest", "quick built-in checks");
    common(selftest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    try {
        if (analyze->parsed()) return cmd_analyze(c);
        if (ih->parsed()) return cmd_ih(c);
        if (harness->parsed()) return cmd_harness(c);
        if (example->parsed()) return cmd_example(c);
        if (selftest->parsed()) return cmd_selftest(c);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const FormatError& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return 1;
    } catch (const ComplexError& e) {
        std::cerr << "invalid complex: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
