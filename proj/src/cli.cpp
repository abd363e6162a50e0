#include "tfg/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <map>
#include <sstream>

#include "tfg/homology.hpp"
#include "tfg/io.hpp"

namespace tfg::cli {

namespace {

struct Workspace {
    std::map<std::string, GraphPtr> graphs;        // by declared graph name
    std::map<std::string, std::string> clopen_texts;  // file path -> raw text
    long order_cap = kDefaultGroupOrderCap;
    long closure_cap = kDefaultClosureCap;
    std::uint64_t seed = 0;
    std::istream* in = nullptr;
};

std::string read_file(const Workspace& ws, const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << ws.in->rdbuf();
        return buf.str();
    }
    std::ifstream f(path);
    if (!f) throw invalid_argument("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

GraphPtr load_graph(const Workspace& ws, const std::string& path) {
    return std::make_shared<MultiGraph>(parse_graph(read_file(ws, path), path));
}

// A clopen argument is "X" (the full space), a file, or "<file>:<name>".
ClopenSet resolve_clopen(const Workspace& ws, GraphPtr g, const std::string& spec) {
    if (spec == "X") return full_space(std::move(g));
    std::string path = spec, name;
    size_t colon = spec.rfind(':');
    if (colon != std::string::npos && colon > 1) {
        path = spec.substr(0, colon);
        name = spec.substr(colon + 1);
    }
    std::map<std::string, ClopenSet> sets = parse_clopen_file(g, read_file(ws, path), path);
    if (sets.empty()) throw invalid_argument("no clopen sets in '" + path + "'");
    if (name.empty()) return sets.begin()->second;
    auto it = sets.find(name);
    if (it == sets.end()) throw invalid_argument("no clopen '" + name + "' in '" + path + "'");
    return it->second;
}

PrefixExchange load_element(const Workspace& ws, const std::string& path) {
    return parse_element(read_file(ws, path), path, ws.graphs, ws.clopen_texts);
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    Workspace ws;
    ws.in = &in;

    CLI::App app{"topological full groups of one-sided shifts: homology, elements, completions"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    std::vector<std::string> graph_files, clopen_files;
    app.add_option("--graph", graph_files, "graph file to preload (for element files)");
    app.add_option("--clopen", clopen_files, "clopen file to preload (for element restrictions)");
    app.add_option("--cap-group-order", ws.order_cap, "marked-isomorphism group order cap");
    app.add_option("--cap-closure", ws.closure_cap, "permutation closure element cap");
    app.add_option("--seed", ws.seed, "random seed");

    std::string arg_file, arg_clopen, arg_g2, arg_clopen2, arg_coords, arg_primes, arg_leaf;
    int arg_degree = -1, arg_d = 0, arg_k = 0;

    auto* c_check = app.add_subcommand("check-graph", "parse a graph and run both predicates");
    c_check->add_option("file", arg_file)->required();

    auto* c_hom = app.add_subcommand("homology", "groupoid homology of a graph's shift");
    c_hom->add_option("file", arg_file)->required();
    c_hom->add_option("--degree", arg_degree, "single degree to report");

    auto* c_ab = app.add_subcommand("abelianization", "abelianization of the full group");
    c_ab->add_option("file", arg_file)->required();

    auto* c_class = app.add_subcommand("class-of", "homology class of a clopen set");
    c_class->add_option("graph", arg_file)->required();
    c_class->add_option("clopen", arg_clopen)->required();

    auto* c_realize = app.add_subcommand("realize-class", "clopen set realizing a class");
    c_realize->add_option("graph", arg_file)->required();
    c_realize->add_option("coords", arg_coords)->required();

    auto* c_mats = app.add_subcommand("matsumoto", "decide Matsumoto's criterion");
    c_mats->add_option("graph1", arg_file)->required();
    c_mats->add_option("clopen1", arg_clopen)->required();
    c_mats->add_option("graph2", arg_g2)->required();
    c_mats->add_option("clopen2", arg_clopen2)->required();

    auto* c_build = app.add_subcommand("build-completion", "certified completion pipeline");
    c_build->add_option("graph", arg_file)->required();
    c_build->add_option("clopen", arg_clopen)->required();
    c_build->add_option("--primes", arg_primes, "comma-separated prime set (empty for {})");

    auto* c_vcert = app.add_subcommand("validate-certificate", "re-run all certificate checks");
    c_vcert->add_option("file", arg_file)->required();

    auto* c_matui = app.add_subcommand("matui", "emit the V_{d,k} graph");
    c_matui->add_option("--d", arg_d)->required();
    c_matui->add_option("--k", arg_k)->required();

    auto* c_dot = app.add_subcommand("export-dot", "emit DOT text for a graph");
    c_dot->add_option("graph", arg_file)->required();

    auto* c_lpc = app.add_subcommand("lpc", "local prime content of a pattern");
    c_lpc->add_option("graph", arg_file)->required();
    c_lpc->add_option("pattern", arg_clopen)->required();

    auto* c_fix = app.add_subcommand("fix-index", "Fix-quotient index with enumeration check");
    c_fix->add_option("graph", arg_file)->required();
    c_fix->add_option("pattern", arg_clopen)->required();
    c_fix->add_option("clopen", arg_clopen2)->required();
    c_fix->add_option("leaf", arg_leaf)->required();

    auto* c_elem = app.add_subcommand("elem", "element operations");
    c_elem->require_subcommand(1);
    std::string e_a, e_b;
    auto* e_compose = c_elem->add_subcommand("compose", "f after g");
    e_compose->add_option("f", e_a)->required();
    e_compose->add_option("g", e_b)->required();
    auto* e_invert = c_elem->add_subcommand("invert", "group inverse");
    e_invert->add_option("f", e_a)->required();
    auto* e_eq = c_elem->add_subcommand("eq", "equality of canonical forms");
    e_eq->add_option("a", e_a)->required();
    e_eq->add_option("b", e_b)->required();
    auto* e_canon = c_elem->add_subcommand("canon", "canonical minimal form");
    e_canon->add_option("f", e_a)->required();
    auto* e_apply = c_elem->add_subcommand("apply", "apply to a boundary point");
    e_apply->add_option("f", e_a)->required();
    e_apply->add_option("point", e_b)->required();
    auto* e_random = c_elem->add_subcommand("random", "seeded random element");
    std::string r_graph;
    int r_depth = 2;
    e_random->add_option("graph", r_graph)->required();
    e_random->add_option("--depth", r_depth);

    try {
        std::vector<const char*> cargs;
        cargs.push_back("tfg");
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        for (const auto& f : graph_files) {
            GraphPtr g = load_graph(ws, f);
            ws.graphs[g->name()] = g;
        }
        for (const auto& f : clopen_files) ws.clopen_texts[f] = read_file(ws, f);

        if (*c_check) {
            GraphPtr g = load_graph(ws, arg_file);
            out << "graph " << g->name() << ": " << g->vertex_count() << " vertices, "
                << g->edge_count() << " edges\n";
            out << adjacency_matrix(*g).to_text();
            bool dic = is_diconnected(*g), nc = is_non_circular(*g);
            out << "diconnected: " << (dic ? "true" : "false") << "\n";
            out << "non-circular: " << (nc ? "true" : "false") << "\n";
            return dic && nc ? 0 : 1;
        }
        if (*c_hom) {
            GraphPtr g = load_graph(ws, arg_file);
            if (arg_degree >= 0) {
                std::string group = homology_group(*g, arg_degree).to_string();
                out << "H" << arg_degree << " = " << group << "\n";
            } else {
                std::string h0 = homology_group(*g, 0).to_string();
                std::string h1 = homology_group(*g, 1).to_string();
                out << "H0 = " << h0 << "\nH1 = " << h1 << "\n";
            }
            return 0;
        }
        if (*c_ab) {
            GraphPtr g = load_graph(ws, arg_file);
            std::string group = abelianization(*g).to_string();
            out << "abelianization = " << group << "\n";
            return 0;
        }
        if (*c_class) {
            GraphPtr g = load_graph(ws, arg_file);
            ClopenSet y = resolve_clopen(ws, g, arg_clopen);
            std::string cls = class_of_clopen(*g, y).element.to_string();
            out << "class([Y]) = " << cls << "\n";
            return 0;
        }
        if (*c_realize) {
            GraphPtr g = load_graph(ws, arg_file);
            FinAbGroup h0 = homology_group(*g, 0);
            AbElement target = parse_element_coords(h0, arg_coords);
            ClopenSet y = realize_class(g, HomologyClass{target});
            y.name = "Y";
            out << clopen_to_line(y) << "\n";
            return 0;
        }
        if (*c_mats) {
            GraphPtr g1 = load_graph(ws, arg_file);
            GraphPtr g2 = load_graph(ws, arg_g2);
            ClopenSet y1 = resolve_clopen(ws, g1, arg_clopen);
            ClopenSet y2 = resolve_clopen(ws, g2, arg_clopen2);
            try {
                bool met = matsumoto_equivalent(*g1, y1, *g2, y2, ws.order_cap);
                out << "matsumoto: " << (met ? "MET" : "NOT-MET") << "\n";
                return met ? 0 : 1;
            } catch (const unsupported_infinite&) {
                out << "matsumoto: UNSUPPORTED\n";
                return 3;
            }
        }
        if (*c_build) {
            GraphPtr g = load_graph(ws, arg_file);
            ClopenSet y = resolve_clopen(ws, g, arg_clopen);
            std::set<Int> primes;
            std::istringstream ps(arg_primes);
            std::string item;
            while (std::getline(ps, item, ','))
                if (!item.empty()) primes.insert(Int(item));
            CompletionCertificate cert =
                build_completion(g, y, primes, ws.order_cap, ws.closure_cap);
            out << certificate_to_text(cert);
            return 0;
        }
        if (*c_vcert) {
            CompletionCertificate cert = parse_certificate(read_file(ws, arg_file), arg_file);
            std::vector<CompletionCheck> checks =
                run_certificate_checks(cert, ws.order_cap, ws.closure_cap);
            bool all = !checks.empty();
            for (const auto& c : checks) {
                out << "check " << c.name << ": " << (c.pass ? "PASS" : "FAIL")
                    << (c.details.empty() ? "" : " " + c.details) << "\n";
                all = all && c.pass;
            }
            out << "certificate: " << (all ? "VALID" : "INVALID") << "\n";
            return all ? 0 : 1;
        }
        if (*c_matui) {
            out << graph_to_text(matui_graph(arg_d, arg_k));
            return 0;
        }
        if (*c_dot) {
            GraphPtr g = load_graph(ws, arg_file);
            out << to_dot(*g);
            return 0;
        }
        if (*c_lpc) {
            GraphPtr g = load_graph(ws, arg_file);
            Pattern pat = parse_pattern(g, read_file(ws, arg_clopen), arg_clopen);
            std::string lpc = primes_to_text(local_prime_content(pat, ws.closure_cap));
            out << "lpc = " << lpc << "\n";
            return 0;
        }
        if (*c_fix) {
            GraphPtr g = load_graph(ws, arg_file);
            Pattern pat = parse_pattern(g, read_file(ws, arg_clopen), arg_clopen);
            ClopenSet t = resolve_clopen(ws, g, arg_clopen2);
            Path leaf = parse_path(*g, arg_leaf);
            FixIndexResult res = fix_quotient_index(*g, pat, t, leaf, ws.closure_cap);
            out << "fix-index = " << res.index << " "
                << (res.enumeration_verified ? "(verified)" : "(unverified)") << "\n";
            return 0;
        }
        if (*e_compose) {
            PrefixExchange f = load_element(ws, e_a), g = load_element(ws, e_b);
            out << element_to_text(compose(f, g));
            return 0;
        }
        if (*e_invert) {
            out << element_to_text(invert(load_element(ws, e_a)));
            return 0;
        }
        if (*e_eq) {
            bool eq = equals(load_element(ws, e_a), load_element(ws, e_b));
            out << "equal: " << (eq ? "true" : "false") << "\n";
            return eq ? 0 : 1;
        }
        if (*e_canon) {
            out << element_to_text(canonicalize(load_element(ws, e_a)));
            return 0;
        }
        if (*e_apply) {
            PrefixExchange f = load_element(ws, e_a);
            BoundaryPoint p = parse_point(f.graph, e_b);
            out << point_to_string(apply(f, p)) << "\n";
            return 0;
        }
        if (*e_random) {
            GraphPtr g = load_graph(ws, r_graph);
            PrefixExchange e = random_element(g, full_space(g), r_depth, ws.seed);
            out << element_to_text(e);
            return 0;
        }
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const unsupported_infinite& e) {
        err << "unsupported: " << e.what() << "\n";
        return 3;
    } catch (const group_too_large& e) {
        err << "refused: " << e.what() << "\n";
        return 3;
    } catch (const closure_too_large& e) {
        err << "refused: " << e.what() << "\n";
        return 3;
    } catch (const bound_exhausted& e) {
        err << "refused: " << e.what() << "\n";
        return 3;
    } catch (const invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace tfg::cli
