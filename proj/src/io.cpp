#include "tfg/io.hpp"

#include <algorithm>
#include <sstream>

namespace tfg {

namespace {

struct Line {
    int number;
    std::string text;
};

// Strips comments and blank lines, keeping line numbers for diagnostics.
std::vector<Line> split_lines(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        size_t begin = raw.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        size_t end = raw.find_last_not_of(" \t\r");
        lines.push_back({number, raw.substr(begin, end - begin + 1)});
    }
    return lines;
}

std::vector<std::string> split_words(const std::string& s) {
    std::vector<std::string> words;
    std::istringstream in(s);
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

bool is_token(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
               c == '_';
    });
}

}  // namespace

MultiGraph parse_graph(const std::string& text, const std::string& source) {
    std::vector<Line> lines = split_lines(text);
    if (lines.empty()) throw parse_error(source, 1, "empty graph file");
    std::vector<std::string> head = split_words(lines[0].text);
    if (head.size() != 2 || head[0] != "graph" || !is_token(head[1]))
        throw parse_error(source, lines[0].number, "expected 'graph <name>'");
    MultiGraph g(head[1]);
    bool edges_started = false;
    for (size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string> w = split_words(lines[i].text);
        try {
            if (w[0] == "vertex") {
                if (edges_started)
                    throw invalid_argument("vertex declarations must precede edges");
                if (w.size() != 2 || !is_token(w[1]))
                    throw invalid_argument("expected 'vertex <vid>'");
                g.add_vertex(w[1]);
            } else if (w[0] == "edge") {
                edges_started = true;
                if (w.size() != 4 || !is_token(w[1]))
                    throw invalid_argument("expected 'edge <eid> <origin> <terminus>'");
                g.add_edge(w[1], w[2], w[3]);
            } else {
                throw invalid_argument("unknown directive '" + w[0] + "'");
            }
        } catch (const invalid_argument& err) {
            throw parse_error(source, lines[i].number, err.what());
        }
    }
    if (g.vertex_count() == 0) throw parse_error(source, lines[0].number, "graph has no vertices");
    return g;
}

std::string graph_to_text(const MultiGraph& g) {
    std::ostringstream out;
    out << "graph " << g.name() << "\n";
    for (int v = 0; v < g.vertex_count(); ++v) out << "vertex " << g.vertex_name(v) << "\n";
    for (const auto& e : g.edges())
        out << "edge " << e.name << " " << g.vertex_name(e.origin) << " "
            << g.vertex_name(e.terminus) << "\n";
    return out.str();
}

IntMatrix parse_matrix(const std::string& text, const std::string& source) {
    std::vector<Line> lines = split_lines(text);
    if (lines.empty()) throw parse_error(source, 1, "empty matrix file");
    std::vector<std::string> head = split_words(lines[0].text);
    if (head.size() != 3 || head[0] != "matrix")
        throw parse_error(source, lines[0].number, "expected 'matrix <rows> <cols>'");
    int rows, cols;
    try {
        rows = std::stoi(head[1]);
        cols = std::stoi(head[2]);
    } catch (const std::exception&) {
        throw parse_error(source, lines[0].number, "bad matrix dimensions");
    }
    if (rows < 0 || cols < 0 || static_cast<size_t>(rows) + 1 != lines.size())
        throw parse_error(source, lines[0].number, "row count does not match header");
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        std::vector<std::string> w = split_words(lines[i + 1].text);
        if (static_cast<int>(w.size()) != cols)
            throw parse_error(source, lines[i + 1].number, "wrong number of entries in row");
        for (int j = 0; j < cols; ++j) {
            try {
                m.at(i, j) = Int(w[j]);
            } catch (const std::exception&) {
                throw parse_error(source, lines[i + 1].number, "bad integer '" + w[j] + "'");
            }
        }
    }
    return m;
}

Path parse_path(const MultiGraph& g, const std::string& literal) {
    if (literal.empty()) throw invalid_argument("empty path literal");
    if (literal[0] == '@') {
        int v = g.vertex_index(literal.substr(1));
        if (v < 0) throw invalid_argument("unknown vertex '" + literal.substr(1) + "'");
        return vertex_path(g, v);
    }
    std::vector<int> edges;
    size_t pos = 0;
    while (pos <= literal.size()) {
        size_t dot = literal.find('.', pos);
        std::string name = literal.substr(pos, dot == std::string::npos ? dot : dot - pos);
        int e = g.edge_index(name);
        if (e < 0) throw invalid_argument("unknown edge '" + name + "'");
        edges.push_back(e);
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    return make_path(g, edges);
}

namespace {

ClopenSet parse_clopen_body(GraphPtr g, const std::string& name, const std::string& body) {
    std::vector<Path> paths;
    std::istringstream in(body);
    std::string item;
    while (std::getline(in, item, ',')) {
        size_t b = item.find_first_not_of(" \t");
        if (b == std::string::npos) throw invalid_argument("empty path in clopen list");
        size_t e = item.find_last_not_of(" \t");
        paths.push_back(parse_path(*g, item.substr(b, e - b + 1)));
    }
    if (paths.empty()) throw invalid_argument("clopen set needs at least one path");
    return make_clopen(std::move(g), std::move(paths), name);
}

}  // namespace

std::map<std::string, ClopenSet> parse_clopen_file(GraphPtr g, const std::string& text,
                                                   const std::string& source) {
    std::map<std::string, ClopenSet> out;
    for (const Line& line : split_lines(text)) {
        size_t colon = line.text.find(':');
        std::vector<std::string> head = split_words(line.text.substr(0, colon));
        if (colon == std::string::npos || head.size() != 2 || head[0] != "clopen" ||
            !is_token(head[1]))
            throw parse_error(source, line.number, "expected 'clopen <name>: <paths>'");
        if (out.count(head[1]))
            throw parse_error(source, line.number, "duplicate clopen '" + head[1] + "'");
        try {
            out.emplace(head[1], parse_clopen_body(g, head[1], line.text.substr(colon + 1)));
        } catch (const invalid_argument& err) {
            throw parse_error(source, line.number, err.what());
        }
    }
    return out;
}

std::string clopen_to_line(const ClopenSet& c) {
    std::ostringstream out;
    out << "clopen " << (c.name.empty() ? "Y" : c.name) << ":";
    for (size_t i = 0; i < c.antichain.size(); ++i)
        out << (i ? ", " : " ") << path_to_string(*c.graph, c.antichain[i]);
    return out.str();
}

BoundaryPoint parse_point(GraphPtr g, const std::string& literal) {
    std::istringstream in(literal);
    std::string kw, pre, per;
    in >> kw >> pre >> per;
    if (kw != "point" || pre.empty() || per.size() < 3 || per.front() != '(' || per.back() != ')')
        throw invalid_argument("expected 'point <path-or-dash> (<path>)'");
    Path period = parse_path(*g, per.substr(1, per.size() - 2));
    if (period.empty()) throw invalid_argument("period must be nonempty");
    Path preperiod =
        pre == "-" ? vertex_path(*g, path_origin(period)) : parse_path(*g, pre);
    return make_point(std::move(g), std::move(preperiod), std::move(period));
}

PrefixExchange parse_element(const std::string& text, const std::string& source,
                             const std::map<std::string, GraphPtr>& graphs,
                             const std::map<std::string, std::string>& clopen_texts) {
    std::vector<Line> lines = split_lines(text);
    if (lines.empty()) throw parse_error(source, 1, "empty element file");
    std::vector<std::string> head = split_words(lines[0].text);
    if (head.size() < 3 || head[0] != "element" || head[1] != "over")
        throw parse_error(source, lines[0].number,
                          "expected 'element over <graph> [restrict <clopen>]'");
    auto git = graphs.find(head[2]);
    if (git == graphs.end())
        throw parse_error(source, lines[0].number,
                          "graph '" + head[2] + "' is not loaded (pass it with --graph)");
    GraphPtr g = git->second;
    ClopenSet restriction = full_space(g);
    if (head.size() == 5 && head[3] == "restrict") {
        if (head[4] != "X") {
            bool found = false;
            for (const auto& [cname, ctext] : clopen_texts) {
                std::map<std::string, ClopenSet> sets = parse_clopen_file(g, ctext, cname);
                auto it = sets.find(head[4]);
                if (it != sets.end()) {
                    restriction = it->second;
                    found = true;
                    break;
                }
            }
            if (!found)
                throw parse_error(source, lines[0].number,
                                  "clopen '" + head[4] + "' is not loaded (pass it with --clopen)");
        }
    } else if (head.size() != 3) {
        throw parse_error(source, lines[0].number, "bad element header");
    }
    std::vector<std::pair<Path, Path>> pairs;
    for (size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string> w = split_words(lines[i].text);
        if (w.size() != 4 || w[0] != "pair" || w[2] != "->")
            throw parse_error(source, lines[i].number, "expected 'pair <path> -> <path>'");
        try {
            pairs.emplace_back(parse_path(*g, w[1]), parse_path(*g, w[3]));
        } catch (const invalid_argument& err) {
            throw parse_error(source, lines[i].number, err.what());
        }
    }
    try {
        return make_element(g, std::move(restriction), std::move(pairs));
    } catch (const invalid_argument& err) {
        throw parse_error(source, lines[0].number, err.what());
    }
}

namespace {

std::vector<std::vector<int>> parse_cycles(const MultiGraph& g, int vertex,
                                           const std::string& body) {
    const auto& outs = g.out_edges(vertex);
    std::vector<std::vector<int>> cycles;
    size_t pos = 0;
    while (pos < body.size()) {
        if (std::isspace(static_cast<unsigned char>(body[pos]))) {
            ++pos;
            continue;
        }
        if (body[pos] != '(') throw invalid_argument("expected '(' in cycle notation");
        size_t close = body.find(')', pos);
        if (close == std::string::npos) throw invalid_argument("unbalanced cycle");
        std::vector<int> cycle;
        for (const std::string& name : split_words(body.substr(pos + 1, close - pos - 1))) {
            int e = g.edge_index(name);
            if (e < 0) throw invalid_argument("unknown edge '" + name + "'");
            auto it = std::find(outs.begin(), outs.end(), e);
            if (it == outs.end())
                throw invalid_argument("edge '" + name + "' is not an out-edge of the label");
            cycle.push_back(static_cast<int>(it - outs.begin()));
        }
        cycles.push_back(std::move(cycle));
        pos = close + 1;
    }
    return cycles;
}

}  // namespace

Pattern parse_pattern(GraphPtr g, const std::string& text, const std::string& source) {
    Pattern pat = trivial_pattern(g);
    for (const Line& line : split_lines(text)) {
        size_t colon = line.text.find(':');
        std::vector<std::string> head = split_words(line.text.substr(0, colon));
        if (colon == std::string::npos || head.size() != 2 || head[0] != "pattern")
            throw parse_error(source, line.number, "expected 'pattern <vertex>: (<cycles>)'");
        int v = g->vertex_index(head[1]);
        if (v < 0) throw parse_error(source, line.number, "unknown vertex '" + head[1] + "'");
        try {
            std::vector<int> perm(g->out_degree(v));
            for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
            for (const auto& cycle : parse_cycles(*g, v, line.text.substr(colon + 1))) {
                std::vector<char> seen(perm.size(), 0);
                for (int p : cycle) {
                    if (seen[p]) throw invalid_argument("repeated edge in cycle");
                    seen[p] = 1;
                }
                for (size_t i = 0; i < cycle.size(); ++i)
                    perm[cycle[i]] = cycle[(i + 1) % cycle.size()];
            }
            pattern_add_generator(pat, v, std::move(perm));
        } catch (const invalid_argument& err) {
            throw parse_error(source, line.number, err.what());
        }
    }
    return pat;
}

std::string pattern_to_text(const Pattern& pat) {
    const MultiGraph& g = *pat.graph;
    std::ostringstream out;
    for (const auto& [v, gens] : pat.generators) {
        const auto& outs = g.out_edges(v);
        for (const auto& perm : gens) {
            out << "pattern " << g.vertex_name(v) << ":";
            std::vector<char> done(perm.size(), 0);
            bool any = false;
            for (size_t i = 0; i < perm.size(); ++i) {
                if (done[i] || perm[i] == static_cast<int>(i)) continue;
                out << " (";
                size_t j = i;
                bool first = true;
                while (!done[j]) {
                    done[j] = 1;
                    out << (first ? "" : " ") << g.edge(outs[j]).name;
                    first = false;
                    j = static_cast<size_t>(perm[j]);
                }
                out << ")";
                any = true;
            }
            if (!any) out << " ()";
            out << "\n";
        }
    }
    return out.str();
}

AbElement parse_element_coords(const FinAbGroup& g, const std::string& literal) {
    if (literal.size() < 3 || literal.front() != '(' || literal.back() != ')')
        throw invalid_argument("expected '(t1,...;f1,...)'");
    std::string body = literal.substr(1, literal.size() - 2);
    size_t semi = body.find(';');
    if (semi == std::string::npos) throw invalid_argument("missing ';' separator");
    auto parse_list = [](const std::string& s) {
        std::vector<Int> out;
        std::istringstream in(s);
        std::string item;
        while (std::getline(in, item, ',')) {
            size_t b = item.find_first_not_of(" \t");
            if (b == std::string::npos) continue;
            size_t e = item.find_last_not_of(" \t");
            out.push_back(Int(item.substr(b, e - b + 1)));
        }
        return out;
    };
    return make_element(g, parse_list(body.substr(0, semi)), parse_list(body.substr(semi + 1)));
}

std::string primes_to_text(const std::set<Int>& primes) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const Int& p : primes) {
        if (!first) out << ",";
        out << p;
        first = false;
    }
    out << "}";
    return out.str();
}

std::string certificate_to_text(const CompletionCertificate& cert) {
    std::ostringstream out;
    out << "completion-certificate\n";
    out << "INPUT\n";
    out << "begin-graph\n" << graph_to_text(*cert.graph) << "end-graph\n";
    ClopenSet y = cert.y;
    y.name = "Y";
    out << clopen_to_line(y) << "\n";
    out << "primes " << primes_to_text(cert.primes) << "\n";
    out << "CONSTRUCTION\n";
    out << "N " << cert.n << "\n";
    out << "padded-factors";
    for (const Int& d : cert.padded_factors) out << " " << d;
    out << "\n";
    out << "class " << cert.transported_class.to_string() << "\n";
    out << "begin-matrix\n" << cert.a.to_text() << "end-matrix\n";
    out << "begin-graph\n" << graph_to_text(*cert.tilde_graph) << "end-graph\n";
    ClopenSet ty = cert.tilde_y;
    ty.name = "Ytilde";
    out << clopen_to_line(ty) << "\n";
    out << "begin-pattern\n" << pattern_to_text(cert.pattern) << "end-pattern\n";
    out << "CHECKS\n";
    for (const auto& c : cert.checks)
        out << "check " << c.name << ": " << (c.pass ? "PASS" : "FAIL")
            << (c.details.empty() ? "" : " " + c.details) << "\n";
    out << "END\n";
    return out.str();
}

CompletionCertificate parse_certificate(const std::string& text, const std::string& source) {
    std::vector<Line> lines = split_lines(text);
    size_t i = 0;
    auto expect = [&](const std::string& what) {
        if (i >= lines.size()) throw parse_error(source, lines.empty() ? 1 : lines.back().number,
                                                 "unexpected end of certificate; wanted " + what);
        return lines[i++];
    };
    auto take_block = [&](const std::string& begin, const std::string& end) {
        Line first = expect(begin);
        if (first.text != begin) throw parse_error(source, first.number, "expected '" + begin + "'");
        std::string body;
        for (;;) {
            Line l = expect(end);
            if (l.text == end) break;
            body += l.text + "\n";
        }
        return body;
    };

    Line l = expect("completion-certificate");
    if (l.text != "completion-certificate")
        throw parse_error(source, l.number, "not a completion certificate");
    l = expect("INPUT");
    if (l.text != "INPUT") throw parse_error(source, l.number, "expected INPUT section");

    CompletionCertificate cert;
    cert.graph = std::make_shared<MultiGraph>(parse_graph(take_block("begin-graph", "end-graph"), source));
    l = expect("clopen Y");
    {
        auto sets = parse_clopen_file(cert.graph, l.text, source);
        if (sets.size() != 1) throw parse_error(source, l.number, "expected one clopen line");
        cert.y = sets.begin()->second;
    }
    l = expect("primes");
    {
        std::vector<std::string> w = split_words(l.text);
        if (w.size() != 2 || w[0] != "primes" || w[1].size() < 2)
            throw parse_error(source, l.number, "expected 'primes {..}'");
        std::string body = w[1].substr(1, w[1].size() - 2);
        std::istringstream in(body);
        std::string item;
        while (std::getline(in, item, ','))
            if (!item.empty()) cert.primes.insert(Int(item));
    }
    l = expect("CONSTRUCTION");
    if (l.text != "CONSTRUCTION") throw parse_error(source, l.number, "expected CONSTRUCTION");
    l = expect("N");
    {
        std::vector<std::string> w = split_words(l.text);
        if (w.size() != 2 || w[0] != "N") throw parse_error(source, l.number, "expected 'N <int>'");
        cert.n = Int(w[1]);
    }
    l = expect("padded-factors");
    {
        std::vector<std::string> w = split_words(l.text);
        if (w.empty() || w[0] != "padded-factors")
            throw parse_error(source, l.number, "expected 'padded-factors ...'");
        for (size_t j = 1; j < w.size(); ++j) cert.padded_factors.push_back(Int(w[j]));
    }
    l = expect("class");
    std::string class_literal;
    {
        std::vector<std::string> w = split_words(l.text);
        if (w.size() != 2 || w[0] != "class")
            throw parse_error(source, l.number, "expected 'class (..;..)'");
        class_literal = w[1];
    }
    cert.a = parse_matrix(take_block("begin-matrix", "end-matrix"), source);
    cert.tilde_graph =
        std::make_shared<MultiGraph>(parse_graph(take_block("begin-graph", "end-graph"), source));
    l = expect("clopen Ytilde");
    {
        auto sets = parse_clopen_file(cert.tilde_graph, l.text, source);
        if (sets.size() != 1) throw parse_error(source, l.number, "expected one clopen line");
        cert.tilde_y = sets.begin()->second;
    }
    cert.pattern = parse_pattern(cert.tilde_graph, take_block("begin-pattern", "end-pattern"), source);

    // The transported class lives in the input graph's H0.
    FinAbGroup h0 = cokernel(id_minus_transpose(adjacency_matrix(*cert.graph))).group();
    cert.transported_class = parse_element_coords(h0, class_literal);

    l = expect("CHECKS");
    if (l.text != "CHECKS") throw parse_error(source, l.number, "expected CHECKS");
    while (i < lines.size() && lines[i].text != "END") {
        Line cl = lines[i++];
        std::vector<std::string> w = split_words(cl.text);
        if (w.size() < 3 || w[0] != "check" || w[1].empty() || w[1].back() != ':')
            throw parse_error(source, cl.number, "expected 'check <name>: PASS|FAIL ...'");
        CompletionCheck c;
        c.name = w[1].substr(0, w[1].size() - 1);
        c.pass = w[2] == "PASS";
        for (size_t j = 3; j < w.size(); ++j) c.details += (j > 3 ? " " : "") + w[j];
        cert.checks.push_back(std::move(c));
    }
    return cert;
}

}  // namespace tfg
