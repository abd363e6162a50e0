#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <sstream>

#include "tfg/homology.hpp"
#include "tfg/io.hpp"

namespace py = pybind11;
using namespace tfg;

namespace {

// cpp_int crosses the boundary as a python int, via decimal strings.
py::object to_py(const Int& x) {
    std::ostringstream s;
    s << x;
    return py::module_::import("builtins").attr("int")(s.str());
}

Int from_py(const py::handle& x) {
    return Int(py::cast<std::string>(py::repr(x)));
}

py::list matrix_to_py(const IntMatrix& m) {
    py::list rows;
    for (int i = 0; i < m.rows(); ++i) {
        py::list row;
        for (int j = 0; j < m.cols(); ++j) row.append(to_py(m.at(i, j)));
        rows.append(row);
    }
    return rows;
}

IntMatrix matrix_from_py(const py::sequence& rows) {
    int r = static_cast<int>(py::len(rows));
    int c = r == 0 ? 0 : static_cast<int>(py::len(rows[0]));
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        py::sequence row = rows[i].cast<py::sequence>();
        if (static_cast<int>(py::len(row)) != c) throw std::invalid_argument("ragged matrix");
        for (int j = 0; j < c; ++j) m.at(i, j) = from_py(row[j]);
    }
    return m;
}

GraphPtr graph_from_text(const std::string& text) {
    return std::make_shared<MultiGraph>(parse_graph(text, "<graph>"));
}

std::set<Int> primes_from_py(const py::iterable& it) {
    std::set<Int> out;
    for (py::handle h : it) out.insert(from_py(h));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "topological full groups of one-sided shifts: exact homology, elements, completions";

    py::register_exception<unsupported_infinite>(m, "UnsupportedInfinite");
    py::register_exception<group_too_large>(m, "GroupTooLarge");
    py::register_exception<closure_too_large>(m, "ClosureTooLarge");
    py::register_exception<bound_exhausted>(m, "BoundExhausted");

    m.def("matui_graph", [](int d, int k) { return graph_to_text(matui_graph(d, k)); },
          py::arg("d"), py::arg("k"), "Graph text of the V_{d,k} cycle-with-back-edges graph");
    m.def("graph_from_matrix", [](const py::sequence& rows, const std::string& prefix) {
        return graph_to_text(graph_from_matrix(matrix_from_py(rows), prefix));
    }, py::arg("matrix"), py::arg("prefix") = "e");
    m.def("multi_prime_family_graph", [](const py::sequence& primes) {
        std::vector<Int> ps;
        for (py::handle h : primes) ps.push_back(from_py(h));
        return graph_to_text(multi_prime_family_graph(ps));
    });

    m.def("adjacency_matrix",
          [](const std::string& g) { return matrix_to_py(adjacency_matrix(*graph_from_text(g))); });
    m.def("is_diconnected", [](const std::string& g) { return is_diconnected(*graph_from_text(g)); });
    m.def("is_non_circular", [](const std::string& g) { return is_non_circular(*graph_from_text(g)); });
    m.def("to_dot", [](const std::string& g) { return to_dot(*graph_from_text(g)); });

    m.def("determinant",
          [](const py::sequence& rows) { return to_py(determinant(matrix_from_py(rows))); });
    m.def("smith_normal_form", [](const py::sequence& rows) {
        SmithDecomposition d = smith_normal_form(matrix_from_py(rows));
        py::dict out;
        out["U"] = matrix_to_py(d.U);
        out["S"] = matrix_to_py(d.S);
        out["V"] = matrix_to_py(d.V);
        py::list factors;
        for (const Int& f : d.invariant_factors) factors.append(to_py(f));
        out["invariant_factors"] = factors;
        return out;
    });
    m.def("kernel_basis", [](const py::sequence& rows) {
        py::list out;
        for (const auto& v : kernel_basis(matrix_from_py(rows))) {
            py::list vec;
            for (const Int& x : v) vec.append(to_py(x));
            out.append(vec);
        }
        return out;
    });

    m.def("homology", [](const std::string& g, int degree) {
        return homology_group(*graph_from_text(g), degree).to_string();
    }, py::arg("graph"), py::arg("degree") = 0);
    m.def("abelianization",
          [](const std::string& g) { return abelianization(*graph_from_text(g)).to_string(); });
    m.def("matsumoto_equivalent", [](const std::string& g1, const std::string& g2) {
        GraphPtr a = graph_from_text(g1), b = graph_from_text(g2);
        return matsumoto_equivalent(*a, full_space(a), *b, full_space(b));
    }, "Matsumoto criterion for the full spaces of two graphs");

    m.def("build_completion", [](const std::string& g, const py::iterable& primes) {
        GraphPtr gp = graph_from_text(g);
        return certificate_to_text(build_completion(gp, full_space(gp), primes_from_py(primes)));
    }, "Certified completion over the full space; returns the certificate text");
    m.def("validate_certificate", [](const std::string& text) {
        CompletionCertificate cert = parse_certificate(text, "<certificate>");
        auto checks = run_certificate_checks(cert);
        return !checks.empty() &&
               std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
    });
    m.def("local_prime_content", [](const std::string& g, const std::string& pattern_text) {
        GraphPtr gp = graph_from_text(g);
        Pattern pat = parse_pattern(gp, pattern_text, "<pattern>");
        py::list out;
        for (const Int& p : local_prime_content(pat)) out.append(to_py(p));
        return out;
    });

    m.def("compose_elements", [](const std::string& f, const std::string& g,
                                 const std::string& graph_text) {
        GraphPtr gp = graph_from_text(graph_text);
        std::map<std::string, GraphPtr> graphs{{gp->name(), gp}};
        PrefixExchange ef = parse_element(f, "<f>", graphs, {});
        PrefixExchange eg = parse_element(g, "<g>", graphs, {});
        return element_to_text(compose(ef, eg));
    });
    m.def("invert_element", [](const std::string& f, const std::string& graph_text) {
        GraphPtr gp = graph_from_text(graph_text);
        std::map<std::string, GraphPtr> graphs{{gp->name(), gp}};
        return element_to_text(invert(parse_element(f, "<f>", graphs, {})));
    });
    m.def("elements_equal", [](const std::string& a, const std::string& b,
                               const std::string& graph_text) {
        GraphPtr gp = graph_from_text(graph_text);
        std::map<std::string, GraphPtr> graphs{{gp->name(), gp}};
        return equals(parse_element(a, "<a>", graphs, {}), parse_element(b, "<b>", graphs, {}));
    });
    m.def("random_element", [](const std::string& g, int depth, std::uint64_t seed) {
        GraphPtr gp = graph_from_text(g);
        return element_to_text(random_element(gp, full_space(gp), depth, seed));
    }, py::arg("graph"), py::arg("depth") = 2, py::arg("seed") = 0);
}
