#pragma once

#include <map>
#include <string>

#include "tfg/almost_aut.hpp"
#include "tfg/completion.hpp"
#include "tfg/multigraph.hpp"
#include "tfg/shift_space.hpp"

namespace tfg {

/// Graph text format: "graph <name>", then "vertex <vid>" lines, then
/// "edge <eid> <origin> <terminus>" lines. '#' starts a comment. Declaration
/// order is the canonical order. Errors carry file:line positions.
MultiGraph parse_graph(const std::string& text, const std::string& source);
std::string graph_to_text(const MultiGraph& g);

/// Matrix text format: "matrix <rows> <cols>" then one row per line.
IntMatrix parse_matrix(const std::string& text, const std::string& source);

/// Path literal: "@a" or "x.y.x".
Path parse_path(const MultiGraph& g, const std::string& literal);

/// Clopen file: lines "clopen <name>: <path>, <path>, ...".
std::map<std::string, ClopenSet> parse_clopen_file(GraphPtr g, const std::string& text,
                                                   const std::string& source);
std::string clopen_to_line(const ClopenSet& c);

/// Point literal: "point <path-or-'-'> (<path>)".
BoundaryPoint parse_point(GraphPtr g, const std::string& literal);

/// Element file: "element over <graph> [restrict <clopen-name>]" then
/// "pair <path> -> <path>" lines.
PrefixExchange parse_element(const std::string& text, const std::string& source,
                             const std::map<std::string, GraphPtr>& graphs,
                             const std::map<std::string, std::string>& clopen_texts);

/// Pattern file: lines "pattern <vertex>: (<eid> <eid> ...)(...)"; one line per
/// generator, cycle notation over out-edge names.
Pattern parse_pattern(GraphPtr g, const std::string& text, const std::string& source);
std::string pattern_to_text(const Pattern& pat);

/// Element coordinates literal: "(1,3;0)" (torsion; free).
AbElement parse_element_coords(const FinAbGroup& g, const std::string& literal);

/// Set-of-primes literal: "{2,3}" or "{}".
std::string primes_to_text(const std::set<Int>& primes);

std::string certificate_to_text(const CompletionCertificate& cert);
CompletionCertificate parse_certificate(const std::string& text, const std::string& source);

}  // namespace tfg
