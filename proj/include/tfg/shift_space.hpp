#pragma once

#include <string>
#include <vector>

#include "tfg/multigraph.hpp"

namespace tfg {

/// Finite oriented path in a graph. A path of length 0 is a vertex (a child of
/// the unfolding-tree root); for nonempty paths the anchor equals the origin of
/// the first edge.
struct Path {
    int anchor = -1;
    std::vector<int> edges;

    int length() const { return static_cast<int>(edges.size()); }
    bool empty() const { return edges.empty(); }

    bool operator==(const Path&) const = default;
};

Path vertex_path(const MultiGraph& g, int vertex);
Path make_path(const MultiGraph& g, const std::vector<int>& edges);

int path_origin(const Path& p);
int path_terminus(const MultiGraph& g, const Path& p);
Path path_extend(const MultiGraph& g, const Path& p, int edge);
Path path_concat(const MultiGraph& g, const Path& p, const Path& suffix);

/// Canonical order: length first, then anchor, then edge indices lexicographically.
bool path_less(const Path& a, const Path& b);

/// Whether `prefix` is an initial segment of `p` (a length-0 prefix matches on origin).
bool is_prefix(const Path& prefix, const Path& p);
bool is_strict_prefix(const Path& prefix, const Path& p);

/// The tail of p after removing `prefix` edges; anchored at the cut vertex.
Path path_suffix(const MultiGraph& g, const Path& p, int prefix_len);

/// Literal "@a" (length 0 at vertex a) or "x.y.x" (edge names joined by dots).
std::string path_to_string(const MultiGraph& g, const Path& p);

/// Clopen subset of X_g as a finite antichain of paths (pairwise
/// prefix-incomparable), interpreted as a disjoint union of cylinders.
struct ClopenSet {
    GraphPtr graph;
    std::vector<Path> antichain;  // sorted canonically
    std::string name;             // optional label from input files

    bool operator==(const ClopenSet& o) const {
        return antichain == o.antichain;
    }
};

/// The full space X_g: all length-0 paths.
ClopenSet full_space(GraphPtr g);

ClopenSet make_clopen(GraphPtr g, std::vector<Path> antichain, std::string name = "");

/// Whether the cylinders of `paths` partition the set denoted by `within`.
bool is_complete_antichain(const MultiGraph& g, const std::vector<Path>& paths,
                           const ClopenSet& within);

/// Whether the two antichains denote the same subset of X_g.
bool same_clopen_set(const ClopenSet& a, const ClopenSet& b);

/// Whether every cylinder of `inner` lies inside the set denoted by `outer`.
bool clopen_subset(const ClopenSet& inner, const ClopenSet& outer);

/// Replace one antichain leaf by all of its children (simple expansion).
ClopenSet refine_at(const ClopenSet& c, const Path& leaf);

/// The coarsest antichain refining both arguments; requires equal underlying sets.
ClopenSet common_refinement(const ClopenSet& a, const ClopenSet& b);

/// Antichain of `within` minus `c`; requires c to be contained in within.
ClopenSet complement(const ClopenSet& c, const ClopenSet& within);

/// Eventually periodic infinite path: preperiod . period^inf.
struct BoundaryPoint {
    GraphPtr graph;
    Path preperiod;  // may have length 0
    Path period;     // nonempty cycle at its own origin

    bool operator==(const BoundaryPoint& o) const {
        return preperiod == o.preperiod && period == o.period;
    }
};

/// Validates composability and normalizes (shortest period, then shortest preperiod).
BoundaryPoint make_point(GraphPtr g, Path preperiod, Path period);

int point_origin(const BoundaryPoint& p);
int point_edge_at(const BoundaryPoint& p, int k);

/// Whether `prefix` is an initial segment of the infinite path.
bool point_has_prefix(const BoundaryPoint& p, const Path& prefix);

bool member(const BoundaryPoint& p, const ClopenSet& c);

/// Drops the first edge; rotates the period when the preperiod is empty.
BoundaryPoint shift(const BoundaryPoint& p);

std::string point_to_string(const BoundaryPoint& p);

}  // namespace tfg
