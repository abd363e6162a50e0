#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tfg/shift_space.hpp"

namespace tfg {

/// Element of the colour-preserving almost automorphism group over the
/// unfolding tree: a finite set of (domain, range) path pairs. Domain paths and
/// range paths each form a complete antichain within the restriction, every
/// pair's endpoints share their terminus, and suffixes are carried verbatim.
struct PrefixExchange {
    GraphPtr graph;
    ClopenSet restriction;
    std::vector<std::pair<Path, Path>> pairs;  // sorted by domain path
};

/// Groupoid bisection presentation: (range, cocycle, domain) triples with
/// cocycle = |domain| - |range|.
struct BisectionTable {
    GraphPtr graph;
    ClopenSet restriction;
    struct Triple {
        Path range;
        long cocycle;
        Path domain;
    };
    std::vector<Triple> triples;
};

struct PathLess {
    bool operator()(const Path& a, const Path& b) const { return path_less(a, b); }
};

/// Finitely supported assignment of a permutation of out-edges to tree
/// vertices (paths); the data of an automorphism in the sense of the
/// unfolding-tree correspondence.
struct LocalPermMap {
    GraphPtr graph;
    // path -> permutation of the out-edge positions of the path's terminus
    std::map<Path, std::vector<int>, PathLess> support;

    void set(const MultiGraph& g, const Path& at, std::vector<int> perm);
    const std::vector<int>* find(const Path& at) const;
};

/// The identity element over the given restriction (default: all of X_g).
PrefixExchange identity_element(GraphPtr g);
PrefixExchange identity_element(GraphPtr g, ClopenSet restriction);

PrefixExchange make_element(GraphPtr g, ClopenSet restriction,
                            std::vector<std::pair<Path, Path>> pairs);

/// All invariant violations, empty when the element is well formed.
std::vector<std::string> validate(const PrefixExchange& e);

/// Replace the pair at domain_leaf by one pair per out-edge of its terminus.
PrefixExchange expand_at(const PrefixExchange& e, const Path& domain_leaf);

/// The minimal representative: contract complete child families to their
/// parent pair until no contraction applies (deepest first, canonical ties).
PrefixExchange canonicalize(const PrefixExchange& e);

/// The point map f after g (apply g first). Same graph and restriction required.
PrefixExchange compose(const PrefixExchange& f, const PrefixExchange& g);

PrefixExchange invert(const PrefixExchange& e);

/// Canonical forms identical (and restrictions denote the same set).
bool equals(const PrefixExchange& e1, const PrefixExchange& e2);

/// Prefix replacement on an eventually periodic point inside the restriction.
BoundaryPoint apply(const PrefixExchange& e, const BoundaryPoint& p);

/// Image of a finite path of length >= the element's domain depth.
Path apply_to_path(const PrefixExchange& e, const Path& p);

BisectionTable to_bisection(const PrefixExchange& e);
PrefixExchange from_bisection(const BisectionTable& t);

/// When e has a representative that is a label-preserving tree automorphism,
/// its finitely supported local-permutation data; nullopt otherwise.
std::optional<LocalPermMap> is_automorphism(const PrefixExchange& e);

/// The permutation of out-edges of t(v) induced on the children of v, when e
/// maps the cylinder at v onto a cylinder with the same terminus label.
std::optional<std::vector<int>> child_action(const PrefixExchange& e, const Path& v);

/// The element determined by finitely supported local permutations (identity
/// bijection on the leaves of the supporting subtree).
PrefixExchange from_local_perms(GraphPtr g, const LocalPermMap& data);

/// Seed-deterministic random element: uniform complete antichains of depth at
/// most `depth` within Y, with a uniform terminus-preserving pairing.
PrefixExchange random_element(GraphPtr g, const ClopenSet& y, int depth, std::uint64_t seed);

/// Whether e maps the cylinder of every antichain leaf of T onto itself.
bool fixes_pointwise(const PrefixExchange& e, const ClopenSet& t);

/// Serialized element text ("element over <graph> ..." plus "pair" lines).
std::string element_to_text(const PrefixExchange& e);

}  // namespace tfg
