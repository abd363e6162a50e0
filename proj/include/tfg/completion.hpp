#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tfg/homology.hpp"
#include "tfg/multigraph.hpp"
#include "tfg/shift_space.hpp"

namespace tfg {

inline constexpr long kDefaultClosureCap = 1000000;

/// Per-label permutation groups on out-edges: the pattern F = {F_l} of a
/// patterning of the unfolding tree. Labels are the vertices of the graph.
/// Every generator must preserve the partition of out-edges by terminus.
struct Pattern {
    GraphPtr graph;
    // vertex index -> generator permutations of the out-edge positions
    std::map<int, std::vector<std::vector<int>>> generators;
};

Pattern trivial_pattern(GraphPtr g);

/// Adds one generator (permutation of out-edge positions) at the given label;
/// rejects permutations that break the terminus partition.
void pattern_add_generator(Pattern& pat, int vertex, std::vector<int> perm);

/// Order of the group generated at one label, by product closure (cap bounded).
Int pattern_group_order(const Pattern& pat, int vertex, long closure_cap = kDefaultClosureCap);

/// Prime factors of the product of all label group orders.
std::set<Int> local_prime_content(const Pattern& pat, long closure_cap = kDefaultClosureCap);

/// Pattern induced by a group of graph automorphisms fixing every vertex:
/// F_l is the restriction of the generated group to the out-edges of l.
/// Each generator is a permutation of edge indices preserving origin and terminus.
Pattern pattern_from_edge_automorphisms(const MultiGraph& g,
                                        const std::vector<std::vector<int>>& gens,
                                        long closure_cap = kDefaultClosureCap);

/// The explicit matrix of the completion construction: same determinant and
/// cokernel as the input data, with id - A^t entrywise >= 1 and containing the
/// entry N = prod(P). All postconditions are machine-verified before returning.
IntMatrix construct_prime_matrix(const std::vector<Int>& torsion, const Int& det_target,
                                 const std::set<Int>& primes);

/// Graph with the given nonnegative adjacency matrix; vertices v1..vn, edges
/// <prefix>_i_j_k in row-major canonical order.
MultiGraph graph_from_matrix(const IntMatrix& m, const std::string& prefix);

/// The multi-prime example family: vertex i has p_i edges to i+1 (cyclically)
/// and vertex 1 carries prod(p) - 2 loops. Exposed for inspection only; no
/// equivalence claim is made for it without the determinant/SNF oracles.
MultiGraph multi_prime_family_graph(const std::vector<Int>& primes);

struct CompletionCheck {
    std::string name;
    bool pass;
    std::string details;
};

struct CompletionCertificate {
    // input
    GraphPtr graph;
    ClopenSet y;
    std::set<Int> primes;
    // construction
    Int n;
    std::vector<Int> padded_factors;
    IntMatrix a;
    GraphPtr tilde_graph;
    ClopenSet tilde_y;
    AbElement transported_class;
    Pattern pattern;
    // verification
    std::vector<CompletionCheck> checks;

    bool all_pass() const;
};

/// End-to-end certified pipeline. Throws when the input is inadmissible or the
/// cokernel is infinite; returns only when every internal check passes.
CompletionCertificate build_completion(GraphPtr g, const ClopenSet& y, const std::set<Int>& primes,
                                       long order_cap = kDefaultGroupOrderCap,
                                       long closure_cap = kDefaultClosureCap);

/// Re-runs every check of a certificate from its raw fields.
std::vector<CompletionCheck> run_certificate_checks(const CompletionCertificate& cert,
                                                    long order_cap = kDefaultGroupOrderCap,
                                                    long closure_cap = kDefaultClosureCap);

struct FixIndexResult {
    Int index;                 // |F_{label(leaf)}|, the quotient index
    bool enumeration_verified; // truncated enumeration completed and agreed
    Int count_full;            // depth-bounded count of patterning automorphisms fixing T
    Int count_expanded;        // same for the simple expansion at the leaf
};

/// Index [Fix_P(T) : Fix_P(T')] for T' the simple expansion of T at `leaf`,
/// cross-checked by counting depth-(|leaf|+2)-supported patterning
/// automorphisms fixing T versus T'.
FixIndexResult fix_quotient_index(const MultiGraph& g, const Pattern& pat, const ClopenSet& t,
                                  const Path& leaf, long closure_cap = kDefaultClosureCap);

}  // namespace tfg
