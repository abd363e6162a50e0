#pragma once

#include "tfg/abelian.hpp"
#include "tfg/multigraph.hpp"
#include "tfg/shift_space.hpp"

namespace tfg {

/// Homology class in H0 of the shift groupoid, in cokernel coordinates.
struct HomologyClass {
    AbElement element;
    bool operator==(const HomologyClass&) const = default;
};

/// H0 = Coker(id - M^t), H1 = Ker(id - M^t), trivial for n >= 2.
/// Requires a diconnected and non-circular graph.
FinAbGroup homology_group(const MultiGraph& g, int n);

/// The cokernel map of id - M^t (the coordinate system every class lives in).
CokernelMap homology_cokernel(const MultiGraph& g);

/// The class of the indicator of Y: each antichain path contributes the
/// standard generator of its terminus vertex.
HomologyClass class_of_clopen(const MultiGraph& g, const ClopenSet& y);

/// A nonempty clopen set whose class is h. Searches bounded multiplicity
/// vectors, then allocates pairwise incomparable cylinders.
ClopenSet realize_class(GraphPtr g, const HomologyClass& h);

/// (H0 tensor Z/2) + H1 — the abelianization of the topological full group.
FinAbGroup abelianization(const MultiGraph& g);

/// Matsumoto's sufficient criterion: equal signed determinants of id - M^t and
/// an isomorphism of the H0 groups carrying [1_Y1] to [1_Y2]. A false answer
/// means the criterion is not met, not that the groupoids differ.
bool matsumoto_equivalent(const MultiGraph& g1, const ClopenSet& y1, const MultiGraph& g2,
                          const ClopenSet& y2, long order_cap = kDefaultGroupOrderCap);

}  // namespace tfg
