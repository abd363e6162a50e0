#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tfg/exact_linalg.hpp"

namespace tfg {

/// Finitely generated abelian group in invariant-factor form:
/// Z/d1 + Z/d2 + ... + Z^free_rank with d1 | d2 | ..., each di >= 2.
/// Two groups are isomorphic iff the fields are equal.
struct FinAbGroup {
    std::vector<Int> torsion;
    int free_rank = 0;

    bool operator==(const FinAbGroup&) const = default;
    bool is_trivial() const { return torsion.empty() && free_rank == 0; }
    bool is_finite() const { return free_rank == 0; }
    Int order() const;  // product of torsion; only valid when finite

    /// "Z/2 + Z/4 + Z^1", or "trivial".
    std::string to_string() const;
};

/// Element of a FinAbGroup; torsion coordinate i lives in [0, di).
struct AbElement {
    FinAbGroup group;
    std::vector<Int> torsion_coords;
    std::vector<Int> free_coords;

    bool operator==(const AbElement&) const = default;
    bool is_zero() const;

    /// "(1,3;0)" — torsion coordinates, then free coordinates.
    std::string to_string() const;
};

AbElement zero_element(const FinAbGroup& g);
AbElement make_element(const FinAbGroup& g, std::vector<Int> torsion_coords,
                       std::vector<Int> free_coords);

AbElement add(const AbElement& a, const AbElement& b);
AbElement negate(const AbElement& a);
bool equals(const AbElement& a, const AbElement& b);

/// Order of the element; nullopt means infinite.
std::optional<Int> order(const AbElement& a);

struct MarkedGroup {
    FinAbGroup group;
    AbElement marked;
};

inline constexpr long kDefaultGroupOrderCap = 10000;

/// Whether some isomorphism of the two (finite) groups carries marked1 to marked2.
/// Decided by exhaustive enumeration of endomorphism matrices, columns constrained
/// to elements whose order divides the corresponding invariant factor, filtered to
/// bijections. Throws unsupported_infinite / group_too_large.
bool marked_iso_exists(const MarkedGroup& m1, const MarkedGroup& m2,
                       long order_cap = kDefaultGroupOrderCap);

/// All elements of a finite group in lexicographic coordinate order (test/support use).
std::vector<AbElement> all_elements(const FinAbGroup& g, long order_cap = kDefaultGroupOrderCap);

}  // namespace tfg
