#include <doctest.h>

#include <random>
#include <set>

#include "tfg/abelian.hpp"

using namespace tfg;

namespace {

FinAbGroup cyclic(int n) { return n <= 1 ? FinAbGroup{} : FinAbGroup{{n}, 0}; }

AbElement elem(const FinAbGroup& g, std::vector<Int> t, std::vector<Int> f = {}) {
    return make_element(g, std::move(t), std::move(f));
}

// The slow route: images generate G iff BFS closure of the image set hits |G|.
bool generate_by_closure(const std::vector<AbElement>& images, const FinAbGroup& g) {
    std::vector<AbElement> all = all_elements(g);
    std::set<std::vector<Int>> seen{zero_element(g).torsion_coords};
    std::vector<AbElement> frontier{zero_element(g)};
    while (!frontier.empty()) {
        std::vector<AbElement> next;
        for (const auto& x : frontier)
            for (const auto& gen : images) {
                AbElement y = add(x, gen);
                if (seen.insert(y.torsion_coords).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return seen.size() == all.size();
}

// Brute-force oracle enumerating every generator-image tuple directly.
bool marked_iso_oracle(const MarkedGroup& m1, const MarkedGroup& m2) {
    if (m1.group != m2.group) return false;
    const FinAbGroup& g = m1.group;
    std::vector<AbElement> elems = all_elements(g);
    size_t k = g.torsion.size();
    if (k == 0) return true;
    std::vector<size_t> idx(k, 0);
    for (;;) {
        std::vector<AbElement> images;
        bool ok = true;
        for (size_t i = 0; i < k && ok; ++i) {
            const AbElement& img = elems[idx[i]];
            // must define a homomorphism: d_i * img = 0
            AbElement acc = zero_element(g);
            for (Int c = 0; c < g.torsion[i]; ++c) acc = add(acc, img);
            ok = acc.is_zero();
            images.push_back(img);
        }
        if (ok && generate_by_closure(images, g)) {
            AbElement mapped = zero_element(g);
            for (size_t i = 0; i < k; ++i) {
                AbElement scaled = zero_element(g);
                for (Int c = 0; c < m1.marked.torsion_coords[i]; ++c)
                    scaled = add(scaled, images[i]);
                mapped = add(mapped, scaled);
            }
            if (equals(mapped, m2.marked)) return true;
        }
        size_t pos = 0;
        while (pos < k && ++idx[pos] == elems.size()) idx[pos++] = 0;
        if (pos == k) return false;
    }
}

}  // namespace

TEST_CASE("element arithmetic") {
    FinAbGroup z4 = cyclic(4);
    CHECK(order(elem(z4, {2})) == Int(2));
    CHECK(order(elem(z4, {1})) == Int(4));
    CHECK(order(elem(z4, {0})) == Int(1));

    FinAbGroup z2z{{2}, 1};
    CHECK(order(elem(z2z, {1}, {0})) == Int(2));
    CHECK(!order(elem(z2z, {0}, {1})).has_value());

    FinAbGroup z6 = cyclic(6);
    CHECK(equals(add(elem(z6, {4}), elem(z6, {5})), elem(z6, {3})));
    CHECK(equals(negate(elem(z6, {2})), elem(z6, {4})));
    CHECK(equals(add(elem(z6, {2}), negate(elem(z6, {2}))), zero_element(z6)));

    CHECK_THROWS_AS(add(elem(z4, {1}), elem(z6, {1})), invalid_argument);
}

TEST_CASE("group literals") {
    CHECK(FinAbGroup{}.to_string() == "trivial");
    CHECK(FinAbGroup{{2, 4}, 1}.to_string() == "Z/2 + Z/4 + Z^1");
    CHECK(elem(FinAbGroup{{2, 4}, 1}, {1, 3}, {0}).to_string() == "(1,3;0)");
}

TEST_CASE("marked isomorphism examples") {
    MarkedGroup trivial1{FinAbGroup{}, zero_element(FinAbGroup{})};
    CHECK(marked_iso_exists(trivial1, trivial1));

    FinAbGroup z2 = cyclic(2);
    CHECK_FALSE(marked_iso_exists({z2, elem(z2, {1})}, {z2, elem(z2, {0})}));

    FinAbGroup z4 = cyclic(4);
    CHECK(marked_iso_exists({z4, elem(z4, {1})}, {z4, elem(z4, {3})}));
    CHECK(marked_iso_oracle({z4, elem(z4, {1})}, {z4, elem(z4, {3})}));
    CHECK_FALSE(marked_iso_exists({z4, elem(z4, {1})}, {z4, elem(z4, {2})}));
}

TEST_CASE("marked isomorphism refuses infinite groups and oversize groups") {
    FinAbGroup z{{}, 1};
    MarkedGroup mz{z, zero_element(z)};
    CHECK_THROWS_AS(marked_iso_exists(mz, mz), unsupported_infinite);

    FinAbGroup big{{20000}, 0};
    MarkedGroup mb{big, zero_element(big)};
    CHECK_THROWS_AS(marked_iso_exists(mb, mb), group_too_large);
    CHECK(marked_iso_exists(mb, mb, 30000));
}

TEST_CASE("marked isomorphism agrees with the brute-force oracle") {
    std::vector<FinAbGroup> groups{cyclic(2),          cyclic(6),          cyclic(8),
                                   FinAbGroup{{2, 2}}, FinAbGroup{{2, 4}}, FinAbGroup{{3, 3}},
                                   FinAbGroup{{2, 2, 2}}};
    std::mt19937_64 rng(37);
    for (const FinAbGroup& g : groups) {
        std::vector<AbElement> elems = all_elements(g);
        for (int trial = 0; trial < 12; ++trial) {
            const AbElement& a = elems[rng() % elems.size()];
            const AbElement& b = elems[rng() % elems.size()];
            bool fast = marked_iso_exists({g, a}, {g, b});
            CHECK(fast == marked_iso_oracle({g, a}, {g, b}));
            // reflexivity and symmetry
            CHECK(marked_iso_exists({g, a}, {g, a}));
            CHECK(fast == marked_iso_exists({g, b}, {g, a}));
        }
    }
}

TEST_CASE("marked isomorphism is invariant under automorphic images") {
    // Replacing the mark by an automorphic image never changes the answer.
    std::vector<FinAbGroup> groups{cyclic(9), FinAbGroup{{2, 4}}, FinAbGroup{{6, 6}},
                                   FinAbGroup{{2, 2, 3}}};
    std::mt19937_64 rng(41);
    for (const FinAbGroup& g : groups) {
        CHECK(g.order() <= 36);
        std::vector<AbElement> elems = all_elements(g);
        for (int trial = 0; trial < 8; ++trial) {
            const AbElement& a = elems[rng() % elems.size()];
            const AbElement& b = elems[rng() % elems.size()];
            // negation is an automorphism; the mark's orbit is unchanged
            AbElement a2 = negate(a);
            CHECK(marked_iso_exists({g, a}, {g, a2}));
            CHECK(marked_iso_exists({g, a}, {g, b}) == marked_iso_exists({g, a2}, {g, b}));
        }
    }
}

TEST_CASE("cyclic groups: marked iso iff equal element orders") {
    for (int n = 1; n <= 24; ++n) {
        FinAbGroup g = cyclic(n);
        std::vector<AbElement> elems = all_elements(g);
        for (const AbElement& a : elems)
            for (const AbElement& b : elems)
                CHECK(marked_iso_exists({g, a}, {g, b}) == (order(a) == order(b)));
    }
}
