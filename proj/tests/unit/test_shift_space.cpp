#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "tfg/shift_space.hpp"

using namespace tfg;
using test::loop_graph;
using test::mp_graph;

namespace {

Path lit(const MultiGraph& g, const std::string& s) { return parse_path(g, s); }

// Random eventually periodic point with preperiod from `at` and a short cycle.
BoundaryPoint random_point(GraphPtr g, std::mt19937_64& rng, int pre_len, int cycle_tries = 64) {
    const MultiGraph& graph = *g;
    for (int attempt = 0; attempt < cycle_tries; ++attempt) {
        int v = static_cast<int>(rng() % graph.vertex_count());
        Path pre = vertex_path(graph, v);
        for (int i = 0; i < pre_len; ++i) {
            const auto& outs = graph.out_edges(path_terminus(graph, pre));
            pre = path_extend(graph, pre, outs[rng() % outs.size()]);
        }
        // walk until we can close a cycle back to the walk start
        int start = path_terminus(graph, pre);
        Path cycle = vertex_path(graph, start);
        for (int i = 0; i < 8; ++i) {
            const auto& outs = graph.out_edges(path_terminus(graph, cycle));
            cycle = path_extend(graph, cycle, outs[rng() % outs.size()]);
            if (path_terminus(graph, cycle) == start) return make_point(g, pre, cycle);
        }
    }
    throw std::runtime_error("no cycle found");
}

}  // namespace

TEST_CASE("path literals and ordering") {
    auto g = loop_graph(2);
    Path at_a = lit(*g, "@a");
    CHECK(at_a.empty());
    Path xyx = lit(*g, "x.y.x");
    CHECK(xyx.length() == 3);
    CHECK(path_to_string(*g, xyx) == "x.y.x");
    CHECK(path_to_string(*g, at_a) == "@a");
    CHECK(path_less(at_a, xyx));
    CHECK(is_prefix(at_a, xyx));
    CHECK(is_prefix(lit(*g, "x.y"), xyx));
    CHECK_FALSE(is_prefix(lit(*g, "y"), xyx));
}

TEST_CASE("complete antichain recognition") {
    auto g = loop_graph(2);
    ClopenSet x = full_space(g);
    CHECK(is_complete_antichain(*g, x.antichain, x));
    CHECK(is_complete_antichain(*g, {lit(*g, "x"), lit(*g, "y")}, x));
    CHECK_FALSE(is_complete_antichain(*g, {lit(*g, "x")}, x));
    // a coarser antichain is complete within a finer equal set
    ClopenSet fine = make_clopen(g, {lit(*g, "x.x"), lit(*g, "x.y"), lit(*g, "y")});
    CHECK(is_complete_antichain(*g, {lit(*g, "@a")}, fine));
    // overlapping paths are never an antichain
    CHECK_FALSE(is_complete_antichain(*g, {lit(*g, "x"), lit(*g, "x.x"), lit(*g, "y")}, x));
}

TEST_CASE("refine_at") {
    auto g = loop_graph(2);
    ClopenSet x = full_space(g);
    ClopenSet r = refine_at(x, lit(*g, "@a"));
    CHECK(r.antichain == std::vector<Path>{lit(*g, "x"), lit(*g, "y")});
    ClopenSet r2 = refine_at(r, lit(*g, "x"));
    CHECK(r2.antichain == std::vector<Path>{lit(*g, "y"), lit(*g, "x.x"), lit(*g, "x.y")});
    CHECK_THROWS_AS(refine_at(r2, lit(*g, "x")), invalid_argument);
}

TEST_CASE("refinement preserves membership") {
    std::mt19937_64 rng(43);
    for (GraphPtr g : {loop_graph(2), mp_graph(2)}) {
        std::vector<BoundaryPoint> points;
        for (int i = 0; i < 100; ++i) points.push_back(random_point(g, rng, i % 4));
        ClopenSet c = full_space(g);
        for (int step = 0; step < 50; ++step) {
            std::vector<char> before;
            for (const auto& p : points) before.push_back(member(p, c));
            const Path& leaf = c.antichain[rng() % c.antichain.size()];
            c = refine_at(c, leaf);
            for (size_t i = 0; i < points.size(); ++i)
                CHECK(static_cast<bool>(before[i]) == member(points[i], c));
        }
    }
}

TEST_CASE("common refinement") {
    auto g = loop_graph(2);
    ClopenSet x = full_space(g);
    CHECK(common_refinement(x, x).antichain == x.antichain);

    ClopenSet split = make_clopen(g, {lit(*g, "x"), lit(*g, "y")});
    CHECK(common_refinement(x, split).antichain == split.antichain);

    ClopenSet a = make_clopen(g, {lit(*g, "x.x"), lit(*g, "x.y"), lit(*g, "y")});
    ClopenSet b = make_clopen(g, {lit(*g, "x"), lit(*g, "y.x"), lit(*g, "y.y")});
    ClopenSet ab = common_refinement(a, b);
    CHECK(ab.antichain == std::vector<Path>{lit(*g, "x.x"), lit(*g, "x.y"), lit(*g, "y.x"),
                                            lit(*g, "y.y")});
    CHECK(common_refinement(b, a).antichain == ab.antichain);
    CHECK(is_complete_antichain(*g, ab.antichain, a));
    CHECK(is_complete_antichain(*g, ab.antichain, b));

    CHECK_THROWS_AS(common_refinement(split, make_clopen(g, {lit(*g, "x")})), invalid_argument);
}

TEST_CASE("membership and shift") {
    auto g = loop_graph(2);
    BoundaryPoint xinf = make_point(g, vertex_path(*g, 0), lit(*g, "x"));
    CHECK(member(xinf, make_clopen(g, {lit(*g, "x"), lit(*g, "y")})));
    CHECK_FALSE(member(xinf, make_clopen(g, {lit(*g, "y")})));

    // x then y-forever, checked past the period length
    BoundaryPoint xy = make_point(g, lit(*g, "x"), lit(*g, "y"));
    CHECK(member(xy, make_clopen(g, {lit(*g, "x.y.y.y")})));
    CHECK_FALSE(member(xy, make_clopen(g, {lit(*g, "x.y.y.x")})));

    BoundaryPoint shifted = shift(xy);
    CHECK(shifted == make_point(g, vertex_path(*g, 0), lit(*g, "y")));

    // rotation of a purely periodic point
    BoundaryPoint pxy = make_point(g, vertex_path(*g, 0), lit(*g, "x.y"));
    BoundaryPoint rot = shift(pxy);
    CHECK(rot == make_point(g, vertex_path(*g, 0), lit(*g, "y.x")));
    CHECK(shift(shift(pxy)) == pxy);
}

TEST_CASE("point normal form") {
    auto g = loop_graph(2);
    // x . (x)^inf == (x)^inf
    CHECK(make_point(g, lit(*g, "x"), lit(*g, "x")) ==
          make_point(g, vertex_path(*g, 0), lit(*g, "x")));
    // period x.x collapses to x
    CHECK(make_point(g, vertex_path(*g, 0), lit(*g, "x.x")) ==
          make_point(g, vertex_path(*g, 0), lit(*g, "x")));
    // y . (x.y)^inf == (y.x)^inf
    CHECK(make_point(g, lit(*g, "y"), lit(*g, "x.y")) ==
          make_point(g, vertex_path(*g, 0), lit(*g, "y.x")));
}

TEST_CASE("shift by period returns an equal point") {
    std::mt19937_64 rng(47);
    for (GraphPtr g : {loop_graph(3), mp_graph(3)}) {
        for (int i = 0; i < 40; ++i) {
            BoundaryPoint p = random_point(g, rng, 0);
            BoundaryPoint q = p;
            for (int k = 0; k < p.period.length(); ++k) q = shift(q);
            CHECK(p == q);
        }
    }
}

TEST_CASE("complement") {
    auto g = loop_graph(2);
    ClopenSet x = full_space(g);
    CHECK(complement(x, x).antichain.empty());
    ClopenSet split = make_clopen(g, {lit(*g, "x"), lit(*g, "y")});
    CHECK(complement(make_clopen(g, {lit(*g, "x")}), split).antichain ==
          std::vector<Path>{lit(*g, "y")});
    CHECK(complement(make_clopen(g, {lit(*g, "x.x")}), x).antichain ==
          std::vector<Path>{lit(*g, "y"), lit(*g, "x.y")});
    CHECK_THROWS_AS(complement(split, make_clopen(g, {lit(*g, "x")})), invalid_argument);

    // union with the complement refines back to the ambient set
    ClopenSet c = make_clopen(g, {lit(*g, "x.y"), lit(*g, "y.x")});
    ClopenSet rest = complement(c, x);
    std::vector<Path> both = c.antichain;
    both.insert(both.end(), rest.antichain.begin(), rest.antichain.end());
    CHECK(is_complete_antichain(*g, both, x));
}

TEST_CASE("depth-n antichain of the 2-loop graph has 2^n cylinders") {
    auto g = loop_graph(2);
    ClopenSet c = full_space(g);
    for (int depth = 0; depth < 6; ++depth) {
        // refine every current leaf once
        std::vector<Path> leaves = c.antichain;
        for (const Path& leaf : leaves) c = refine_at(c, leaf);
        CHECK(static_cast<int>(c.antichain.size()) == 1 << (depth + 1));
    }
}

TEST_CASE("point literals") {
    auto g = loop_graph(2);
    BoundaryPoint p = parse_point(g, "point - (x)");
    CHECK(p.preperiod.empty());
    CHECK(point_to_string(p) == "point - (x)");
    BoundaryPoint q = parse_point(g, "point x.y (y.x)");
    CHECK(point_to_string(q) == point_to_string(make_point(g, lit(*g, "x.y"), lit(*g, "y.x"))));
}

TEST_CASE("complete antichains within a proper subset") {
    auto g = loop_graph(2);
    ClopenSet within = make_clopen(g, {lit(*g, "x")});
    CHECK(is_complete_antichain(*g, {lit(*g, "x.x"), lit(*g, "x.y")}, within));
    CHECK_FALSE(is_complete_antichain(*g, {lit(*g, "x.x")}, within));
    CHECK_FALSE(is_complete_antichain(*g, {lit(*g, "y")}, within));
    CHECK_FALSE(is_complete_antichain(*g, {lit(*g, "x"), lit(*g, "y")}, within));
}

TEST_CASE("refine_at rejects a sink leaf") {
    auto g = std::make_shared<MultiGraph>("sink");
    g->add_vertex("a");
    g->add_vertex("b");
    g->add_edge("e", "a", "b");
    g->add_edge("f", "a", "a");
    ClopenSet c = make_clopen(g, {vertex_path(*g, 1)});
    CHECK_THROWS_AS(refine_at(c, vertex_path(*g, 1)), invalid_argument);
}
