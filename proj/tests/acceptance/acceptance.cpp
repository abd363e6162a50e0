// Acceptance suite: one pass/fail line per criterion, exact arithmetic
// throughout, every tolerance pinned in code. Exit code = number of failures.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "tfg/almost_aut.hpp"
#include "tfg/completion.hpp"
#include "tfg/homology.hpp"
#include "tfg/io.hpp"

using namespace tfg;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
    std::string details;
    bool pass = false;
    auto start = std::chrono::steady_clock::now();
    try {
        pass = body(details);
    } catch (const std::exception& e) {
        details = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > budget_seconds) {
        pass = false;
        details += (details.empty() ? "" : "; ") + std::string("over time budget");
    }
    if (!pass) ++failures;
    std::cout << "criterion " << std::setw(2) << number << ": " << (pass ? "PASS" : "FAIL")
              << "  (" << std::fixed << std::setprecision(2) << secs << "s / " << budget_seconds
              << "s)  " << label;
    if (!details.empty()) std::cout << "  [" << details << "]";
    std::cout << "\n";
}

GraphPtr loops(int n) {
    IntMatrix m(1, 1);
    m.at(0, 0) = n;
    return std::make_shared<MultiGraph>(graph_from_matrix(m, "r" + std::to_string(n)));
}

GraphPtr mp(int p) {
    IntMatrix m(2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 1;
    m.at(1, 0) = 1;
    m.at(1, 1) = p;
    return std::make_shared<MultiGraph>(graph_from_matrix(m, "mp" + std::to_string(p)));
}

GraphPtr from_adj(const std::vector<std::vector<int>>& rows, const std::string& prefix) {
    int n = static_cast<int>(rows.size());
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
    return std::make_shared<MultiGraph>(graph_from_matrix(m, prefix));
}

// Fixed pool of random admissible graphs with finite cokernel, shared by 4 and 5.
std::vector<GraphPtr> random_graph_pool() {
    std::vector<GraphPtr> pool;
    std::mt19937_64 rng(20240817);
    while (pool.size() < 50) {
        int n = 1 + static_cast<int>(rng() % 4);
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = static_cast<int>(rng() % 4);
        auto g = std::make_shared<MultiGraph>(graph_from_matrix(m, "p" + std::to_string(pool.size())));
        if (!is_diconnected(*g) || !is_non_circular(*g)) continue;
        if (determinant(id_minus_transpose(m)) == 0) continue;
        pool.push_back(g);
    }
    return pool;
}

const std::vector<std::set<Int>> kPrimeSets{
    {}, {Int(2)}, {Int(3)}, {Int(2), Int(3)}, {Int(2), Int(3), Int(5)}};

std::vector<Path> all_paths_of_length(const MultiGraph& g, int len) {
    std::vector<Path> cur;
    for (int v = 0; v < g.vertex_count(); ++v) cur.push_back(vertex_path(g, v));
    for (int step = 0; step < len; ++step) {
        std::vector<Path> next;
        for (const Path& p : cur)
            for (int e : g.out_edges(path_terminus(g, p))) next.push_back(path_extend(g, p, e));
        cur = std::move(next);
    }
    return cur;
}

int max_pair_depth(const PrefixExchange& e) {
    int d = 0;
    for (const auto& [a, b] : e.pairs) d = std::max({d, a.length(), b.length()});
    return d;
}

bool same_boundary_action(const PrefixExchange& e1, const PrefixExchange& e2) {
    const MultiGraph& g = *e1.graph;
    int depth = std::max(max_pair_depth(e1), max_pair_depth(e2)) + 4;
    for (const Path& p : all_paths_of_length(g, depth))
        if (!(apply_to_path(e1, p) == apply_to_path(e2, p))) return false;
    return true;
}

}  // namespace

int main() {
    std::cout << "acceptance suite: exact-arithmetic criteria at desk scale\n";

    criterion(1, "det(id-Mp^t) = -1 for p in {2,3,5,7,11,13}", 1.0, [](std::string& d) {
        for (int p : {2, 3, 5, 7, 11, 13}) {
            IntMatrix m(2, 2);
            m.at(0, 0) = 1;
            m.at(0, 1) = 1;
            m.at(1, 0) = 1;
            m.at(1, 1) = p;
            if (determinant(id_minus_transpose(m)) != -1) {
                d = "p=" + std::to_string(p);
                return false;
            }
        }
        return true;
    });

    criterion(2, "matsumoto MET: F(G_Mp) is Thompson's V for the same p", 1.0,
              [](std::string& d) {
                  GraphPtr r2 = loops(2);
                  ClopenSet x2 = full_space(r2);
                  for (int p : {2, 3, 5, 7, 11, 13}) {
                      GraphPtr g = mp(p);
                      if (!matsumoto_equivalent(*g, full_space(g), *r2, x2)) {
                          d = "p=" + std::to_string(p);
                          return false;
                      }
                  }
                  return true;
              });

    criterion(3, "multi-prime family builder has 2308 loops at vertex 1", 1.0,
              [](std::string& d) {
                  MultiGraph g = multi_prime_family_graph({2, 3, 5, 7, 11});
                  Int loops_entry = adjacency_matrix(g).at(0, 0);
                  std::ostringstream o;
                  o << "entry=" << loops_entry;
                  d = o.str();
                  return loops_entry == 2308;
              });

    std::vector<GraphPtr> pool = random_graph_pool();

    criterion(4, "construct_prime_matrix postconditions on 50 graphs x 5 prime sets", 10.0,
              [&](std::string& d) {
                  int runs = 0;
                  for (const GraphPtr& g : pool)
                      for (const auto& primes : kPrimeSets) {
                          IntMatrix base = id_minus_transpose(adjacency_matrix(*g));
                          Int det = determinant(base);
                          FinAbGroup h0 = cokernel(base).group();
                          IntMatrix a = construct_prime_matrix(h0.torsion, det, primes);
                          Int n = 1;
                          for (const Int& p : primes) n *= p;
                          if (determinant(a) != det) {
                              d = "det mismatch";
                              return false;
                          }
                          std::vector<Int> got;
                          for (const Int& f : smith_normal_form(a).invariant_factors)
                              if (f != 1) got.push_back(f);
                          if (got != h0.torsion) {
                              d = "invariant factors differ";
                              return false;
                          }
                          IntMatrix adj = id_minus_transpose(a);
                          bool has_n = false;
                          for (int i = 0; i < adj.rows(); ++i)
                              for (int j = 0; j < adj.cols(); ++j) {
                                  if (adj.at(i, j) < 1) {
                                      d = "entry below 1";
                                      return false;
                                  }
                                  if (adj.at(i, j) == n) has_n = true;
                              }
                          if (!has_n) {
                              d = "no entry N";
                              return false;
                          }
                          if (adj.is_permutation_matrix()) {
                              d = "circular";
                              return false;
                          }
                          ++runs;
                      }
                  d = std::to_string(runs) + " runs";
                  return runs == 250;
              });

    criterion(5, "build_completion certificates all pass with lpc = P", 30.0,
              [&](std::string& d) {
                  int runs = 0;
                  for (const GraphPtr& g : pool)
                      for (const auto& primes : kPrimeSets) {
                          CompletionCertificate cert = build_completion(g, full_space(g), primes);
                          if (!cert.all_pass()) {
                              d = "checks failed on " + g->name();
                              return false;
                          }
                          if (local_prime_content(cert.pattern) != primes) {
                              d = "lpc mismatch on " + g->name();
                              return false;
                          }
                          ++runs;
                      }
                  d = std::to_string(runs) + " certificates";
                  return runs == 250;
              });

    criterion(6, "abelianizations: r2 trivial, r3 Z/2, [[2,1],[1,2]] Z/2+Z", 1.0,
              [](std::string& d) {
                  if (!abelianization(*loops(2)).is_trivial()) {
                      d = "r2";
                      return false;
                  }
                  if (!(abelianization(*loops(3)) == FinAbGroup{{2}, 0})) {
                      d = "r3";
                      return false;
                  }
                  GraphPtr sym = from_adj({{2, 1}, {1, 2}}, "sym");
                  if (!(abelianization(*sym) == FinAbGroup{{2}, 1})) {
                      d = "sym";
                      return false;
                  }
                  // independent SNF/kernel oracle for all three
                  for (GraphPtr g : {loops(2), loops(3), sym}) {
                      IntMatrix a = id_minus_transpose(adjacency_matrix(*g));
                      int twos = 0;
                      for (const Int& f : smith_normal_form(a).invariant_factors)
                          if (f == 0 || f % 2 == 0) ++twos;
                      FinAbGroup expect;
                      expect.torsion.assign(twos, 2);
                      expect.free_rank = static_cast<int>(kernel_basis(a).size());
                      if (!(abelianization(*g) == expect)) {
                          d = "oracle disagrees on " + g->name();
                          return false;
                      }
                  }
                  return true;
              });

    criterion(7, "group laws and equality oracle on 200 random pairs/triples", 30.0,
              [](std::string& d) {
                  std::mt19937_64 rng(424242);
                  int checked = 0;
                  for (GraphPtr g : {loops(2), mp(2)}) {
                      ClopenSet x = full_space(g);
                      PrefixExchange id = identity_element(g);
                      for (int trial = 0; trial < 100; ++trial) {
                          int depth = 1 + static_cast<int>(rng() % 4);
                          PrefixExchange f = random_element(g, x, depth, rng());
                          PrefixExchange h = random_element(g, x, depth, rng());
                          PrefixExchange k = random_element(g, x, depth, rng());
                          if (!equals(compose(compose(f, h), k), compose(f, compose(h, k)))) {
                              d = "associativity";
                              return false;
                          }
                          if (!equals(compose(f, invert(f)), id)) {
                              d = "inverse";
                              return false;
                          }
                          if (!equals(compose(id, f), f) || !equals(compose(f, id), f)) {
                              d = "identity";
                              return false;
                          }
                          if (equals(f, h) != same_boundary_action(f, h)) {
                              d = "equality oracle";
                              return false;
                          }
                          ++checked;
                      }
                  }
                  d = std::to_string(checked) + " triples";
                  return checked == 200;
              });

    criterion(8, "canonical forms stable under 10 random expansions, 100 elements", 10.0,
              [](std::string& d) {
                  std::mt19937_64 rng(515151);
                  int checked = 0;
                  for (GraphPtr g : {loops(2), mp(2)}) {
                      ClopenSet x = full_space(g);
                      for (int trial = 0; trial < 50; ++trial) {
                          PrefixExchange f = random_element(g, x, 1 + rng() % 3, rng());
                          PrefixExchange canon = canonicalize(f);
                          PrefixExchange walk = f;
                          for (int i = 0; i < 10; ++i)
                              walk = expand_at(walk, walk.pairs[rng() % walk.pairs.size()].first);
                          if (!(canonicalize(walk).pairs == canon.pairs)) {
                              d = "expansion changed the canonical form";
                              return false;
                          }
                          ++checked;
                      }
                  }
                  return checked == 100;
              });

    criterion(9, "realize_class round trip over every class with |H0| <= 8", 5.0,
              [](std::string& d) {
                  std::vector<GraphPtr> suite{loops(2), loops(3), loops(4), loops(5), loops(9),
                                              mp(2),    mp(3),    mp(5)};
                  suite.push_back(from_adj({{3, 1}, {1, 3}}, "t3"));
                  suite.push_back(from_adj({{0, 1, 0}, {0, 0, 1}, {2, 0, 0}}, "mt23"));
                  int classes = 0;
                  for (const GraphPtr& g : suite) {
                      FinAbGroup h0 = homology_group(*g, 0);
                      if (!h0.is_finite() || h0.order() > 8) continue;
                      for (const AbElement& h : all_elements(h0)) {
                          ClopenSet y = realize_class(g, HomologyClass{h});
                          if (y.antichain.empty()) {
                              d = "empty realization";
                              return false;
                          }
                          if (!(class_of_clopen(*g, y).element == h)) {
                              d = "round trip failed on " + g->name();
                              return false;
                          }
                          ++classes;
                      }
                  }
                  d = std::to_string(classes) + " classes";
                  return classes > 0;
              });

    criterion(10, "fix-quotient index formula = truncated enumeration, 10 patterns", 10.0,
              [](std::string& d) {
                  std::mt19937_64 rng(616161);
                  int done = 0;
                  while (done < 10) {
                      GraphPtr g = loops(2 + static_cast<int>(rng() % 3));
                      int deg = g->out_degree(0);
                      std::vector<int> perm(deg);
                      for (int i = 0; i < deg; ++i) perm[i] = i;
                      for (int i = deg; i > 1; --i)
                          std::swap(perm[i - 1], perm[rng() % i]);
                      Pattern pat = trivial_pattern(g);
                      pattern_add_generator(pat, 0, perm);
                      if (pattern_group_order(pat, 0) > 12) continue;
                      ClopenSet t = full_space(g);
                      FixIndexResult res = fix_quotient_index(*g, pat, t, vertex_path(*g, 0));
                      if (!res.enumeration_verified) {
                          d = "enumeration unverified";
                          return false;
                      }
                      if (res.index != pattern_group_order(pat, 0)) {
                          d = "index mismatch";
                          return false;
                      }
                      if (res.count_full != res.index * res.count_expanded) {
                          d = "ratio mismatch";
                          return false;
                      }
                      ++done;
                  }
                  return done == 10;
              });

    criterion(11, "SNF properties on 200 random matrices up to 5x5", 5.0, [](std::string& d) {
        std::mt19937_64 rng(717171);
        for (int trial = 0; trial < 200; ++trial) {
            int r = 1 + static_cast<int>(rng() % 5), c = 1 + static_cast<int>(rng() % 5);
            IntMatrix a(r, c);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j) a.at(i, j) = static_cast<int>(rng() % 19) - 9;
            SmithDecomposition dec = smith_normal_form(a);
            if (!(dec.U * a * dec.V == dec.S)) {
                d = "UAV != S";
                return false;
            }
            Int du = determinant(dec.U), dv = determinant(dec.V);
            if (!((du == 1 || du == -1) && (dv == 1 || dv == -1))) {
                d = "transforms not unimodular";
                return false;
            }
            const auto& f = dec.invariant_factors;
            for (size_t i = 0; i + 1 < f.size(); ++i) {
                if (f[i] < 0 || (f[i] == 0 && f[i + 1] != 0) ||
                    (f[i] != 0 && f[i + 1] != 0 && f[i + 1] % f[i] != 0)) {
                    d = "divisibility chain broken";
                    return false;
                }
            }
            if (r == c) {
                Int det = determinant(a);
                if (det != 0) {
                    Int prod = 1;
                    for (const Int& x : f) prod *= x;
                    if (prod != abs(det)) {
                        d = "product of factors != |det|";
                        return false;
                    }
                }
            }
        }
        return true;
    });

    std::cout << (failures == 0 ? "acceptance: ALL CRITERIA PASS\n"
                                : "acceptance: " + std::to_string(failures) + " FAILED\n");
    return failures;
}
