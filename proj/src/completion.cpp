#include "tfg/completion.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tfg {

namespace {

std::vector<int> identity_perm(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

std::vector<int> compose_perms(const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> out(f.size());
    for (size_t i = 0; i < f.size(); ++i) out[i] = f[g[i]];
    return out;
}

void check_perm(const std::vector<int>& p, int n) {
    if (static_cast<int>(p.size()) != n) throw invalid_argument("permutation size mismatch");
    std::vector<char> hit(n, 0);
    for (int i : p) {
        if (i < 0 || i >= n || hit[i]) throw invalid_argument("not a permutation");
        hit[i] = 1;
    }
}

// BFS product closure of a generator set inside Sym(n).
std::set<std::vector<int>> closure(const std::vector<std::vector<int>>& gens, int n,
                                   long cap) {
    std::set<std::vector<int>> seen{identity_perm(n)};
    std::vector<std::vector<int>> frontier{identity_perm(n)};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& p : frontier)
            for (const auto& gen : gens) {
                std::vector<int> q = compose_perms(gen, p);
                if (seen.insert(q).second) {
                    if (static_cast<long>(seen.size()) > cap)
                        throw closure_too_large("permutation closure exceeds cap (" +
                                                std::to_string(cap) + ")");
                    next.push_back(std::move(q));
                }
            }
        frontier = std::move(next);
    }
    return seen;
}

std::set<Int> prime_factors(Int n) {
    std::set<Int> out;
    for (Int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            out.insert(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) out.insert(n);
    return out;
}

}  // namespace

Pattern trivial_pattern(GraphPtr g) { return Pattern{std::move(g), {}}; }

void pattern_add_generator(Pattern& pat, int vertex, std::vector<int> perm) {
    const MultiGraph& g = *pat.graph;
    if (vertex < 0 || vertex >= g.vertex_count()) throw invalid_argument("label out of range");
    const auto& outs = g.out_edges(vertex);
    check_perm(perm, static_cast<int>(outs.size()));
    for (size_t i = 0; i < outs.size(); ++i)
        if (g.edge(outs[i]).terminus != g.edge(outs[perm[i]]).terminus)
            throw invalid_argument("pattern generator does not preserve the terminus partition");
    pat.generators[vertex].push_back(std::move(perm));
}

Int pattern_group_order(const Pattern& pat, int vertex, long closure_cap) {
    const MultiGraph& g = *pat.graph;
    if (vertex < 0 || vertex >= g.vertex_count()) throw invalid_argument("label out of range");
    auto it = pat.generators.find(vertex);
    if (it == pat.generators.end() || it->second.empty()) return 1;
    return Int(closure(it->second, g.out_degree(vertex), closure_cap).size());
}

std::set<Int> local_prime_content(const Pattern& pat, long closure_cap) {
    Int product = 1;
    for (int v = 0; v < pat.graph->vertex_count(); ++v)
        product *= pattern_group_order(pat, v, closure_cap);
    return prime_factors(product);
}

Pattern pattern_from_edge_automorphisms(const MultiGraph& g,
                                        const std::vector<std::vector<int>>& gens,
                                        long closure_cap) {
    const int ne = g.edge_count();
    for (const auto& gen : gens) {
        check_perm(gen, ne);
        for (int e = 0; e < ne; ++e) {
            if (g.edge(gen[e]).origin != g.edge(e).origin)
                throw invalid_argument("edge automorphism moves an origin vertex");
            if (g.edge(gen[e]).terminus != g.edge(e).terminus)
                throw invalid_argument("edge automorphism moves a terminus vertex");
        }
    }
    Pattern pat = trivial_pattern(std::make_shared<MultiGraph>(g));
    for (int v = 0; v < g.vertex_count(); ++v) {
        const auto& outs = g.out_edges(v);
        for (const auto& gen : gens) {
            std::vector<int> restricted(outs.size());
            bool nontrivial = false;
            for (size_t i = 0; i < outs.size(); ++i) {
                int img = gen[outs[i]];
                auto pos = std::find(outs.begin(), outs.end(), img);
                restricted[i] = static_cast<int>(pos - outs.begin());
                if (restricted[i] != static_cast<int>(i)) nontrivial = true;
            }
            if (nontrivial) pattern_add_generator(pat, v, std::move(restricted));
        }
    }
    // The prime factors of prod |F_l| must equal those of the edge group order.
    Int edge_order(closure(gens.empty() ? std::vector<std::vector<int>>{identity_perm(ne)} : gens,
                           ne, closure_cap)
                       .size());
    Int product = 1;
    for (int v = 0; v < g.vertex_count(); ++v) product *= pattern_group_order(pat, v, closure_cap);
    if (prime_factors(product) != prime_factors(edge_order))
        throw error("internal: restricted pattern has wrong prime content");
    return pat;
}

IntMatrix construct_prime_matrix(const std::vector<Int>& torsion, const Int& det_target,
                                 const std::set<Int>& primes) {
    Int n = 1;
    for (const Int& p : primes) n *= p;

    std::vector<Int> factors = torsion;
    if (factors.empty()) factors.push_back(1);
    for (const Int& d : factors)
        if (d < 0) throw invalid_argument("invariant factors must be nonnegative");

    Int prod = 1;
    for (const Int& d : factors) prod *= d;
    if (prod != abs(det_target))
        throw invalid_argument("determinant magnitude does not match the invariant factors");

    // diag(-1, -d1, ..., -dn) or diag(-1, -1, -d1, ..., -dn), whichever sign fits.
    const int k = static_cast<int>(factors.size());
    int size;
    if (prod == 0) {
        if (det_target != 0) throw invalid_argument("zero factors need zero determinant");
        size = k + 1;
    } else {
        Int det1 = (k + 1) % 2 == 0 ? prod : -prod;  // det of the (k+1)-form
        size = det1 == det_target ? k + 1 : k + 2;
    }
    IntMatrix a(size, size);
    for (int i = 0; i < size - k; ++i) a.at(i, i) = -1;
    for (int i = 0; i < k; ++i) a.at(size - k + i, size - k + i) = -factors[i];
    for (int i = 1; i < size; ++i) a.add_row_multiple(i, 0, 1);
    for (int j = 1; j < size; ++j) a.add_col_multiple(j, 0, n);

    // Postconditions, machine-verified before anything is returned.
    if (determinant(a) != det_target) throw error("construct_prime_matrix: determinant check failed");
    std::vector<Int> got, want;
    for (const Int& d : smith_normal_form(a).invariant_factors)
        if (d != 1) got.push_back(d);
    for (const Int& d : factors)
        if (d != 1) want.push_back(d);
    if (got != want) throw error("construct_prime_matrix: cokernel invariant check failed");
    IntMatrix adj = id_minus_transpose(a);
    bool has_n = false, has_two = false;
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) {
            if (adj.at(i, j) < 1) throw error("construct_prime_matrix: entry below 1");
            if (adj.at(i, j) == n) has_n = true;
            if (adj.at(i, j) >= 2) has_two = true;
        }
    if (!has_n) throw error("construct_prime_matrix: no entry equals N");
    if (!has_two || adj.is_permutation_matrix())
        throw error("construct_prime_matrix: adjacency is a permutation matrix");
    return a;
}

MultiGraph graph_from_matrix(const IntMatrix& m, const std::string& prefix) {
    if (!m.is_square()) throw invalid_argument("adjacency matrix must be square");
    const int n = m.rows();
    MultiGraph g(prefix);
    for (int i = 1; i <= n; ++i) g.add_vertex("v" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Int& count = m.at(i, j);
            if (count < 0) throw invalid_argument("adjacency entries must be nonnegative");
            for (Int k = 1; k <= count; ++k) {
                std::ostringstream name;
                name << prefix << "_" << (i + 1) << "_" << (j + 1) << "_" << k;
                g.add_edge(name.str(), "v" + std::to_string(i + 1), "v" + std::to_string(j + 1));
            }
        }
    return g;
}

MultiGraph multi_prime_family_graph(const std::vector<Int>& primes) {
    if (primes.size() < 2) throw invalid_argument("the family needs at least two primes");
    const int n = static_cast<int>(primes.size());
    Int prod = 1;
    for (const Int& p : primes) prod *= p;
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, (i + 1) % n) = primes[i];
    m.at(0, 0) += prod - 2;
    return graph_from_matrix(m, "mp");
}

bool CompletionCertificate::all_pass() const {
    return !checks.empty() &&
           std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

namespace {

std::string primes_to_string(const std::set<Int>& primes) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const Int& p : primes) {
        if (!first) out << ",";
        out << p;
        first = false;
    }
    out << "}";
    return out.str();
}

}  // namespace

std::vector<CompletionCheck> run_certificate_checks(const CompletionCertificate& cert,
                                                    long order_cap, long closure_cap) {
    std::vector<CompletionCheck> checks;
    auto push = [&](const std::string& name, bool pass, const std::string& details) {
        checks.push_back({name, pass, details});
    };
    const MultiGraph& g = *cert.graph;
    const MultiGraph& gt = *cert.tilde_graph;

    Int det_in = determinant(id_minus_transpose(adjacency_matrix(g)));
    Int det_a = determinant(cert.a);
    {
        std::ostringstream d;
        d << "det(id-M^t)=" << det_in << " det(A)=" << det_a;
        push("det-equality", det_in == det_a, d.str());
    }
    CokernelMap coker_in = cokernel(id_minus_transpose(adjacency_matrix(g)));
    CokernelMap coker_out = cokernel(id_minus_transpose(adjacency_matrix(gt)));
    push("cokernel-invariants", coker_in.group() == coker_out.group(),
         coker_in.group().to_string() + " vs " + coker_out.group().to_string());

    IntMatrix adj = id_minus_transpose(cert.a);
    bool positive = true, has_n = false;
    for (int i = 0; i < adj.rows(); ++i)
        for (int j = 0; j < adj.cols(); ++j) {
            if (adj.at(i, j) < 1) positive = false;
            if (adj.at(i, j) == cert.n) has_n = true;
        }
    push("adjacency-positive", positive, "id-A^t entrywise >= 1");
    {
        std::ostringstream d;
        d << "N=" << cert.n;
        push("entry-N", has_n, d.str());
    }
    push("adjacency-matches", adjacency_matrix(gt) == adj,
         "tilde graph realizes id-A^t");
    push("diconnected", is_diconnected(gt), "");
    push("non-circular", is_non_circular(gt), "");

    bool transport_ok = false;
    std::string transport_details;
    try {
        HomologyClass realized = class_of_clopen(gt, cert.tilde_y);
        transport_ok = realized.element == cert.transported_class;
        transport_details = "class([Y~])=" + realized.element.to_string() + " expected " +
                            cert.transported_class.to_string();
    } catch (const error& err) {
        transport_details = err.what();
    }
    push("class-transport", transport_ok, transport_details);

    bool met = false;
    std::string met_details;
    try {
        met = matsumoto_equivalent(g, cert.y, gt, cert.tilde_y, order_cap);
        met_details = met ? "MET" : "NOT-MET";
    } catch (const error& err) {
        met_details = err.what();
    }
    push("matsumoto", met, met_details);

    bool lpc_ok = false;
    std::string lpc_details;
    try {
        std::set<Int> lpc = local_prime_content(cert.pattern, closure_cap);
        lpc_ok = lpc == cert.primes;
        lpc_details = primes_to_string(lpc) + " expected " + primes_to_string(cert.primes);
    } catch (const error& err) {
        lpc_details = err.what();
    }
    push("lpc", lpc_ok, lpc_details);
    return checks;
}

CompletionCertificate build_completion(GraphPtr g, const ClopenSet& y, const std::set<Int>& primes,
                                       long order_cap, long closure_cap) {
    if (!is_diconnected(*g)) throw invalid_argument("graph is not diconnected");
    if (!is_non_circular(*g)) throw invalid_argument("graph is circular");
    for (const Int& p : primes)
        if (p < 2 || prime_factors(p) != std::set<Int>{p})
            throw invalid_argument("prime set contains a non-prime");

    IntMatrix base = id_minus_transpose(adjacency_matrix(*g));
    Int det = determinant(base);
    if (det == 0)
        throw unsupported_infinite("build_completion needs a finite cokernel (det != 0)");
    CokernelMap coker = cokernel(base);
    FinAbGroup h0 = coker.group();
    HomologyClass marked = class_of_clopen(*g, y);

    CompletionCertificate cert;
    cert.graph = g;
    cert.y = y;
    cert.primes = primes;
    cert.n = 1;
    for (const Int& p : primes) cert.n *= p;
    cert.padded_factors = h0.torsion;
    if (cert.padded_factors.empty()) cert.padded_factors.push_back(1);
    cert.a = construct_prime_matrix(h0.torsion, det, primes);
    cert.tilde_graph =
        std::make_shared<MultiGraph>(graph_from_matrix(id_minus_transpose(cert.a), "e"));

    // The isomorphism of the two H0 groups is the identity in canonical
    // invariant-factor coordinates; transport the marked class along it.
    CokernelMap coker_tilde = cokernel(id_minus_transpose(adjacency_matrix(*cert.tilde_graph)));
    if (!(coker_tilde.group() == h0))
        throw error("internal: constructed cokernel differs from the input cokernel");
    cert.transported_class = make_element(h0, marked.element.torsion_coords, {});
    cert.tilde_y = realize_class(cert.tilde_graph, HomologyClass{cert.transported_class});

    // Pattern: disjoint p-cycles on consecutive canonical edges of the first
    // parallel class with at least N edges; all other labels trivial.
    cert.pattern = trivial_pattern(cert.tilde_graph);
    if (!primes.empty()) {
        const MultiGraph& gt = *cert.tilde_graph;
        IntMatrix adj = adjacency_matrix(gt);
        int vi = -1, wj = -1;
        for (int i = 0; i < adj.rows() && vi < 0; ++i)
            for (int j = 0; j < adj.cols(); ++j)
                if (adj.at(i, j) >= cert.n) {
                    vi = i;
                    wj = j;
                    break;
                }
        if (vi < 0) throw error("internal: no parallel class with N edges");
        const auto& outs = gt.out_edges(vi);
        std::vector<int> positions;  // positions within outs of the edges vi -> wj
        for (size_t i = 0; i < outs.size(); ++i)
            if (gt.edge(outs[i]).terminus == wj) positions.push_back(static_cast<int>(i));
        std::vector<int> perm = identity_perm(static_cast<int>(outs.size()));
        size_t offset = 0;
        for (const Int& p : primes) {
            long pl = static_cast<long>(p);
            for (long i = 0; i < pl; ++i)
                perm[positions[offset + i]] = positions[offset + (i + 1) % pl];
            offset += static_cast<size_t>(pl);
        }
        pattern_add_generator(cert.pattern, vi, std::move(perm));
    }

    cert.checks = run_certificate_checks(cert, order_cap, closure_cap);
    if (!cert.all_pass()) {
        std::string failed;
        for (const auto& c : cert.checks)
            if (!c.pass) failed += " " + c.name;
        throw error("completion certificate failed checks:" + failed);
    }
    return cert;
}

FixIndexResult fix_quotient_index(const MultiGraph& g, const Pattern& pat, const ClopenSet& t,
                                  const Path& leaf, long closure_cap) {
    if (!pat.graph->same_structure(g) || !t.graph->same_structure(g))
        throw invalid_argument("pattern and antichain must live over the given graph");
    if (!is_complete_antichain(g, t.antichain, full_space(t.graph)))
        throw invalid_argument("T is not a complete antichain");
    if (std::find(t.antichain.begin(), t.antichain.end(), leaf) == t.antichain.end())
        throw invalid_argument("leaf is not in T's antichain");

    FixIndexResult res;
    res.index = pattern_group_order(pat, path_terminus(g, leaf), closure_cap);

    // Orders per label, shared by both counts.
    std::vector<Int> order_of(g.vertex_count(), 1);
    bool caps_ok = true;
    for (int v = 0; v < g.vertex_count(); ++v) {
        try {
            order_of[v] = pattern_group_order(pat, v, closure_cap);
        } catch (const closure_too_large&) {
            caps_ok = false;
        }
    }

    const int depth_cap = leaf.length() + 2;
    const long vertex_cap = 1000000;
    // Product of |F_label| over all vertices at or below the antichain leaves,
    // to the depth cap: the number of depth-bounded patterning automorphisms
    // fixing the corresponding subtree pointwise.
    auto count_below = [&](const std::vector<Path>& leaves, bool& ok) {
        Int count = 1;
        long visited = 0;
        std::vector<Path> stack(leaves);
        while (!stack.empty()) {
            Path p = stack.back();
            stack.pop_back();
            if (++visited > vertex_cap) {
                ok = false;
                return Int(0);
            }
            count *= order_of[path_terminus(g, p)];
            if (p.length() >= depth_cap) continue;
            for (int e : g.out_edges(path_terminus(g, p))) stack.push_back(path_extend(g, p, e));
        }
        return count;
    };

    bool ok = caps_ok;
    res.count_full = count_below(t.antichain, ok);
    std::vector<Path> expanded;
    for (const Path& p : t.antichain)
        if (!(p == leaf)) expanded.push_back(p);
    for (int e : g.out_edges(path_terminus(g, leaf))) expanded.push_back(path_extend(g, leaf, e));
    res.count_expanded = count_below(expanded, ok);
    res.enumeration_verified = ok && res.count_expanded != 0 &&
                               res.count_full == res.index * res.count_expanded;
    return res;
}

}  // namespace tfg
