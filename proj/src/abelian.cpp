#include "tfg/abelian.hpp"

#include <algorithm>
#include <sstream>

namespace tfg {

namespace mp = boost::multiprecision;

Int FinAbGroup::order() const {
    Int n = 1;
    for (const Int& d : torsion) n *= d;
    return n;
}

std::string FinAbGroup::to_string() const {
    if (is_trivial()) return "trivial";
    std::ostringstream out;
    bool first = true;
    for (const Int& d : torsion) {
        if (!first) out << " + ";
        out << "Z/" << d;
        first = false;
    }
    if (free_rank > 0) {
        if (!first) out << " + ";
        out << "Z^" << free_rank;
    }
    return out.str();
}

bool AbElement::is_zero() const {
    auto zero = [](const Int& x) { return x == 0; };
    return std::all_of(torsion_coords.begin(), torsion_coords.end(), zero) &&
           std::all_of(free_coords.begin(), free_coords.end(), zero);
}

std::string AbElement::to_string() const {
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < torsion_coords.size(); ++i) {
        if (i) out << ",";
        out << torsion_coords[i];
    }
    out << ";";
    for (size_t i = 0; i < free_coords.size(); ++i) {
        if (i) out << ",";
        out << free_coords[i];
    }
    out << ")";
    return out.str();
}

AbElement zero_element(const FinAbGroup& g) {
    return AbElement{g, std::vector<Int>(g.torsion.size(), 0),
                     std::vector<Int>(g.free_rank, 0)};
}

AbElement make_element(const FinAbGroup& g, std::vector<Int> torsion_coords,
                       std::vector<Int> free_coords) {
    if (torsion_coords.size() != g.torsion.size() ||
        free_coords.size() != static_cast<size_t>(g.free_rank))
        throw invalid_argument("element coordinate count does not match group");
    for (size_t i = 0; i < torsion_coords.size(); ++i) {
        torsion_coords[i] %= g.torsion[i];
        if (torsion_coords[i] < 0) torsion_coords[i] += g.torsion[i];
    }
    return AbElement{g, std::move(torsion_coords), std::move(free_coords)};
}

namespace {

void check_same_group(const AbElement& a, const AbElement& b) {
    if (a.group != b.group) throw invalid_argument("elements belong to different groups");
}

}  // namespace

AbElement add(const AbElement& a, const AbElement& b) {
    check_same_group(a, b);
    AbElement out = a;
    for (size_t i = 0; i < out.torsion_coords.size(); ++i) {
        out.torsion_coords[i] += b.torsion_coords[i];
        if (out.torsion_coords[i] >= out.group.torsion[i])
            out.torsion_coords[i] -= out.group.torsion[i];
    }
    for (size_t i = 0; i < out.free_coords.size(); ++i) out.free_coords[i] += b.free_coords[i];
    return out;
}

AbElement negate(const AbElement& a) {
    AbElement out = a;
    for (size_t i = 0; i < out.torsion_coords.size(); ++i)
        if (out.torsion_coords[i] != 0)
            out.torsion_coords[i] = out.group.torsion[i] - out.torsion_coords[i];
    for (size_t i = 0; i < out.free_coords.size(); ++i) out.free_coords[i] = -out.free_coords[i];
    return out;
}

bool equals(const AbElement& a, const AbElement& b) {
    check_same_group(a, b);
    return a.torsion_coords == b.torsion_coords && a.free_coords == b.free_coords;
}

std::optional<Int> order(const AbElement& a) {
    for (const Int& x : a.free_coords)
        if (x != 0) return std::nullopt;
    Int ord = 1;
    for (size_t i = 0; i < a.torsion_coords.size(); ++i) {
        if (a.torsion_coords[i] == 0) continue;
        Int d = a.group.torsion[i] / mp::gcd(a.group.torsion[i], a.torsion_coords[i]);
        ord = mp::lcm(ord, d);
    }
    return ord;
}

std::vector<AbElement> all_elements(const FinAbGroup& g, long order_cap) {
    if (!g.is_finite()) throw unsupported_infinite("cannot enumerate an infinite group");
    if (g.order() > order_cap) throw group_too_large("group order exceeds cap");
    std::vector<AbElement> out;
    out.push_back(zero_element(g));
    // Odometer over torsion coordinates, lexicographic from the left.
    size_t k = g.torsion.size();
    std::vector<Int> coords(k, 0);
    for (;;) {
        size_t i = k;
        while (i > 0) {
            --i;
            coords[i] += 1;
            if (coords[i] < g.torsion[i]) break;
            coords[i] = 0;
            if (i == 0) return out;
        }
        if (k == 0) return out;
        out.push_back(AbElement{g, coords, {}});
    }
}

namespace {

std::vector<Int> prime_factors_of(Int n) {
    std::vector<Int> primes;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            primes.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) primes.push_back(n);
    return primes;
}

// Images generate G iff for every prime p | |G| they generate G/pG, i.e. the
// submatrix of coordinates i with p | d_i has full row rank over F_p.
bool images_generate(const std::vector<AbElement>& images, const FinAbGroup& g,
                     const std::vector<Int>& primes) {
    size_t k = g.torsion.size();
    for (const Int& p : primes) {
        std::vector<int> live;
        for (size_t i = 0; i < k; ++i)
            if (g.torsion[i] % p == 0) live.push_back(static_cast<int>(i));
        size_t m = live.size();
        if (m == 0) continue;
        if (images.size() < m) return false;
        // Gaussian elimination over F_p on the m x |images| matrix.
        std::vector<std::vector<Int>> mat(m, std::vector<Int>(images.size()));
        for (size_t r = 0; r < m; ++r)
            for (size_t c = 0; c < images.size(); ++c)
                mat[r][c] = images[c].torsion_coords[live[r]] % p;
        size_t rank = 0;
        for (size_t col = 0; col < images.size() && rank < m; ++col) {
            size_t pivot = rank;
            while (pivot < m && mat[pivot][col] == 0) ++pivot;
            if (pivot == m) continue;
            std::swap(mat[rank], mat[pivot]);
            // Normalize pivot to 1 via modular inverse (p prime).
            Int inv = 1, base = mat[rank][col] % p, e = p - 2;
            while (e > 0) {
                if ((e & 1) != 0) inv = inv * base % p;
                base = base * base % p;
                e >>= 1;
            }
            for (size_t c = col; c < images.size(); ++c) mat[rank][c] = mat[rank][c] * inv % p;
            for (size_t r = 0; r < m; ++r) {
                if (r == rank || mat[r][col] == 0) continue;
                Int f = mat[r][col];
                for (size_t c = col; c < images.size(); ++c) {
                    mat[r][c] = (mat[r][c] - f * mat[rank][c]) % p;
                    if (mat[r][c] < 0) mat[r][c] += p;
                }
            }
            ++rank;
        }
        if (rank < m) return false;
    }
    return true;
}

AbElement apply_images(const std::vector<AbElement>& images, const AbElement& x) {
    AbElement out = zero_element(x.group);
    for (size_t i = 0; i < images.size(); ++i) {
        if (x.torsion_coords[i] == 0) continue;
        AbElement scaled = images[i];
        for (size_t j = 0; j < scaled.torsion_coords.size(); ++j) {
            scaled.torsion_coords[j] = scaled.torsion_coords[j] * x.torsion_coords[i] % x.group.torsion[j];
        }
        out = add(out, scaled);
    }
    return out;
}

}  // namespace

bool marked_iso_exists(const MarkedGroup& m1, const MarkedGroup& m2, long order_cap) {
    if (!m1.group.is_finite() || !m2.group.is_finite())
        throw unsupported_infinite("marked isomorphism is only decided for finite groups");
    if (m1.group.order() > order_cap || m2.group.order() > order_cap)
        throw group_too_large("group order exceeds cap (" + std::to_string(order_cap) + ")");
    if (m1.group != m2.group) return false;
    const FinAbGroup& g = m1.group;
    if (equals(m1.marked, m2.marked)) return true;  // identity automorphism
    if (order(m1.marked) != order(m2.marked)) return false;

    size_t k = g.torsion.size();
    if (k == 0) return true;  // trivial group, both marked elements are 0

    std::vector<AbElement> elems = all_elements(g, order_cap);
    std::vector<Int> primes = prime_factors_of(g.order());
    // Candidate images for generator i: elements whose order divides d_i.
    std::vector<std::vector<int>> candidates(k);
    for (size_t i = 0; i < k; ++i)
        for (size_t e = 0; e < elems.size(); ++e) {
            std::optional<Int> o = order(elems[e]);
            if (g.torsion[i] % *o == 0) candidates[i].push_back(static_cast<int>(e));
        }

    std::vector<AbElement> images;
    images.reserve(k);
    auto search = [&](auto&& self, size_t depth) -> bool {
        if (depth == k) {
            if (!images_generate(images, g, primes)) return false;
            return equals(apply_images(images, m1.marked), m2.marked);
        }
        for (int idx : candidates[depth]) {
            images.push_back(elems[idx]);
            if (self(self, depth + 1)) return true;
            images.pop_back();
        }
        return false;
    };
    return search(search, 0);
}

}  // namespace tfg
