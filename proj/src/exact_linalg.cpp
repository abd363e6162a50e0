#include "tfg/exact_linalg.hpp"

#include <algorithm>
#include <sstream>

#include "tfg/abelian.hpp"

namespace tfg {

IntMatrix::IntMatrix(int rows, int cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows < 0 || cols < 0 || entries_.size() != static_cast<size_t>(rows) * cols)
        throw invalid_argument("entry count does not match matrix dimensions");
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw invalid_argument("matrix product dimension mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < rhs.cols_; ++j) out.at(i, j) += a * rhs.at(k, j);
        }
    return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw invalid_argument("matrix difference dimension mismatch");
    IntMatrix out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j) - rhs.at(i, j);
    return out;
}

void IntMatrix::swap_rows(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMatrix::swap_cols(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMatrix::add_row_multiple(int dst, int src, const Int& factor) {
    for (int k = 0; k < cols_; ++k) at(dst, k) += factor * at(src, k);
}

void IntMatrix::add_col_multiple(int dst, int src, const Int& factor) {
    for (int k = 0; k < rows_; ++k) at(k, dst) += factor * at(k, src);
}

void IntMatrix::negate_row(int i) {
    for (int k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
}

bool IntMatrix::is_permutation_matrix() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i) {
        int ones = 0;
        for (int j = 0; j < cols_; ++j) {
            const Int& e = at(i, j);
            if (e == 1) ++ones;
            else if (e != 0) return false;
        }
        if (ones != 1) return false;
    }
    for (int j = 0; j < cols_; ++j) {
        int ones = 0;
        for (int i = 0; i < rows_; ++i)
            if (at(i, j) == 1) ++ones;
        if (ones != 1) return false;
    }
    return true;
}

std::string IntMatrix::to_text() const {
    std::ostringstream out;
    out << "matrix " << rows_ << " " << cols_ << "\n";
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            if (j) out << " ";
            out << at(i, j);
        }
        out << "\n";
    }
    return out.str();
}

IntMatrix id_minus_transpose(const IntMatrix& m) {
    if (!m.is_square()) throw invalid_argument("id_minus_transpose needs a square matrix");
    return IntMatrix::identity(m.rows()) - m.transpose();
}

Int determinant(const IntMatrix& a) {
    if (!a.is_square()) throw invalid_argument("determinant needs a square matrix");
    const int n = a.rows();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination; all divisions are exact.
    IntMatrix m = a;
    Int sign = 1;
    Int prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            int pivot = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { pivot = i; break; }
            if (pivot < 0) return 0;
            m.swap_rows(k, pivot);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

namespace {

// Smallest nonzero absolute value in the submatrix at (t..,t..); ties broken
// by row-major position. Returns false when the submatrix is zero.
bool find_pivot(const IntMatrix& s, int t, int& pi, int& pj) {
    bool found = false;
    Int best = 0;
    for (int i = t; i < s.rows(); ++i)
        for (int j = t; j < s.cols(); ++j) {
            const Int& e = s.at(i, j);
            if (e == 0) continue;
            Int a = abs(e);
            if (!found || a < best) {
                found = true;
                best = a;
                pi = i;
                pj = j;
            }
        }
    return found;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
    const int m = a.rows(), n = a.cols();
    SmithDecomposition d{IntMatrix::identity(m), a, IntMatrix::identity(n), {}};
    IntMatrix& s = d.S;
    const int k = std::min(m, n);

    for (int t = 0; t < k; ++t) {
        int pi, pj;
        if (!find_pivot(s, t, pi, pj)) break;
        for (;;) {
            s.swap_rows(t, pi);
            d.U.swap_rows(t, pi);
            s.swap_cols(t, pj);
            d.V.swap_cols(t, pj);

            bool dirty = false;
            for (int i = t + 1; i < m; ++i) {
                if (s.at(i, t) == 0) continue;
                Int q = s.at(i, t) / s.at(t, t);
                if (q != 0) {
                    s.add_row_multiple(i, t, -q);
                    d.U.add_row_multiple(i, t, -q);
                }
                if (s.at(i, t) != 0) dirty = true;
            }
            for (int j = t + 1; j < n; ++j) {
                if (s.at(t, j) == 0) continue;
                Int q = s.at(t, j) / s.at(t, t);
                if (q != 0) {
                    s.add_col_multiple(j, t, -q);
                    d.V.add_col_multiple(j, t, -q);
                }
                if (s.at(t, j) != 0) dirty = true;
            }
            if (dirty) {
                find_pivot(s, t, pi, pj);
                continue;
            }
            // Row and column t are cleared; force the divisibility chain.
            int bi = -1;
            for (int i = t + 1; i < m && bi < 0; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (s.at(i, j) % s.at(t, t) != 0) {
                        bi = i;
                        break;
                    }
            if (bi < 0) break;
            s.add_row_multiple(t, bi, 1);
            d.U.add_row_multiple(t, bi, 1);
            find_pivot(s, t, pi, pj);
        }
        if (s.at(t, t) < 0) {
            s.negate_row(t);
            d.U.negate_row(t);
        }
    }
    d.invariant_factors.reserve(k);
    for (int t = 0; t < k; ++t) d.invariant_factors.push_back(s.at(t, t));
    return d;
}

std::vector<std::vector<Int>> kernel_basis(const IntMatrix& a) {
    SmithDecomposition d = smith_normal_form(a);
    const int n = a.cols();
    const int k = std::min(a.rows(), n);
    std::vector<std::vector<Int>> basis;
    for (int j = 0; j < n; ++j) {
        if (j < k && d.invariant_factors[j] != 0) continue;
        std::vector<Int> v(n);
        for (int i = 0; i < n; ++i) v[i] = d.V.at(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

CokernelMap cokernel(const IntMatrix& a) {
    SmithDecomposition d = smith_normal_form(a);
    const int rows = a.rows();
    const int k = std::min(rows, a.cols());
    CokernelMap map;
    map.u = std::move(d.U);
    map.diag.assign(rows, 0);
    for (int i = 0; i < k; ++i) map.diag[i] = d.invariant_factors[i];
    for (int i = 0; i < rows; ++i) {
        if (map.diag[i] == 0) map.free_pos.push_back(i);
        else if (map.diag[i] >= 2) map.torsion_pos.push_back(i);
    }
    return map;
}

FinAbGroup CokernelMap::group() const {
    FinAbGroup g;
    for (int i : torsion_pos) g.torsion.push_back(diag[i]);
    g.free_rank = static_cast<int>(free_pos.size());
    return g;
}

AbElement CokernelMap::reduce(const std::vector<Int>& ambient) const {
    if (ambient.size() != static_cast<size_t>(u.rows()))
        throw invalid_argument("ambient vector length does not match cokernel");
    std::vector<Int> ux(u.rows(), 0);
    for (int i = 0; i < u.rows(); ++i)
        for (int j = 0; j < u.cols(); ++j) ux[i] += u.at(i, j) * ambient[j];
    std::vector<Int> t, f;
    for (int i : torsion_pos) {
        Int r = ux[i] % diag[i];
        if (r < 0) r += diag[i];
        t.push_back(r);
    }
    for (int i : free_pos) f.push_back(ux[i]);
    return make_element(group(), std::move(t), std::move(f));
}

}  // namespace tfg
