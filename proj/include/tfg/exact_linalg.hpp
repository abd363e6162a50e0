#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "tfg/errors.hpp"

namespace tfg {

// Every integer in this library is exact; there is no floating point anywhere.
using Int = boost::multiprecision::cpp_int;

/// Dense arbitrary-precision integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), entries_(static_cast<size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw invalid_argument("matrix dimensions must be nonnegative");
    }
    IntMatrix(int rows, int cols, std::vector<Int> entries);

    static IntMatrix identity(int n);
    static IntMatrix zero(int rows, int cols) { return IntMatrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Int& at(int i, int j) { return entries_[static_cast<size_t>(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return entries_[static_cast<size_t>(i) * cols_ + j]; }

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator-(const IntMatrix& rhs) const;
    bool operator==(const IntMatrix& rhs) const = default;

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    void add_row_multiple(int dst, int src, const Int& factor);  // row dst += factor * row src
    void add_col_multiple(int dst, int src, const Int& factor);
    void negate_row(int i);

    bool is_permutation_matrix() const;

    /// Text format: "matrix <rows> <cols>" then one whitespace-separated row per line.
    std::string to_text() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Int> entries_;
};

/// U * A * V = S with U, V unimodular and S diagonal, d1 | d2 | ... | dr then zeros.
struct SmithDecomposition {
    IntMatrix U;
    IntMatrix S;
    IntMatrix V;
    std::vector<Int> invariant_factors;  // the diagonal of S, nonnegative
};

/// I - M^t entrywise; rejects non-square input.
IntMatrix id_minus_transpose(const IntMatrix& m);

/// Exact signed determinant (fraction-free elimination); rejects non-square input.
Int determinant(const IntMatrix& a);

SmithDecomposition smith_normal_form(const IntMatrix& a);

/// Basis of the integer null space {v : A v = 0}; empty when A is injective.
std::vector<std::vector<Int>> kernel_basis(const IntMatrix& a);

struct FinAbGroup;  // defined in abelian.hpp
struct AbElement;

/// Coker(A) = Z^rows / column span of A, in invariant-factor coordinates,
/// together with the map sending ambient vectors to their coordinates.
struct CokernelMap {
    IntMatrix u;                  // the U of the SNF, rows x rows
    std::vector<Int> diag;        // full diagonal of S padded to `rows` entries (0 beyond min dim)
    std::vector<int> torsion_pos; // diagonal indices with d >= 2, in chain order
    std::vector<int> free_pos;    // diagonal indices with d == 0 plus rows beyond min dim

    /// Coordinates of an ambient vector (length = rows) in the canonical decomposition.
    AbElement reduce(const std::vector<Int>& ambient) const;
    FinAbGroup group() const;
};

CokernelMap cokernel(const IntMatrix& a);

}  // namespace tfg
