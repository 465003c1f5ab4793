#ifndef TREELAT_ZLINALG_HPP
#define TREELAT_ZLINALG_HPP

// Exact integer linear algebra over arbitrary-precision integers: Smith and
// column Hermite normal forms, saturated kernel bases, cokernel structure and
// lattice membership.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace treelat {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix
{
public:
   IntMatrix() = default;
   IntMatrix(std::size_t rows, std::size_t cols);
   IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

   static IntMatrix identity(std::size_t n);
   // Matrix whose j-th column is columns[j]; every column must have `rows` entries.
   static IntMatrix from_columns(const std::vector<IntVector> &columns, std::size_t rows);

   std::size_t rows() const { return rows_; }
   std::size_t cols() const { return cols_; }

   Integer &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
   const Integer &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

   IntVector column(std::size_t j) const;
   IntVector row(std::size_t i) const;
   IntMatrix transpose() const;
   bool is_zero() const;
   bool is_diagonal() const;
   std::size_t nonzero_count() const;

   // Rows [first, first + count) as a new matrix.
   IntMatrix row_block(std::size_t first, std::size_t count) const;

   // In-place elementary operations; each is unimodular.
   void swap_rows(std::size_t i, std::size_t k);
   void swap_cols(std::size_t j, std::size_t k);
   void add_row_multiple(std::size_t target, std::size_t source, const Integer &factor);
   void add_col_multiple(std::size_t target, std::size_t source, const Integer &factor);
   void negate_row(std::size_t i);
   void negate_col(std::size_t j);

   friend bool operator==(const IntMatrix &a, const IntMatrix &b) = default;

private:
   std::size_t rows_ = 0;
   std::size_t cols_ = 0;
   std::vector<Integer> data_;
};

// Row-parallel product (OpenMP when enabled).
IntMatrix operator*(const IntMatrix &a, const IntMatrix &b);
// Reference triple loop kept for testing and benchmarking the parallel path.
IntMatrix multiply_serial(const IntMatrix &a, const IntMatrix &b);
IntVector operator*(const IntMatrix &a, const IntVector &x);
IntMatrix operator+(const IntMatrix &a, const IntMatrix &b);
IntMatrix operator-(const IntMatrix &a, const IntMatrix &b);
// [top; bottom]
IntMatrix vstack(const IntMatrix &top, const IntMatrix &bottom);

bool is_zero_vector(const IntVector &x);

/// u * a * v == d, u and v unimodular, d diagonal with d1 | d2 | ... and
/// trailing zeros. invariant_factors lists the nonzero diagonal.
struct SmithDecomposition
{
   IntMatrix u;
   IntMatrix d;
   IntMatrix v;
   std::vector<Integer> invariant_factors;

   std::size_t rank() const { return invariant_factors.size(); }
};

SmithDecomposition smith_normal_form(const IntMatrix &a);
// Invariant factors only; skips the transform bookkeeping.
std::vector<Integer> smith_invariants(const IntMatrix &a);

/// a * transform == h, transform unimodular, h in column Hermite form: the
/// first `rank` columns are nonzero with strictly increasing pivot rows,
/// entries above a pivot are zero, pivots positive and entries left of a
/// pivot reduced into [0, pivot). Remaining columns of h are zero.
struct ColumnHermite
{
   IntMatrix h;
   IntMatrix transform;
   std::vector<std::size_t> pivot_rows;

   std::size_t rank() const { return pivot_rows.size(); }
};

ColumnHermite column_hermite(const IntMatrix &a, bool with_transform = true);

std::size_t rank(const IntMatrix &a);

// Saturated basis of {x : a x = 0}; cols - rank(a) vectors.
std::vector<IntVector> kernel_basis(const IntMatrix &a);

struct CokernelStructure
{
   std::size_t free_rank = 0;
   std::vector<Integer> torsion;   // invariant factors > 1, ascending by divisibility

   friend bool operator==(const CokernelStructure &, const CokernelStructure &) = default;
};

CokernelStructure cokernel_invariants(const IntMatrix &a);

// Integer coefficients c with sum_j c_j basis_j == x, if any. Throws
// std::invalid_argument on a dimension mismatch.
std::optional<IntVector> solve_in_lattice(const IntVector &x, const std::vector<IntVector> &basis);

bool lattice_membership(const IntVector &x, const std::vector<IntVector> &basis);

std::string to_string(const IntVector &x);

} // namespace treelat

#endif // TREELAT_ZLINALG_HPP
