#include "treelat/zlinalg.hpp"

#include "treelat/parallel.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace treelat {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
   : rows_(rows), cols_(cols), data_(rows * cols)
{
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
{
   rows_ = rows.size();
   cols_ = rows_ == 0 ? 0 : rows.begin()->size();
   data_.reserve(rows_ * cols_);
   for (const auto &row : rows)
   {
      if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
      for (long value : row) data_.emplace_back(value);
   }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
   IntMatrix m(n, n);
   for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
   return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector> &columns, std::size_t rows)
{
   IntMatrix m(rows, columns.size());
   for (std::size_t j = 0; j < columns.size(); ++j)
   {
      if (columns[j].size() != rows) throw std::invalid_argument("IntMatrix::from_columns: length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
   }
   return m;
}

IntVector IntMatrix::column(std::size_t j) const
{
   IntVector out(rows_);
   for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
   return out;
}

IntVector IntMatrix::row(std::size_t i) const
{
   return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                    data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntMatrix IntMatrix::transpose() const
{
   IntMatrix t(cols_, rows_);
   for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
   return t;
}

bool IntMatrix::is_zero() const
{
   return std::all_of(data_.begin(), data_.end(), [](const Integer &x) { return sgn(x) == 0; });
}

bool IntMatrix::is_diagonal() const
{
   for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
         if (i != j && sgn((*this)(i, j)) != 0) return false;
   return true;
}

std::size_t IntMatrix::nonzero_count() const
{
   return static_cast<std::size_t>(
      std::count_if(data_.begin(), data_.end(), [](const Integer &x) { return sgn(x) != 0; }));
}

IntMatrix IntMatrix::row_block(std::size_t first, std::size_t count) const
{
   if (first + count > rows_) throw std::out_of_range("IntMatrix::row_block");
   IntMatrix out(count, cols_);
   std::copy(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((first + count) * cols_), out.data_.begin());
   return out;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t k)
{
   if (i == k) return;
   for (std::size_t j = 0; j < cols_; ++j) swap((*this)(i, j), (*this)(k, j));
}

void IntMatrix::swap_cols(std::size_t j, std::size_t k)
{
   if (j == k) return;
   for (std::size_t i = 0; i < rows_; ++i) swap((*this)(i, j), (*this)(i, k));
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, const Integer &factor)
{
   if (sgn(factor) == 0) return;
   for (std::size_t j = 0; j < cols_; ++j)
   {
      const Integer &s = (*this)(source, j);
      if (sgn(s) != 0) mpz_addmul((*this)(target, j).get_mpz_t(), s.get_mpz_t(), factor.get_mpz_t());
   }
}

void IntMatrix::add_col_multiple(std::size_t target, std::size_t source, const Integer &factor)
{
   if (sgn(factor) == 0) return;
   for (std::size_t i = 0; i < rows_; ++i)
   {
      const Integer &s = (*this)(i, source);
      if (sgn(s) != 0) mpz_addmul((*this)(i, target).get_mpz_t(), s.get_mpz_t(), factor.get_mpz_t());
   }
}

void IntMatrix::negate_row(std::size_t i)
{
   for (std::size_t j = 0; j < cols_; ++j) mpz_neg((*this)(i, j).get_mpz_t(), (*this)(i, j).get_mpz_t());
}

void IntMatrix::negate_col(std::size_t j)
{
   for (std::size_t i = 0; i < rows_; ++i) mpz_neg((*this)(i, j).get_mpz_t(), (*this)(i, j).get_mpz_t());
}

namespace {

void check_product_shape(const IntMatrix &a, const IntMatrix &b)
{
   if (a.cols() != b.rows())
      throw std::invalid_argument("matrix product: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                  " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}

void multiply_row(const IntMatrix &a, const IntMatrix &b, IntMatrix &c, std::size_t i)
{
   for (std::size_t k = 0; k < a.cols(); ++k)
   {
      const Integer &aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
      {
         const Integer &bkj = b(k, j);
         if (sgn(bkj) != 0) mpz_addmul(c(i, j).get_mpz_t(), aik.get_mpz_t(), bkj.get_mpz_t());
      }
   }
}

} // namespace

IntMatrix operator*(const IntMatrix &a, const IntMatrix &b)
{
   check_product_shape(a, b);
   IntMatrix c(a.rows(), b.cols());
   par::for_each_index(a.rows(), [&](std::size_t i) { multiply_row(a, b, c, i); });
   return c;
}

IntMatrix multiply_serial(const IntMatrix &a, const IntMatrix &b)
{
   check_product_shape(a, b);
   IntMatrix c(a.rows(), b.cols());
   for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
         for (std::size_t k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
   return c;
}

IntVector operator*(const IntMatrix &a, const IntVector &x)
{
   if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
   IntVector y(a.rows());
   for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
         if (sgn(a(i, j)) != 0 && sgn(x[j]) != 0) mpz_addmul(y[i].get_mpz_t(), a(i, j).get_mpz_t(), x[j].get_mpz_t());
   return y;
}

IntMatrix operator+(const IntMatrix &a, const IntMatrix &b)
{
   if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: shape mismatch");
   IntMatrix c(a.rows(), a.cols());
   for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
   return c;
}

IntMatrix operator-(const IntMatrix &a, const IntMatrix &b)
{
   if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix difference: shape mismatch");
   IntMatrix c(a.rows(), a.cols());
   for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
   return c;
}

IntMatrix vstack(const IntMatrix &top, const IntMatrix &bottom)
{
   if (top.cols() != bottom.cols()) throw std::invalid_argument("vstack: column mismatch");
   IntMatrix out(top.rows() + bottom.rows(), top.cols());
   for (std::size_t i = 0; i < top.rows(); ++i)
      for (std::size_t j = 0; j < top.cols(); ++j) out(i, j) = top(i, j);
   for (std::size_t i = 0; i < bottom.rows(); ++i)
      for (std::size_t j = 0; j < bottom.cols(); ++j) out(top.rows() + i, j) = bottom(i, j);
   return out;
}

bool is_zero_vector(const IntVector &x)
{
   return std::all_of(x.begin(), x.end(), [](const Integer &v) { return sgn(v) == 0; });
}

namespace {

// q = round(a / b), so |a - q b| <= |b| / 2.
void nearest_quotient(Integer &q, const Integer &a, const Integer &b)
{
   Integer r;
   mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
   r *= 2;
   if (mpz_cmpabs(r.get_mpz_t(), b.get_mpz_t()) > 0) q += 1;
}

// Smith reduction. Every row operation on d is mirrored on u and every column
// operation on v, so u * a * v == d holds throughout.
SmithDecomposition smith_reduce(const IntMatrix &a, bool track)
{
   SmithDecomposition out;
   IntMatrix &d = out.d;
   IntMatrix &u = out.u;
   IntMatrix &v = out.v;
   d = a;
   const std::size_t m = a.rows();
   const std::size_t n = a.cols();
   if (track)
   {
      u = IntMatrix::identity(m);
      v = IntMatrix::identity(n);
   }

   auto swap_rows = [&](std::size_t i, std::size_t k) {
      d.swap_rows(i, k);
      if (track) u.swap_rows(i, k);
   };
   auto swap_cols = [&](std::size_t j, std::size_t k) {
      d.swap_cols(j, k);
      if (track) v.swap_cols(j, k);
   };
   auto add_row = [&](std::size_t target, std::size_t source, const Integer &f) {
      d.add_row_multiple(target, source, f);
      if (track) u.add_row_multiple(target, source, f);
   };
   auto add_col = [&](std::size_t target, std::size_t source, const Integer &f) {
      d.add_col_multiple(target, source, f);
      if (track) v.add_col_multiple(target, source, f);
   };

   Integer q;
   for (std::size_t k = 0; k < std::min(m, n); ++k)
   {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = m, pj = n;
      for (std::size_t i = k; i < m; ++i)
         for (std::size_t j = k; j < n; ++j)
            if (sgn(d(i, j)) != 0 && (pi == m || mpz_cmpabs(d(i, j).get_mpz_t(), d(pi, pj).get_mpz_t()) < 0))
            {
               pi = i;
               pj = j;
            }
      if (pi == m) break;
      swap_rows(k, pi);
      swap_cols(k, pj);

      for (;;)
      {
         // Euclid on row k and column k: reduce by the pivot with the
         // remainder nearest zero, then promote the smallest leftover.
         for (std::size_t i = k + 1; i < m; ++i)
            if (sgn(d(i, k)) != 0)
            {
               nearest_quotient(q, d(i, k), d(k, k));
               add_row(i, k, -q);
            }
         for (std::size_t j = k + 1; j < n; ++j)
            if (sgn(d(k, j)) != 0)
            {
               nearest_quotient(q, d(k, j), d(k, k));
               add_col(j, k, -q);
            }
         std::size_t best_i = k, best_j = k;
         for (std::size_t i = k + 1; i < m; ++i)
            if (sgn(d(i, k)) != 0 && (best_i == k || mpz_cmpabs(d(i, k).get_mpz_t(), d(best_i, k).get_mpz_t()) < 0))
               best_i = i;
         for (std::size_t j = k + 1; j < n; ++j)
            if (sgn(d(k, j)) != 0 && (best_j == k || mpz_cmpabs(d(k, j).get_mpz_t(), d(k, best_j).get_mpz_t()) < 0))
               best_j = j;
         if (best_i != k || best_j != k)
         {
            const bool use_row = best_j == k ||
                                 (best_i != k && mpz_cmpabs(d(best_i, k).get_mpz_t(), d(k, best_j).get_mpz_t()) <= 0);
            if (use_row)
               swap_rows(k, best_i);
            else
               swap_cols(k, best_j);
            continue;
         }

         // Divisibility: pull an offending row into the pivot row.
         bool divides = true;
         for (std::size_t i = k + 1; i < m && divides; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
               if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(k, k).get_mpz_t()))
               {
                  add_row(k, i, Integer(1));
                  divides = false;
                  break;
               }
         if (divides) break;
      }

      if (sgn(d(k, k)) < 0)
      {
         d.negate_row(k);
         if (track) u.negate_row(k);
      }
      out.invariant_factors.push_back(d(k, k));
   }
   return out;
}

} // namespace

SmithDecomposition smith_normal_form(const IntMatrix &a)
{
   return smith_reduce(a, true);
}

std::vector<Integer> smith_invariants(const IntMatrix &a)
{
   return smith_reduce(a, false).invariant_factors;
}

ColumnHermite column_hermite(const IntMatrix &a, bool with_transform)
{
   ColumnHermite out;
   IntMatrix &h = out.h;
   IntMatrix &t = out.transform;
   h = a;
   const std::size_t m = a.rows();
   const std::size_t n = a.cols();
   if (with_transform) t = IntMatrix::identity(n);

   auto swap_cols = [&](std::size_t j, std::size_t k) {
      h.swap_cols(j, k);
      if (with_transform) t.swap_cols(j, k);
   };
   auto add_col = [&](std::size_t target, std::size_t source, const Integer &f) {
      h.add_col_multiple(target, source, f);
      if (with_transform) t.add_col_multiple(target, source, f);
   };

   Integer q;
   std::size_t c = 0;
   for (std::size_t r = 0; r < m && c < n; ++r)
   {
      // Euclid across row r on columns c..n-1.
      for (;;)
      {
         std::size_t best = n;
         for (std::size_t j = c; j < n; ++j)
            if (sgn(h(r, j)) != 0 && (best == n || mpz_cmpabs(h(r, j).get_mpz_t(), h(r, best).get_mpz_t()) < 0)) best = j;
         if (best == n) break;
         swap_cols(c, best);
         bool remainder = false;
         for (std::size_t j = c + 1; j < n; ++j)
         {
            if (sgn(h(r, j)) == 0) continue;
            mpz_tdiv_q(q.get_mpz_t(), h(r, j).get_mpz_t(), h(r, c).get_mpz_t());
            add_col(j, c, -q);
            if (sgn(h(r, j)) != 0) remainder = true;
         }
         if (!remainder) break;
      }
      if (sgn(h(r, c)) == 0) continue;
      if (sgn(h(r, c)) < 0)
      {
         h.negate_col(c);
         if (with_transform) t.negate_col(c);
      }
      for (std::size_t j = 0; j < c; ++j)
      {
         mpz_fdiv_q(q.get_mpz_t(), h(r, j).get_mpz_t(), h(r, c).get_mpz_t());
         add_col(j, c, -q);
      }
      out.pivot_rows.push_back(r);
      ++c;
   }
   return out;
}

std::size_t rank(const IntMatrix &a)
{
   return column_hermite(a, false).rank();
}

std::vector<IntVector> kernel_basis(const IntMatrix &a)
{
   const ColumnHermite ch = column_hermite(a, true);
   std::vector<IntVector> basis;
   for (std::size_t j = ch.rank(); j < a.cols(); ++j) basis.push_back(ch.transform.column(j));
   return basis;
}

CokernelStructure cokernel_invariants(const IntMatrix &a)
{
   CokernelStructure out;
   const auto factors = smith_invariants(a);
   out.free_rank = a.rows() - factors.size();
   for (const auto &f : factors)
      if (f > 1) out.torsion.push_back(f);
   return out;
}

std::optional<IntVector> solve_in_lattice(const IntVector &x, const std::vector<IntVector> &basis)
{
   for (const auto &b : basis)
      if (b.size() != x.size())
         throw std::invalid_argument("lattice membership: vector of length " + std::to_string(b.size()) +
                                     " against target of length " + std::to_string(x.size()));
   if (basis.empty())
   {
      if (is_zero_vector(x)) return IntVector{};
      return std::nullopt;
   }

   const ColumnHermite ch = column_hermite(IntMatrix::from_columns(basis, x.size()), true);
   IntVector residual = x;
   IntVector y(ch.rank());
   for (std::size_t idx = 0; idx < ch.rank(); ++idx)
   {
      const std::size_t r = ch.pivot_rows[idx];
      const Integer &pivot = ch.h(r, idx);
      if (!mpz_divisible_p(residual[r].get_mpz_t(), pivot.get_mpz_t())) return std::nullopt;
      mpz_divexact(y[idx].get_mpz_t(), residual[r].get_mpz_t(), pivot.get_mpz_t());
      if (sgn(y[idx]) == 0) continue;
      for (std::size_t i = r; i < x.size(); ++i)
         if (sgn(ch.h(i, idx)) != 0) mpz_submul(residual[i].get_mpz_t(), y[idx].get_mpz_t(), ch.h(i, idx).get_mpz_t());
   }
   if (!is_zero_vector(residual)) return std::nullopt;

   IntVector coefficients(basis.size());
   for (std::size_t j = 0; j < basis.size(); ++j)
      for (std::size_t idx = 0; idx < ch.rank(); ++idx)
         if (sgn(y[idx]) != 0) coefficients[j] += ch.transform(j, idx) * y[idx];
   return coefficients;
}

bool lattice_membership(const IntVector &x, const std::vector<IntVector> &basis)
{
   return solve_in_lattice(x, basis).has_value();
}

std::string to_string(const IntVector &x)
{
   std::ostringstream os;
   os << '(';
   for (std::size_t i = 0; i < x.size(); ++i)
   {
      if (i) os << ", ";
      os << x[i].get_str();
   }
   os << ')';
   return os.str();
}

} // namespace treelat
