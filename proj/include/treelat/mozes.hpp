#ifndef TREELAT_MOZES_HPP
#define TREELAT_MOZES_HPP

// One-vertex square complexes of the quaternion lattices for two distinct
// primes p, l = 1 (mod 4), built from integer quaternions of norm p and l
// with odd real part and even imaginary parts.

#include "treelat/complex.hpp"
#include "treelat/zlinalg.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace treelat {

// A construction hypothesis does not hold (user input).
class HypothesisError : public std::runtime_error
{
public:
   using std::runtime_error::runtime_error;
};

// An internal invariant failed; signals a bug rather than bad input.
class InvariantError : public std::logic_error
{
public:
   using std::logic_error::logic_error;
};

struct Quaternion
{
   Integer a0;
   Integer a1;
   Integer a2;
   Integer a3;

   Integer norm() const { return a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3; }
   Quaternion conjugate() const { return {a0, -a1, -a2, -a3}; }
   Quaternion operator-() const { return {-a0, -a1, -a2, -a3}; }

   friend bool operator==(const Quaternion &, const Quaternion &) = default;
};

// Hamilton product.
Quaternion operator*(const Quaternion &x, const Quaternion &y);
// Lexicographic on (a0, a1, a2, a3).
bool operator<(const Quaternion &x, const Quaternion &y);
std::string to_string(const Quaternion &q);

struct GeneratorSet
{
   long prime = 0;
   std::vector<Quaternion> quats;

   std::optional<std::size_t> index_of(const Quaternion &q) const;
   // Position of the conjugate of quats[k].
   std::size_t conjugate_index(std::size_t k) const;
   // Conjugation-pair representative (the lexicographically smaller member).
   bool is_representative(std::size_t k) const;
};

bool is_prime(long n);

// All norm-p quaternions with a0 odd and positive and a1, a2, a3 even, in
// lexicographic order. Throws HypothesisError unless p is a prime = 1 mod 4.
GeneratorSet norm_quaternions(long p);

// x * y == sign * y_tilde * x_tilde with y_tilde in Ql and x_tilde in Qp.
struct SquareRelation
{
   Quaternion y_tilde;
   Quaternion x_tilde;
   int sign = 1;

   friend bool operator==(const SquareRelation &, const SquareRelation &) = default;
};

// Exhaustive search; throws InvariantError unless exactly one solution exists.
SquareRelation solve_square_relation(const Quaternion &x, const Quaternion &y, const GeneratorSet &ql,
                                     const GeneratorSet &qp);

// Relations for every ordered pair, entry i * |Ql| + j for (Qp[i], Ql[j]).
std::vector<SquareRelation> solve_all_relations(const GeneratorSet &qp, const GeneratorSet &ql);
std::vector<SquareRelation> solve_all_relations_serial(const GeneratorSet &qp, const GeneratorSet &ql);

// Throws HypothesisError for p == l or a prime not = 1 mod 4.
SquareComplex generate_mozes_complex(long p, long l);

} // namespace treelat

#endif // TREELAT_MOZES_HPP
