#include "support.hpp"

#include "treelat/mozes.hpp"

#include <doctest.h>

#include <set>

using namespace treelat;
using namespace treelat::testing;

namespace {

Quaternion q(long a0, long a1, long a2, long a3)
{
   return {a0, a1, a2, a3};
}

// Brute-force count of the generator set, written without the library.
std::size_t count_generators(long p)
{
   std::size_t count = 0;
   const long bound = p - p % 2;   // even
   for (long a0 = 1; a0 * a0 <= p; a0 += 2)
      for (long a1 = -bound; a1 <= bound; a1 += 2)
         for (long a2 = -bound; a2 <= bound; a2 += 2)
            for (long a3 = -bound; a3 <= bound; a3 += 2)
               if (a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3 == p) ++count;
   return count;
}

} // namespace

TEST_CASE("quaternion arithmetic")
{
   const Quaternion one = q(1, 0, 0, 0), i = q(0, 1, 0, 0), j = q(0, 0, 1, 0), k = q(0, 0, 0, 1);
   CHECK(i * j == k);
   CHECK(j * k == i);
   CHECK(k * i == j);
   CHECK(j * i == -k);
   CHECK(i * i == -one);
   const Quaternion x = q(1, 2, -2, 0);
   CHECK(x * x.conjugate() == q(9, 0, 0, 0));
   CHECK(x.norm() == 9);
   CHECK(to_string(q(1, 2, 0, -2)) == "1+2i-2k");
   CHECK(q(1, -2, 0, 0) < q(1, 0, -2, 0));
}

TEST_CASE("generator sets")
{
   SUBCASE("p = 5")
   {
      const GeneratorSet g = norm_quaternions(5);
      const std::vector<Quaternion> expected{q(1, -2, 0, 0), q(1, 0, -2, 0), q(1, 0, 0, -2),
                                             q(1, 0, 0, 2),  q(1, 0, 2, 0),  q(1, 2, 0, 0)};
      CHECK(g.quats == expected);
      CHECK(g.conjugate_index(0) == 5);
      CHECK(g.conjugate_index(2) == 3);
      CHECK(g.is_representative(0));
      CHECK_FALSE(g.is_representative(5));
   }
   SUBCASE("p = 13")
   {
      const GeneratorSet g = norm_quaternions(13);
      REQUIRE(g.quats.size() == 14);
      for (const auto &x : g.quats)
      {
         CHECK(x.norm() == 13);
         CHECK(x.a0 > 0);
         CHECK(mpz_odd_p(x.a0.get_mpz_t()));
      }
      CHECK(std::is_sorted(g.quats.begin(), g.quats.end()));
      CHECK(g.index_of(q(3, 2, 0, 0)).has_value());
      CHECK_FALSE(g.index_of(q(3, 0, 0, 0)).has_value());
   }
   for (long p : {5L, 13L, 17L, 29L, 37L, 41L})
   {
      CAPTURE(p);
      CHECK(norm_quaternions(p).quats.size() == static_cast<std::size_t>(p + 1));
      CHECK(count_generators(p) == static_cast<std::size_t>(p + 1));
   }
   CHECK_THROWS_AS(norm_quaternions(3), HypothesisError);
   CHECK_THROWS_AS(norm_quaternions(7), HypothesisError);
   CHECK_THROWS_AS(norm_quaternions(9), HypothesisError);
   CHECK_THROWS_AS(norm_quaternions(1), HypothesisError);
   CHECK(is_prime(13));
   CHECK_FALSE(is_prime(21));
}

TEST_CASE("square relations")
{
   const GeneratorSet qp = norm_quaternions(5);
   const GeneratorSet ql = norm_quaternions(13);

   SUBCASE("commuting pair")
   {
      const SquareRelation rel = solve_square_relation(q(1, 2, 0, 0), q(3, 2, 0, 0), ql, qp);
      CHECK(rel == SquareRelation{q(3, 2, 0, 0), q(1, 2, 0, 0), 1});
   }
   SUBCASE("non-commuting pair")
   {
      // (1+2i)(3+2j) = 3 + 6i + 2j + 4k = -(1-2i+2j-2k)(1-2k).
      const SquareRelation rel = solve_square_relation(q(1, 2, 0, 0), q(3, 0, 2, 0), ql, qp);
      CHECK(rel == SquareRelation{q(1, -2, 2, -2), q(1, 0, 0, -2), -1});
      CHECK(q(1, 2, 0, 0) * q(3, 0, 2, 0) == q(3, 6, 2, 4));
   }
   SUBCASE("norm mismatch")
   {
      CHECK_THROWS_AS(solve_square_relation(q(3, 2, 0, 0), q(1, 2, 0, 0), ql, qp), std::invalid_argument);
   }
   SUBCASE("all pairs: unique solutions, parallel equals serial")
   {
      const auto all = solve_all_relations(qp, ql);
      REQUIRE(all.size() == 84);
      CHECK(all == solve_all_relations_serial(qp, ql));
      std::set<std::pair<std::size_t, std::size_t>> targets;
      for (std::size_t i = 0; i < qp.quats.size(); ++i)
         for (std::size_t j = 0; j < ql.quats.size(); ++j)
         {
            const SquareRelation &rel = all[i * ql.quats.size() + j];
            const Quaternion lhs = qp.quats[i] * ql.quats[j];
            const Quaternion rhs = rel.y_tilde * rel.x_tilde;
            REQUIRE((rel.sign == 1 ? rhs : -rhs) == lhs);
            targets.emplace(*qp.index_of(rel.x_tilde), *ql.index_of(rel.y_tilde));
         }
      // (x, y) -> (x~, y~) is a bijection of Qp x Ql.
      CHECK(targets.size() == 84);
   }
}

TEST_CASE("generated complexes")
{
   CHECK_THROWS_AS(generate_mozes_complex(5, 5), HypothesisError);
   CHECK_THROWS_AS(generate_mozes_complex(3, 5), HypothesisError);

   const SquareComplex c = generate_mozes_complex(5, 17);
   CHECK(c.h_edges().size() == 3);
   CHECK(c.v_edges().size() == 9);
   CHECK(c.squares().size() == 27);
   CHECK(expand_directed_squares(c).size() == 108);
   CHECK(c.metadata()["p"] == 5);
   CHECK(c.metadata()["l"] == 17);
   const ValidationReport report = validate_vht(c);
   CHECK(report.ok());
   CHECK(report.warnings.empty());
   REQUIRE(report.degrees.size() == 1);
   CHECK(report.degrees[0].horizontal == 6);
   CHECK(report.degrees[0].vertical == 18);

   // Deterministic output.
   CHECK(serialize_complex(generate_mozes_complex(5, 13)) == serialize_complex(generate_mozes_complex(5, 13)));
   CHECK(serialize_complex(generate_mozes_complex(5, 13)) == read_text(data_path("mozes_5_13.json")));

   // Swapping the primes swaps the roles of the axes.
   const SquareComplex swapped = generate_mozes_complex(13, 5);
   CHECK(swapped.h_edges().size() == 7);
   CHECK(swapped.v_edges().size() == 3);
   CHECK(swapped.squares().size() == 21);
}
