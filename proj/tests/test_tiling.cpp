#include "support.hpp"

#include "treelat/mozes.hpp"
#include "treelat/tiling.hpp"

#include <doctest.h>

using namespace treelat;
using namespace treelat::testing;

namespace {

TilingSystem tiling_of(const SquareComplex &c)
{
   return build_tiling(expand_directed_squares(c), c);
}

std::vector<long> column_sums(const IntMatrix &m)
{
   std::vector<long> out(m.cols(), 0);
   for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out[j] += m(i, j).get_si();
   return out;
}

// Entry-by-entry re-derivation from the edge labels alone.
void check_entries(const TilingSystem &ts)
{
   const auto &r = ts.squares;
   for (std::size_t t = 0; t < r.size(); ++t)
   {
      const DirectedSquare th = sigma_act(r[t], SigmaTag::h);
      const DirectedSquare tv = sigma_act(r[t], SigmaTag::v);
      for (std::size_t s = 0; s < r.size(); ++s)
      {
         const bool h_adjacent = r[s].b == r[t].b_prime && !r[s].same_labels(th);
         const bool v_adjacent = r[s].a == r[t].a_prime && !r[s].same_labels(tv);
         REQUIRE(ts.m1(s, t) == (h_adjacent ? 1 : 0));
         REQUIRE(ts.m2(s, t) == (v_adjacent ? 1 : 0));
      }
   }
}

} // namespace

TEST_CASE("transition matrices of the (5, 13) lattice")
{
   const SquareComplex c = generate_mozes_complex(5, 13);
   const TilingSystem ts = tiling_of(c);
   REQUIRE(ts.size() == 84);
   for (long s : column_sums(ts.m1)) CHECK(s == 5);
   for (long s : column_sums(ts.m2)) CHECK(s == 13);
   CHECK(column_sum_range(ts.m1).min == 5);
   CHECK(column_sum_range(ts.m2).max == 13);

   const IntMatrix stacked = stacked_matrix(ts);
   CHECK(stacked.rows() == 168);
   CHECK(stacked.cols() == 84);
   for (long s : column_sums(stacked)) CHECK(s == (5 - 1) + (13 - 1));

   check_entries(ts);
   CHECK(rank(stacked) == 84 - 11);
   CHECK(rational_rank(stacked) == 84 - 11);
   CHECK(kernel_basis(stacked).size() == 11);
}

TEST_CASE("transition matrices of the torus")
{
   const TilingSystem ts = tiling_of(torus());
   for (long s : column_sums(ts.m1)) CHECK(s == 1);
   for (long s : column_sums(ts.m2)) CHECK(s == 1);
   // t^h shares the edge b'(t) with t but is excluded.
   for (std::size_t t = 0; t < 4; ++t)
   {
      CHECK(ts.m1(sigma_index(t, SigmaTag::h), t) == 0);
      CHECK(ts.m2(sigma_index(t, SigmaTag::v), t) == 0);
   }
   check_entries(ts);
}

TEST_CASE("connectivity")
{
   SUBCASE("(5, 13) lattice: both graphs strongly connected, components expand")
   {
      const SquareComplex c = generate_mozes_complex(5, 13);
      const TilingSystem ts = tiling_of(c);
      const ConnectivityReport conn = connectivity(ts, c);
      CHECK(conn.horizontal.strongly_connected);
      CHECK(conn.vertical.strongly_connected);
      CHECK(conn.horizontal.component_count == 1);
      CHECK(is_irreducible(ts.m1));
      CHECK(is_irreducible(ts.m2));
      REQUIRE(conn.gh_components.size() == 1);
      CHECK(conn.gh_components[0].vertices == 14);
      CHECK(conn.gh_components[0].oriented_edges == 42);
      REQUIRE(conn.gv_components.size() == 1);
      CHECK(conn.gv_components[0].vertices == 6);
      CHECK(conn.components_expand());
   }
   SUBCASE("torus: components do not expand")
   {
      const SquareComplex c = torus();
      const ConnectivityReport conn = connectivity(tiling_of(c), c);
      CHECK_FALSE(conn.horizontal.strongly_connected);
      for (const auto &comp : conn.gh_components)
      {
         CHECK(comp.vertices == 1);
         CHECK(comp.oriented_edges == 1);
      }
      CHECK_FALSE(conn.components_expand());
   }
   SUBCASE("F2 x F2: expanding components but reducible transitions")
   {
      const SquareComplex c = wedge_product(2, 2);
      const ConnectivityReport conn = connectivity(tiling_of(c), c);
      CHECK(conn.components_expand());
      CHECK_FALSE(conn.horizontal.strongly_connected);
      CHECK_FALSE(conn.vertical.strongly_connected);
   }
}

TEST_CASE("K0 rank")
{
   SUBCASE("(5, 13)")
   {
      const SquareComplex c = generate_mozes_complex(5, 13);
      const K0Rank k = k0_rank(tiling_of(c), c);
      CHECK(k.kernel_rank == 11);
      CHECK(k.k0_rank == 22);
      CHECK(k.k1_rank == 22);
      CHECK(k.hypotheses_checked.confirmed());
   }
   SUBCASE("(5, 17)")
   {
      const SquareComplex c = generate_mozes_complex(5, 17);
      const K0Rank k = k0_rank(tiling_of(c), c);
      CHECK(k.kernel_rank == 15);
      CHECK(k.k0_rank == 30);
      CHECK(k.hypotheses_checked.irreducible_lattice);
   }
   SUBCASE("F2 x F2: rank computed, hypotheses not confirmed")
   {
      const SquareComplex c = wedge_product(2, 2);
      const K0Rank k = k0_rank(tiling_of(c), c);
      CHECK(k.kernel_rank == 4);
      CHECK(k.k0_rank == 8);
      CHECK(k.hypotheses_checked.one_vertex);
      CHECK_FALSE(k.hypotheses_checked.irreducible_lattice);
      CHECK_FALSE(k.hypotheses_checked.gh_strongly_connected);
      CHECK_FALSE(k.hypotheses_checked.confirmed());
   }
}

TEST_CASE("tiling properties on random complexes")
{
   std::mt19937 rng(97);
   for (int trial = 0; trial < 40; ++trial)
   {
      const SquareComplex c = trial % 2 == 0
                                 ? twisted_complex(rng, 1 + trial % 5, 1 + (trial / 5) % 4)
                                 : product_complex(random_graph(rng, 1 + trial % 3, trial % 3),
                                                   random_graph(rng, 1 + (trial / 3) % 2, 1 + trial % 2));
      const auto r = expand_directed_squares(c);
      const TilingSystem ts = build_tiling(r, c);
      const TilingSystem reference = build_tiling_serial(r, c);
      REQUIRE(ts.m1 == reference.m1);
      REQUIRE(ts.m2 == reference.m2);
      check_entries(ts);

      // Reflection compatibility: m1 commutes with h, m2 with v.
      for (std::size_t s = 0; s < r.size(); ++s)
         for (std::size_t t = 0; t < r.size(); ++t)
         {
            REQUIRE(ts.m1(s, t) == ts.m1(sigma_index(t, SigmaTag::h), sigma_index(s, SigmaTag::h)));
            REQUIRE(ts.m2(s, t) == ts.m2(sigma_index(t, SigmaTag::v), sigma_index(s, SigmaTag::v)));
         }

      // Tarjan and the reachability test agree.
      for (const IntMatrix *m : {&ts.m1, &ts.m2})
      {
         const auto sccs = strongly_connected_components(transition_digraph(*m));
         REQUIRE((sccs.size() == 1) == is_irreducible(*m));
         std::size_t covered = 0;
         for (const auto &comp : sccs) covered += comp.size();
         REQUIRE(covered == r.size());
      }

      const IntMatrix stacked = stacked_matrix(ts);
      REQUIRE(k0_rank(ts, c).kernel_rank == r.size() - rational_rank(stacked));
   }
}
