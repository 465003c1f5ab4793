#ifndef TREELAT_TESTS_SUPPORT_HPP
#define TREELAT_TESTS_SUPPORT_HPP

// Shared fixtures, random complex generators and independent oracles for the
// unit and acceptance suites. Nothing here calls the normal-form code.

#include "treelat/complex.hpp"
#include "treelat/zlinalg.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace treelat::testing {

inline std::string data_path(const std::string &name)
{
   return std::string(TREELAT_DATA_DIR) + "/" + name;
}

inline std::string read_text(const std::string &path)
{
   std::ifstream in(path, std::ios::binary);
   std::ostringstream buffer;
   buffer << in.rdbuf();
   return buffer.str();
}

inline DirectedEdgeRef fwd(const std::string &e) { return {e, false}; }
inline DirectedEdgeRef rev(const std::string &e) { return {e, true}; }

inline DirectedSquare square(DirectedEdgeRef a, DirectedEdgeRef b, DirectedEdgeRef ap, DirectedEdgeRef bp)
{
   DirectedSquare t;
   t.a = std::move(a);
   t.b = std::move(b);
   t.a_prime = std::move(ap);
   t.b_prime = std::move(bp);
   return t;
}

inline SquareComplex torus()
{
   return SquareComplex({"v"}, {{"a", "v", "v"}}, {{"b", "v", "v"}}, {square(fwd("a"), fwd("b"), fwd("a"), fwd("b"))});
}

// Product of two wedges of m and n circles.
inline SquareComplex wedge_product(std::size_t m, std::size_t n)
{
   std::vector<GeometricEdge> h, v;
   for (std::size_t i = 1; i <= m; ++i) h.push_back({"a" + std::to_string(i), "v", "v"});
   for (std::size_t j = 1; j <= n; ++j) v.push_back({"b" + std::to_string(j), "v", "v"});
   std::vector<DirectedSquare> squares;
   for (const auto &a : h)
      for (const auto &b : v) squares.push_back(square(fwd(a.id), fwd(b.id), fwd(a.id), fwd(b.id)));
   return SquareComplex({"v"}, h, v, squares);
}

// ---------------------------------------------------------------------------
// Random valid complexes

struct Graph
{
   std::size_t vertices = 0;
   std::vector<std::pair<std::size_t, std::size_t>> edges;

   // First Betti number of a connected graph.
   long betti1() const { return static_cast<long>(edges.size()) - static_cast<long>(vertices) + 1; }
};

// Connected multigraph with loops: random spanning tree plus extra edges.
inline Graph random_graph(std::mt19937 &rng, std::size_t vertices, std::size_t extra)
{
   Graph g{vertices, {}};
   for (std::size_t v = 1; v < vertices; ++v)
      g.edges.emplace_back(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng), v);
   std::uniform_int_distribution<std::size_t> pick(0, vertices - 1);
   for (std::size_t k = 0; k < extra; ++k) g.edges.emplace_back(pick(rng), pick(rng));
   std::shuffle(g.edges.begin(), g.edges.end(), rng);
   return g;
}

// Cartesian product g1 x g2: horizontal edges from g1, vertical from g2.
inline SquareComplex product_complex(const Graph &g1, const Graph &g2)
{
   auto vname = [](std::size_t u, std::size_t w) { return "u" + std::to_string(u) + "w" + std::to_string(w); };
   auto hname = [](std::size_t e, std::size_t w) { return "h" + std::to_string(e) + "_" + std::to_string(w); };
   auto vedge = [](std::size_t u, std::size_t e) { return "k" + std::to_string(u) + "_" + std::to_string(e); };
   std::vector<std::string> vertices;
   for (std::size_t u = 0; u < g1.vertices; ++u)
      for (std::size_t w = 0; w < g2.vertices; ++w) vertices.push_back(vname(u, w));
   std::vector<GeometricEdge> h, v;
   for (std::size_t e = 0; e < g1.edges.size(); ++e)
      for (std::size_t w = 0; w < g2.vertices; ++w)
         h.push_back({hname(e, w), vname(g1.edges[e].first, w), vname(g1.edges[e].second, w)});
   for (std::size_t u = 0; u < g1.vertices; ++u)
      for (std::size_t e = 0; e < g2.edges.size(); ++e)
         v.push_back({vedge(u, e), vname(u, g2.edges[e].first), vname(u, g2.edges[e].second)});
   std::vector<DirectedSquare> squares;
   for (std::size_t e1 = 0; e1 < g1.edges.size(); ++e1)
      for (std::size_t e2 = 0; e2 < g2.edges.size(); ++e2)
      {
         const auto [o1, t1] = g1.edges[e1];
         const auto [o2, t2] = g2.edges[e2];
         squares.push_back(square(fwd(hname(e1, o2)), fwd(vedge(o1, e2)), fwd(hname(e1, t2)), fwd(vedge(t1, e2))));
      }
   return SquareComplex(vertices, h, v, squares);
}

// One-vertex complex with squares (a, b, sigma_b(a), b): sigma_b is a random
// signed permutation of the m horizontal edges for each vertical edge b.
inline SquareComplex twisted_complex(std::mt19937 &rng, std::size_t m, std::size_t n)
{
   std::vector<GeometricEdge> h, v;
   for (std::size_t i = 0; i < m; ++i) h.push_back({"a" + std::to_string(i + 1), "v", "v"});
   for (std::size_t j = 0; j < n; ++j) v.push_back({"b" + std::to_string(j + 1), "v", "v"});
   std::vector<DirectedSquare> squares;
   std::bernoulli_distribution flip(0.5);
   for (std::size_t j = 0; j < n; ++j)
   {
      std::vector<std::size_t> perm(m);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      std::shuffle(perm.begin(), perm.end(), rng);
      for (std::size_t i = 0; i < m; ++i)
         squares.push_back(square(fwd(h[i].id), fwd(v[j].id), {h[perm[i]].id, flip(rng)}, fwd(v[j].id)));
   }
   return SquareComplex({"v"}, h, v, squares);
}

// Same complex, different presentation: every listed square replaced by a
// random member of its orbit, random edges reversed, squares shuffled.
inline SquareComplex reencode(std::mt19937 &rng, const SquareComplex &c)
{
   std::bernoulli_distribution coin(0.5);
   std::vector<std::string> flipped;
   auto flip_list = [&](std::vector<GeometricEdge> list) {
      for (auto &e : list)
         if (coin(rng))
         {
            std::swap(e.origin, e.terminus);
            flipped.push_back(e.id);
         }
      return list;
   };
   auto h = flip_list(c.h_edges());
   auto v = flip_list(c.v_edges());
   auto fix = [&](DirectedEdgeRef ref) {
      if (std::find(flipped.begin(), flipped.end(), ref.edge) != flipped.end()) ref.reversed = !ref.reversed;
      return ref;
   };
   std::vector<DirectedSquare> squares;
   std::uniform_int_distribution<unsigned> tag(0, 3);
   for (const auto &t : c.squares())
   {
      DirectedSquare s = sigma_act(t, static_cast<SigmaTag>(tag(rng)));
      squares.push_back(square(fix(s.a), fix(s.b), fix(s.a_prime), fix(s.b_prime)));
   }
   std::shuffle(squares.begin(), squares.end(), rng);
   return SquareComplex(c.vertices(), h, v, squares, c.metadata());
}

// ---------------------------------------------------------------------------
// Oracles

// Rank by Gaussian elimination over the rationals.
inline std::size_t rational_rank(const IntMatrix &a)
{
   std::vector<std::vector<mpq_class>> m(a.rows(), std::vector<mpq_class>(a.cols()));
   for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = mpq_class(a(i, j));
   std::size_t rank = 0;
   for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col)
   {
      std::size_t pivot = rank;
      while (pivot < a.rows() && m[pivot][col] == 0) ++pivot;
      if (pivot == a.rows()) continue;
      std::swap(m[pivot], m[rank]);
      for (std::size_t i = rank + 1; i < a.rows(); ++i)
      {
         if (m[i][col] == 0) continue;
         const mpq_class f = m[i][col] / m[rank][col];
         for (std::size_t j = col; j < a.cols(); ++j) m[i][j] -= f * m[rank][j];
      }
      ++rank;
   }
   return rank;
}

// Exact determinant by fraction-free Bareiss elimination.
inline Integer bareiss_determinant(IntMatrix m)
{
   const std::size_t n = m.rows();
   if (n == 0) return 1;
   Integer previous = 1;
   int sign = 1;
   for (std::size_t k = 0; k + 1 < n; ++k)
   {
      if (m(k, k) == 0)
      {
         std::size_t swap = k + 1;
         while (swap < n && m(swap, k) == 0) ++swap;
         if (swap == n) return 0;
         m.swap_rows(k, swap);
         sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i)
         for (std::size_t j = k + 1; j < n; ++j)
         {
            Integer value = m(i, j) * m(k, k) - m(i, k) * m(k, j);
            mpz_divexact(m(i, j).get_mpz_t(), value.get_mpz_t(), previous.get_mpz_t());
         }
      previous = m(k, k);
   }
   return sign * m(n - 1, n - 1);
}

inline IntMatrix random_matrix(std::mt19937 &rng, std::size_t rows, std::size_t cols, long lo, long hi,
                               double zero_bias = 0.0)
{
   IntMatrix m(rows, cols);
   std::uniform_int_distribution<long> entry(lo, hi);
   std::bernoulli_distribution zero(zero_bias);
   for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = zero(rng) ? 0 : entry(rng);
   return m;
}

} // namespace treelat::testing

#endif // TREELAT_TESTS_SUPPORT_HPP
