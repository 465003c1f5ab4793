#ifndef TREELAT_TILING_HPP
#define TREELAT_TILING_HPP

// Tiling system on directed squares: horizontal/vertical transition matrices,
// the stacked operator (M1 - I; M2 - I), connectivity of the associated graphs
// and the K0/K1 rank read off the stacked kernel.

#include "treelat/complex.hpp"
#include "treelat/zlinalg.hpp"

#include <cstddef>
#include <vector>

namespace treelat {

// Columns index the domain: column t of m1 lists the squares s with t H s,
// i.e. b(s) = b'(t) and s != t^h. Likewise m2 with a(s) = a'(t), s != t^v.
struct TilingSystem
{
   std::vector<DirectedSquare> squares;
   IntMatrix m1;
   IntMatrix m2;

   std::size_t size() const { return squares.size(); }
};

TilingSystem build_tiling(const std::vector<DirectedSquare> &r, const SquareComplex &c);
// Pairwise reference construction, kept for tests and the benchmark.
TilingSystem build_tiling_serial(const std::vector<DirectedSquare> &r, const SquareComplex &c);

// 2|r| x |r| integer matrix [m1 - I; m2 - I].
IntMatrix stacked_matrix(const TilingSystem &ts);

struct ColumnSumRange
{
   long min = 0;
   long max = 0;
};

ColumnSumRange column_sum_range(const IntMatrix &m);

struct AxisConnectivity
{
   bool weakly_connected = false;
   bool strongly_connected = false;
   std::size_t component_count = 0;   // strongly connected components
};

// One connected component C of an edge graph: |C^0| vertices (directed
// edges), |C^1| edges (directed squares) and |C^+| oriented edges.
struct EdgeGraphComponent
{
   std::size_t vertices = 0;
   std::size_t edges = 0;
   std::size_t oriented_edges = 0;

   bool fewer_vertices_than_edges() const { return vertices < oriented_edges; }
};

struct ConnectivityReport
{
   AxisConnectivity horizontal;   // G_h(R), edges from m1
   AxisConnectivity vertical;     // G_v(R), edges from m2
   std::vector<EdgeGraphComponent> gh_components;   // G_h(B): b(t) -- b'(t)
   std::vector<EdgeGraphComponent> gv_components;   // G_v(A): a(t) -- a'(t)

   bool components_expand() const;
};

// Digraph on the columns of m with an arc t -> s whenever m(s, t) != 0.
std::vector<std::vector<std::size_t>> transition_digraph(const IntMatrix &m);
// Tarjan; components in reverse topological order.
std::vector<std::vector<std::size_t>> strongly_connected_components(const std::vector<std::vector<std::size_t>> &graph);
// Irreducibility of a nonnegative square matrix by forward and backward
// reachability from index 0. Independent of the SCC route.
bool is_irreducible(const IntMatrix &m);

ConnectivityReport connectivity(const TilingSystem &ts, const SquareComplex &c);

struct HypothesisFlags
{
   bool one_vertex = false;
   bool irreducible_lattice = false;   // document provenance says so
   bool gh_strongly_connected = false;
   bool gv_strongly_connected = false;

   bool confirmed() const
   {
      return (one_vertex || irreducible_lattice) && gh_strongly_connected && gv_strongly_connected;
   }
};

struct K0Rank
{
   std::size_t kernel_rank = 0;
   std::size_t k0_rank = 0;
   std::size_t k1_rank = 0;
   HypothesisFlags hypotheses_checked;
};

K0Rank k0_rank(const TilingSystem &ts, const SquareComplex &c);
K0Rank k0_rank(const TilingSystem &ts, const SquareComplex &c, const ConnectivityReport &conn);

} // namespace treelat

#endif // TREELAT_TILING_HPP
