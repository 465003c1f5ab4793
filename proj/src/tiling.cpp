#include "treelat/tiling.hpp"

#include "treelat/parallel.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace treelat {

namespace {

void check_sizes(const std::vector<DirectedSquare> &r)
{
   if (r.size() % 4 != 0) throw std::invalid_argument("directed square list length must be a multiple of 4");
}

} // namespace

TilingSystem build_tiling(const std::vector<DirectedSquare> &r, const SquareComplex &c)
{
   check_sizes(r);
   const auto cs = compact_squares(c, r);
   const std::size_t n = r.size();

   // Squares grouped by their left (resp. bottom) directed edge.
   std::vector<std::vector<std::size_t>> by_b(2 * c.v_edges().size());
   std::vector<std::vector<std::size_t>> by_a(2 * c.h_edges().size());
   for (std::size_t s = 0; s < n; ++s)
   {
      by_b[cs[s].b].push_back(s);
      by_a[cs[s].a].push_back(s);
   }

   TilingSystem ts{r, IntMatrix(n, n), IntMatrix(n, n)};
   par::for_each_index(n, [&](std::size_t t) {
      for (std::size_t s : by_b[cs[t].b_prime])
         if (s != sigma_index(t, SigmaTag::h)) ts.m1(s, t) = 1;
      for (std::size_t s : by_a[cs[t].a_prime])
         if (s != sigma_index(t, SigmaTag::v)) ts.m2(s, t) = 1;
   });
   return ts;
}

TilingSystem build_tiling_serial(const std::vector<DirectedSquare> &r, [[maybe_unused]] const SquareComplex &c)
{
   check_sizes(r);
   const std::size_t n = r.size();
   TilingSystem ts{r, IntMatrix(n, n), IntMatrix(n, n)};
   for (std::size_t t = 0; t < n; ++t)
   {
      const DirectedSquare th = sigma_act(r[t], SigmaTag::h);
      const DirectedSquare tv = sigma_act(r[t], SigmaTag::v);
      for (std::size_t s = 0; s < n; ++s)
      {
         if (r[s].b == r[t].b_prime && !r[s].same_labels(th)) ts.m1(s, t) = 1;
         if (r[s].a == r[t].a_prime && !r[s].same_labels(tv)) ts.m2(s, t) = 1;
      }
   }
   return ts;
}

IntMatrix stacked_matrix(const TilingSystem &ts)
{
   const IntMatrix id = IntMatrix::identity(ts.size());
   return vstack(ts.m1 - id, ts.m2 - id);
}

ColumnSumRange column_sum_range(const IntMatrix &m)
{
   if (m.cols() == 0) return {};
   ColumnSumRange range{std::numeric_limits<long>::max(), std::numeric_limits<long>::min()};
   for (std::size_t j = 0; j < m.cols(); ++j)
   {
      Integer sum = 0;
      for (std::size_t i = 0; i < m.rows(); ++i) sum += m(i, j);
      range.min = std::min(range.min, sum.get_si());
      range.max = std::max(range.max, sum.get_si());
   }
   return range;
}

bool ConnectivityReport::components_expand() const
{
   auto expands = [](const std::vector<EdgeGraphComponent> &list) {
      return std::all_of(list.begin(), list.end(), [](const auto &comp) { return comp.fewer_vertices_than_edges(); });
   };
   return expands(gh_components) && expands(gv_components);
}

std::vector<std::vector<std::size_t>> transition_digraph(const IntMatrix &m)
{
   std::vector<std::vector<std::size_t>> graph(m.cols());
   for (std::size_t t = 0; t < m.cols(); ++t)
      for (std::size_t s = 0; s < m.rows(); ++s)
         if (sgn(m(s, t)) != 0) graph[t].push_back(s);
   return graph;
}

std::vector<std::vector<std::size_t>> strongly_connected_components(const std::vector<std::vector<std::size_t>> &graph)
{
   constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
   const std::size_t n = graph.size();
   std::vector<std::size_t> index(n, unvisited), low(n, 0);
   std::vector<bool> on_stack(n, false);
   std::vector<std::size_t> stack;
   std::vector<std::vector<std::size_t>> components;
   std::size_t counter = 0;

   // Explicit call stack: (vertex, next successor position).
   std::vector<std::pair<std::size_t, std::size_t>> frames;
   for (std::size_t root = 0; root < n; ++root)
   {
      if (index[root] != unvisited) continue;
      frames.emplace_back(root, 0);
      index[root] = low[root] = counter++;
      stack.push_back(root);
      on_stack[root] = true;
      while (!frames.empty())
      {
         auto &[v, next] = frames.back();
         if (next < graph[v].size())
         {
            const std::size_t w = graph[v][next++];
            if (index[w] == unvisited)
            {
               index[w] = low[w] = counter++;
               stack.push_back(w);
               on_stack[w] = true;
               frames.emplace_back(w, 0);
            }
            else if (on_stack[w])
               low[v] = std::min(low[v], index[w]);
            continue;
         }
         const std::size_t done = v;
         frames.pop_back();
         if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
         if (low[done] == index[done])
         {
            std::vector<std::size_t> comp;
            std::size_t w;
            do
            {
               w = stack.back();
               stack.pop_back();
               on_stack[w] = false;
               comp.push_back(w);
            } while (w != done);
            std::sort(comp.begin(), comp.end());
            components.push_back(std::move(comp));
         }
      }
   }
   return components;
}

bool is_irreducible(const IntMatrix &m)
{
   const std::size_t n = m.rows();
   if (m.cols() != n) throw std::invalid_argument("is_irreducible: matrix must be square");
   if (n == 0) return false;
   auto reaches_all = [&](bool forward) {
      std::vector<bool> seen(n, false);
      std::vector<std::size_t> queue{0};
      seen[0] = true;
      for (std::size_t head = 0; head < queue.size(); ++head)
      {
         const std::size_t x = queue[head];
         for (std::size_t y = 0; y < n; ++y)
         {
            const Integer &entry = forward ? m(y, x) : m(x, y);
            if (!seen[y] && sgn(entry) != 0)
            {
               seen[y] = true;
               queue.push_back(y);
            }
         }
      }
      return queue.size() == n;
   };
   return reaches_all(true) && reaches_all(false);
}

namespace {

std::size_t find_root(std::vector<std::size_t> &parent, std::size_t x)
{
   while (parent[x] != x) x = parent[x] = parent[parent[x]];
   return x;
}

AxisConnectivity axis_connectivity(const IntMatrix &m)
{
   AxisConnectivity out;
   const auto graph = transition_digraph(m);
   const auto sccs = strongly_connected_components(graph);
   out.component_count = sccs.size();
   out.strongly_connected = sccs.size() == 1;

   std::vector<std::size_t> parent(graph.size());
   std::iota(parent.begin(), parent.end(), std::size_t{0});
   for (std::size_t t = 0; t < graph.size(); ++t)
      for (std::size_t s : graph[t]) parent[find_root(parent, s)] = find_root(parent, t);
   std::size_t roots = 0;
   for (std::size_t t = 0; t < graph.size(); ++t) roots += find_root(parent, t) == t ? 1 : 0;
   out.weakly_connected = roots == 1;
   return out;
}

// Components of the graph on `vertex_count` directed edges whose edges are
// the directed squares t, joining from(t) to to(t). The reflection `pair`
// swaps the ends, so t and pair·t are one geometric edge; the orientation
// keeps the tags 1 and pair·v·h.
template <typename From, typename To>
std::vector<EdgeGraphComponent> edge_graph_components(std::size_t vertex_count, const std::vector<DirectedSquare> &r,
                                                      const std::vector<CompactSquare> &cs, SigmaTag pair, From from,
                                                      To to)
{
   std::vector<std::size_t> parent(vertex_count);
   std::iota(parent.begin(), parent.end(), std::size_t{0});
   for (const auto &t : cs) parent[find_root(parent, from(t))] = find_root(parent, to(t));

   std::vector<std::size_t> slot(vertex_count, vertex_count);
   std::vector<EdgeGraphComponent> out;
   for (std::size_t x = 0; x < vertex_count; ++x)
   {
      const std::size_t root = find_root(parent, x);
      if (slot[root] == vertex_count)
      {
         slot[root] = out.size();
         out.emplace_back();
      }
      ++out[slot[root]].vertices;
   }
   for (std::size_t i = 0; i < cs.size(); ++i)
   {
      auto &comp = out[slot[find_root(parent, from(cs[i]))]];
      ++comp.edges;
      if (r[i].sigma_tag == SigmaTag::identity || r[i].sigma_tag == compose(pair, SigmaTag::vh)) ++comp.oriented_edges;
   }
   return out;
}

} // namespace

ConnectivityReport connectivity(const TilingSystem &ts, const SquareComplex &c)
{
   ConnectivityReport report;
   report.horizontal = axis_connectivity(ts.m1);
   report.vertical = axis_connectivity(ts.m2);
   const auto cs = compact_squares(c, ts.squares);
   report.gh_components = edge_graph_components(
      2 * c.v_edges().size(), ts.squares, cs, SigmaTag::h, [](const CompactSquare &t) { return t.b; },
      [](const CompactSquare &t) { return t.b_prime; });
   report.gv_components = edge_graph_components(
      2 * c.h_edges().size(), ts.squares, cs, SigmaTag::v, [](const CompactSquare &t) { return t.a; },
      [](const CompactSquare &t) { return t.a_prime; });
   return report;
}

K0Rank k0_rank(const TilingSystem &ts, const SquareComplex &c, const ConnectivityReport &conn)
{
   K0Rank out;
   out.kernel_rank = ts.size() - rank(stacked_matrix(ts));
   out.k0_rank = 2 * out.kernel_rank;
   out.k1_rank = out.k0_rank;
   auto &flags = out.hypotheses_checked;
   flags.one_vertex = c.vertices().size() == 1;
   const auto &meta = c.metadata();
   flags.irreducible_lattice =
      meta.is_object() && meta.contains("construction") && meta["construction"] == "mozes";
   flags.gh_strongly_connected = conn.horizontal.strongly_connected;
   flags.gv_strongly_connected = conn.vertical.strongly_connected;
   return out;
}

K0Rank k0_rank(const TilingSystem &ts, const SquareComplex &c)
{
   return k0_rank(ts, c, connectivity(ts, c));
}

} // namespace treelat
