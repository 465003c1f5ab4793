#include "treelat/complex.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace treelat {

std::string_view axis_name(Axis axis)
{
   return axis == Axis::horizontal ? "horizontal" : "vertical";
}

std::string_view sigma_name(SigmaTag tag)
{
   switch (tag)
   {
   case SigmaTag::identity: return "1";
   case SigmaTag::v: return "v";
   case SigmaTag::h: return "h";
   case SigmaTag::vh: return "vh";
   }
   return "?";
}

std::string to_string(const DirectedEdgeRef &ref)
{
   return ref.reversed ? ref.edge + "^-1" : ref.edge;
}

std::string to_string(const DirectedSquare &t)
{
   return "(" + to_string(t.a) + ", " + to_string(t.b) + ", " + to_string(t.a_prime) + ", " +
          to_string(t.b_prime) + ")";
}

DirectedSquare sigma_act(const DirectedSquare &t, SigmaTag g)
{
   DirectedSquare out = t;
   switch (g)
   {
   case SigmaTag::identity:
      break;
   case SigmaTag::v:
      out.a = t.a_prime;
      out.b = t.b.reversal();
      out.a_prime = t.a;
      out.b_prime = t.b_prime.reversal();
      break;
   case SigmaTag::h:
      out.a = t.a.reversal();
      out.b = t.b_prime;
      out.a_prime = t.a_prime.reversal();
      out.b_prime = t.b;
      break;
   case SigmaTag::vh:
      out.a = t.a_prime.reversal();
      out.b = t.b_prime.reversal();
      out.a_prime = t.a.reversal();
      out.b_prime = t.b.reversal();
      break;
   }
   out.sigma_tag = compose(t.sigma_tag, g);
   return out;
}

SquareComplex::SquareComplex(std::vector<std::string> vertices, std::vector<GeometricEdge> h_edges,
                             std::vector<GeometricEdge> v_edges, std::vector<DirectedSquare> squares,
                             ordered_json metadata)
   : vertices_(std::move(vertices)), h_edges_(std::move(h_edges)), v_edges_(std::move(v_edges)),
     squares_(std::move(squares)), metadata_(std::move(metadata))
{
   for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (!vertex_lookup_.emplace(vertices_[i], i).second)
         throw ComplexError("duplicate vertex id \"" + vertices_[i] + "\"");

   for (Axis axis : {Axis::horizontal, Axis::vertical})
   {
      const auto &list = edges(axis);
      for (std::size_t k = 0; k < list.size(); ++k)
      {
         const GeometricEdge &e = list[k];
         if (!edge_lookup_.emplace(e.id, std::pair{axis, k}).second)
            throw ComplexError("duplicate edge id \"" + e.id + "\"");
         for (const std::string *end : {&e.origin, &e.terminus})
            if (!vertex_lookup_.contains(*end))
               throw ComplexError("edge \"" + e.id + "\": unknown vertex \"" + *end + "\"");
      }
      auto &deg = degree_[static_cast<std::size_t>(axis)];
      deg.assign(vertices_.size(), 0);
      for (const GeometricEdge &e : list)
      {
         ++deg[vertex_lookup_.at(e.origin)];
         ++deg[vertex_lookup_.at(e.terminus)];
      }
   }

   for (std::size_t k = 0; k < squares_.size(); ++k)
   {
      DirectedSquare &t = squares_[k];
      t.orbit_id = k;
      t.sigma_tag = SigmaTag::identity;
      const std::string where = "square #" + std::to_string(k) + " " + to_string(t);
      const std::pair<const DirectedEdgeRef *, Axis> roles[] = {
         {&t.a, Axis::horizontal}, {&t.b, Axis::vertical}, {&t.a_prime, Axis::horizontal}, {&t.b_prime, Axis::vertical}};
      static constexpr const char *role_names[] = {"a", "b", "a_prime", "b_prime"};
      for (std::size_t r = 0; r < 4; ++r)
      {
         auto it = edge_lookup_.find(roles[r].first->edge);
         if (it == edge_lookup_.end())
            throw ComplexError(where + ": unknown edge \"" + roles[r].first->edge + "\"");
         if (it->second.first != roles[r].second)
            throw ComplexError(where + ": wrong edge role, " + role_names[r] + " must be a " +
                               std::string(axis_name(roles[r].second)) + " edge but \"" + roles[r].first->edge +
                               "\" is " + std::string(axis_name(it->second.first)));
      }
      auto corner = [&](bool holds, const char *what) {
         if (!holds) throw ComplexError(where + ": corner incidence fails, " + what);
      };
      corner(origin(t.a) == origin(t.b), "o(a) != o(b)");
      corner(terminus(t.a) == origin(t.b_prime), "t(a) != o(b')");
      corner(terminus(t.b) == origin(t.a_prime), "t(b) != o(a')");
      corner(terminus(t.a_prime) == terminus(t.b_prime), "t(a') != t(b')");
   }
}

std::size_t SquareComplex::vertex_index(const std::string &id) const
{
   auto it = vertex_lookup_.find(id);
   if (it == vertex_lookup_.end()) throw ComplexError("unknown vertex \"" + id + "\"");
   return it->second;
}

Axis SquareComplex::edge_axis(const std::string &edge_id) const
{
   auto it = edge_lookup_.find(edge_id);
   if (it == edge_lookup_.end()) throw ComplexError("unknown edge \"" + edge_id + "\"");
   return it->second.first;
}

std::size_t SquareComplex::edge_position(const std::string &edge_id) const
{
   auto it = edge_lookup_.find(edge_id);
   if (it == edge_lookup_.end()) throw ComplexError("unknown edge \"" + edge_id + "\"");
   return it->second.second;
}

std::size_t SquareComplex::directed_index(const DirectedEdgeRef &ref) const
{
   return 2 * edge_position(ref.edge) + (ref.reversed ? 1 : 0);
}

DirectedEdgeRef SquareComplex::directed_ref(Axis axis, std::size_t directed) const
{
   return {edges(axis).at(directed / 2).id, (directed & 1U) != 0};
}

std::size_t SquareComplex::origin(const DirectedEdgeRef &ref) const
{
   const auto &[axis, k] = edge_lookup_.at(ref.edge);
   const GeometricEdge &e = edges(axis)[k];
   return vertex_lookup_.at(ref.reversed ? e.terminus : e.origin);
}

std::size_t SquareComplex::terminus(const DirectedEdgeRef &ref) const
{
   return origin(ref.reversal());
}

std::size_t SquareComplex::origin(Axis axis, std::size_t directed) const
{
   const GeometricEdge &e = edges(axis).at(directed / 2);
   return vertex_lookup_.at((directed & 1U) ? e.terminus : e.origin);
}

std::size_t SquareComplex::degree(Axis axis, std::size_t vertex) const
{
   return degree_[static_cast<std::size_t>(axis)].at(vertex);
}

CompactSquare SquareComplex::compact(const DirectedSquare &t) const
{
   return {directed_index(t.a), directed_index(t.b), directed_index(t.a_prime), directed_index(t.b_prime)};
}

// ---------------------------------------------------------------------------
// Document format

namespace {

[[noreturn]] void malformed(const std::string &what)
{
   throw ComplexError("malformed document: " + what);
}

void expect_keys(const ordered_json &obj, const std::string &where, std::initializer_list<const char *> required,
                 std::initializer_list<const char *> optional = {})
{
   if (!obj.is_object()) malformed(where + " must be an object");
   for (const char *key : required)
      if (!obj.contains(key)) malformed(where + " lacks key \"" + key + "\"");
   for (const auto &item : obj.items())
   {
      const bool known = std::any_of(required.begin(), required.end(), [&](const char *k) { return item.key() == k; }) ||
                         std::any_of(optional.begin(), optional.end(), [&](const char *k) { return item.key() == k; });
      if (!known) malformed(where + " has unknown key \"" + item.key() + "\"");
   }
}

std::string expect_string(const ordered_json &value, const std::string &where)
{
   if (!value.is_string()) malformed(where + " must be a string");
   return value.get<std::string>();
}

const ordered_json &expect_array(const ordered_json &value, const std::string &where)
{
   if (!value.is_array()) malformed(where + " must be an array");
   return value;
}

std::vector<GeometricEdge> parse_edges(const ordered_json &list, const std::string &key)
{
   std::vector<GeometricEdge> out;
   for (std::size_t k = 0; k < expect_array(list, key).size(); ++k)
   {
      const std::string where = key + "[" + std::to_string(k) + "]";
      const auto &e = list[k];
      expect_keys(e, where, {"id", "origin", "terminus"});
      out.push_back({expect_string(e["id"], where + ".id"), expect_string(e["origin"], where + ".origin"),
                     expect_string(e["terminus"], where + ".terminus")});
   }
   return out;
}

DirectedEdgeRef parse_ref(const ordered_json &value, const std::string &where)
{
   expect_keys(value, where, {"edge", "reversed"});
   if (!value["reversed"].is_boolean()) malformed(where + ".reversed must be a boolean");
   return {expect_string(value["edge"], where + ".edge"), value["reversed"].get<bool>()};
}

ordered_json ref_json(const DirectedEdgeRef &ref)
{
   ordered_json out;
   out["edge"] = ref.edge;
   out["reversed"] = ref.reversed;
   return out;
}

} // namespace

SquareComplex load_complex(std::string_view text)
{
   ordered_json doc;
   try
   {
      doc = ordered_json::parse(text.begin(), text.end());
   }
   catch (const ordered_json::parse_error &e)
   {
      malformed(e.what());
   }
   expect_keys(doc, "document", {"vertices", "horizontal_edges", "vertical_edges", "squares"}, {"metadata"});

   std::vector<std::string> vertices;
   for (std::size_t k = 0; k < expect_array(doc["vertices"], "vertices").size(); ++k)
      vertices.push_back(expect_string(doc["vertices"][k], "vertices[" + std::to_string(k) + "]"));

   auto h_edges = parse_edges(doc["horizontal_edges"], "horizontal_edges");
   auto v_edges = parse_edges(doc["vertical_edges"], "vertical_edges");

   std::vector<DirectedSquare> squares;
   const auto &list = expect_array(doc["squares"], "squares");
   for (std::size_t k = 0; k < list.size(); ++k)
   {
      const std::string where = "squares[" + std::to_string(k) + "]";
      expect_keys(list[k], where, {"a", "b", "a_prime", "b_prime"});
      DirectedSquare t;
      t.a = parse_ref(list[k]["a"], where + ".a");
      t.b = parse_ref(list[k]["b"], where + ".b");
      t.a_prime = parse_ref(list[k]["a_prime"], where + ".a_prime");
      t.b_prime = parse_ref(list[k]["b_prime"], where + ".b_prime");
      squares.push_back(std::move(t));
   }

   ordered_json metadata = nullptr;
   if (doc.contains("metadata"))
   {
      if (!doc["metadata"].is_object()) malformed("metadata must be an object");
      metadata = doc["metadata"];
   }
   return SquareComplex(std::move(vertices), std::move(h_edges), std::move(v_edges), std::move(squares),
                        std::move(metadata));
}

SquareComplex load_complex_file(const std::string &path)
{
   std::ifstream in(path, std::ios::binary);
   if (!in) throw std::runtime_error("cannot open " + path);
   std::ostringstream buffer;
   buffer << in.rdbuf();
   return load_complex(buffer.str());
}

ordered_json to_json(const SquareComplex &c)
{
   ordered_json doc;
   doc["vertices"] = c.vertices();
   for (Axis axis : {Axis::horizontal, Axis::vertical})
   {
      ordered_json list = ordered_json::array();
      for (const auto &e : c.edges(axis))
      {
         ordered_json item;
         item["id"] = e.id;
         item["origin"] = e.origin;
         item["terminus"] = e.terminus;
         list.push_back(std::move(item));
      }
      doc[axis == Axis::horizontal ? "horizontal_edges" : "vertical_edges"] = std::move(list);
   }
   ordered_json squares = ordered_json::array();
   for (const auto &t : c.squares())
   {
      ordered_json item;
      item["a"] = ref_json(t.a);
      item["b"] = ref_json(t.b);
      item["a_prime"] = ref_json(t.a_prime);
      item["b_prime"] = ref_json(t.b_prime);
      squares.push_back(std::move(item));
   }
   doc["squares"] = std::move(squares);
   if (!c.metadata().is_null()) doc["metadata"] = c.metadata();
   return doc;
}

std::string serialize_complex(const SquareComplex &c)
{
   return to_json(c).dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::degree_hypothesis() const
{
   return std::all_of(degrees.begin(), degrees.end(),
                      [](const VertexDegree &d) { return d.horizontal >= 3 && d.vertical >= 3; });
}

bool ValidationReport::has_error(std::string_view kind) const
{
   return std::any_of(errors.begin(), errors.end(), [&](const Diagnostic &d) { return d.kind == kind; });
}

bool ValidationReport::has_warning(std::string_view kind) const
{
   return std::any_of(warnings.begin(), warnings.end(), [&](const Diagnostic &d) { return d.kind == kind; });
}

namespace {

std::vector<DirectedSquare> expand_unchecked(const SquareComplex &c)
{
   std::vector<DirectedSquare> r;
   r.reserve(4 * c.squares().size());
   for (const auto &t : c.squares())
      for (SigmaTag g : {SigmaTag::identity, SigmaTag::v, SigmaTag::h, SigmaTag::vh}) r.push_back(sigma_act(t, g));
   return r;
}

std::vector<std::string> degenerate_reflections(const DirectedSquare &t)
{
   std::vector<std::string> fixed;
   for (SigmaTag g : {SigmaTag::v, SigmaTag::h, SigmaTag::vh})
      if (sigma_act(t, g).same_labels(t)) fixed.emplace_back(sigma_name(g));
   return fixed;
}

std::size_t find_root(std::vector<std::size_t> &parent, std::size_t x)
{
   while (parent[x] != x) x = parent[x] = parent[parent[x]];
   return x;
}

} // namespace

ValidationReport validate_vht(const SquareComplex &c)
{
   ValidationReport report;
   const auto &vertices = c.vertices();

   for (std::size_t v = 0; v < vertices.size(); ++v)
   {
      VertexDegree d{vertices[v], c.degree(Axis::horizontal, v), c.degree(Axis::vertical, v)};
      if (d.horizontal < 3)
         report.warnings.push_back({"low_degree", "horizontal degree " + std::to_string(d.horizontal) + " < 3 at " +
                                                     vertices[v]});
      if (d.vertical < 3)
         report.warnings.push_back({"low_degree", "vertical degree " + std::to_string(d.vertical) + " < 3 at " +
                                                     vertices[v]});
      report.degrees.push_back(std::move(d));
   }

   for (std::size_t k = 0; k < c.squares().size(); ++k)
   {
      const DirectedSquare &t = c.squares()[k];
      const auto fixed = degenerate_reflections(t);
      for (const auto &g : fixed)
         report.errors.push_back({"sigma_orbit_degenerate", "square #" + std::to_string(k) + " " + to_string(t) +
                                                               " is fixed by the reflection " + g});
      // The half-turn identifies a with the reverse of a' and b with the
      // reverse of b', so the deck transformation inverts both edges.
      if (std::find(fixed.begin(), fixed.end(), "vh") != fixed.end())
         report.errors.push_back({"edge_inversion", "square #" + std::to_string(k) + " " + to_string(t) +
                                                       " forces a' = reverse(a) and b' = reverse(b)"});
   }

   // Link condition: t -> (a(t), b(t)) must biject onto incident pairs.
   const auto r = expand_unchecked(c);
   const std::size_t nh = 2 * c.h_edges().size();
   const std::size_t nv = 2 * c.v_edges().size();
   std::vector<std::vector<std::size_t>> cover(nh * nv);
   for (std::size_t i = 0; i < r.size(); ++i)
      cover[c.directed_index(r[i].a) * nv + c.directed_index(r[i].b)].push_back(i);
   for (std::size_t a = 0; a < nh; ++a)
      for (std::size_t b = 0; b < nv; ++b)
      {
         const std::size_t vertex = c.origin(Axis::horizontal, a);
         if (vertex != c.origin(Axis::vertical, b)) continue;
         const auto &hits = cover[a * nv + b];
         const std::string pair = "corner (" + to_string(c.directed_ref(Axis::horizontal, a)) + ", " +
                                  to_string(c.directed_ref(Axis::vertical, b)) + ") at " + vertices[vertex];
         if (hits.empty())
            report.errors.push_back({"link_uncovered", pair + " is not covered by any directed square"});
         else if (hits.size() > 1)
         {
            std::string owners;
            for (std::size_t i : hits)
               owners += (owners.empty() ? "" : ", ") + std::string("#") + std::to_string(i / 4) + "^" +
                         std::string(sigma_name(r[i].sigma_tag));
            report.errors.push_back({"link_multiple", pair + " is covered " + std::to_string(hits.size()) +
                                                         " times (squares " + owners + ")"});
         }
      }

   std::vector<std::size_t> parent(vertices.size());
   std::iota(parent.begin(), parent.end(), std::size_t{0});
   for (Axis axis : {Axis::horizontal, Axis::vertical})
      for (const auto &e : c.edges(axis))
         parent[find_root(parent, c.vertex_index(e.origin))] = find_root(parent, c.vertex_index(e.terminus));
   std::set<std::size_t> roots;
   for (std::size_t v = 0; v < vertices.size(); ++v) roots.insert(find_root(parent, v));
   report.connected = roots.size() == 1;
   if (vertices.empty())
      report.errors.push_back({"disconnected", "complex has no vertices"});
   else if (!report.connected)
      report.errors.push_back({"disconnected", "complex has " + std::to_string(roots.size()) + " connected components"});

   return report;
}

std::vector<DirectedSquare> expand_directed_squares(const SquareComplex &c)
{
   for (std::size_t k = 0; k < c.squares().size(); ++k)
   {
      const auto fixed = degenerate_reflections(c.squares()[k]);
      if (!fixed.empty())
         throw ComplexError("square #" + std::to_string(k) + " " + to_string(c.squares()[k]) +
                            " has a degenerate reflection orbit (fixed by " + fixed.front() + ")");
   }
   return expand_unchecked(c);
}

std::vector<CompactSquare> compact_squares(const SquareComplex &c, const std::vector<DirectedSquare> &r)
{
   std::vector<CompactSquare> out;
   out.reserve(r.size());
   for (const auto &t : r) out.push_back(c.compact(t));
   return out;
}

} // namespace treelat
