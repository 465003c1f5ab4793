#ifndef TREELAT_COMPLEX_HPP
#define TREELAT_COMPLEX_HPP

// Finite VH-T square complexes: data model, JSON document format, validation
// and the expansion of geometric squares into directed squares.

#include <json.hpp>

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace treelat {

using ordered_json = nlohmann::ordered_json;

// Structural failure while loading or assembling a complex.
class ComplexError : public std::runtime_error
{
public:
   using std::runtime_error::runtime_error;
};

enum class Axis { horizontal, vertical };

std::string_view axis_name(Axis axis);

struct GeometricEdge
{
   std::string id;
   std::string origin;
   std::string terminus;

   friend bool operator==(const GeometricEdge &, const GeometricEdge &) = default;
};

struct DirectedEdgeRef
{
   std::string edge;
   bool reversed = false;

   DirectedEdgeRef reversal() const { return {edge, !reversed}; }

   friend auto operator<=>(const DirectedEdgeRef &, const DirectedEdgeRef &) = default;
};

std::string to_string(const DirectedEdgeRef &ref);

// Elements of the reflection group; the numeric values compose by xor.
enum class SigmaTag : unsigned { identity = 0, v = 1, h = 2, vh = 3 };

inline SigmaTag compose(SigmaTag x, SigmaTag y)
{
   return static_cast<SigmaTag>(static_cast<unsigned>(x) ^ static_cast<unsigned>(y));
}

std::string_view sigma_name(SigmaTag tag);

// Bottom a, left b, top a_prime, right b_prime. Corners: o(a)=o(b),
// t(a)=o(b'), t(b)=o(a'), t(a')=t(b').
struct DirectedSquare
{
   DirectedEdgeRef a;
   DirectedEdgeRef b;
   DirectedEdgeRef a_prime;
   DirectedEdgeRef b_prime;
   std::size_t orbit_id = 0;
   SigmaTag sigma_tag = SigmaTag::identity;

   bool same_labels(const DirectedSquare &other) const
   {
      return a == other.a && b == other.b && a_prime == other.a_prime && b_prime == other.b_prime;
   }

   friend bool operator==(const DirectedSquare &, const DirectedSquare &) = default;
};

std::string to_string(const DirectedSquare &t);

// Reflections of the model square carried to labels:
//   t^v  = (a', b̄, a, b̄'),  t^h = (ā, b', ā', b),  t^vh = (ā', b̄', ā, b̄).
DirectedSquare sigma_act(const DirectedSquare &t, SigmaTag g);

// Directed squares with edges and vertices replaced by dense indices.
// Directed edge index on an axis is 2 * edge position + reversed.
struct CompactSquare
{
   std::size_t a;
   std::size_t b;
   std::size_t a_prime;
   std::size_t b_prime;
};

inline std::size_t reverse_directed(std::size_t e) { return e ^ 1U; }

// Position of g·t in the expanded list.
inline std::size_t sigma_index(std::size_t t, SigmaTag g)
{
   return (t & ~std::size_t{3}) | ((t & 3U) ^ static_cast<std::size_t>(g));
}

// A structurally sound complex. The constructor checks every referential and
// corner invariant and throws ComplexError naming the offending item.
class SquareComplex
{
public:
   SquareComplex(std::vector<std::string> vertices, std::vector<GeometricEdge> h_edges,
                 std::vector<GeometricEdge> v_edges, std::vector<DirectedSquare> squares,
                 ordered_json metadata = nullptr);

   const std::vector<std::string> &vertices() const { return vertices_; }
   const std::vector<GeometricEdge> &h_edges() const { return h_edges_; }
   const std::vector<GeometricEdge> &v_edges() const { return v_edges_; }
   const std::vector<GeometricEdge> &edges(Axis axis) const
   {
      return axis == Axis::horizontal ? h_edges_ : v_edges_;
   }
   const std::vector<DirectedSquare> &squares() const { return squares_; }
   const ordered_json &metadata() const { return metadata_; }

   std::size_t forward_edge_count() const { return h_edges_.size() + v_edges_.size(); }

   std::size_t vertex_index(const std::string &id) const;
   Axis edge_axis(const std::string &edge_id) const;
   std::size_t edge_position(const std::string &edge_id) const;
   // Dense index among the 2 * |edges(axis)| directed edges of that axis.
   std::size_t directed_index(const DirectedEdgeRef &ref) const;
   DirectedEdgeRef directed_ref(Axis axis, std::size_t directed) const;

   std::size_t origin(const DirectedEdgeRef &ref) const;
   std::size_t terminus(const DirectedEdgeRef &ref) const;
   std::size_t origin(Axis axis, std::size_t directed) const;

   // Number of directed edges of the axis leaving the vertex.
   std::size_t degree(Axis axis, std::size_t vertex) const;

   CompactSquare compact(const DirectedSquare &t) const;

private:
   std::vector<std::string> vertices_;
   std::vector<GeometricEdge> h_edges_;
   std::vector<GeometricEdge> v_edges_;
   std::vector<DirectedSquare> squares_;
   ordered_json metadata_;
   std::map<std::string, std::size_t, std::less<>> vertex_lookup_;
   std::map<std::string, std::pair<Axis, std::size_t>, std::less<>> edge_lookup_;
   std::array<std::vector<std::size_t>, 2> degree_;
};

// Parses the JSON complex document. Throws ComplexError on malformed input,
// unknown keys or references, duplicate ids, wrong edge roles and corner
// incidence failures.
SquareComplex load_complex(std::string_view text);
SquareComplex load_complex_file(const std::string &path);

ordered_json to_json(const SquareComplex &c);
// Canonical text: fixed key order, arrays in input order, two-space indent,
// trailing newline.
std::string serialize_complex(const SquareComplex &c);

struct Diagnostic
{
   std::string kind;
   std::string message;
};

struct VertexDegree
{
   std::string vertex;
   std::size_t horizontal = 0;
   std::size_t vertical = 0;
};

struct ValidationReport
{
   std::vector<Diagnostic> errors;
   std::vector<Diagnostic> warnings;
   std::vector<VertexDegree> degrees;
   bool connected = false;

   bool ok() const { return errors.empty(); }
   // All tree degrees are at least three.
   bool degree_hypothesis() const;
   bool has_error(std::string_view kind) const;
   bool has_warning(std::string_view kind) const;
};

ValidationReport validate_vht(const SquareComplex &c);

// Orbit by orbit in input order: entry 4 * k + tag is
// sigma_act(squares[k], tag), tags ordered (1, v, h, vh). Throws ComplexError if some
// reflection fixes a listed square.
std::vector<DirectedSquare> expand_directed_squares(const SquareComplex &c);

std::vector<CompactSquare> compact_squares(const SquareComplex &c, const std::vector<DirectedSquare> &r);

} // namespace treelat

#endif // TREELAT_COMPLEX_HPP
