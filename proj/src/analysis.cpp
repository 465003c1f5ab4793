#include "treelat/analysis.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace treelat {

namespace {

std::string summarize(const ValidationReport &report)
{
   std::string out = std::to_string(report.errors.size()) + " validation error(s)";
   if (!report.errors.empty()) out += "; first: " + report.errors.front().message;
   return out;
}

ordered_json json_integer(const Integer &x)
{
   if (x.fits_slong_p()) return x.get_si();
   return x.get_str();
}

ordered_json group_json(const GroupStructure &g)
{
   ordered_json out;
   out["free_rank"] = g.free_rank;
   ordered_json torsion = ordered_json::array();
   for (const auto &t : g.torsion) torsion.push_back(json_integer(t));
   out["torsion"] = std::move(torsion);
   return out;
}

ordered_json diagnostics_json(const std::vector<Diagnostic> &list)
{
   ordered_json out = ordered_json::array();
   for (const auto &d : list)
   {
      ordered_json item;
      item["kind"] = d.kind;
      item["message"] = d.message;
      out.push_back(std::move(item));
   }
   return out;
}

ordered_json components_json(const std::vector<EdgeGraphComponent> &list, const char *graph)
{
   ordered_json out = ordered_json::array();
   for (const auto &comp : list)
   {
      ordered_json item;
      item["graph"] = graph;
      item["vertices"] = comp.vertices;
      item["edges"] = comp.edges;
      item["oriented_edges"] = comp.oriented_edges;
      item["fewer_vertices_than_edges"] = comp.fewer_vertices_than_edges();
      out.push_back(std::move(item));
   }
   return out;
}

} // namespace

ValidationFailure::ValidationFailure(ValidationReport report)
   : std::runtime_error(summarize(report)), report_(std::move(report))
{
}

Analysis analyze(SquareComplex c)
{
   ValidationReport validation = validate_vht(c);
   if (!validation.ok()) throw ValidationFailure(std::move(validation));
   auto r = expand_directed_squares(c);
   auto ts = build_tiling(r, c);
   auto maps = chain_maps(c, r);
   auto homology = homology_report(c, r, maps);
   auto conn = connectivity(ts, c);
   auto k0 = k0_rank(ts, c, conn);
   auto checks = check_chain_maps(maps);
   auto verdict = verify_main_theorem(c, r, ts, maps, validation.degree_hypothesis());
   return Analysis{std::move(c),       std::move(validation), std::move(r), std::move(ts),      std::move(maps),
                   std::move(homology), std::move(conn),      k0,           checks,             verdict};
}

std::string sha256_hex(std::string_view bytes)
{
   unsigned char digest[EVP_MAX_MD_SIZE];
   unsigned int length = 0;
   if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
      throw std::runtime_error("sha256 failed");
   std::string hex;
   char buf[3];
   for (unsigned int i = 0; i < length; ++i)
   {
      std::snprintf(buf, sizeof buf, "%02x", digest[i]);
      hex += buf;
   }
   return hex;
}

ordered_json validation_json(const ValidationReport &report)
{
   ordered_json out;
   out["ok"] = report.ok();
   out["errors"] = diagnostics_json(report.errors);
   out["warnings"] = diagnostics_json(report.warnings);
   ordered_json degrees = ordered_json::array();
   for (const auto &d : report.degrees)
   {
      ordered_json item;
      item["vertex"] = d.vertex;
      item["horizontal"] = d.horizontal;
      item["vertical"] = d.vertical;
      degrees.push_back(std::move(item));
   }
   out["degrees"] = std::move(degrees);
   out["connected"] = report.connected;
   return out;
}

ordered_json theorem_json(const TheoremVerdict &v)
{
   ordered_json out;
   out["diagram_commutes"] = v.diagram_commutes;
   out["rank_ker_d2"] = v.rank_ker_d2;
   out["rank_ker_stacked"] = v.rank_ker_stacked;
   out["phi2_image_in_kernel"] = v.phi2_image_in_kernel;
   out["kernel_in_phi2_image"] = v.kernel_in_phi2_image;
   out["kernel_symmetries_hold"] = v.kernel_symmetries_hold;
   out["mu_vanishes"] = v.mu_vanishes;
   out["within_hypotheses"] = v.within_hypotheses;
   out["all_true"] = v.all_true();
   return out;
}

ordered_json report_json(const Analysis &a, const std::string &input_digest)
{
   const SquareComplex &c = a.complex;
   ordered_json out;

   ordered_json counts;
   counts["vertices"] = c.vertices().size();
   counts["h_edges"] = c.h_edges().size();
   counts["v_edges"] = c.v_edges().size();
   counts["squares"] = c.squares().size();
   counts["directed_squares"] = a.squares.size();
   out["counts"] = std::move(counts);

   out["validation"] = validation_json(a.validation);

   ordered_json homology;
   homology["h0"] = group_json(a.homology.h0);
   homology["h1"] = group_json(a.homology.h1);
   homology["h2_rank"] = a.homology.h2_rank;
   homology["euler_characteristic"] = a.homology.euler_characteristic;
   out["homology"] = std::move(homology);

   ordered_json tiling;
   tiling["kernel_rank"] = a.k0.kernel_rank;
   tiling["k0_rank"] = a.k0.k0_rank;
   tiling["k1_rank"] = a.k0.k1_rank;
   ordered_json sums;
   for (auto [name, m] : {std::pair{"m1", &a.tiling.m1}, {"m2", &a.tiling.m2}})
   {
      const auto range = column_sum_range(*m);
      sums[name] = ordered_json::array({range.min, range.max});
   }
   tiling["column_sum_range"] = std::move(sums);
   const auto &flags = a.k0.hypotheses_checked;
   ordered_json hyp;
   hyp["one_vertex"] = flags.one_vertex;
   hyp["irreducible_lattice"] = flags.irreducible_lattice;
   hyp["gh_strongly_connected"] = flags.gh_strongly_connected;
   hyp["gv_strongly_connected"] = flags.gv_strongly_connected;
   hyp["confirmed"] = flags.confirmed();
   tiling["hypotheses_checked"] = std::move(hyp);
   out["tiling"] = std::move(tiling);

   ordered_json conn;
   conn["gh_strong"] = a.connectivity.horizontal.strongly_connected;
   conn["gv_strong"] = a.connectivity.vertical.strongly_connected;
   conn["gh_weak"] = a.connectivity.horizontal.weakly_connected;
   conn["gv_weak"] = a.connectivity.vertical.weakly_connected;
   conn["gh_scc_count"] = a.connectivity.horizontal.component_count;
   conn["gv_scc_count"] = a.connectivity.vertical.component_count;
   ordered_json comps = components_json(a.connectivity.gh_components, "G_h(B)");
   for (auto &item : components_json(a.connectivity.gv_components, "G_v(A)")) comps.push_back(item);
   conn["edge_graph_components"] = std::move(comps);
   out["connectivity"] = std::move(conn);

   out["theorem"] = theorem_json(a.theorem);

   ordered_json checks;
   checks["boundary_squared_zero"] = a.chain_checks.boundary_squared_zero;
   checks["phi2_injective"] = a.chain_checks.phi2_injective;
   checks["phi1_injective"] = a.chain_checks.phi1_injective;
   checks["psi_phi1_positive_diagonal"] = a.chain_checks.psi_phi1_positive_diagonal;
   out["chain_maps"] = std::move(checks);

   ordered_json provenance;
   provenance["input_sha256"] = input_digest;
   provenance["tool_version"] = tool_version;
   out["provenance"] = std::move(provenance);
   return out;
}

const std::vector<std::string> &exportable_matrices()
{
   static const std::vector<std::string> names{"m1", "m2", "stacked", "d1", "d2", "phi1", "phi2"};
   return names;
}

std::optional<IntMatrix> select_matrix(const Analysis &a, std::string_view name)
{
   if (name == "m1") return a.tiling.m1;
   if (name == "m2") return a.tiling.m2;
   if (name == "stacked") return stacked_matrix(a.tiling);
   if (name == "d1") return a.maps.d1;
   if (name == "d2") return a.maps.d2;
   if (name == "phi1") return a.maps.phi1;
   if (name == "phi2") return a.maps.phi2;
   return std::nullopt;
}

std::string to_triplets(const IntMatrix &m)
{
   std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
   for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
         if (sgn(m(i, j)) != 0)
            out += std::to_string(i + 1) + " " + std::to_string(j + 1) + " " + m(i, j).get_str() + "\n";
   return out;
}

IntMatrix parse_triplets(std::string_view text)
{
   std::istringstream in{std::string(text)};
   std::size_t rows = 0, cols = 0;
   if (!(in >> rows >> cols)) throw std::invalid_argument("triplets: missing \"rows cols\" header");
   IntMatrix m(rows, cols);
   std::size_t i = 0, j = 0;
   std::string value;
   while (in >> i >> j >> value)
   {
      if (i == 0 || j == 0 || i > rows || j > cols)
         throw std::invalid_argument("triplets: index (" + std::to_string(i) + ", " + std::to_string(j) +
                                     ") out of range");
      if (m(i - 1, j - 1).set_str(value, 10) != 0) throw std::invalid_argument("triplets: bad value " + value);
   }
   if (!in.eof()) throw std::invalid_argument("triplets: malformed line");
   return m;
}

ordered_json to_dense_json(const IntMatrix &m)
{
   ordered_json out = ordered_json::array();
   for (std::size_t i = 0; i < m.rows(); ++i)
   {
      ordered_json row = ordered_json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(json_integer(m(i, j)));
      out.push_back(std::move(row));
   }
   return out;
}

} // namespace treelat
