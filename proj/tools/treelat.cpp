// treelat: validate, analyze, generate, verify and export VH-T square complexes.
//
// Exit codes: 0 success, 1 parse or I/O failure, 2 validation errors or a
// violated construction hypothesis, 3 a theorem check failed on a complex
// that satisfies its hypotheses (verify only).

#include "treelat/analysis.hpp"
#include "treelat/mozes.hpp"
#include "treelat/parallel.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace treelat;

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_invalid = 2;
constexpr int exit_theorem = 3;

std::string read_file(const std::string &path)
{
   std::ifstream in(path, std::ios::binary);
   if (!in) throw std::runtime_error("cannot open " + path);
   std::ostringstream buffer;
   buffer << in.rdbuf();
   return buffer.str();
}

void write_output(const std::string &path, const std::string &text)
{
   if (path.empty() || path == "-")
   {
      std::cout << text;
      return;
   }
   std::ofstream out(path, std::ios::binary);
   if (!out) throw std::runtime_error("cannot write " + path);
   out << text;
}

void print_diagnostics(std::ostream &os, const ValidationReport &report)
{
   for (const auto &d : report.errors) os << "error [" << d.kind << "]: " << d.message << "\n";
   for (const auto &d : report.warnings) os << "warning [" << d.kind << "]: " << d.message << "\n";
}

struct Loaded
{
   std::string bytes;
   SquareComplex complex;
};

Loaded load(const std::string &path)
{
   std::string bytes = read_file(path);
   SquareComplex c = load_complex(bytes);
   return {std::move(bytes), std::move(c)};
}

int cmd_validate(const std::string &path, bool json)
{
   const Loaded in = load(path);
   const ValidationReport report = validate_vht(in.complex);
   if (json)
      std::cout << validation_json(report).dump(2) << "\n";
   else
   {
      print_diagnostics(std::cout, report);
      std::cout << (report.ok() ? "valid" : "invalid") << ": " << in.complex.vertices().size() << " vertices, "
                << in.complex.h_edges().size() << " horizontal edges, " << in.complex.v_edges().size()
                << " vertical edges, " << in.complex.squares().size() << " squares\n";
   }
   return report.ok() ? exit_ok : exit_invalid;
}

void print_group(std::ostream &os, const GroupStructure &g)
{
   bool first = true;
   if (g.free_rank > 0)
   {
      os << "Z^" << g.free_rank;
      first = false;
   }
   for (const auto &t : g.torsion)
   {
      os << (first ? "" : " + ") << "Z/" << t.get_str();
      first = false;
   }
   if (first) os << "0";
}

int cmd_analyze(const std::string &path, bool json)
{
   Loaded in = load(path);
   const Analysis a = analyze(std::move(in.complex));
   if (json)
   {
      std::cout << report_json(a, sha256_hex(in.bytes)).dump(2) << "\n";
      return exit_ok;
   }
   print_diagnostics(std::cout, a.validation);
   const auto &h = a.homology;
   std::cout << "cells: " << a.complex.vertices().size() << " vertices, " << a.complex.forward_edge_count()
             << " edges, " << a.complex.squares().size() << " squares (" << a.squares.size()
             << " directed)\n";
   std::cout << "H0 = ";
   print_group(std::cout, h.h0);
   std::cout << "\nH1 = ";
   print_group(std::cout, h.h1);
   std::cout << "\nrank H2 = " << h.h2_rank << "\nEuler characteristic = " << h.euler_characteristic << "\n";
   std::cout << "rank ker(M1 - I; M2 - I) = " << a.k0.kernel_rank << "\nrank K0 = rank K1 = " << a.k0.k0_rank
             << (a.k0.hypotheses_checked.confirmed() ? "" : " (operator-algebra hypotheses not confirmed)") << "\n";
   std::cout << "G_h(R) strongly connected: " << (a.connectivity.horizontal.strongly_connected ? "yes" : "no")
             << ", G_v(R) strongly connected: " << (a.connectivity.vertical.strongly_connected ? "yes" : "no")
             << "\n";
   std::cout << "theorem: " << (a.theorem.within_hypotheses ? (a.theorem.all_true() ? "verified" : "FAILED")
                                                             : "outside hypotheses (not asserted)")
             << "\n";
   return exit_ok;
}

int cmd_verify(const std::string &path, bool json)
{
   Loaded in = load(path);
   const Analysis a = analyze(std::move(in.complex));
   const TheoremVerdict &v = a.theorem;
   if (json)
   {
      ordered_json out;
      out["theorem"] = theorem_json(v);
      std::cout << out.dump(2) << "\n";
   }
   else
   {
      auto line = [](const char *name, bool ok) { std::cout << (ok ? "pass " : "FAIL ") << name << "\n"; };
      line("diagram commutes", v.diagram_commutes);
      std::cout << (v.rank_ker_d2 == v.rank_ker_stacked ? "pass " : "FAIL ") << "rank ker d2 = " << v.rank_ker_d2
                << ", rank ker stacked = " << v.rank_ker_stacked << "\n";
      line("phi2(H2) inside ker stacked", v.phi2_image_in_kernel);
      line("ker stacked inside phi2(Z R+)", v.kernel_in_phi2_image);
      line("kernel reflection symmetries", v.kernel_symmetries_hold);
      line("mu vanishes", v.mu_vanishes);
      line("degree hypothesis", v.within_hypotheses);
   }
   if (!v.within_hypotheses) return exit_ok;
   return v.all_true() ? exit_ok : exit_theorem;
}

int cmd_generate(long p, long l, const std::string &out)
{
   const SquareComplex c = generate_mozes_complex(p, l);
   write_output(out, serialize_complex(c));
   return exit_ok;
}

int cmd_export(const std::string &path, const std::string &what, bool dense, const std::string &out)
{
   Loaded in = load(path);
   const Analysis a = analyze(std::move(in.complex));
   const auto m = select_matrix(a, what);
   if (!m)
   {
      std::cerr << "treelat: unknown matrix \"" << what << "\"\n";
      return exit_invalid;
   }
   write_output(out, dense ? to_dense_json(*m).dump() + "\n" : to_triplets(*m));
   return exit_ok;
}

} // namespace

int main(int argc, char **argv)
{
   CLI::App app{"Homology and tiling invariants of VH-T square complexes"};
   app.require_subcommand(1);
   app.set_version_flag("--version", std::string(tool_version));

   std::string path;
   std::string out;
   std::string what;
   bool json = false;
   bool dense = false;
   long p = 0;
   long l = 0;

   auto *validate = app.add_subcommand("validate", "Check a complex document");
   validate->add_option("file", path, "Complex document (JSON)")->required();
   validate->add_flag("--json", json, "Machine-readable report");

   auto *analyze_cmd = app.add_subcommand("analyze", "Homology, tiling kernel, K-theory ranks and theorem verdict");
   analyze_cmd->add_option("file", path, "Complex document (JSON)")->required();
   analyze_cmd->add_flag("--json", json, "Machine-readable report");

   auto *verify = app.add_subcommand("verify", "Theorem verdict only");
   verify->add_option("file", path, "Complex document (JSON)")->required();
   verify->add_flag("--json", json, "Machine-readable report");

   auto *generate = app.add_subcommand("generate", "Write the quaternion lattice complex for primes p, l");
   generate->add_option("-p", p, "Horizontal prime, = 1 mod 4")->required();
   generate->add_option("-l", l, "Vertical prime, = 1 mod 4")->required();
   generate->add_option("-o,--out", out, "Output path (default stdout)");

   auto *export_cmd = app.add_subcommand("export", "Write one of the integer matrices");
   export_cmd->add_option("file", path, "Complex document (JSON)")->required();
   export_cmd->add_option("--what", what, "m1, m2, stacked, d1, d2, phi1 or phi2")->required();
   export_cmd->add_option("-o,--out", out, "Output path (default stdout)");
   export_cmd->add_flag("--dense", dense, "Dense JSON array instead of sparse triplets");

   try
   {
      app.parse(argc, argv);
   }
   catch (const CLI::ParseError &e)
   {
      return app.exit(e);
   }

   if (const char *raw = std::getenv("TREELAT_THREADS"); raw != nullptr && !par::parse_thread_cap(raw))
      std::cerr << "treelat: ignoring TREELAT_THREADS=\"" << raw << "\" (expected a positive integer)\n";

   try
   {
      if (*validate) return cmd_validate(path, json);
      if (*analyze_cmd) return cmd_analyze(path, json);
      if (*verify) return cmd_verify(path, json);
      if (*generate) return cmd_generate(p, l, out);
      if (*export_cmd) return cmd_export(path, what, dense, out);
   }
   catch (const ValidationFailure &e)
   {
      print_diagnostics(std::cerr, e.report());
      std::cerr << "treelat: " << e.what() << "\n";
      return exit_invalid;
   }
   catch (const HypothesisError &e)
   {
      std::cerr << "treelat: " << e.what() << "\n";
      return exit_invalid;
   }
   catch (const std::exception &e)
   {
      std::cerr << "treelat: " << e.what() << "\n";
      return exit_input;
   }
   return exit_input;
}
