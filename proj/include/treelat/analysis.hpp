#ifndef TREELAT_ANALYSIS_HPP
#define TREELAT_ANALYSIS_HPP

// Full pipeline (validate, expand, tiling, chain maps, homology,
// connectivity, theorem verdict) and its canonical JSON report; sparse and
// dense matrix export.

#include "treelat/complex.hpp"
#include "treelat/homology.hpp"
#include "treelat/tiling.hpp"
#include "treelat/zlinalg.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace treelat {

inline constexpr std::string_view tool_version = "treelat 1.0.0";

// Thrown by analyze() when the complex has validation errors.
class ValidationFailure : public std::runtime_error
{
public:
   explicit ValidationFailure(ValidationReport report);
   const ValidationReport &report() const { return report_; }

private:
   ValidationReport report_;
};

struct Analysis
{
   SquareComplex complex;
   ValidationReport validation;
   std::vector<DirectedSquare> squares;
   TilingSystem tiling;
   ChainMaps maps;
   HomologyReport homology;
   ConnectivityReport connectivity;
   K0Rank k0;
   ChainMapChecks chain_checks;
   TheoremVerdict theorem;
};

Analysis analyze(SquareComplex c);

std::string sha256_hex(std::string_view bytes);

ordered_json validation_json(const ValidationReport &report);
ordered_json theorem_json(const TheoremVerdict &verdict);
// Canonical report; `input_digest` goes into the provenance block.
ordered_json report_json(const Analysis &a, const std::string &input_digest);

// Names accepted by the export command.
const std::vector<std::string> &exportable_matrices();
std::optional<IntMatrix> select_matrix(const Analysis &a, std::string_view name);

// "rows cols" header, then "i j value" lines, 1-indexed, lexicographic.
std::string to_triplets(const IntMatrix &m);
IntMatrix parse_triplets(std::string_view text);
ordered_json to_dense_json(const IntMatrix &m);

} // namespace treelat

#endif // TREELAT_ANALYSIS_HPP
