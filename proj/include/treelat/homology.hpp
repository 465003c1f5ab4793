#ifndef TREELAT_HOMOLOGY_HPP
#define TREELAT_HOMOLOGY_HPP

// Cellular chain complex of a square complex, the comparison maps into the
// tiling system, integral homology and the instance-level check that
// phi2 carries H2 isomorphically onto ker(M1 - I; M2 - I).

#include "treelat/complex.hpp"
#include "treelat/tiling.hpp"
#include "treelat/zlinalg.hpp"

#include <cstddef>
#include <vector>

namespace treelat {

// Coordinates: forward edges are ordered horizontal edges first, then
// vertical edges, each in document order. Listed square k is orbit k and
// sits at position 4k of the expanded list.
struct ChainMaps
{
   IntMatrix d2;     // |E+| x |R+|
   IntMatrix d1;     // |X0| x |E+|
   IntMatrix phi2;   // |R| x |R+|
   IntMatrix phi1;   // 2|R| x |E+|
   IntMatrix psi;    // |E+| x 2|R|
};

ChainMaps chain_maps(const SquareComplex &c, const std::vector<DirectedSquare> &r);

struct GroupStructure
{
   std::size_t free_rank = 0;
   std::vector<Integer> torsion;
};

struct HomologyReport
{
   GroupStructure h0;
   GroupStructure h1;
   std::size_t h2_rank = 0;
   long euler_characteristic = 0;
};

HomologyReport homology_report(const SquareComplex &c, const std::vector<DirectedSquare> &r, const ChainMaps &maps);

// Exact identities of the chain maps that hold on every valid complex.
struct ChainMapChecks
{
   bool boundary_squared_zero = false;       // d1 * d2 == 0
   bool phi2_injective = false;              // full column rank
   bool phi1_injective = false;
   bool psi_phi1_positive_diagonal = false;

   bool all() const
   {
      return boundary_squared_zero && phi2_injective && phi1_injective && psi_phi1_positive_diagonal;
   }
};

ChainMapChecks check_chain_maps(const ChainMaps &maps);

struct TheoremVerdict
{
   bool diagram_commutes = false;
   std::size_t rank_ker_d2 = 0;
   std::size_t rank_ker_stacked = 0;
   bool phi2_image_in_kernel = false;
   bool kernel_in_phi2_image = false;
   bool kernel_symmetries_hold = false;
   bool mu_vanishes = false;
   bool within_hypotheses = false;

   // Every check passed and the ranks agree.
   bool all_true() const
   {
      return diagram_commutes && rank_ker_d2 == rank_ker_stacked && phi2_image_in_kernel && kernel_in_phi2_image &&
             kernel_symmetries_hold && mu_vanishes && within_hypotheses;
   }
};

// Per-vector outcome of the kernel checks, exposed for testing.
struct KernelVectorChecks
{
   bool symmetric = false;       // lambda(s) = -lambda(s^h) = -lambda(s^v) = lambda(s^vh)
   bool mu_zero = false;         // every mu(b) and its horizontal analogue vanish
   bool in_phi2_image = false;   // phi2 of the R+ restriction reproduces lambda
};

KernelVectorChecks check_kernel_vector(const SquareComplex &c, const std::vector<DirectedSquare> &r,
                                       const ChainMaps &maps, const IntVector &lambda);

TheoremVerdict verify_main_theorem(const SquareComplex &c, const std::vector<DirectedSquare> &r,
                                   const TilingSystem &ts, const ChainMaps &maps, bool degree_hypothesis);

} // namespace treelat

#endif // TREELAT_HOMOLOGY_HPP
