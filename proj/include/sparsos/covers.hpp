#pragma once

#include <map>
#include <set>
#include <vector>

#include "sparsos/abelian.hpp"
#include "sparsos/graphs.hpp"

namespace sparsos {

/// A chordal supergraph of Cay(Ĝ, S) together with one translating character
/// per maximal clique. Vertex i of both graphs is the character
/// group.element(i).
///
/// Invariants (checked by validate_cover):
///   - cover contains base and peo certifies that cover is chordal;
///   - cliques are exactly the maximal cliques of cover;
///   - translations[i] * cliques[i] is contained in fourier_support.
struct ChordalCover {
  GroupSpec group = GroupSpec::make({1});
  std::set<GroupElement> connection_set;  // S, symmetric, holds the identity
  Graph base;
  Graph cover;
  EliminationOrder peo;
  std::vector<Clique> cliques;
  std::vector<GroupElement> translations;
  std::set<GroupElement> fourier_support;
};

/// Throws kCertificate describing the first violated invariant.
void validate_cover(const ChordalCover& c);

/// Union over cliques of the translated clique.
std::set<GroupElement> fourier_support(const ChordalCover& c);

/// Builds a cover from a chordal graph and translations keyed by maximal
/// clique; validates the result.
ChordalCover assemble_cover(const GroupSpec& group, const std::set<GroupElement>& connection_set,
                            Graph cover_graph, const std::map<Clique, GroupElement>& translations);

/// Recursive triangulation of C_N (nodes 0 and N of the (N+1)-cycle
/// triangulation identified). N >= 3.
ChordalCover cycle_cover(int N);

/// Recursive triangulation of the (N+1)-cycle on Z_{N+1}. N >= 2.
ChordalCover cycle_plus_one_cover(int N);

/// The hand-made cover of C_6 with cliques {0,1,3},{1,2,3},{3,4,5},{0,3,5}
/// and support {-1,0,1,3}.
ChordalCover hexagon_cover();

/// Cover of C_N^d = Cay(Z_N, {-d..d}) as (cover of C_{N/d}) ⊠ K_d,
/// relabelled through (q, r) -> q*d + r. Needs d | N and N/d >= 2; for
/// N/d == 2 the base cycle is the single edge K_2 and the result is complete.
ChordalCover power_cycle_cover(int N, int d);

/// Cover used for TC(N, 2d) = M(Z_N, {-d..d}): the hexagon cover for
/// N = 6, d = 1 and power_cycle_cover(N, d) otherwise. Throws kDivisibility
/// when d does not divide N.
ChordalCover trigonometric_cover(int N, int d);

/// Same construction from an explicit cover of the base cycle C_M.
ChordalCover strong_product_cover(const ChordalCover& base_cycle, int d);

/// Cover of the half-cube graph Cay(Z_2^n, {|S| in {0, 2}}), n >= 2.
ChordalCover halfcube_cover(int n);

/// Copy of the cover whose support is closed under inversion.
ChordalCover symmetrized(const ChordalCover& c);

enum class TranslationStrategy {
  kGreedy,    // cliques by decreasing size, each picks the chi minimising |T ∪ chi*C|
  kIdentity,  // every translation is the identity
};

ChordalCover find_translations(const GroupSpec& group, const std::set<GroupElement>& connection_set,
                               const Graph& cover_graph,
                               TranslationStrategy strategy = TranslationStrategy::kGreedy);

/// Min-fill triangulation of Cay(Ĝ, S) with greedy translations.
ChordalCover generic_cover(const GroupSpec& group, const std::set<GroupElement>& connection_set);

/// Deterministic cover for a connection set: degree sets {-d..d} on Z_N
/// get trigonometric_cover(N, d') with d' the smallest divisor of N that is
/// >= d, half-cube sets on Z_2^n (2 <= n <= 10) get halfcube_cover(n), and
/// everything else gets generic_cover of S ∪ S^-1 ∪ {1}.
ChordalCover auto_cover(const GroupSpec& group, const std::set<GroupElement>& support);

/// Smallest divisor d' of N with d' >= d.
int smallest_divisor_geq(int N, int d);

/// {-d, ..., d} in Z_N.
std::set<GroupElement> degree_set(int N, int d);

/// {S : |S| = 0 or 2} in Z_2^n.
std::set<GroupElement> halfcube_connection_set(int n);

int hamming_weight(const GroupElement& g);

}  // namespace sparsos
