#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sparsos/abelian.hpp"
#include "sparsos/covers.hpp"
#include "sparsos/hermitian.hpp"

namespace sparsos {

/// Moments (E_mu[chi])_{chi in S} of a measure on G.
struct MomentVector {
  GroupSpec group = GroupSpec::make({1});
  std::vector<GroupElement> characters;
  std::vector<Complex> values;
};

/// Values indexed by characters (y_chi); absent keys are unknown.
using MomentMap = std::map<GroupElement, Complex>;

MomentVector moment_vertex(const GroupSpec& group, const std::set<GroupElement>& characters, const GroupElement& x);

/// [y_{conj(chi) chi'}]_{chi, chi' in T}. Throws kIncompleteMoments for a
/// missing index and kConsistency if y is not conjugate-symmetric.
HermitianMatrix truncated_moment_matrix(const GroupSpec& group, const MomentMap& y, const std::vector<GroupElement>& t);

/// sigma(chi) = constant * chi^-1 on T, stored by position in T.
struct Involution {
  GroupElement constant;
  std::vector<int> image;  // image[i] is the position of sigma(T[i])
};

/// Smallest c (canonical order) with c T^-1 = T, if any.
std::optional<Involution> find_equalizing_involution(const GroupSpec& group, const std::vector<GroupElement>& t);

/// Throws kInvolution unless sigma is an involution of T with sigma(chi) chi
/// constant; returns that constant.
GroupElement verify_involution(const GroupSpec& group, const std::vector<GroupElement>& t, const std::vector<int>& image);

/// sigma'(dk + r) = d sigma(k) + d - r - 1 on T' = {dk + r} ⊂ Z_{Md} from an
/// equalizing involution of T ⊂ Z_M. The constant is d c + d - 1.
/// Returns T' in canonical order together with sigma'.
std::pair<std::vector<GroupElement>, Involution> power_cycle_involution(const GroupSpec& base_group,
                                                                        const std::vector<GroupElement>& t,
                                                                        const Involution& sigma, int d);

enum class LiftMode { kHermitian, kReal };

/// Symbolic PSD lift of M(G, S): y_1 = 1, y_chi = l_chi for chi in S and
/// [y_{conj(chi) chi'}]_{chi, chi' in T} PSD (Hermitian), or its real
/// reduction through an equalizing involution.
struct LiftDescription {
  GroupSpec group = GroupSpec::make({1});
  std::set<GroupElement> connection_set;   // S without the identity
  std::vector<GroupElement> t;             // canonical order
  std::vector<GroupElement> variables;     // T^-1 T, canonical order
  std::vector<std::vector<GroupElement>> matrix_map;  // conj(T[i]) T[j]
  LiftMode mode = LiftMode::kHermitian;
  std::vector<int> sigma;                  // real mode only
  std::optional<GroupElement> sigma_constant;

  std::size_t size() const { return t.size(); }
  /// Pinned indices: the identity (to 1) and S (to the projected point).
  std::vector<GroupElement> pins() const;
  bool operator==(const LiftDescription&) const = default;
};

/// Throws kConsistency if the cover is not a cover of Cay(Ĝ, S).
LiftDescription build_lift(const GroupSpec& group, const std::set<GroupElement>& connection_set, const ChordalCover& cover);

/// Throws kInvolution if sigma fails the equalizing property on lift.t.
LiftDescription real_lift(const LiftDescription& lift, const std::vector<int>& sigma);

/// Lift of TC(N, 2d). Real mode uses the strong product of the symmetrized
/// base cycle cover with sigma' from power_cycle_involution.
LiftDescription trigonometric_lift(int N, int d, LiftMode mode);

/// Lift of CUT_n = M(Z_2^n, {|S| = 2}) through the half-cube cover. All
/// characters are real, so the real mode uses sigma = inversion.
LiftDescription cut_polytope_lift(int n, LiftMode mode);

/// Lexicographically smaller of chi and conj(chi).
GroupElement representative(const GroupSpec& group, const GroupElement& chi);

/// One real unknown: Re or Im of y at a representative index.
struct RealUnknown {
  GroupElement index;
  bool imaginary = false;
  bool operator==(const RealUnknown&) const = default;
  auto operator<=>(const RealUnknown&) const = default;
};

/// Re of every non-identity representative in T^-1 T, then Im of every
/// representative that is not its own inverse (canonical order within each).
std::vector<RealUnknown> real_unknowns(const LiftDescription& lift);

/// constant + sum coef * unknown.
struct AffineForm {
  double constant = 0.0;
  std::map<int, double> terms;  // unknown position -> coefficient
  bool operator==(const AffineForm&) const = default;
};

/// Entries of the real matrix of a lift as affine forms in real_unknowns():
/// |T| x |T| in real mode, the 2|T| embedding [[Re, Im], [-Im, Re]] in
/// Hermitian mode. y_1 is the constant 1.
std::vector<std::vector<AffineForm>> symbolic_matrix(const LiftDescription& lift);

/// Values of the unknowns at y.
std::vector<double> unknown_values(const LiftDescription& lift, const MomentMap& y);

/// The lift matrix (real mode: R, Hermitian mode: the real embedding)
/// evaluated at y.
Eigen::MatrixXd lift_matrix_at(const LiftDescription& lift, const MomentMap& y);

/// y_chi = sum_x w_x chi(x) over T^-1 T ∪ S. Weights are indexed by the
/// canonical element order and must form a probability vector (kMeasure).
MomentMap feasible_point_from_measure(const LiftDescription& lift, const std::vector<double>& weights);

/// Moments of a probability vector on an explicit index set.
MomentMap moments_of_measure(const GroupSpec& group, const std::vector<double>& weights, const std::set<GroupElement>& indices);

/// Re sum_chi f̂(chi) y_chi. Throws kIncompleteMoments when y misses supp f.
double pairing_check(const FourierFunction& f, const MomentMap& y);

/// Constructive completion: Γ-partial matrix filled from y on the cliques of
/// the cover, PSD-completed, then averaged over Ĝ. The result is a full
/// moment matrix M(z) indexed by Ĝ.
HermitianMatrix complete_moment_matrix(const ChordalCover& cover, const MomentMap& y);

struct SdpaOptions {
  /// Encode pins as pairs of inequalities in a diagonal block instead of
  /// substituting them.
  bool paired_pins = false;
  /// Pin y_chi = point[chi] for chi in S.
  std::optional<MomentMap> point;
  /// Minimise Re sum f̂(chi) y_chi (constant term dropped).
  std::optional<FourierFunction> objective;
};

/// Names of the SDPA variables in order ("re[1]", "im[2]", "re[0]" for
/// the paired identity pin, ...).
std::vector<std::string> sdpa_variable_names(const LiftDescription& lift, const SdpaOptions& options = {});

/// The SDPA variable vector corresponding to moments y.
std::vector<double> sdpa_point(const LiftDescription& lift, const SdpaOptions& options, const MomentMap& y);

/// SDPA sparse format: "m", "nBlocks", block sizes, c, then
/// "matno blkno i j value" lines (1-indexed, upper triangle). The PSD
/// constraint reads sum_k F_k x_k - F_0 ⪰ 0.
std::string export_sdpa(const LiftDescription& lift, const SdpaOptions& options = {});

/// Parsed SDPA problem with dense blocks.
struct SdpaProblem {
  int m = 0;
  std::vector<int> block_sizes;  // negative = diagonal block
  std::vector<double> c;
  // matrices[k][b] for k = 0..m (0 is F_0), block b.
  std::vector<std::vector<Eigen::MatrixXd>> matrices;

  /// sum_k F_k x_k - F_0, block by block.
  std::vector<Eigen::MatrixXd> slack(const std::vector<double>& x) const;
};

/// Strict reader; throws kFormat with the offending line number.
SdpaProblem parse_sdpa(const std::string& text);

}  // namespace sparsos
