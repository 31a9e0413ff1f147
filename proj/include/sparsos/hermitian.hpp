#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sparsos/abelian.hpp"
#include "sparsos/graphs.hpp"

namespace sparsos {

// Relative tolerances shared by the matrix kernel.
inline constexpr double kPsdTolerance = 1e-8;
inline constexpr double kPinvCutoff = 1e-10;
inline constexpr double kHermitianTolerance = 1e-12;
// Pivots at or below this (relative) size are treated as numerical zeros by
// chordal_decompose.
inline constexpr double kPivotTolerance = 1e-12;

/// Dense Hermitian matrix whose rows/columns carry character labels.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  /// Throws kShape on a size mismatch, repeated labels or an entry pair that
  /// is not conjugate-symmetric within kHermitianTolerance (relative). The
  /// stored matrix is exactly Hermitian.
  HermitianMatrix(std::vector<GroupElement> labels, Eigen::MatrixXcd entries);

  /// Labels {0}, {1}, ... for matrices that are not indexed by characters.
  static HermitianMatrix with_index_labels(Eigen::MatrixXcd entries);

  Eigen::Index size() const { return entries_.rows(); }
  const std::vector<GroupElement>& labels() const { return labels_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

  bool operator==(const HermitianMatrix& other) const {
    return labels_ == other.labels_ && entries_ == other.entries_;
  }

 private:
  std::vector<GroupElement> labels_;
  Eigen::MatrixXcd entries_;
};

struct PsdReport {
  bool psd = false;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

/// psd iff lambda_min >= -tol * max(1, lambda_max).
PsdReport is_psd(const HermitianMatrix& m, double tol = kPsdTolerance);
PsdReport is_psd(const Eigen::MatrixXcd& m, double tol = kPsdTolerance);
PsdReport is_psd_real(const Eigen::MatrixXd& m, double tol = kPsdTolerance);

/// Largest eigenvalue magnitude.
double spectral_norm(const Eigen::MatrixXcd& m);

/// Matrix with prescribed diagonal and a symmetric set of off-diagonal
/// entries; everything else is unknown.
struct PartialMatrix {
  std::vector<GroupElement> labels;
  Eigen::MatrixXcd values;  // unspecified entries are ignored
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> specified;

  /// Partial matrix specified on the diagonal and the edges of g, copying the
  /// entries of full.
  static PartialMatrix from_pattern(const Eigen::MatrixXcd& full, const Graph& g);
};

/// One summand of a chordal decomposition, supported on a clique.
struct CliquePiece {
  Clique clique;              // vertex indices into the decomposed matrix
  HermitianMatrix block;      // |clique| x |clique|

  /// The piece as an n x n matrix.
  Eigen::MatrixXcd embedded(Eigen::Index n) const;
};

/// Splits a PSD matrix that is sparse with respect to a chordal graph into PSD
/// pieces supported on its maximal cliques (one per clique, same order).
///
/// Vertices are processed along the elimination order; each pivot v peels
/// off the rank-one Schur term Q[D,v] Q[v,D] / Q_vv, D = v plus its later
/// neighbours, and assigns it to the first maximal clique containing D.
std::vector<CliquePiece> chordal_decompose(const HermitianMatrix& q, const Graph& cover,
                                           const EliminationOrder& peo,
                                           const std::vector<Clique>& cliques);

/// PSD completion of a partial matrix specified on a chordal pattern, built
/// along a clique tree. Throws kInfeasible when a clique block is not PSD.
HermitianMatrix chordal_complete(const PartialMatrix& x, const Graph& pattern);

/// Vectors a_k (descending eigenvalue) with Q = sum_k a_k a_k^*. Eigenvalues
/// <= rank_tol * lambda_max are dropped.
std::vector<Eigen::VectorXcd> psd_factor(const HermitianMatrix& q, double rank_tol = 1e-12,
                                         double psd_tol = kPsdTolerance);

/// Average of Y over simultaneous translation of rows and columns by Ĝ;
/// Y must be labelled by every character exactly once.
HermitianMatrix group_average(const HermitianMatrix& y, const GroupSpec& group);

/// Re[M] - J Im[M], J the permutation matrix of sigma (sigma[i] is the
/// position of the image of label i). M must satisfy J M J = conj(M).
Eigen::MatrixXd real_reduction(const HermitianMatrix& m, const std::vector<int>& sigma);

/// [[Re M, Im M], [-Im M, Re M]].
Eigen::MatrixXd complex_to_real_embed(const HermitianMatrix& m);

}  // namespace sparsos
