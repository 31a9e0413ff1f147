#pragma once

#include <Eigen/Dense>
#include <set>
#include <vector>

#include "sparsos/abelian.hpp"
#include "sparsos/covers.hpp"
#include "sparsos/hermitian.hpp"

namespace sparsos {

/// f = scale * sum_j |f_j|^2 with every f_j supported on declared_support.
struct SosCertificate {
  GroupSpec group = GroupSpec::make({1});
  std::vector<FourierFunction> terms;
  std::set<GroupElement> declared_support;
  double scale = 1.0;
};

/// Q[chi, chi'] = f̂(conj(chi) chi'), rows in canonical order. Throws kNotReal.
HermitianMatrix gram_matrix(const FourierFunction& f);

/// Sparse sum-of-squares certificate of a nonnegative f with supp f inside
/// the cover's connection set; the terms live on cover.fourier_support.
///
/// Pipeline: Gram matrix, chordal decomposition along the cover, eigen
/// factorisation of each clique piece, translation of each factor by the
/// clique's character. A minimum in (-1e-10 max|f|, 0) is lifted to zero by
/// adding a constant, which keeps the support.
SosCertificate sparse_sos(const FourierFunction& f, const ChordalCover& cover);

/// max_x |f(x) - scale * sum_j |f_j(x)|^2|. Throws kCertificate if a term
/// leaves the declared support or the groups differ.
double verify_certificate(const FourierFunction& f, const SosCertificate& cert);

/// Splits every term into Re and Im parts (both real-valued functions);
/// support becomes T ∪ T^-1. Zero parts are dropped.
SosCertificate real_certificate(const SosCertificate& cert);

/// c + sum_{i<j} A_ij x_i x_j on {-1,1}^n, x_i = (-1)^{z_i} for z in Z_2^n.
FourierFunction hypercube_quadratic(int n, const Eigen::MatrixXd& a, double c);

/// Certificate of degree <= ceil(n/2) through the half-cube cover. A must be
/// symmetric with zero diagonal. Throws kNotNonnegative with a ±1 witness.
SosCertificate certify_quadratic_hypercube(int n, const Eigen::MatrixXd& a, double c);

/// Largest Hamming weight over the supports of the terms.
int certificate_degree(const SosCertificate& cert);

/// Tolerances of the pipeline.
inline constexpr double kNonnegativityTolerance = 1e-10;
inline constexpr double kResidualTolerance = 1e-8;
inline constexpr double kTermPruneNorm = 1e-10;

}  // namespace sparsos
