#include "sparsos/certify.hpp"

#include <algorithm>
#include <cmath>

#include "sparsos/error.hpp"

namespace sparsos {

namespace {

double max_abs_value(const std::vector<Complex>& values) {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

double coefficient_norm(const FourierFunction& h) {
  double s = 0.0;
  for (const auto& [chi, c] : h.coefficients()) s += std::norm(c);
  return std::sqrt(s);
}

std::string witness(const GroupElement& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.coords.size(); ++i) s += (i ? "," : "") + std::to_string(x.coords[i]);
  return s + ")";
}

}  // namespace

HermitianMatrix gram_matrix(const FourierFunction& f) {
  if (!is_real(f)) fail(ErrorKind::kNotReal, "Gram matrix needs a real-valued function");
  const GroupSpec& g = f.group();
  const auto n = static_cast<Eigen::Index>(g.order());
  const auto dense = f.dense_coefficients();
  Eigen::MatrixXcd q(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      q(i, j) = dense[g.quotient_index(static_cast<std::size_t>(i), static_cast<std::size_t>(j))];
    }
  }
  // Real f makes Q Hermitian up to rounding in the coefficients.
  for (Eigen::Index i = 0; i < n; ++i) {
    q(i, i) = q(i, i).real();
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Complex avg = (q(i, j) + std::conj(q(j, i))) / 2.0;
      q(i, j) = avg;
      q(j, i) = std::conj(avg);
    }
  }
  return HermitianMatrix(g.elements(), std::move(q));
}

namespace {

// Gram matrix -> chordal pieces -> factors -> translated terms.
void append_clique_terms(const FourierFunction& target, const ChordalCover& cover, SosCertificate& cert) {
  const GroupSpec& g = target.group();
  const HermitianMatrix q = gram_matrix(target);
  const auto pieces = chordal_decompose(q, cover.cover, cover.peo, cover.cliques);
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(g.order()));

  for (std::size_t ci = 0; ci < pieces.size(); ++ci) {
    const auto& piece = pieces[ci];
    const std::size_t shift = g.index_of(cover.translations[ci]);
    for (const auto& a : psd_factor(piece.block)) {
      if (a.norm() * inv_sqrt <= kTermPruneNorm) continue;
      FourierFunction term(g);
      for (std::size_t i = 0; i < piece.clique.size(); ++i) {
        const std::size_t chi = g.mul_index(shift, static_cast<std::size_t>(piece.clique[i]));
        term.add(g.element(chi), std::conj(a(static_cast<Eigen::Index>(i))) * inv_sqrt);
      }
      cert.terms.push_back(std::move(term));
    }
  }
}

}  // namespace

SosCertificate sparse_sos(const FourierFunction& f, const ChordalCover& cover) {
  const GroupSpec& g = f.group();
  if (!(g == cover.group)) fail(ErrorKind::kShape, "function and cover live on different groups");
  if (!is_real(f)) fail(ErrorKind::kNotReal, "only real-valued functions can be sums of squares");
  const double drop = kFourierDropTolerance * f.max_coefficient_magnitude();
  for (const auto& chi : support(f, drop)) {
    if (!cover.connection_set.contains(chi)) {
      fail(ErrorKind::kSupport, "coefficient " + witness(chi) + " lies outside the cover's connection set");
    }
  }
  FourierFunction target(g);
  for (const auto& [chi, c] : f.coefficients()) {
    if (std::abs(c) > drop) target.set(chi, c);
  }
  const auto values = target.values();
  const double scale = std::max(1.0, max_abs_value(values));
  const GroupMinimum lowest = min_on_group(target);
  if (lowest.value < -kNonnegativityTolerance * scale) {
    fail(ErrorKind::kNotNonnegative,
         "f(" + witness(lowest.argmin) + ") = " + std::to_string(lowest.value) + " < 0");
  }
  if (lowest.value < 0.0) target.add(g.identity(), -lowest.value);

  SosCertificate cert;
  cert.group = g;
  cert.declared_support = cover.fourier_support;
  const auto target_support = support(target);
  if (target_support.empty() || (target_support.size() == 1 && *target_support.begin() == g.identity())) {
    // Constant f = c: one term sqrt(c) times any character of T (|chi|^2 = 1).
    const double c = target.coefficient(g.identity()).real();
    if (c > 0.0) {
      const GroupElement chi = cover.fourier_support.contains(g.identity()) ? g.identity() : *cover.fourier_support.begin();
      FourierFunction term(g);
      term.set(chi, std::sqrt(c));
      cert.terms.push_back(std::move(term));
    }
  } else {
    append_clique_terms(target, cover, cert);
  }
  const double residual = verify_certificate(f, cert);
  if (residual > kResidualTolerance * scale) {
    fail(ErrorKind::kCertificate, "certificate residual " + std::to_string(residual) + " exceeds tolerance");
  }
  return cert;
}

double verify_certificate(const FourierFunction& f, const SosCertificate& cert) {
  if (!(f.group() == cert.group)) fail(ErrorKind::kCertificate, "certificate and function live on different groups");
  std::vector<double> sum(cert.group.order(), 0.0);
  for (std::size_t j = 0; j < cert.terms.size(); ++j) {
    const auto& term = cert.terms[j];
    if (!(term.group() == cert.group)) fail(ErrorKind::kCertificate, "term " + std::to_string(j) + " has the wrong group");
    for (const auto& [chi, c] : term.coefficients()) {
      if (!cert.declared_support.contains(chi)) {
        fail(ErrorKind::kCertificate, "term " + std::to_string(j) + " uses character " + witness(chi) +
                                          " outside the declared support");
      }
    }
    const auto vals = term.values();
    for (std::size_t x = 0; x < vals.size(); ++x) sum[x] += std::norm(vals[x]);
  }
  const auto target = f.values();
  double residual = 0.0;
  for (std::size_t x = 0; x < target.size(); ++x) {
    residual = std::max(residual, std::abs(target[x] - cert.scale * sum[x]));
  }
  return residual;
}

SosCertificate real_certificate(const SosCertificate& cert) {
  const GroupSpec& g = cert.group;
  SosCertificate out;
  out.group = g;
  out.scale = cert.scale;
  for (const auto& t : cert.declared_support) {
    out.declared_support.insert(t);
    out.declared_support.insert(g.inv(t));
  }
  const Complex i_unit(0.0, 1.0);
  for (const auto& h : cert.terms) {
    FourierFunction re(g);
    FourierFunction im(g);
    for (const auto& [chi, c] : h.coefficients()) {
      const GroupElement inv = g.inv(chi);
      re.add(chi, c / 2.0);
      re.add(inv, std::conj(c) / 2.0);
      im.add(chi, c / (2.0 * i_unit));
      im.add(inv, -std::conj(c) / (2.0 * i_unit));
    }
    const double cutoff = kTermPruneNorm * std::max(1.0, coefficient_norm(h));
    for (auto* part : {&re, &im}) {
      FourierFunction cleaned(g);
      for (const auto& [chi, c] : part->coefficients()) {
        if (std::abs(c) > 1e-15 * std::max(1.0, coefficient_norm(h))) cleaned.set(chi, c);
      }
      if (coefficient_norm(cleaned) > cutoff) out.terms.push_back(std::move(cleaned));
    }
  }
  return out;
}

FourierFunction hypercube_quadratic(int n, const Eigen::MatrixXd& a, double c) {
  if (n < 1 || n > 16) fail(ErrorKind::kInvalidParameter, "hypercube quadratics need 1 <= n <= 16");
  if (a.rows() != n || a.cols() != n) fail(ErrorKind::kShape, "A must be n x n");
  for (int i = 0; i < n; ++i) {
    if (a(i, i) != 0.0) fail(ErrorKind::kShape, "A must have zero diagonal");
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(a(i, j) - a(j, i)) > 1e-12 * std::max(1.0, std::abs(a(i, j)))) fail(ErrorKind::kShape, "A must be symmetric");
    }
  }
  const GroupSpec g = make_group(std::vector<int>(static_cast<std::size_t>(n), 2));
  FourierFunction f(g);
  f.set(g.identity(), c);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (a(i, j) == 0.0) continue;
      std::vector<int> s(static_cast<std::size_t>(n), 0);
      s[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(j)] = 1;
      f.set(GroupElement{std::move(s)}, a(i, j));
    }
  }
  return f;
}

SosCertificate certify_quadratic_hypercube(int n, const Eigen::MatrixXd& a, double c) {
  const FourierFunction f = hypercube_quadratic(n, a, c);
  const auto values = f.values();
  const double scale = std::max(1.0, max_abs_value(values));
  const GroupMinimum lowest = min_on_group(f);
  if (lowest.value < -kNonnegativityTolerance * scale) {
    std::string x = "(";
    for (std::size_t i = 0; i < lowest.argmin.coords.size(); ++i) x += (i ? "," : "") + std::string(lowest.argmin.coords[i] ? "-1" : "1");
    fail(ErrorKind::kNotNonnegative, "f" + x + ")" + " = " + std::to_string(lowest.value) + " < 0");
  }
  if (n > 10) fail(ErrorKind::kInvalidParameter, "dense certification supports n <= 10");
  if (n == 1) {
    // Only the constant term survives.
    return sparse_sos(f, generic_cover(f.group(), {f.group().identity()}));
  }
  return sparse_sos(f, halfcube_cover(n));
}

int certificate_degree(const SosCertificate& cert) {
  int degree = 0;
  for (const auto& t : cert.terms) {
    for (const auto& [chi, c] : t.coefficients()) degree = std::max(degree, hamming_weight(chi));
  }
  return degree;
}

}  // namespace sparsos
