#include "sparsos/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "sparsos/error.hpp"

namespace sparsos {

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Eigen::MatrixXcd submatrix(const Eigen::MatrixXcd& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(rows[i], cols[j]);
  }
  return out;
}

Eigen::MatrixXcd psd_pseudo_inverse(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m);
  const auto& values = eig.eigenvalues();
  const double top = values.cwiseAbs().maxCoeff();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m.rows(), m.cols());
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (std::abs(values(k)) > kPinvCutoff * top) {
      const Eigen::VectorXcd u = eig.eigenvectors().col(k);
      out += (u * u.adjoint()) / values(k);
    }
  }
  return out;
}

std::string describe(const Clique& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + "}";
}

}  // namespace

HermitianMatrix::HermitianMatrix(std::vector<GroupElement> labels, Eigen::MatrixXcd entries)
    : labels_(std::move(labels)), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || static_cast<std::size_t>(entries_.rows()) != labels_.size()) {
    fail(ErrorKind::kShape, "matrix must be square with one label per row");
  }
  std::set<GroupElement> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) fail(ErrorKind::kShape, "matrix labels must be unique");
  const double scale = std::max(1.0, max_abs(entries_));
  if (max_abs(entries_ - entries_.adjoint()) > kHermitianTolerance * scale) {
    fail(ErrorKind::kShape, "matrix is not Hermitian");
  }
  Eigen::MatrixXcd sym = (entries_ + entries_.adjoint()) / 2.0;
  entries_ = std::move(sym);
}

HermitianMatrix HermitianMatrix::with_index_labels(Eigen::MatrixXcd entries) {
  std::vector<GroupElement> labels;
  for (Eigen::Index i = 0; i < entries.rows(); ++i) labels.push_back({{static_cast<int>(i)}});
  return HermitianMatrix(std::move(labels), std::move(entries));
}

PsdReport is_psd(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() == 0) return {true, 0.0, 0.0};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  return {lo >= -tol * std::max(1.0, hi), lo, hi};
}

PsdReport is_psd(const HermitianMatrix& m, double tol) { return is_psd(m.entries(), tol); }

PsdReport is_psd_real(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() == 0) return {true, 0.0, 0.0};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  return {lo >= -tol * std::max(1.0, hi), lo, hi};
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

PartialMatrix PartialMatrix::from_pattern(const Eigen::MatrixXcd& full, const Graph& g) {
  const auto n = full.rows();
  PartialMatrix p;
  for (Eigen::Index i = 0; i < n; ++i) p.labels.push_back({{static_cast<int>(i)}});
  p.values = Eigen::MatrixXcd::Zero(n, n);
  p.specified = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, false);
  for (Eigen::Index i = 0; i < n; ++i) {
    p.values(i, i) = full(i, i).real();
    p.specified(i, i) = true;
  }
  for (const auto& [u, v] : g.edges()) {
    p.values(u, v) = full(u, v);
    p.values(v, u) = std::conj(full(u, v));
    p.specified(u, v) = p.specified(v, u) = true;
  }
  return p;
}

Eigen::MatrixXcd CliquePiece::embedded(Eigen::Index n) const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < clique.size(); ++i) {
    for (std::size_t j = 0; j < clique.size(); ++j) {
      out(clique[i], clique[j]) = block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

std::vector<CliquePiece> chordal_decompose(const HermitianMatrix& q, const Graph& cover,
                                           const EliminationOrder& peo,
                                           const std::vector<Clique>& cliques) {
  const auto n = q.size();
  if (static_cast<std::size_t>(n) != cover.size()) fail(ErrorKind::kShape, "matrix and graph sizes differ");
  if (!is_perfect_elimination_order(cover, peo)) {
    fail(ErrorKind::kCertificate, "order is not a perfect elimination ordering of the cover");
  }
  const PsdReport report = is_psd(q);
  if (!report.psd) {
    fail(ErrorKind::kNotPsd, "matrix has eigenvalue " + std::to_string(report.min_eigenvalue));
  }
  const double norm = std::max(std::abs(report.min_eigenvalue), std::abs(report.max_eigenvalue));

  Eigen::MatrixXcd rest = q.entries();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j || cover.has_edge(static_cast<int>(i), static_cast<int>(j))) continue;
      if (std::abs(rest(i, j)) > 1e-10 * norm) {
        fail(ErrorKind::kSparsity, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") lies outside the cover");
      }
      rest(i, j) = 0.0;
    }
  }

  std::vector<Eigen::MatrixXcd> blocks;
  for (const auto& c : cliques) {
    blocks.push_back(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(c.size()), static_cast<Eigen::Index>(c.size())));
  }

  const auto pos = peo.positions();
  for (int v : peo.order) {
    std::vector<int> d{v};
    for (int w : cover.neighbors(v)) {
      if (pos[static_cast<std::size_t>(w)] > pos[static_cast<std::size_t>(v)]) d.push_back(w);
    }
    std::sort(d.begin(), d.end());
    std::size_t target = cliques.size();
    for (std::size_t c = 0; c < cliques.size(); ++c) {
      if (std::includes(cliques[c].begin(), cliques[c].end(), d.begin(), d.end())) {
        target = c;
        break;
      }
    }
    if (target == cliques.size()) fail(ErrorKind::kCertificate, "no maximal clique contains " + describe(d));
    const Clique& clique = cliques[target];
    std::vector<Eigen::Index> local(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      local[i] = std::lower_bound(clique.begin(), clique.end(), d[i]) - clique.begin();
    }

    const double pivot = rest(v, v).real();
    if (pivot > kPivotTolerance * norm) {
      Eigen::VectorXcd col(static_cast<Eigen::Index>(d.size()));
      for (std::size_t i = 0; i < d.size(); ++i) col(static_cast<Eigen::Index>(i)) = rest(d[i], v);
      const Eigen::MatrixXcd schur = (col * col.adjoint()) / pivot;
      for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d.size(); ++j) {
          blocks[target](local[i], local[j]) += schur(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
          rest(d[i], d[j]) -= schur(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
      }
    } else {
      // Numerically zero pivot: its row must be negligible too. Moving the
      // leftover row into the piece keeps the sum exact.
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] != v && std::abs(rest(d[i], v)) > kPsdTolerance * norm) {
          fail(ErrorKind::kNotPsd, "zero pivot with a non-zero row at vertex " + std::to_string(v));
        }
      }
      const auto vi = static_cast<std::size_t>(std::find(d.begin(), d.end(), v) - d.begin());
      for (std::size_t i = 0; i < d.size(); ++i) {
        blocks[target](local[i], local[vi]) += rest(d[i], v);
        if (d[i] != v) blocks[target](local[vi], local[i]) += rest(v, d[i]);
        rest(d[i], v) = 0.0;
        rest(v, d[i]) = 0.0;
      }
    }
    rest(v, v) = 0.0;
  }

  std::vector<CliquePiece> pieces;
  pieces.reserve(cliques.size());
  for (std::size_t c = 0; c < cliques.size(); ++c) {
    std::vector<GroupElement> labels;
    for (int v : cliques[c]) labels.push_back(q.labels()[static_cast<std::size_t>(v)]);
    Eigen::MatrixXcd sym = (blocks[c] + blocks[c].adjoint()) / 2.0;
    pieces.push_back({cliques[c], HermitianMatrix(std::move(labels), std::move(sym))});
  }
  return pieces;
}

HermitianMatrix chordal_complete(const PartialMatrix& x, const Graph& pattern) {
  const auto n = x.values.rows();
  if (x.values.cols() != n || x.specified.rows() != n || x.specified.cols() != n ||
      static_cast<std::size_t>(n) != pattern.size() || x.labels.size() != static_cast<std::size_t>(n)) {
    fail(ErrorKind::kShape, "partial matrix and pattern sizes differ");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const bool expected = i == j || pattern.has_edge(static_cast<int>(i), static_cast<int>(j));
      if (x.specified(i, j) != expected) fail(ErrorKind::kShape, "specified positions do not match the pattern");
      if (expected && std::abs(x.values(i, j) - std::conj(x.values(j, i))) >
                          kHermitianTolerance * std::max(1.0, std::abs(x.values(i, j)))) {
        fail(ErrorKind::kShape, "specified entries are not conjugate-symmetric");
      }
    }
  }
  auto peo = is_chordal(pattern);
  if (!peo) fail(ErrorKind::kCertificate, "completion pattern is not chordal");
  const auto cliques = maximal_cliques_chordal(pattern, *peo);

  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (x.specified(i, j)) y(i, j) = x.values(i, j);
    }
  }
  for (const auto& c : cliques) {
    const Eigen::MatrixXcd block = submatrix(y, c, c);
    const PsdReport r = is_psd(Eigen::MatrixXcd((block + block.adjoint()) / 2.0));
    if (!r.psd) {
      fail(ErrorKind::kInfeasible, "clique " + describe(c) + " block has eigenvalue " + std::to_string(r.min_eigenvalue));
    }
  }

  // Prim's algorithm on separator sizes gives a clique tree; visiting cliques
  // in insertion order, each new clique meets the completed part in its
  // separator with the parent.
  const std::size_t k = cliques.size();
  std::vector<bool> in_tree(k, false);
  std::vector<long> best(k, -1);
  std::vector<std::size_t> visit;
  auto overlap = [&](std::size_t a, std::size_t b) {
    std::vector<int> common;
    std::set_intersection(cliques[a].begin(), cliques[a].end(), cliques[b].begin(), cliques[b].end(),
                          std::back_inserter(common));
    return static_cast<long>(common.size());
  };
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t next = k;
    for (std::size_t c = 0; c < k; ++c) {
      if (!in_tree[c] && (next == k || best[c] > best[next])) next = c;
    }
    in_tree[next] = true;
    visit.push_back(next);
    for (std::size_t c = 0; c < k; ++c) {
      if (!in_tree[c]) best[c] = std::max(best[c], overlap(next, c));
    }
  }

  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (std::size_t idx : visit) {
    const Clique& c = cliques[idx];
    std::vector<int> sep, fresh, rest;
    for (int v : c) (done[static_cast<std::size_t>(v)] ? sep : fresh).push_back(v);
    for (Eigen::Index v = 0; v < n; ++v) {
      if (done[static_cast<std::size_t>(v)] && !std::binary_search(c.begin(), c.end(), static_cast<int>(v))) {
        rest.push_back(static_cast<int>(v));
      }
    }
    if (!fresh.empty() && !rest.empty()) {
      Eigen::MatrixXcd fill = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(fresh.size()), static_cast<Eigen::Index>(rest.size()));
      if (!sep.empty()) {
        fill = submatrix(y, fresh, sep) * psd_pseudo_inverse(submatrix(y, sep, sep)) * submatrix(y, sep, rest);
      }
      for (std::size_t i = 0; i < fresh.size(); ++i) {
        for (std::size_t j = 0; j < rest.size(); ++j) {
          const int a = fresh[i];
          const int b = rest[j];
          if (x.specified(a, b)) continue;
          y(a, b) = fill(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
          y(b, a) = std::conj(y(a, b));
        }
      }
    }
    for (int v : c) done[static_cast<std::size_t>(v)] = true;
  }
  // Keep the specified entries bit-for-bit and make the rest exactly Hermitian.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (!x.specified(i, j)) y(j, i) = std::conj(y(i, j));
    }
  }
  return HermitianMatrix(x.labels, std::move(y));
}

std::vector<Eigen::VectorXcd> psd_factor(const HermitianMatrix& q, double rank_tol, double psd_tol) {
  std::vector<Eigen::VectorXcd> out;
  if (q.size() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(q.entries());
  const auto& values = eig.eigenvalues();
  const double hi = values.maxCoeff();
  const double lo = values.minCoeff();
  if (lo < -psd_tol * std::max(1.0, hi)) fail(ErrorKind::kNotPsd, "eigenvalue " + std::to_string(lo));
  for (Eigen::Index k = values.size(); k-- > 0;) {  // ascending storage
    if (values(k) <= rank_tol * hi || values(k) <= 0.0) break;
    out.push_back(std::sqrt(values(k)) * eig.eigenvectors().col(k));
  }
  return out;
}

HermitianMatrix group_average(const HermitianMatrix& y, const GroupSpec& group) {
  const std::size_t order = group.order();
  if (static_cast<std::size_t>(y.size()) != order) fail(ErrorKind::kShape, "matrix must be indexed by all of Ĝ");
  std::vector<Eigen::Index> row_of(order, -1);
  for (std::size_t i = 0; i < order; ++i) {
    const auto& label = y.labels()[i];
    if (!group.contains(label)) fail(ErrorKind::kShape, "label is not a character of the group");
    row_of[group.index_of(label)] = static_cast<Eigen::Index>(i);
  }
  // Z_{chi,chi'} depends only on delta = conj(chi) chi':
  // z_delta = (1/|G|) sum_mu Y_{mu, mu delta}.
  std::vector<Complex> z(order);
  for (std::size_t delta = 0; delta < order; ++delta) {
    Complex acc{};
    for (std::size_t mu = 0; mu < order; ++mu) acc += y(row_of[mu], row_of[group.mul_index(mu, delta)]);
    z[delta] = acc / static_cast<double>(order);
  }
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(order), static_cast<Eigen::Index>(order));
  for (std::size_t i = 0; i < order; ++i) {
    const std::size_t a = group.index_of(y.labels()[i]);
    for (std::size_t j = 0; j < order; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = z[group.quotient_index(a, group.index_of(y.labels()[j]))];
    }
  }
  return HermitianMatrix(y.labels(), std::move(out));
}

Eigen::MatrixXd real_reduction(const HermitianMatrix& m, const std::vector<int>& sigma) {
  const auto n = m.size();
  if (sigma.size() != static_cast<std::size_t>(n)) fail(ErrorKind::kShape, "involution size differs from matrix size");
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i] < 0 || sigma[i] >= n || sigma[static_cast<std::size_t>(sigma[i])] != static_cast<int>(i)) {
      fail(ErrorKind::kInvolution, "sigma is not an involution");
    }
  }
  const auto& a = m.entries();
  double defect = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      defect = std::max(defect, std::abs(a(sigma[static_cast<std::size_t>(i)], sigma[static_cast<std::size_t>(j)]) - std::conj(a(i, j))));
    }
  }
  if (defect > 1e-10 * std::max(1.0, max_abs(a))) {
    fail(ErrorKind::kInvariance, "J M J differs from conj(M) by " + std::to_string(defect));
  }
  Eigen::MatrixXd r(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) r(i, j) = a(i, j).real() - a(sigma[static_cast<std::size_t>(i)], j).imag();
  }
  return (r + r.transpose()) / 2.0;
}

Eigen::MatrixXd complex_to_real_embed(const HermitianMatrix& m) {
  const auto n = m.size();
  Eigen::MatrixXd out(2 * n, 2 * n);
  const Eigen::MatrixXd re = m.entries().real();
  const Eigen::MatrixXd im = m.entries().imag();
  out.topLeftCorner(n, n) = re;
  out.topRightCorner(n, n) = im;
  out.bottomLeftCorner(n, n) = -im;
  out.bottomRightCorner(n, n) = re;
  return out;
}

}  // namespace sparsos
