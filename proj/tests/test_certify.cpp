#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sparsos/certify.hpp"

using namespace sparsos;

namespace {

GroupElement el(std::initializer_list<int> c) { return GroupElement{std::vector<int>(c)}; }

FourierFunction one_minus_cosine() {
  const auto z6 = make_group({6});
  FourierFunction f(z6);
  f.set(el({0}), 1.0);
  f.set(el({1}), -0.5);
  f.set(el({5}), -0.5);
  return f;
}

// |g|^2 + |h|^2 with g, h random on the given support; nonnegative by
// construction.
FourierFunction random_sum_of_squares(const GroupSpec& group, const std::vector<GroupElement>& support_of_factor,
                                      int count, std::mt19937& rng) {
  std::normal_distribution<double> normal;
  FourierFunction f(group);
  for (int s = 0; s < count; ++s) {
    FourierFunction h(group);
    for (const auto& chi : support_of_factor) h.set(chi, Complex(normal(rng), normal(rng)));
    const auto square = squared_modulus(h);
    for (const auto& [chi, c] : square.coefficients()) f.add(chi, c);
  }
  return f;
}

double max_value(const FourierFunction& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

void expect_certified(const FourierFunction& f, const SosCertificate& cert) {
  EXPECT_LE(verify_certificate(f, cert), 1e-8 * std::max(1.0, max_value(f)));
  for (const auto& t : cert.terms) {
    for (const auto& [chi, c] : t.coefficients()) EXPECT_TRUE(cert.declared_support.contains(chi));
  }
}

}  // namespace

TEST(Gram, HexagonCirculant) {
  const auto q = gram_matrix(one_minus_cosine());
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const int d = oracle::mod(j - i, 6);
      const double expected = d == 0 ? 1.0 : (d == 1 || d == 5) ? -0.5 : 0.0;
      EXPECT_NEAR(std::abs(q(i, j) - expected), 0.0, 1e-12);
    }
  }
}

TEST(Gram, ConstantIsIdentity) {
  FourierFunction f(make_group({3, 2}));
  f.set(f.group().identity(), 1.0);
  EXPECT_EQ(gram_matrix(f).entries(), Eigen::MatrixXcd::Identity(6, 6));
}

TEST(Gram, SpectrumIsTheValueMultiset) {
  std::mt19937 rng(1);
  std::normal_distribution<double> normal;
  for (const auto& moduli : std::vector<std::vector<int>>{{5}, {8}, {4, 4}, {2, 2, 2, 2, 2, 2}, {3, 7}, {64}}) {
    const auto g = make_group(moduli);
    std::vector<Complex> vals(g.order());
    std::vector<double> sorted;
    for (auto& v : vals) {
      v = normal(rng);
      sorted.push_back(v.real());
    }
    std::sort(sorted.begin(), sorted.end());
    const auto ev = oracle::eigenvalues(gram_matrix(fourier_transform(g, vals)).entries());
    for (std::size_t i = 0; i < sorted.size(); ++i) EXPECT_NEAR(ev(static_cast<Eigen::Index>(i)), sorted[i], 1e-8);
    const bool nonneg = sorted.front() >= 0;
    EXPECT_EQ(is_psd(gram_matrix(fourier_transform(g, vals))).psd, nonneg);
  }
}

TEST(Gram, RejectsComplexFunction) {
  FourierFunction f(make_group({4}));
  f.set(el({1}), 1.0);
  EXPECT_ERROR_KIND(gram_matrix(f), ErrorKind::kNotReal);
}

TEST(SparseSos, HexagonExample) {
  const auto f = one_minus_cosine();
  const auto cert = sparse_sos(f, hexagon_cover());
  expect_certified(f, cert);
  std::set<GroupElement> used;
  for (const auto& t : cert.terms) {
    for (const auto& [chi, c] : t.coefficients()) used.insert(chi);
  }
  const std::set<GroupElement> expected{el({5}), el({0}), el({1}), el({3})};
  EXPECT_TRUE(std::includes(expected.begin(), expected.end(), used.begin(), used.end()));
  EXPECT_EQ(cert.declared_support, expected);
}

TEST(SparseSos, ConstantFunction) {
  FourierFunction f(make_group({6}));
  f.set(el({0}), 4.0);
  const auto cert = sparse_sos(f, hexagon_cover());
  ASSERT_EQ(cert.terms.size(), 1u);
  ASSERT_EQ(cert.terms[0].coefficients().size(), 1u);
  EXPECT_NEAR(std::abs(cert.terms[0].coefficients().begin()->second), 2.0, 1e-12);
  expect_certified(f, cert);
}

TEST(SparseSos, DegreeOneOnEightCycle) {
  std::mt19937 rng(2);
  const auto z8 = make_group({8});
  const auto cover = cycle_cover(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_sum_of_squares(z8, {el({0}), el({1})}, 2, rng);
    const auto cert = sparse_sos(f, cover);
    expect_certified(f, cert);
  }
}

TEST(SparseSos, Errors) {
  auto f = one_minus_cosine();
  f.set(el({0}), 0.5);  // minimum -0.5 at x = 0
  try {
    sparse_sos(f, hexagon_cover());
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotNonnegative);
    EXPECT_NE(std::string(e.what()).find("(0)"), std::string::npos);
  }
  auto wide = one_minus_cosine();
  wide.set(el({2}), 0.1);
  wide.set(el({4}), 0.1);
  EXPECT_ERROR_KIND(sparse_sos(wide, hexagon_cover()), ErrorKind::kSupport);
}

TEST(SparseSos, TightMinimumIsLiftedBySmallConstant) {
  auto f = one_minus_cosine();
  f.add(el({0}), -1e-12);  // minimum -1e-12, inside tolerance
  const auto cert = sparse_sos(f, hexagon_cover());
  expect_certified(f, cert);
}

TEST(Verify, ZeroedTermLeavesResidual) {
  const auto f = one_minus_cosine();
  auto cert = sparse_sos(f, hexagon_cover());
  ASSERT_FALSE(cert.terms.empty());
  const auto dropped = cert.terms.front();
  cert.terms.erase(cert.terms.begin());
  double mass = 0.0;
  for (const auto& v : dropped.values()) mass = std::max(mass, std::norm(v));
  EXPECT_GT(verify_certificate(f, cert), 1e-8);
  EXPECT_LE(verify_certificate(f, cert), mass + 1e-8);
  SosCertificate empty;
  empty.group = make_group({6});
  EXPECT_EQ(verify_certificate(FourierFunction(empty.group), empty), 0.0);
  auto bad = sparse_sos(f, hexagon_cover());
  bad.declared_support.erase(el({3}));
  EXPECT_ERROR_KIND(verify_certificate(f, bad), ErrorKind::kCertificate);
}

TEST(Verify, TranslationKeepsSquaredModulus) {
  std::mt19937 rng(3);
  std::normal_distribution<double> normal;
  const auto g = make_group({4, 6});
  for (int trial = 0; trial < 20; ++trial) {
    FourierFunction h(g);
    for (int k = 0; k < 5; ++k) h.set(g.element(rng() % g.order()), Complex(normal(rng), normal(rng)));
    const auto chi = g.element(rng() % g.order());
    const auto moved = translate(h, chi).values();
    const auto orig = h.values();
    for (std::size_t x = 0; x < orig.size(); ++x) EXPECT_LE(std::abs(std::norm(moved[x]) - std::norm(orig[x])), 1e-12 * std::max(1.0, std::norm(orig[x])));
  }
}

TEST(RealCertificate, EulerSplit) {
  const auto z4 = make_group({4});
  SosCertificate cert;
  cert.group = z4;
  FourierFunction h(z4);
  h.set(el({1}), 1.0);
  cert.terms.push_back(h);
  cert.declared_support = {el({1})};
  const auto real = real_certificate(cert);
  ASSERT_EQ(real.terms.size(), 2u);
  EXPECT_EQ(real.declared_support, (std::set<GroupElement>{el({1}), el({3})}));
  for (int x = 0; x < 4; ++x) {
    EXPECT_NEAR(std::abs(evaluate(real.terms[0], el({x})) - std::cos(2 * std::numbers::pi * x / 4)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(evaluate(real.terms[1], el({x})) - std::sin(2 * std::numbers::pi * x / 4)), 0.0, 1e-15);
  }
}

TEST(RealCertificate, AlreadyRealKeepsCount) {
  const auto z4 = make_group({4});
  SosCertificate cert;
  cert.group = z4;
  FourierFunction h(z4);
  h.set(el({1}), 0.5);
  h.set(el({3}), 0.5);
  cert.terms.push_back(h);
  cert.declared_support = {el({1}), el({3})};
  EXPECT_EQ(real_certificate(cert).terms.size(), 1u);
}

TEST(RealCertificate, HexagonSymmetricSupport) {
  const auto f = one_minus_cosine();
  const auto real = real_certificate(sparse_sos(f, hexagon_cover()));
  EXPECT_EQ(real.declared_support, (std::set<GroupElement>{el({0}), el({1}), el({3}), el({5})}));
  expect_certified(f, real);
  for (const auto& t : real.terms) EXPECT_TRUE(is_real(t));
}

TEST(Hypercube, TriangleQuadratic) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Constant(3, 3, -1.0);
  a.diagonal().setZero();
  const auto cert = certify_quadratic_hypercube(3, a, 3.0);
  EXPECT_LE(certificate_degree(cert), 2);
  expect_certified(hypercube_quadratic(3, a, 3.0), cert);
  // Direct check on the 8 sign vectors.
  const auto f = hypercube_quadratic(3, a, 3.0);
  for (int z = 0; z < 8; ++z) {
    const int x0 = (z & 4) ? -1 : 1, x1 = (z & 2) ? -1 : 1, x2 = (z & 1) ? -1 : 1;
    EXPECT_NEAR(evaluate(f, make_group({2, 2, 2}).element(static_cast<std::size_t>(z))).real(), 3.0 - x0 * x1 - x0 * x2 - x1 * x2, 1e-12);
  }
}

TEST(Hypercube, ConstantOnly) {
  const auto cert = certify_quadratic_hypercube(4, Eigen::MatrixXd::Zero(4, 4), 1.0);
  ASSERT_EQ(cert.terms.size(), 1u);
  EXPECT_EQ(certificate_degree(cert), 0);
}

TEST(Hypercube, MaxCutOfFourCycle) {
  // Laplacian quadratic of C_4: sum over edges (1 - x_i x_j) / 2 * 2; the cut
  // value is max over 16 points of sum_edges (1 - x_i x_j)/2 = 4.
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(4, 4);
  double constant = 0.0;
  for (int i = 0; i < 4; ++i) {
    const int j = (i + 1) % 4;
    lap(i, j) = lap(j, i) = 0.5;  // -(-x_i x_j / 2)
    constant -= 0.5;
  }
  // f = 4 - sum (1 - x_i x_j)/2 = 4 - 2 + sum x_i x_j / 2.
  double best = -1e9;
  for (int z = 0; z < 16; ++z) {
    double cut = 0.0;
    for (int i = 0; i < 4; ++i) {
      const int j = (i + 1) % 4;
      cut += (((z >> i) & 1) != ((z >> j) & 1)) ? 1.0 : 0.0;
    }
    best = std::max(best, cut);
  }
  EXPECT_EQ(best, 4.0);
  const auto f = hypercube_quadratic(4, lap, best + constant);
  const auto cert = certify_quadratic_hypercube(4, lap, best + constant);
  EXPECT_LE(certificate_degree(cert), 2);
  expect_certified(f, cert);
}

TEST(Hypercube, NegativeReportsWitness) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(0, 1) = a(1, 0) = 1.0;
  try {
    certify_quadratic_hypercube(2, a, 0.5);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotNonnegative);
    const std::string msg = e.what();
    EXPECT_TRUE(msg.find("(1,-1)") != std::string::npos || msg.find("(-1,1)") != std::string::npos) << msg;
  }
  Eigen::MatrixXd diag = Eigen::MatrixXd::Identity(2, 2);
  EXPECT_ERROR_KIND(certify_quadratic_hypercube(2, diag, 1.0), ErrorKind::kShape);
}

TEST(Hypercube, RandomQuadraticsHaveLowDegree) {
  std::mt19937 rng(4);
  std::normal_distribution<double> normal;
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) a(i, j) = a(j, i) = normal(rng);
      }
      const double lowest = min_on_group(hypercube_quadratic(n, a, 0.0)).value;
      const auto f = hypercube_quadratic(n, a, -lowest);
      const auto cert = certify_quadratic_hypercube(n, a, -lowest);
      EXPECT_LE(certificate_degree(cert), (n + 1) / 2);
      expect_certified(f, cert);
    }
  }
}
