#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sparsos/abelian.hpp"

using namespace sparsos;

namespace {

GroupElement el(std::initializer_list<int> c) { return GroupElement{std::vector<int>(c)}; }

std::vector<Complex> values_on(const GroupSpec& g, auto&& fn) {
  std::vector<Complex> v;
  for (const auto& x : g.elements()) v.push_back(fn(x));
  return v;
}

}  // namespace

TEST(Group, OrdersOfProducts) {
  EXPECT_EQ(make_group({2, 2, 2}).order(), 8u);
  EXPECT_EQ(make_group({6}).order(), 6u);
  EXPECT_EQ(make_group({4, 3}).order(), 12u);
  EXPECT_EQ(make_group({4, 3}).exponent(), 12);
  EXPECT_EQ(make_group({4, 3}).to_string(), "Z4xZ3");
}

TEST(Group, RejectsBadModuli) {
  EXPECT_ERROR_KIND(make_group({}), ErrorKind::kInvalidSpec);
  EXPECT_ERROR_KIND(make_group({3, 0}), ErrorKind::kInvalidSpec);
  EXPECT_ERROR_KIND(make_group({-2}), ErrorKind::kInvalidSpec);
}

TEST(Group, CanonicalEnumerationIsBijective) {
  const auto g = make_group({3, 1, 4});
  std::set<GroupElement> seen;
  for (std::size_t i = 0; i < g.order(); ++i) {
    const auto e = g.element(i);
    EXPECT_TRUE(g.contains(e));
    EXPECT_EQ(g.index_of(e), i);
    seen.insert(e);
  }
  EXPECT_EQ(seen.size(), g.order());
  EXPECT_EQ(g.element(1), el({0, 0, 1}));
  EXPECT_EQ(g.element(4), el({1, 0, 0}));
}

TEST(Group, ReductionIsIdempotent) {
  const auto g = make_group({4, 3});
  const auto once = g.reduce({-5, 7});
  EXPECT_EQ(once, el({3, 1}));
  EXPECT_EQ(g.reduce(once.coords), once);
  EXPECT_ERROR_KIND(g.reduce({1}), ErrorKind::kShape);
}

TEST(Characters, EvaluationMatchesExponential) {
  const auto z6 = make_group({6});
  const Complex expected = std::polar(1.0, std::numbers::pi / 3);
  EXPECT_NEAR(std::abs(char_eval(z6, el({1}), el({1})) - expected), 0.0, 1e-15);
  for (const auto& x : z6.elements()) EXPECT_EQ(char_eval(z6, z6.identity(), x), Complex(1.0, 0.0));
  const auto z22 = make_group({2, 2});
  EXPECT_EQ(char_eval(z22, el({1, 1}), el({1, 1})), Complex(1.0, 0.0));
}

TEST(Characters, MultiplicationAndInverse) {
  const auto z6 = make_group({6});
  EXPECT_EQ(char_mul(z6, el({4}), el({3})), el({1}));
  EXPECT_EQ(char_inv(z6, el({1})), el({5}));
  const auto z22 = make_group({2, 2});
  EXPECT_EQ(char_inv(z22, el({1, 0})), el({1, 0}));
}

TEST(Characters, ProductIsPointwiseAndExactAtPhaseLevel) {
  const auto g = make_group({4, 6, 3});
  for (std::size_t a = 0; a < g.order(); a += 5) {
    for (std::size_t b = 0; b < g.order(); b += 7) {
      const auto ab = g.element(g.mul_index(a, b));
      for (std::size_t x = 0; x < g.order(); x += 3) {
        const auto xe = g.element(x);
        const Complex lhs = char_eval(g, ab, xe);
        const Complex rhs = char_eval(g, g.element(a), xe) * char_eval(g, g.element(b), xe);
        EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
        // chi(x*y) = chi(x) chi(y) with exact rational phases.
        const Phase pxy = g.phase_index(a, g.mul_index(x, b));
        const Phase px = g.phase_index(a, x);
        const Phase py = g.phase_index(a, b);
        EXPECT_EQ(pxy.denominator, px.denominator);
        EXPECT_EQ(pxy.numerator, (px.numerator + py.numerator) % px.denominator);
      }
    }
  }
}

TEST(Characters, Orthonormality) {
  for (const auto& moduli : std::vector<std::vector<int>>{{8}, {2, 2, 2, 2, 2, 2}, {4, 4, 4}, {3, 5}, {7}, {2, 3, 4}}) {
    const auto g = make_group(moduli);
    ASSERT_LE(g.order(), 64u);
    const auto elems = g.elements();
    for (const auto& a : elems) {
      for (const auto& b : elems) {
        Complex sum{};
        for (const auto& x : elems) sum += std::conj(char_eval(g, a, x)) * char_eval(g, b, x);
        sum /= static_cast<double>(elems.size());
        EXPECT_NEAR(std::abs(sum - Complex(a == b ? 1.0 : 0.0)), 0.0, 1e-12);
      }
    }
  }
}

TEST(Characters, QuarterTurnsAreExact) {
  EXPECT_EQ(unit_root(1, 4), Complex(0.0, 1.0));
  EXPECT_EQ(unit_root(2, 4), Complex(-1.0, 0.0));
  EXPECT_EQ(unit_root(3, 4), Complex(0.0, -1.0));
  EXPECT_EQ(unit_root(6, 6), Complex(1.0, 0.0));
}

TEST(Fourier, ConstantFunction) {
  const auto z6 = make_group({6});
  const std::vector<Complex> ones(6, 1.0);
  const auto f = fourier_transform(z6, ones);
  ASSERT_EQ(f.coefficients().size(), 1u);
  EXPECT_NEAR(std::abs(f.coefficient(z6.identity()) - 1.0), 0.0, 1e-15);
}

TEST(Fourier, OneMinusCosineOnHexagon) {
  const auto z6 = make_group({6});
  const auto vals = values_on(z6, [](const GroupElement& x) { return Complex(1.0 - std::cos(2 * std::numbers::pi * x.coords[0] / 6)); });
  const auto f = fourier_transform(z6, vals);
  EXPECT_EQ(support(f), (std::set<GroupElement>{el({0}), el({1}), el({5})}));
  EXPECT_NEAR(std::abs(f.coefficient(el({0})) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(f.coefficient(el({1})) + 0.5), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(f.coefficient(el({5})) + 0.5), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(evaluate(f, el({0}))), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(evaluate(f, el({3})) - 2.0), 0.0, 1e-14);
  EXPECT_TRUE(is_real(f));
  const auto m = min_on_group(f);
  EXPECT_NEAR(m.value, 0.0, 1e-14);
  EXPECT_EQ(m.argmin, el({0}));
}

TEST(Fourier, LengthMismatch) {
  const std::vector<Complex> three(3);
  EXPECT_ERROR_KIND(fourier_transform(make_group({4}), three), ErrorKind::kShape);
}

TEST(Fourier, AgreesWithDirectSummationOracle) {
  std::mt19937 rng(11);
  std::normal_distribution<double> normal;
  for (const auto& moduli : std::vector<std::vector<int>>{{8}, {4, 3}, {2, 2, 2, 2}, {5}, {3, 3, 2}}) {
    const auto g = make_group(moduli);
    std::vector<Complex> vals(g.order());
    for (auto& v : vals) v = Complex(normal(rng), normal(rng));
    const auto f = fourier_transform(g, vals);
    const auto expected = oracle::analyze(g, vals);
    const auto dense = f.dense_coefficients();
    for (std::size_t i = 0; i < g.order(); ++i) EXPECT_NEAR(std::abs(dense[i] - expected[i]), 0.0, 1e-12);
    // Round trip, both through the library and through the oracle synthesis.
    const auto back = f.values();
    const auto oracle_back = oracle::synthesize(g, dense);
    for (std::size_t i = 0; i < g.order(); ++i) {
      EXPECT_NEAR(std::abs(back[i] - vals[i]), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(evaluate(f, g.element(i)) - vals[i]), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(oracle_back[i] - vals[i]), 0.0, 1e-12);
    }
  }
}

TEST(Fourier, RealInputsGiveConjugateSymmetricCoefficients) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  const auto g = make_group({4, 6});
  std::vector<Complex> vals(g.order());
  for (auto& v : vals) v = u(rng);
  const auto f = fourier_transform(g, vals);
  EXPECT_TRUE(is_real(f));
  for (const auto& chi : g.elements()) {
    EXPECT_NEAR(std::abs(f.coefficient(g.inv(chi)) - std::conj(f.coefficient(chi))), 0.0, 1e-12);
  }
}

TEST(Fourier, DeltaFunction) {
  const auto g = make_group({3, 4});
  const auto y = el({2, 1});
  const auto d = delta_function(g, y);
  for (const auto& x : g.elements()) {
    // Orthogonality sum, enumerated directly.
    Complex direct{};
    for (const auto& chi : g.elements()) direct += std::conj(oracle::character(g, chi, y)) * oracle::character(g, chi, x) / 12.0;
    EXPECT_NEAR(std::abs(direct - (x == y ? 1.0 : 0.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(evaluate(d, x) - (x == y ? 1.0 : 0.0)), 0.0, 1e-12);
  }
}

TEST(Fourier, SupportAndMinimum) {
  const auto g = make_group({5});
  EXPECT_TRUE(support(FourierFunction(g)).empty());
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> vals(5);
    double lo = 1e300;
    for (auto& v : vals) {
      v = u(rng);
      lo = std::min(lo, v.real());
    }
    EXPECT_NEAR(min_on_group(fourier_transform(g, vals)).value, lo, 1e-12);
  }
  FourierFunction complex_f(g);
  complex_f.set(el({1}), 1.0);
  EXPECT_FALSE(is_real(complex_f));
  EXPECT_ERROR_KIND(min_on_group(complex_f), ErrorKind::kNotReal);
}

TEST(Fourier, SquaredModulusAndTranslation) {
  std::mt19937 rng(8);
  std::normal_distribution<double> normal;
  const auto g = make_group({8});
  FourierFunction h(g);
  for (int k : {0, 1, 3}) h.set(el({k}), Complex(normal(rng), normal(rng)));
  const auto sq = squared_modulus(h);
  const auto shifted = translate(h, el({5}));
  EXPECT_EQ(support(shifted), (std::set<GroupElement>{el({5}), el({6}), el({0})}));
  for (const auto& x : g.elements()) {
    const Complex hx = evaluate(h, x);
    EXPECT_NEAR(std::abs(evaluate(sq, x) - std::norm(hx)), 0.0, 1e-12);
    EXPECT_NEAR(std::norm(evaluate(shifted, x)) - std::norm(hx), 0.0, 1e-12);
  }
}

TEST(Fourier, SetZeroErases) {
  FourierFunction f(make_group({4}));
  f.set(el({1}), 2.0);
  f.set(el({1}), 0.0);
  EXPECT_TRUE(f.coefficients().empty());
}
