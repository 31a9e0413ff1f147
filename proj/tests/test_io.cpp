#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sparsos/io.hpp"

using namespace sparsos;

namespace {

GroupElement el(std::initializer_list<int> c) { return GroupElement{std::vector<int>(c)}; }

std::vector<ChordalCover> sample_covers() {
  const auto z43 = make_group({4, 3});
  const std::set<GroupElement> s = {el({0, 0}), el({1, 0}), el({3, 0}), el({0, 1}), el({0, 2})};
  return {cycle_cover(8),      hexagon_cover(),         power_cycle_cover(16, 2), halfcube_cover(4),
          generic_cover(z43, s), symmetrized(cycle_cover(11)), cycle_plus_one_cover(6)};
}

void expect_same_cover(const ChordalCover& a, const ChordalCover& b) {
  EXPECT_EQ(a.group, b.group);
  EXPECT_EQ(a.connection_set, b.connection_set);
  EXPECT_EQ(a.base.edges(), b.base.edges());
  EXPECT_EQ(a.cover.edges(), b.cover.edges());
  EXPECT_EQ(a.peo.order, b.peo.order);
  EXPECT_EQ(a.cliques, b.cliques);
  EXPECT_EQ(a.translations, b.translations);
  EXPECT_EQ(a.fourier_support, b.fourier_support);
}

FourierFunction random_function(const GroupSpec& g, std::mt19937& rng) {
  std::normal_distribution<double> normal;
  FourierFunction f(g);
  for (const auto& chi : g.elements()) {
    if (rng() % 3 == 0) f.set(chi, Complex(normal(rng), normal(rng)) * std::pow(10.0, normal(rng) * 5));
  }
  return f;
}

}  // namespace

TEST(GroupSpecText, Parses) {
  EXPECT_EQ(parse_group_spec("Z6").moduli(), std::vector<int>{6});
  EXPECT_EQ(parse_group_spec("Z2^4").moduli(), (std::vector<int>{2, 2, 2, 2}));
  EXPECT_EQ(parse_group_spec("Z4xZ3").moduli(), (std::vector<int>{4, 3}));
  EXPECT_EQ(parse_group_spec(" Z2^2 x Z5 ").moduli(), (std::vector<int>{2, 2, 5}));
  for (const char* bad : {"", "6", "Z", "Z0", "Z6x", "Z6*Z2", "Z2^", "Z2^0", "Y6", "Z-3", "Z2^30", "Z6xx"}) {
    EXPECT_ERROR_KIND(parse_group_spec(bad), ErrorKind::kInvalidSpec);
  }
}

TEST(JsonFunction, RoundTripIsLosslessAndStable) {
  std::mt19937 rng(1);
  for (const auto& moduli : std::vector<std::vector<int>>{{6}, {2, 2, 2}, {4, 3}, {1}}) {
    const auto g = make_group(moduli);
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_function(g, rng);
      const std::string text = dump_canonical(to_json(f));
      const auto back = function_from_json(parse_json(text));
      EXPECT_EQ(back, f);
      EXPECT_EQ(dump_canonical(to_json(back)), text);
      EXPECT_EQ(dump_canonical(parse_json(text)), text);
    }
  }
}

TEST(JsonFunction, Rejects) {
  EXPECT_ERROR_KIND(parse_json("{\"group\": [6], "), ErrorKind::kFormat);
  EXPECT_ERROR_KIND(function_from_json(parse_json(R"({"group": [6]})")), ErrorKind::kFormat);
  EXPECT_ERROR_KIND(function_from_json(parse_json(R"({"group": [6], "coefficients": [{"index": [6], "re": 1, "im": 0}]})")),
                    ErrorKind::kFormat);
  EXPECT_ERROR_KIND(function_from_json(parse_json(R"({"group": [6], "coefficients": [{"index": [1], "re": "x", "im": 0}]})")),
                    ErrorKind::kFormat);
  EXPECT_ERROR_KIND(
      function_from_json(parse_json(
          R"({"group": [6], "coefficients": [{"index": [1], "re": 1, "im": 0}, {"index": [1], "re": 2, "im": 0}]})")),
      ErrorKind::kFormat);
  EXPECT_ERROR_KIND(function_from_json(parse_json(R"({"group": [0], "coefficients": []})")), ErrorKind::kFormat);
  EXPECT_ERROR_KIND(function_from_json(parse_json(R"({"group": [2.5], "coefficients": []})")), ErrorKind::kFormat);
}

TEST(JsonCover, RoundTrip) {
  for (const auto& c : sample_covers()) {
    const std::string text = dump_canonical(to_json(c));
    const auto back = cover_from_json(parse_json(text));
    expect_same_cover(back, c);
    EXPECT_EQ(dump_canonical(to_json(back)), text);
  }
}

TEST(JsonCover, RejectsBrokenCovers) {
  const auto j = to_json(hexagon_cover());
  auto t = j;
  t["cliques"][0]["translation"] = {2};
  EXPECT_ERROR_KIND(cover_from_json(t), ErrorKind::kFormat);
  t = j;
  t["cover_edges"].erase(t["cover_edges"].begin());
  EXPECT_ERROR_KIND(cover_from_json(t), ErrorKind::kFormat);
  t = j;
  t["base_edges"].push_back({0, 2});
  EXPECT_ERROR_KIND(cover_from_json(t), ErrorKind::kFormat);
  t = j;
  t["peo"] = {0, 1, 2, 3, 4, 4};
  EXPECT_ERROR_KIND(cover_from_json(t), ErrorKind::kFormat);
  t = j;
  t["fourier_support"].erase(t["fourier_support"].begin());
  EXPECT_ERROR_KIND(cover_from_json(t), ErrorKind::kFormat);
  t = j;
  t.erase("cliques");
  EXPECT_ERROR_KIND(cover_from_json(t), ErrorKind::kFormat);
}

TEST(JsonCertificate, RoundTrip) {
  const auto g = make_group({6});
  FourierFunction f(g);
  f.set(el({0}), 1.0);
  f.set(el({1}), -0.5);
  f.set(el({5}), -0.5);
  for (const auto& cert : {sparse_sos(f, hexagon_cover()), real_certificate(sparse_sos(f, hexagon_cover()))}) {
    const std::string text = dump_canonical(to_json(cert, 1e-16));
    const auto back = certificate_from_json(parse_json(text));
    EXPECT_EQ(back.group, cert.group);
    EXPECT_EQ(back.terms, cert.terms);
    EXPECT_EQ(back.declared_support, cert.declared_support);
    EXPECT_EQ(back.scale, cert.scale);
    EXPECT_EQ(dump_canonical(to_json(back, 1e-16)), text);
    EXPECT_EQ(verify_certificate(f, back), verify_certificate(f, cert));
  }
}

TEST(JsonLift, RoundTripEveryMode) {
  std::vector<LiftDescription> lifts = {
      trigonometric_lift(6, 1, LiftMode::kHermitian), trigonometric_lift(6, 1, LiftMode::kReal),
      trigonometric_lift(16, 2, LiftMode::kHermitian), trigonometric_lift(16, 2, LiftMode::kReal),
      cut_polytope_lift(4, LiftMode::kHermitian),     cut_polytope_lift(5, LiftMode::kReal),
  };
  for (const auto& lift : lifts) {
    const std::string text = dump_canonical(to_json(lift));
    const auto back = lift_from_json(parse_json(text));
    EXPECT_EQ(back, lift);
    EXPECT_EQ(dump_canonical(to_json(back)), text);
  }
}

TEST(JsonLift, RejectsInconsistentLifts) {
  const auto j = to_json(trigonometric_lift(6, 1, LiftMode::kReal));
  auto t = j;
  t["matrix_map"][0][1] = {2};
  EXPECT_ERROR_KIND(lift_from_json(t), ErrorKind::kFormat);
  t = j;
  t["sigma"] = {0, 1, 2, 3};
  EXPECT_ERROR_KIND(lift_from_json(t), ErrorKind::kFormat);
  t = j;
  t["sigma_constant"] = {1};
  EXPECT_ERROR_KIND(lift_from_json(t), ErrorKind::kFormat);
  t = j;
  t["mode"] = "complex";
  EXPECT_ERROR_KIND(lift_from_json(t), ErrorKind::kFormat);
  t = j;
  t["pins"].erase(t["pins"].begin());
  EXPECT_ERROR_KIND(lift_from_json(t), ErrorKind::kFormat);
  t = j;
  t["variable_index"].erase(t["variable_index"].begin());
  EXPECT_ERROR_KIND(lift_from_json(t), ErrorKind::kFormat);
  t = j;
  t["size"] = 5;
  EXPECT_ERROR_KIND(lift_from_json(t), ErrorKind::kFormat);
}

TEST(JsonMoments, RoundTrip) {
  const auto lift = trigonometric_lift(16, 2, LiftMode::kHermitian);
  std::vector<double> w(16, 0.0);
  w[3] = 0.25;
  w[7] = 0.75;
  const auto y = feasible_point_from_measure(lift, w);
  const std::string text = dump_canonical(to_json(y));
  EXPECT_EQ(moments_from_json(parse_json(text), lift.group), y);
}

TEST(JsonSupport, ReadsAndChecksGroup) {
  const auto g = make_group({4, 3});
  const auto s = support_from_json(parse_json(R"({"group": [4, 3], "support": [[1, 0], [3, 0]]})"), g);
  EXPECT_EQ(s, (std::set<GroupElement>{el({1, 0}), el({3, 0})}));
  EXPECT_ERROR_KIND(support_from_json(parse_json(R"({"group": [12], "support": [[1]]})"), g), ErrorKind::kFormat);
  EXPECT_ERROR_KIND(support_from_json(parse_json(R"({"group": [4, 3], "support": [[1, 0], [1, 0]]})"), g),
                    ErrorKind::kFormat);
}
