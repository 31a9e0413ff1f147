#include "sparsos/covers.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <cmath>

#include "sparsos/error.hpp"

namespace sparsos {

namespace {

GroupElement cyclic(const GroupSpec& group, long long k) {
  return group.reduce({static_cast<int>(k % group.moduli()[0])});
}

Clique translate_clique_key(const Clique& c) {
  Clique sorted = c;
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

struct Triangle {
  std::array<long long, 3> nodes;
  long long translation;
};

// Triangulates the polygon a, a+1, ..., a+m closed by the chord {a, a+m}.
void triangulate_segment(long long a, long long m, std::vector<Triangle>& out) {
  if (m < 2) return;
  long long p = 1;
  while (2 * p < m) p *= 2;
  const long long b = a + p;
  out.push_back({{a, b, a + m}, -b});
  triangulate_segment(a, p, out);
  triangulate_segment(b, m - p, out);
}

ChordalCover cover_from_triangles(const GroupSpec& group, const std::vector<Triangle>& triangles) {
  const int n = group.moduli()[0];
  const auto S = degree_set(n, 1);
  Graph g = cayley_graph(group, S);
  std::map<Clique, GroupElement> translations;
  for (const auto& t : triangles) {
    Clique c;
    for (long long v : t.nodes) c.push_back(static_cast<int>(((v % n) + n) % n));
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i + 1; j < 3; ++j) g.add_edge(c[i], c[j]);
    }
    translations.emplace(translate_clique_key(c), cyclic(group, t.translation));
  }
  return assemble_cover(group, S, std::move(g), translations);
}

}  // namespace

int hamming_weight(const GroupElement& g) {
  int w = 0;
  for (int c : g.coords) w += c != 0 ? 1 : 0;
  return w;
}

std::set<GroupElement> degree_set(int N, int d) {
  const GroupSpec group = make_group({N});
  std::set<GroupElement> s;
  for (int k = -d; k <= d; ++k) s.insert(cyclic(group, k));
  return s;
}

std::set<GroupElement> halfcube_connection_set(int n) {
  std::set<GroupElement> s;
  s.insert(GroupElement{std::vector<int>(static_cast<std::size_t>(n), 0)});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::vector<int> c(static_cast<std::size_t>(n), 0);
      c[static_cast<std::size_t>(i)] = 1;
      c[static_cast<std::size_t>(j)] = 1;
      s.insert(GroupElement{std::move(c)});
    }
  }
  return s;
}

std::set<GroupElement> fourier_support(const ChordalCover& c) {
  std::set<GroupElement> t;
  for (std::size_t i = 0; i < c.cliques.size(); ++i) {
    for (int v : c.cliques[i]) {
      t.insert(c.group.mul(c.translations[i], c.group.element(static_cast<std::size_t>(v))));
    }
  }
  return t;
}

void validate_cover(const ChordalCover& c) {
  const std::size_t n = c.group.order();
  if (c.base.size() != n || c.cover.size() != n) {
    fail(ErrorKind::kCertificate, "graphs must have one vertex per character");
  }
  for (const auto& [u, v] : c.base.edges()) {
    if (!c.cover.has_edge(u, v)) fail(ErrorKind::kCertificate, "cover misses a base edge");
  }
  if (!is_perfect_elimination_order(c.cover, c.peo)) {
    fail(ErrorKind::kCertificate, "stored order does not certify chordality");
  }
  if (maximal_cliques_chordal(c.cover, c.peo) != c.cliques) {
    fail(ErrorKind::kCertificate, "cliques are not the maximal cliques of the cover");
  }
  if (c.translations.size() != c.cliques.size()) {
    fail(ErrorKind::kCertificate, "need one translation per clique");
  }
  for (std::size_t i = 0; i < c.cliques.size(); ++i) {
    for (int v : c.cliques[i]) {
      const auto shifted = c.group.mul(c.translations[i], c.group.element(static_cast<std::size_t>(v)));
      if (!c.fourier_support.contains(shifted)) {
        fail(ErrorKind::kCertificate, "translated clique " + std::to_string(i) + " leaves the support");
      }
    }
  }
}

ChordalCover assemble_cover(const GroupSpec& group, const std::set<GroupElement>& connection_set,
                            Graph cover_graph, const std::map<Clique, GroupElement>& translations) {
  ChordalCover c;
  c.group = group;
  c.connection_set = connection_set;
  c.connection_set.insert(group.identity());
  c.base = cayley_graph(group, c.connection_set);
  auto peo = is_chordal(cover_graph);
  if (!peo) fail(ErrorKind::kCertificate, "cover graph is not chordal");
  c.peo = std::move(*peo);
  c.cover = std::move(cover_graph);
  c.cliques = maximal_cliques_chordal(c.cover, c.peo);
  c.translations.reserve(c.cliques.size());
  for (const auto& clique : c.cliques) {
    auto it = translations.find(clique);
    if (it == translations.end()) fail(ErrorKind::kCertificate, "no translation for a maximal clique");
    c.translations.push_back(it->second);
  }
  c.fourier_support = fourier_support(c);
  validate_cover(c);
  return c;
}

ChordalCover cycle_plus_one_cover(int N) {
  if (N < 2) fail(ErrorKind::kInvalidParameter, "cycle_plus_one_cover needs N >= 2");
  std::vector<Triangle> triangles;
  triangulate_segment(0, N, triangles);
  return cover_from_triangles(make_group({N + 1}), triangles);
}

ChordalCover cycle_cover(int N) {
  if (N < 3) fail(ErrorKind::kInvalidParameter, "cycle_cover needs N >= 3");
  // Same recursion as the (N+1)-cycle with node N glued onto node 0: the top
  // triangle {0, 2^k, N} degenerates into the edge {0, 2^k} and disappears.
  long long p = 1;
  while (2 * p < N) p *= 2;
  std::vector<Triangle> triangles;
  triangulate_segment(0, p, triangles);
  triangulate_segment(p, N - p, triangles);
  return cover_from_triangles(make_group({N}), triangles);
}

ChordalCover hexagon_cover() {
  const GroupSpec group = make_group({6});
  const auto S = degree_set(6, 1);
  Graph g = cayley_graph(group, S);
  g.add_edge(1, 3);
  g.add_edge(3, 5);
  g.add_edge(0, 3);
  std::map<Clique, GroupElement> translations{
      {{0, 1, 3}, cyclic(group, 0)},
      {{1, 2, 3}, cyclic(group, -2)},
      {{3, 4, 5}, cyclic(group, -4)},
      {{0, 3, 5}, cyclic(group, 0)},
  };
  return assemble_cover(group, S, std::move(g), translations);
}

ChordalCover strong_product_cover(const ChordalCover& base_cycle, int d) {
  if (d <= 0) fail(ErrorKind::kInvalidParameter, "power cover needs d >= 1");
  if (base_cycle.group.rank() != 1) fail(ErrorKind::kInvalidParameter, "base cover must live on a cyclic group");
  const int M = base_cycle.group.moduli()[0];
  const int N = M * d;
  const GroupSpec group = make_group({N});
  const Graph product = strong_product_Kd(base_cycle.cover, d);
  // Vertex (q, r) sits at index q*d + r, which is exactly q*d + r in Z_N.
  std::vector<VertexLabel> labels;
  for (int i = 0; i < N; ++i) labels.push_back({i});
  Graph relabelled(std::move(labels));
  for (const auto& [u, v] : product.edges()) relabelled.add_edge(u, v);

  std::map<Clique, GroupElement> translations;
  for (std::size_t i = 0; i < base_cycle.cliques.size(); ++i) {
    Clique lifted;
    for (int q : base_cycle.cliques[i]) {
      for (int r = 0; r < d; ++r) lifted.push_back(q * d + r);
    }
    std::sort(lifted.begin(), lifted.end());
    translations.emplace(lifted, cyclic(group, static_cast<long long>(d) * base_cycle.translations[i].coords[0]));
  }
  ChordalCover c = assemble_cover(group, degree_set(N, d), std::move(relabelled), translations);
  // The support is {d*k + r : k in T, r < d} even when T is larger than the
  // union of translated cliques (e.g. after symmetrisation).
  std::set<GroupElement> lifted_support;
  for (const auto& k : base_cycle.fourier_support) {
    for (int r = 0; r < d; ++r) lifted_support.insert(cyclic(group, static_cast<long long>(d) * k.coords[0] + r));
  }
  c.fourier_support = std::move(lifted_support);
  validate_cover(c);
  return c;
}

ChordalCover power_cycle_cover(int N, int d) {
  if (d < 1 || N < 1) fail(ErrorKind::kInvalidParameter, "power_cycle_cover needs N, d >= 1");
  if (N % d != 0) {
    const int suggestion = d <= N ? smallest_divisor_geq(N, d) : N;
    fail(ErrorKind::kDivisibility, std::to_string(d) + " does not divide " + std::to_string(N) +
                                       "; smallest divisor >= d is " + std::to_string(suggestion));
  }
  const int M = N / d;
  if (M < 2) fail(ErrorKind::kInvalidParameter, "power_cycle_cover needs N/d >= 2");
  if (M == 2) {
    // C_2 is a single edge: one clique, identity translation.
    const GroupSpec z2 = make_group({2});
    Graph k2 = cayley_graph(z2, degree_set(2, 1));
    ChordalCover base = assemble_cover(z2, degree_set(2, 1), std::move(k2), {{{0, 1}, z2.identity()}});
    return strong_product_cover(base, d);
  }
  return strong_product_cover(cycle_cover(M), d);
}

ChordalCover trigonometric_cover(int N, int d) {
  if (N == 6 && d == 1) return hexagon_cover();
  return power_cycle_cover(N, d);
}

ChordalCover auto_cover(const GroupSpec& group, const std::set<GroupElement>& support) {
  for (const auto& s : support) {
    if (!group.contains(s)) fail(ErrorKind::kShape, "support element outside the group");
  }
  const GroupElement identity = group.identity();
  if (group.rank() == 1 && group.order() >= 3) {
    const int n = group.moduli()[0];
    int d = 0;
    for (const auto& s : support) d = std::max(d, std::min(s.coords[0], n - s.coords[0]));
    if (d >= 1) {
      const int dd = smallest_divisor_geq(n, d);
      if (n / dd >= 2) return trigonometric_cover(n, dd);
    }
  }
  const auto& moduli = group.moduli();
  const bool boolean = !moduli.empty() && std::all_of(moduli.begin(), moduli.end(), [](int m) { return m == 2; });
  if (boolean && moduli.size() >= 2 && moduli.size() <= 10) {
    const bool quadratic = std::all_of(support.begin(), support.end(), [](const GroupElement& s) {
      const int w = hamming_weight(s);
      return w == 0 || w == 2;
    });
    if (quadratic) return halfcube_cover(static_cast<int>(moduli.size()));
  }
  std::set<GroupElement> closed = support;
  for (const auto& s : support) closed.insert(group.inv(s));
  closed.insert(identity);
  return generic_cover(group, closed);
}

ChordalCover halfcube_cover(int n) {
  if (n < 2) fail(ErrorKind::kInvalidParameter, "halfcube_cover needs n >= 2");
  if (n > 20) fail(ErrorKind::kInvalidParameter, "halfcube_cover supports n <= 20");
  const GroupSpec group = make_group(std::vector<int>(static_cast<std::size_t>(n), 2));
  const std::size_t order = group.order();
  const int half = (n + 1) / 2;
  const int primary = half % 2 == 0 ? 0 : 1;  // parity of the directly layered component

  // Coordinate 0 is the element 1 of [n]; phi toggles it.
  auto phi_index = [&](std::size_t v) { return v ^ (std::size_t{1} << (n - 1)); };
  auto weight = [&](std::size_t v) { return std::popcount(v); };

  std::vector<VertexLabel> labels;
  for (const auto& g : group.elements()) labels.push_back(g.coords);
  Graph g(std::move(labels));
  for (std::size_t u = 0; u < order; ++u) {
    for (std::size_t v = u + 1; v < order; ++v) {
      const int wu = weight(u);
      const int wv = weight(v);
      if ((wu - wv) % 2 != 0) continue;
      const bool on_primary = ((wu % 2) + 2) % 2 == primary;
      const int a = on_primary ? wu : weight(phi_index(u));
      const int b = on_primary ? wv : weight(phi_index(v));
      if (std::abs(a - b) <= 2) g.add_edge(static_cast<int>(u), static_cast<int>(v));
    }
  }

  std::vector<int> layers;
  for (int k = primary; k <= n; k += 2) layers.push_back(k);
  std::vector<std::pair<int, int>> clique_layers;  // (k, k+2) or (k, k) for a single layer
  if (layers.size() == 1) {
    clique_layers.emplace_back(layers[0], layers[0]);
  } else {
    for (std::size_t i = 0; i + 1 < layers.size(); ++i) clique_layers.emplace_back(layers[i], layers[i + 1]);
  }

  GroupElement full{std::vector<int>(static_cast<std::size_t>(n), 1)};
  auto phi = [&](const GroupElement& s) {
    GroupElement t = s;
    t.coords[0] ^= 1;
    return t;
  };
  std::map<Clique, GroupElement> translations;
  for (const auto& [lo, hi] : clique_layers) {
    Clique c;
    Clique image;
    for (std::size_t v = 0; v < order; ++v) {
      const int w = weight(v);
      if (w == lo || w == hi) {
        c.push_back(static_cast<int>(v));
        image.push_back(static_cast<int>(phi_index(v)));
      }
    }
    std::sort(image.begin(), image.end());
    GroupElement shift = group.identity();
    if (lo <= half - 2) {
      shift = group.identity();
    } else if (n % 2 == 0) {
      shift = full;
    } else {
      shift = phi(full);
    }
    translations.emplace(c, shift);
    translations.emplace(image, phi(shift));
  }
  return assemble_cover(group, halfcube_connection_set(n), std::move(g), translations);
}

ChordalCover symmetrized(const ChordalCover& c) {
  ChordalCover out = c;
  for (const auto& t : c.fourier_support) out.fourier_support.insert(c.group.inv(t));
  return out;
}

ChordalCover find_translations(const GroupSpec& group, const std::set<GroupElement>& connection_set,
                               const Graph& cover_graph, TranslationStrategy strategy) {
  auto peo = is_chordal(cover_graph);
  if (!peo) fail(ErrorKind::kCertificate, "cover graph is not chordal");
  const auto cliques = maximal_cliques_chordal(cover_graph, *peo);
  std::map<Clique, GroupElement> translations;
  if (strategy == TranslationStrategy::kIdentity) {
    for (const auto& c : cliques) translations.emplace(c, group.identity());
    return assemble_cover(group, connection_set, cover_graph, translations);
  }
  if (group.order() > 4096) fail(ErrorKind::kInvalidParameter, "greedy translation search needs |G| <= 4096");

  std::vector<std::size_t> order(cliques.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cliques[a].size() > cliques[b].size(); });

  std::vector<bool> in_support(group.order(), false);
  for (std::size_t idx : order) {
    const auto& clique = cliques[idx];
    std::size_t best_chi = 0;
    std::size_t best_new = std::numeric_limits<std::size_t>::max();
    for (std::size_t chi = 0; chi < group.order() && best_new > 0; ++chi) {
      std::size_t fresh = 0;
      for (int v : clique) {
        if (!in_support[group.mul_index(chi, static_cast<std::size_t>(v))]) ++fresh;
      }
      if (fresh < best_new) {
        best_new = fresh;
        best_chi = chi;
      }
    }
    for (int v : clique) in_support[group.mul_index(best_chi, static_cast<std::size_t>(v))] = true;
    translations.emplace(clique, group.element(best_chi));
  }
  return assemble_cover(group, connection_set, cover_graph, translations);
}

ChordalCover generic_cover(const GroupSpec& group, const std::set<GroupElement>& connection_set) {
  auto S = connection_set;
  S.insert(group.identity());
  auto fill = min_fill_cover(cayley_graph(group, S));
  return find_translations(group, S, fill.cover);
}

int smallest_divisor_geq(int N, int d) {
  if (d < 1 || d > N) fail(ErrorKind::kInvalidParameter, "smallest_divisor_geq needs 1 <= d <= N");
  for (int candidate = d; candidate <= N; ++candidate) {
    if (N % candidate == 0) return candidate;
  }
  return N;
}

}  // namespace sparsos
