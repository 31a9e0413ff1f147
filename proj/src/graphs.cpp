#include "sparsos/graphs.hpp"

#include <algorithm>
#include <limits>

#include "sparsos/error.hpp"

namespace sparsos {

Graph::Graph(std::vector<VertexLabel> labels)
    : labels_(std::move(labels)), adj_(labels_.size()) {}

Graph Graph::unlabeled(std::size_t n) {
  std::vector<VertexLabel> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = {static_cast<int>(i)};
  return Graph(std::move(labels));
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& nb : adj_) twice += nb.size();
  return twice / 2;
}

void Graph::add_edge(int u, int v) {
  const auto n = static_cast<int>(size());
  if (u < 0 || v < 0 || u >= n || v >= n) fail(ErrorKind::kShape, "edge endpoint out of range");
  if (u == v) return;
  auto insert = [](std::vector<int>& nb, int w) {
    auto it = std::lower_bound(nb.begin(), nb.end(), w);
    if (it == nb.end() || *it != w) nb.insert(it, w);
  };
  insert(adj_[static_cast<std::size_t>(u)], v);
  insert(adj_[static_cast<std::size_t>(v)], u);
}

bool Graph::has_edge(int u, int v) const {
  const auto& nb = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t u = 0; u < adj_.size(); ++u) {
    for (int v : adj_[u]) {
      if (static_cast<int>(u) < v) out.emplace_back(static_cast<int>(u), v);
    }
  }
  return out;
}

bool Graph::is_clique(const std::vector<int>& vertices) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (!has_edge(vertices[i], vertices[j])) return false;
    }
  }
  return true;
}

std::vector<int> EliminationOrder::positions() const {
  std::vector<int> pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  return pos;
}

Graph cayley_graph(const GroupSpec& group, const std::set<GroupElement>& connection_set) {
  for (const auto& s : connection_set) {
    if (!group.contains(s)) fail(ErrorKind::kShape, "connection set element outside the group");
    if (!connection_set.contains(group.inv(s))) {
      fail(ErrorKind::kSymmetry, "connection set is not closed under inversion");
    }
  }
  std::vector<VertexLabel> labels;
  labels.reserve(group.order());
  for (const auto& g : group.elements()) labels.push_back(g.coords);
  Graph graph(std::move(labels));
  const GroupElement identity = group.identity();
  for (std::size_t u = 0; u < group.order(); ++u) {
    const GroupElement gu = group.element(u);
    for (const auto& s : connection_set) {
      if (s == identity) continue;
      graph.add_edge(static_cast<int>(u), static_cast<int>(group.index_of(group.mul(gu, s))));
    }
  }
  return graph;
}

std::vector<int> maximum_cardinality_search(const Graph& g) {
  // Bucketed MCS: repeatedly visit an unvisited vertex with the most visited
  // neighbours. Ties go to the smallest index. The elimination order is the
  // reverse of the visit order.
  const std::size_t n = g.size();
  std::vector<int> weight(n, 0);
  std::vector<bool> visited(n, false);
  std::vector<std::set<int>> buckets(n + 1);
  for (std::size_t v = 0; v < n; ++v) buckets[0].insert(static_cast<int>(v));
  std::size_t top = 0;
  std::vector<int> visit;
  visit.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    while (buckets[top].empty()) --top;
    const int v = *buckets[top].begin();
    buckets[top].erase(buckets[top].begin());
    visited[static_cast<std::size_t>(v)] = true;
    visit.push_back(v);
    for (int w : g.neighbors(v)) {
      const auto wi = static_cast<std::size_t>(w);
      if (visited[wi]) continue;
      buckets[static_cast<std::size_t>(weight[wi])].erase(w);
      ++weight[wi];
      buckets[static_cast<std::size_t>(weight[wi])].insert(w);
      top = std::max(top, static_cast<std::size_t>(weight[wi]));
    }
  }
  std::reverse(visit.begin(), visit.end());
  return visit;
}

bool is_perfect_elimination_order(const Graph& g, const EliminationOrder& peo) {
  const std::size_t n = g.size();
  if (peo.order.size() != n) return false;
  std::vector<int> pos(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const int v = peo.order[i];
    if (v < 0 || static_cast<std::size_t>(v) >= n || pos[static_cast<std::size_t>(v)] != -1) return false;
    pos[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  // For each v with later neighbours L, let u be the earliest of them; the
  // order is perfect iff L \ {u} is adjacent to u for every v.
  for (int v : peo.order) {
    int parent = -1;
    for (int w : g.neighbors(v)) {
      if (pos[static_cast<std::size_t>(w)] > pos[static_cast<std::size_t>(v)] &&
          (parent == -1 || pos[static_cast<std::size_t>(w)] < pos[static_cast<std::size_t>(parent)])) {
        parent = w;
      }
    }
    if (parent == -1) continue;
    for (int w : g.neighbors(v)) {
      if (w == parent || pos[static_cast<std::size_t>(w)] < pos[static_cast<std::size_t>(v)]) continue;
      if (!g.has_edge(parent, w)) return false;
    }
  }
  return true;
}

std::optional<EliminationOrder> is_chordal(const Graph& g) {
  EliminationOrder peo{maximum_cardinality_search(g)};
  if (is_perfect_elimination_order(g, peo)) return peo;
  return std::nullopt;
}

std::vector<Clique> maximal_cliques_chordal(const Graph& g, const EliminationOrder& peo) {
  if (!is_perfect_elimination_order(g, peo)) {
    fail(ErrorKind::kCertificate, "order is not a perfect elimination ordering");
  }
  const auto pos = peo.positions();
  std::vector<Clique> candidates;
  candidates.reserve(g.size());
  for (int v : peo.order) {
    Clique c{v};
    for (int w : g.neighbors(v)) {
      if (pos[static_cast<std::size_t>(w)] > pos[static_cast<std::size_t>(v)]) c.push_back(w);
    }
    std::sort(c.begin(), c.end());
    candidates.push_back(std::move(c));
  }
  // Every maximal clique is some candidate; drop candidates strictly inside
  // a larger one.
  std::sort(candidates.begin(), candidates.end(),
            [](const Clique& a, const Clique& b) { return a.size() > b.size() || (a.size() == b.size() && a < b); });
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<Clique> maximal;
  for (const auto& c : candidates) {
    bool contained = false;
    for (const auto& m : maximal) {
      if (m.size() > c.size() && std::includes(m.begin(), m.end(), c.begin(), c.end())) {
        contained = true;
        break;
      }
    }
    if (!contained) maximal.push_back(c);
  }
  std::sort(maximal.begin(), maximal.end());
  return maximal;
}

FillCover min_fill_cover(const Graph& g) {
  const std::size_t n = g.size();
  Graph cover = g;
  std::vector<bool> eliminated(n, false);
  std::vector<int> order;
  order.reserve(n);
  // Candidate vertices sorted by label so the scan order breaks ties.
  std::vector<int> by_label(n);
  for (std::size_t i = 0; i < n; ++i) by_label[i] = static_cast<int>(i);
  std::stable_sort(by_label.begin(), by_label.end(),
                   [&](int a, int b) { return g.label(a) < g.label(b); });

  auto live_neighbors = [&](int v) {
    std::vector<int> out;
    for (int w : cover.neighbors(v)) {
      if (!eliminated[static_cast<std::size_t>(w)]) out.push_back(w);
    }
    return out;
  };
  auto fill_of = [&](int v) {
    const auto nb = live_neighbors(v);
    std::size_t missing = 0;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (!cover.has_edge(nb[i], nb[j])) ++missing;
      }
    }
    return missing;
  };

  for (std::size_t step = 0; step < n; ++step) {
    int best = -1;
    std::size_t best_fill = std::numeric_limits<std::size_t>::max();
    for (int v : by_label) {
      if (eliminated[static_cast<std::size_t>(v)]) continue;
      const std::size_t fill = fill_of(v);
      if (fill < best_fill) {
        best_fill = fill;
        best = v;
        if (fill == 0) break;
      }
    }
    const auto nb = live_neighbors(best);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) cover.add_edge(nb[i], nb[j]);
    }
    eliminated[static_cast<std::size_t>(best)] = true;
    order.push_back(best);
  }
  return {std::move(cover), EliminationOrder{std::move(order)}};
}

Graph strong_product_Kd(const Graph& g, int d) {
  if (d <= 0) fail(ErrorKind::kInvalidParameter, "strong product needs d >= 1");
  const auto du = static_cast<std::size_t>(d);
  std::vector<VertexLabel> labels;
  labels.reserve(g.size() * du);
  for (const auto& label : g.labels()) {
    for (int r = 0; r < d; ++r) {
      VertexLabel l = label;
      l.push_back(r);
      labels.push_back(std::move(l));
    }
  }
  Graph product(std::move(labels));
  for (std::size_t u = 0; u < g.size(); ++u) {
    const int base = static_cast<int>(u * du);
    for (int r = 0; r < d; ++r) {
      for (int s = r + 1; s < d; ++s) product.add_edge(base + r, base + s);
    }
    for (int v : g.neighbors(static_cast<int>(u))) {
      if (v < static_cast<int>(u)) continue;
      for (int r = 0; r < d; ++r) {
        for (int s = 0; s < d; ++s) product.add_edge(base + r, v * d + s);
      }
    }
  }
  return product;
}

bool is_subgraph(const Graph& g, const Graph& h, const std::vector<int>& vertex_map) {
  if (vertex_map.size() != g.size() || g.size() != h.size()) {
    fail(ErrorKind::kMap, "vertex map must be a bijection between equal-size vertex sets");
  }
  std::vector<bool> hit(h.size(), false);
  for (int t : vertex_map) {
    if (t < 0 || static_cast<std::size_t>(t) >= h.size() || hit[static_cast<std::size_t>(t)]) {
      fail(ErrorKind::kMap, "vertex map is not a bijection");
    }
    hit[static_cast<std::size_t>(t)] = true;
  }
  for (const auto& [u, v] : g.edges()) {
    if (!h.has_edge(vertex_map[static_cast<std::size_t>(u)], vertex_map[static_cast<std::size_t>(v)])) return false;
  }
  return true;
}

}  // namespace sparsos
