#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "sparsos/abelian.hpp"

namespace sparsos {

/// Vertex label: character coordinates, or (coordinates..., r) for vertices
/// of a strong product with K_d.
using VertexLabel = std::vector<int>;
using Clique = std::vector<int>;  // sorted vertex indices

/// Simple undirected graph on vertices 0..n-1 with attached labels.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::vector<VertexLabel> labels);
  static Graph unlabeled(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  std::size_t edge_count() const;
  const std::vector<VertexLabel>& labels() const { return labels_; }
  const VertexLabel& label(int v) const { return labels_[static_cast<std::size_t>(v)]; }

  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  /// Sorted (u, v) pairs with u < v.
  std::vector<std::pair<int, int>> edges() const;

  bool is_clique(const std::vector<int>& vertices) const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<VertexLabel> labels_;
  std::vector<std::vector<int>> adj_;  // sorted
};

/// Vertex order; a perfect elimination ordering when each vertex's later
/// neighbours form a clique.
struct EliminationOrder {
  std::vector<int> order;

  std::vector<int> positions() const;
};

Graph cayley_graph(const GroupSpec& group, const std::set<GroupElement>& connection_set);

/// Maximum cardinality search.
std::vector<int> maximum_cardinality_search(const Graph& g);
bool is_perfect_elimination_order(const Graph& g, const EliminationOrder& peo);
std::optional<EliminationOrder> is_chordal(const Graph& g);

/// Inclusion-maximal cliques, each sorted, the list sorted lexicographically.
std::vector<Clique> maximal_cliques_chordal(const Graph& g, const EliminationOrder& peo);

struct FillCover {
  Graph cover;
  EliminationOrder order;
};

/// Greedy minimum-fill triangulation; ties go to the smallest vertex label.
FillCover min_fill_cover(const Graph& g);

/// g ⊠ K_d: vertex (u, r) has index u*d + r and label label(u) + [r].
Graph strong_product_Kd(const Graph& g, int d);

/// True iff every edge {u,v} of g maps to an edge {map[u], map[v]} of h.
bool is_subgraph(const Graph& g, const Graph& h, const std::vector<int>& vertex_map);

}  // namespace sparsos
