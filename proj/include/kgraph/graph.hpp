#pragma once

// Ordered labeled multigraphs, spanning-tree enumeration and the four graph
// surgeries used by the polynomial constructions: deletion, contraction,
// vertex split and triangle collapse.

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kgraph/error.hpp"

namespace kgraph {

using VertexId = std::size_t;
using EdgeId = std::size_t;

/// An edge between two vertex indices. The orientation src -> dst is kept
/// for the incidence matrix only; nothing polynomial depends on it.
struct Edge {
  VertexId src = 0;
  VertexId dst = 0;

  [[nodiscard]] bool is_loop() const noexcept { return src == dst; }
  [[nodiscard]] bool touches(VertexId v) const noexcept {
    return src == v || dst == v;
  }
  [[nodiscard]] bool shares_vertex(const Edge &o) const noexcept {
    return touches(o.src) || touches(o.dst);
  }
  friend bool operator==(const Edge &, const Edge &) = default;
};

/// Sorted set of edge indices into a parent graph.
struct SpanningTree {
  std::vector<EdgeId> edge_indices;

  [[nodiscard]] bool contains(EdgeId e) const {
    return std::binary_search(edge_indices.begin(), edge_indices.end(), e);
  }
  friend bool operator==(const SpanningTree &, const SpanningTree &) = default;
  friend auto operator<=>(const SpanningTree &, const SpanningTree &) = default;
};

/// Ordered multigraph. The position of an edge in edges() is its place in
/// the edge order. Self-loops and parallel edges are allowed. Immutable.
class Graph {
public:
  Graph() = default;

  Graph(std::size_t vertex_count, std::vector<Edge> edges,
        std::vector<std::string> labels = {})
      : vertex_count_(vertex_count), edges_(std::move(edges)),
        labels_(std::move(labels)) {
    validate();
  }

  [[nodiscard]] std::size_t vertex_count() const noexcept {
    return vertex_count_;
  }
  [[nodiscard]] std::size_t edge_count() const noexcept {
    return edges_.size();
  }
  [[nodiscard]] const std::vector<Edge> &edges() const noexcept {
    return edges_;
  }
  [[nodiscard]] const Edge &edge(EdgeId e) const {
    check_edge(e);
    return edges_[e];
  }
  [[nodiscard]] bool has_labels() const noexcept { return !labels_.empty(); }
  [[nodiscard]] const std::vector<std::string> &labels() const noexcept {
    return labels_;
  }

  /// Edge name: its label if present, otherwise "t<k>" with k 1-based.
  [[nodiscard]] std::string name(EdgeId e) const {
    check_edge(e);
    return has_labels() ? labels_[e] : "t" + std::to_string(e + 1);
  }

  [[nodiscard]] std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(edges_.size());
    for (EdgeId e = 0; e < edges_.size(); ++e)
      out.push_back(name(e));
    return out;
  }

  [[nodiscard]] std::optional<EdgeId>
  find_label(const std::string &label) const {
    for (EdgeId e = 0; e < labels_.size(); ++e)
      if (labels_[e] == label)
        return e;
    return std::nullopt;
  }

  [[nodiscard]] EdgeId edge_by_label(const std::string &label) const {
    if (auto e = find_label(label))
      return *e;
    throw UnknownEdgeLabel("no edge labeled '" + label + "'");
  }

  /// Number of edge endpoints at v; a loop counts twice.
  [[nodiscard]] std::size_t valence(VertexId v) const {
    std::size_t n = 0;
    for (const auto &e : edges_)
      n += (e.src == v) + (e.dst == v);
    return n;
  }

  /// Incidence coefficient: +1 if v = dst(e), -1 if v = src(e), 0 otherwise
  /// (and for loops).
  [[nodiscard]] int incidence(VertexId v, EdgeId e) const {
    const Edge &ed = edge(e);
    if (ed.is_loop())
      return 0;
    if (ed.dst == v)
      return 1;
    if (ed.src == v)
      return -1;
    return 0;
  }

  void check_edge(EdgeId e) const {
    if (e >= edges_.size())
      throw IndexOutOfRange("edge index " + std::to_string(e) +
                            " >= edge count " + std::to_string(edges_.size()));
  }
  void check_vertex(VertexId v) const {
    if (v >= vertex_count_)
      throw IndexOutOfRange("vertex index " + std::to_string(v) +
                            " >= vertex count " +
                            std::to_string(vertex_count_));
  }

  friend bool operator==(const Graph &, const Graph &) = default;

private:
  void validate() const {
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (edges_[i].src >= vertex_count_ || edges_[i].dst >= vertex_count_)
        throw InvalidGraph("edge " + std::to_string(i) +
                           " has an endpoint outside [0, " +
                           std::to_string(vertex_count_) + ")");
    if (!labels_.empty()) {
      if (labels_.size() != edges_.size())
        throw InvalidGraph("label count does not match edge count");
      std::set<std::string> seen;
      for (const auto &l : labels_)
        if (!seen.insert(l).second)
          throw InvalidGraph("duplicate edge label '" + l + "'");
    }
  }

  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
};

namespace detail {

class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x)
      x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    parent_[b] = a;
    return true;
  }

private:
  std::vector<std::size_t> parent_;
};

inline std::vector<std::string> erase_label(const Graph &g, EdgeId e) {
  if (!g.has_labels())
    return {};
  auto labels = g.labels();
  labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(e));
  return labels;
}

// Merge the vertices of `group` into its smallest member and renumber the
// survivors so indices stay contiguous and order-preserving.
inline std::vector<VertexId> merge_map(std::size_t vertex_count,
                                       std::vector<VertexId> group) {
  std::sort(group.begin(), group.end());
  group.erase(std::unique(group.begin(), group.end()), group.end());
  const VertexId keep = group.front();
  std::vector<VertexId> map(vertex_count);
  VertexId next = 0;
  for (VertexId v = 0; v < vertex_count; ++v) {
    if (v != keep && std::binary_search(group.begin(), group.end(), v))
      continue;
    map[v] = next++;
  }
  for (VertexId v : group)
    map[v] = map[keep];
  return map;
}

} // namespace detail

[[nodiscard]] inline bool is_connected(const Graph &g) {
  if (g.vertex_count() == 0)
    return false;
  detail::DisjointSets ds(g.vertex_count());
  std::size_t components = g.vertex_count();
  for (const auto &e : g.edges())
    components -= ds.unite(e.src, e.dst);
  return components == 1;
}

/// Every spanning tree of g exactly once, ordered lexicographically on the
/// sorted edge-index lists.
///
/// Include/exclude recursion over the edge order: including an edge is a
/// contraction in the union-find, excluding it is a deletion that is only
/// taken while the edges still available can connect every vertex.
[[nodiscard]] inline std::vector<SpanningTree> spanning_trees(const Graph &g) {
  if (!is_connected(g))
    throw DisconnectedGraph("graph with " + std::to_string(g.vertex_count()) +
                            " vertices is not connected");
  const std::size_t need = g.vertex_count() - 1;
  const auto &edges = g.edges();
  std::vector<SpanningTree> out;
  std::vector<EdgeId> chosen;
  chosen.reserve(need);

  auto can_still_connect = [&](const detail::DisjointSets &ds, EdgeId from) {
    detail::DisjointSets probe = ds;
    std::size_t joins = chosen.size();
    for (EdgeId j = from; j < edges.size() && joins < need; ++j)
      joins += probe.unite(edges[j].src, edges[j].dst);
    return joins == need;
  };

  auto recurse = [&](auto &self, EdgeId i, detail::DisjointSets ds) -> void {
    if (chosen.size() == need) {
      out.push_back(SpanningTree{chosen});
      return;
    }
    if (i == edges.size())
      return;
    const Edge &e = edges[i];
    if (!e.is_loop() && ds.find(e.src) != ds.find(e.dst)) {
      detail::DisjointSets with = ds;
      with.unite(e.src, e.dst);
      chosen.push_back(i);
      self(self, i + 1, std::move(with));
      chosen.pop_back();
    }
    if (can_still_connect(ds, i + 1))
      self(self, i + 1, std::move(ds));
  };
  recurse(recurse, 0, detail::DisjointSets(g.vertex_count()));
  return out;
}

/// Edges of the tree incident to v, in edge order; a tree never holds loops.
[[nodiscard]] inline std::vector<EdgeId>
tree_edges_at(const Graph &g, const SpanningTree &t, VertexId v) {
  std::vector<EdgeId> out;
  for (EdgeId e : t.edge_indices)
    if (g.edges()[e].touches(v))
      out.push_back(e);
  return out;
}

[[nodiscard]] inline Graph delete_edge(const Graph &g, EdgeId e) {
  g.check_edge(e);
  auto edges = g.edges();
  edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(e));
  return Graph(g.vertex_count(), std::move(edges), detail::erase_label(g, e));
}

/// Merge the endpoints of e into the smaller index, drop e, keep everything
/// else (edges parallel to e become loops).
[[nodiscard]] inline Graph contract_edge(const Graph &g, EdgeId e) {
  const Edge &c = g.edge(e);
  if (c.is_loop())
    throw SelfLoopContraction("edge " + g.name(e) + " is a self-loop");
  const auto map = detail::merge_map(g.vertex_count(), {c.src, c.dst});
  std::vector<Edge> edges;
  edges.reserve(g.edge_count() - 1);
  for (EdgeId i = 0; i < g.edge_count(); ++i)
    if (i != e)
      edges.push_back({map[g.edges()[i].src], map[g.edges()[i].dst]});
  return Graph(g.vertex_count() - 1, std::move(edges),
               detail::erase_label(g, e));
}

/// One endpoint slot of an edge at a vertex: (edge, true) is the dst side.
struct Endpoint {
  EdgeId edge;
  bool at_dst;
  friend bool operator==(const Endpoint &, const Endpoint &) = default;
};

/// Endpoint slots at v in edge order, src side before dst side.
[[nodiscard]] inline std::vector<Endpoint> endpoints_at(const Graph &g,
                                                        VertexId v) {
  g.check_vertex(v);
  std::vector<Endpoint> out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (g.edges()[e].src == v)
      out.push_back({e, false});
    if (g.edges()[e].dst == v)
      out.push_back({e, true});
  }
  return out;
}

/// Corner index (0, 1 or 2) for each of the three endpoint slots returned by
/// endpoints_at, in that order.
using CornerAssignment = std::array<std::size_t, 3>;

/// Result of split_vertex: the new graph plus where the triangle sits.
struct SplitResult {
  Graph graph;
  /// corners[k] is the vertex index of triangle corner k; corners[0] reuses
  /// the split vertex's index.
  std::array<VertexId, 3> corners;
  /// Triangle edges in append order: (c0,c1), (c0,c2), (c1,c2).
  std::array<EdgeId, 3> triangle;
};

/// Replace a trivalent vertex by a triangle. The triangle edges are appended
/// after all existing edges and labeled alpha, beta, gamma when the graph is
/// labeled.
[[nodiscard]] inline SplitResult
split_vertex(const Graph &g, VertexId v,
             CornerAssignment assignment = {0, 1, 2}) {
  const auto slots = endpoints_at(g, v);
  if (slots.size() != 3)
    throw ValenceError("vertex " + std::to_string(v) + " has valence " +
                       std::to_string(slots.size()) + ", split needs 3");
  {
    auto sorted = assignment;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != CornerAssignment{0, 1, 2})
      throw InvalidGraph("corner assignment must be a permutation of 0,1,2");
  }
  const std::size_t n = g.vertex_count();
  const std::array<VertexId, 3> corners{v, n, n + 1};
  auto edges = g.edges();
  for (std::size_t s = 0; s < 3; ++s) {
    Edge &e = edges[slots[s].edge];
    (slots[s].at_dst ? e.dst : e.src) = corners[assignment[s]];
  }
  const EdgeId first = edges.size();
  edges.push_back({corners[0], corners[1]});
  edges.push_back({corners[0], corners[2]});
  edges.push_back({corners[1], corners[2]});

  std::vector<std::string> labels;
  if (g.has_labels()) {
    labels = g.labels();
    for (std::string base : {"alpha", "beta", "gamma"}) {
      std::string label = base;
      for (int k = 2; g.find_label(label); ++k)
        label = base + "_" + std::to_string(k);
      labels.push_back(label);
    }
  }
  return SplitResult{Graph(n + 2, std::move(edges), std::move(labels)),
                     corners,
                     {first, first + 1, first + 2}};
}

/// Merge the three vertices of a 3-cycle into the smallest of them and delete
/// the cycle's edges.
[[nodiscard]] inline Graph collapse_triangle(const Graph &g,
                                             std::array<EdgeId, 3> triangle) {
  for (EdgeId e : triangle)
    g.check_edge(e);
  auto describe = [&] {
    return g.name(triangle[0]) + "," + g.name(triangle[1]) + "," +
           g.name(triangle[2]);
  };
  if (triangle[0] == triangle[1] || triangle[0] == triangle[2] ||
      triangle[1] == triangle[2])
    throw NotATriangle("repeated edge in {" + describe() + "}");
  std::vector<VertexId> verts;
  for (EdgeId e : triangle) {
    const Edge &ed = g.edges()[e];
    if (ed.is_loop())
      throw NotATriangle("{" + describe() + "} contains a loop");
    verts.push_back(ed.src);
    verts.push_back(ed.dst);
  }
  std::sort(verts.begin(), verts.end());
  // A 3-cycle on distinct vertices uses each of its three vertices twice.
  const bool cycle = verts[0] == verts[1] && verts[2] == verts[3] &&
                     verts[4] == verts[5] && verts[1] != verts[2] &&
                     verts[3] != verts[4];
  if (!cycle)
    throw NotATriangle("{" + describe() + "} is not a 3-cycle");

  const auto map =
      detail::merge_map(g.vertex_count(), {verts[0], verts[2], verts[4]});
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (std::find(triangle.begin(), triangle.end(), e) != triangle.end())
      continue;
    edges.push_back({map[g.edges()[e].src], map[g.edges()[e].dst]});
    if (g.has_labels())
      labels.push_back(g.labels()[e]);
  }
  return Graph(g.vertex_count() - 2, std::move(edges), std::move(labels));
}

/// Graph with its edge list reordered: new edge i is old edge order[i].
[[nodiscard]] inline Graph permute_edges(const Graph &g,
                                         const std::vector<EdgeId> &order) {
  if (order.size() != g.edge_count())
    throw InvalidGraph("permutation size does not match edge count");
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  std::vector<bool> used(order.size(), false);
  for (EdgeId old : order) {
    g.check_edge(old);
    if (used[old])
      throw InvalidGraph("edge order is not a permutation");
    used[old] = true;
    edges.push_back(g.edges()[old]);
    if (g.has_labels())
      labels.push_back(g.labels()[old]);
  }
  return Graph(g.vertex_count(), std::move(edges), std::move(labels));
}

/// Naive isomorphism test over all vertex permutations, ignoring edge order,
/// labels and orientation. Desk-scale graphs only.
[[nodiscard]] inline bool is_isomorphic(const Graph &a, const Graph &b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
    return false;
  auto key = [](VertexId x, VertexId y) {
    return std::pair{std::min(x, y), std::max(x, y)};
  };
  std::vector<std::pair<VertexId, VertexId>> target;
  for (const auto &e : b.edges())
    target.push_back(key(e.src, e.dst));
  std::sort(target.begin(), target.end());

  std::vector<VertexId> perm(a.vertex_count());
  std::iota(perm.begin(), perm.end(), VertexId{0});
  std::vector<std::pair<VertexId, VertexId>> mapped(a.edge_count());
  do {
    for (std::size_t i = 0; i < a.edge_count(); ++i)
      mapped[i] = key(perm[a.edges()[i].src], perm[a.edges()[i].dst]);
    std::sort(mapped.begin(), mapped.end());
    if (mapped == target)
      return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

} // namespace kgraph
