#pragma once

// Kirchhoff polynomials of a graph: the classical spanning-tree sum in both
// conventions and the k-corrected polynomial
//
//   U(t) = sum over spanning trees T of ( prod_{e in T} t_e
//                                         + k * prod_{adjacent pairs} t_i t_j )
//
// where the correction runs over unordered pairs of tree edges sharing a
// vertex. Variable t_i is edge i-1 of the graph (1-based), k is variable 0.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "kgraph/graph.hpp"
#include "kgraph/multipoly.hpp"

namespace kgraph {

enum class Convention {
  tree,       ///< product over edges in the tree
  complement, ///< product over edges not in the tree (classical Kirchhoff)
};

/// The two monomials one spanning tree contributes.
struct TreeTerm {
  SpanningTree tree;
  Monomial classical;
  Monomial correction;
};

/// Number of tree edges at each vertex.
[[nodiscard]] inline std::vector<std::size_t>
tree_valences(const Graph &g, const SpanningTree &t) {
  std::vector<std::size_t> val(g.vertex_count(), 0);
  for (EdgeId e : t.edge_indices) {
    ++val[g.edges()[e].src];
    ++val[g.edges()[e].dst];
  }
  return val;
}

/// Exponent of every edge in the correction monomial: each tree edge is in
/// (valence - 1) adjacent pairs at each of its two endpoints. A tree with no
/// adjacent pair gives the empty product 1.
[[nodiscard]] inline Exponents correction_exponents(const Graph &g,
                                                    const SpanningTree &t) {
  const auto val = tree_valences(g, t);
  Exponents e(g.edge_count() + 1, 0);
  e[kKappa] = 1;
  for (EdgeId i : t.edge_indices) {
    const Edge &ed = g.edges()[i];
    e[i + 1] = static_cast<std::uint32_t>((val[ed.src] - 1) + (val[ed.dst] - 1));
  }
  return e;
}

[[nodiscard]] inline TreeTerm tree_term(const Graph &g, const SpanningTree &t) {
  Exponents classical(g.edge_count() + 1, 0);
  for (EdgeId i : t.edge_indices)
    classical[i + 1] = 1;
  return TreeTerm{t, {std::move(classical), 1}, {correction_exponents(g, t), 1}};
}

[[nodiscard]] inline std::vector<TreeTerm> tree_terms(const Graph &g) {
  std::vector<TreeTerm> out;
  for (const auto &t : spanning_trees(g))
    out.push_back(tree_term(g, t));
  return out;
}

[[nodiscard]] inline MultiPoly
classical_polynomial(const Graph &g, Convention convention = Convention::tree) {
  MultiPoly p(g.edge_count());
  for (const auto &t : spanning_trees(g)) {
    Exponents e(g.edge_count() + 1, 0);
    for (EdgeId i = 0; i < g.edge_count(); ++i)
      e[i + 1] = (t.contains(i) == (convention == Convention::tree)) ? 1 : 0;
    p.add_term(std::move(e), 1);
  }
  return p;
}

/// U_T for a single spanning tree.
[[nodiscard]] inline MultiPoly tree_polynomial(const Graph &g,
                                               const SpanningTree &t) {
  const TreeTerm term = tree_term(g, t);
  MultiPoly p(g.edge_count());
  p.add_term(term.classical.exponents, 1);
  p.add_term(term.correction.exponents, 1);
  return p;
}

[[nodiscard]] inline MultiPoly kappa_polynomial(const Graph &g) {
  MultiPoly p(g.edge_count());
  for (const auto &term : tree_terms(g)) {
    p.add_term(term.classical.exponents, 1);
    p.add_term(term.correction.exponents, 1);
  }
  return p;
}

/// max over spanning trees of sum_v d(v), d = 0, 2, 6 for tree valence
/// 1, 2, 3. Only defined when no tree vertex has valence above 3.
[[nodiscard]] inline std::uint64_t degree_bound(const Graph &g) {
  static constexpr std::array<std::uint64_t, 4> d{0, 0, 2, 6};
  std::uint64_t best = 0;
  for (const auto &t : spanning_trees(g)) {
    const auto val = tree_valences(g, t);
    std::uint64_t sum = 0;
    for (VertexId v = 0; v < val.size(); ++v) {
      if (val[v] > 3)
        throw ValenceError("vertex " + std::to_string(v) + " has valence " +
                           std::to_string(val[v]) + " in a spanning tree");
      sum += d[val[v]];
    }
    best = std::max(best, sum);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Deletion-contraction

/// Both sides of U(g) = U(g \ e) + e . U(g / e), everything expressed in the
/// variables of g.
///
/// The edge action is applied per tree through the bijection between trees
/// of g containing e and trees of g / e. A classical term is multiplied by
/// t_e. A correction term is multiplied by prod t_e t_k over tree edges k
/// meeting e; the correction it acts on is the one carried over from the
/// tree of g, i.e. without the adjacent pairs that only exist because the
/// contraction merged the two endpoints of e.
struct DeletionContraction {
  EdgeId edge = 0;
  MultiPoly deletion;    ///< U(g \ e) in the variables of g \ e
  MultiPoly contraction; ///< U(g / e) in the variables of g / e
  MultiPoly lhs;         ///< U(g)
  MultiPoly rhs;         ///< U(g \ e) + e . U(g / e)
  bool equal = false;
  /// The same identity when the action multiplies the correction computed on
  /// g / e itself (merged-vertex pairs included).
  MultiPoly literal_rhs;
  bool literal_equal = false;
};

[[nodiscard]] inline DeletionContraction
deletion_contraction_sides(const Graph &g, EdgeId e) {
  const Edge &cut = g.edge(e);
  const Graph without = delete_edge(g, e);
  if (!is_connected(without))
    throw DisconnectedGraph("deleting " + g.name(e) +
                            " disconnects the graph");
  const Graph merged = contract_edge(g, e);
  const std::size_t n = g.edge_count();

  // Reduced-graph edge i is edge i (i < e) or i + 1 (i >= e) of g.
  std::vector<VarId> to_g(n - 1);
  for (EdgeId i = 0; i + 1 < n; ++i)
    to_g[i] = (i < e ? i : i + 1) + 1;

  DeletionContraction out;
  out.edge = e;
  out.deletion = kappa_polynomial(without);
  out.contraction = kappa_polynomial(merged);
  out.lhs = kappa_polynomial(g);
  out.rhs = out.deletion.remap_t_vars(to_g, n);
  out.literal_rhs = out.rhs;

  for (const auto &tc : spanning_trees(merged)) {
    SpanningTree t;
    for (EdgeId i : tc.edge_indices)
      t.edge_indices.push_back(to_g[i] - 1);
    t.edge_indices.push_back(e);
    std::sort(t.edge_indices.begin(), t.edge_indices.end());

    const TreeTerm small = tree_term(merged, tc);
    Exponents classical(n + 1, 0);
    Exponents literal(n + 1, 0);
    classical[kKappa] = small.classical.exponents[kKappa];
    literal[kKappa] = small.correction.exponents[kKappa];
    for (EdgeId i = 0; i + 1 < n; ++i) {
      classical[to_g[i]] = small.classical.exponents[i + 1];
      literal[to_g[i]] = small.correction.exponents[i + 1];
    }
    classical[e + 1] += 1;

    // Tree edges of g meeting e, split by which endpoint of e they touch.
    std::vector<EdgeId> at_src, at_dst;
    for (EdgeId k : t.edge_indices) {
      if (k == e)
        continue;
      if (g.edges()[k].touches(cut.src))
        at_src.push_back(k);
      else if (g.edges()[k].touches(cut.dst))
        at_dst.push_back(k);
    }
    Exponents inherited = literal;
    for (EdgeId a : at_src)
      for (EdgeId b : at_dst) {
        --inherited[a + 1];
        --inherited[b + 1];
      }
    for (auto *corr : {&inherited, &literal}) {
      for (EdgeId k : at_src)
        (*corr)[k + 1] += 1;
      for (EdgeId k : at_dst)
        (*corr)[k + 1] += 1;
      (*corr)[e + 1] += static_cast<std::uint32_t>(at_src.size() + at_dst.size());
    }

    out.rhs.add_term(classical, 1);
    out.rhs.add_term(std::move(inherited), 1);
    out.literal_rhs.add_term(std::move(classical), 1);
    out.literal_rhs.add_term(std::move(literal), 1);
  }
  out.equal = out.lhs == out.rhs;
  out.literal_equal = out.lhs == out.literal_rhs;
  return out;
}

// ---------------------------------------------------------------------------
// Vertex split / triangle collapse

/// Result for the trees of the split graph that descend from one tree of g.
struct SplitGroup {
  SpanningTree parent;      ///< tree of g
  std::size_t valence = 0;  ///< tree valence of the split vertex in parent
  std::size_t members = 0;  ///< trees of the split graph in this group
  bool classical_ok = false;
  bool correction_ok = false;
  /// Which closed form matched: "valence-3", "valence-2", "valence-1" or
  /// "none".
  std::string form;
};

struct SplitCheck {
  VertexId vertex = 0;
  SplitResult split;
  std::vector<SplitGroup> groups;
  /// Trees of the split graph holding fewer than two triangle edges; they
  /// close a cycle through the vertex once the triangle collapses.
  std::size_t extra_trees = 0;
  bool collapse_recovers = false;
  bool passed = false;
  std::optional<std::string> first_mismatch;
};

namespace detail {

inline MultiPoly var(std::size_t n, EdgeId e) {
  return MultiPoly::variable(n, e + 1);
}

inline std::string tree_name(const Graph &g, const SpanningTree &t) {
  std::string s;
  for (EdgeId e : t.edge_indices)
    s += (s.empty() ? "" : ",") + g.name(e);
  return "{" + s + "}";
}

} // namespace detail

/// Split v into a triangle and check, tree by tree, that the polynomial of
/// the split graph is the transform of U(g): classical parts pick up
/// nu = ab + ag + bg over the triangle variables, and correction parts pick
/// up the closed form for the tree valence of v. Names a, b, c for the
/// incident edges are free, so every naming is tried.
[[nodiscard]] inline SplitCheck split_transform_check(const Graph &g,
                                                      VertexId v) {
  const auto slots = endpoints_at(g, v);
  if (slots.size() != 3 || slots[0].edge == slots[1].edge ||
      slots[1].edge == slots[2].edge || slots[0].edge == slots[2].edge)
    throw ValenceError("vertex " + std::to_string(v) +
                       " needs three distinct non-loop incident edges");

  SplitCheck out;
  out.vertex = v;
  out.split = split_vertex(g, v);
  const Graph &h = out.split.graph;
  const std::size_t n = h.edge_count();
  const auto &tri = out.split.triangle;

  // Triangle edge between two corners.
  auto side = [&](std::size_t c1, std::size_t c2) {
    const std::size_t lo = std::min(c1, c2), hi = std::max(c1, c2);
    const EdgeId e = lo == 0 ? (hi == 1 ? tri[0] : tri[1]) : tri[2];
    return detail::var(n, e);
  };
  const MultiPoly nu = side(0, 1) * side(0, 2) + side(0, 1) * side(1, 2) +
                       side(0, 2) * side(1, 2);

  std::vector<MultiPoly> group_classical;
  std::vector<MultiPoly> group_correction;
  const auto parents = spanning_trees(g);
  group_classical.assign(parents.size(), MultiPoly(n));
  group_correction.assign(parents.size(), MultiPoly(n));
  std::vector<std::size_t> members(parents.size(), 0);

  for (const auto &term : tree_terms(h)) {
    SpanningTree parent;
    std::size_t on_triangle = 0;
    for (EdgeId e : term.tree.edge_indices) {
      if (std::find(tri.begin(), tri.end(), e) != tri.end())
        ++on_triangle;
      else
        parent.edge_indices.push_back(e);
    }
    if (on_triangle < 2) {
      ++out.extra_trees;
      continue;
    }
    const auto it = std::lower_bound(parents.begin(), parents.end(), parent);
    if (it == parents.end() || *it != parent)
      throw Error("split tree does not descend from a tree of the graph");
    const auto idx = static_cast<std::size_t>(it - parents.begin());
    group_classical[idx].add_term(term.classical.exponents, 1);
    group_correction[idx].add_term(term.correction.exponents, 1);
    ++members[idx];
  }

  // Original edges keep their indices, so polynomials of g embed directly.
  std::vector<VarId> embed(g.edge_count());
  for (EdgeId i = 0; i < g.edge_count(); ++i)
    embed[i] = i + 1;

  out.passed = true;
  for (std::size_t idx = 0; idx < parents.size(); ++idx) {
    const auto &t = parents[idx];
    const TreeTerm parent = tree_term(g, t);
    const MultiPoly cl =
        MultiPoly::monomial(g.edge_count(), parent.classical.exponents)
            .remap_t_vars(embed, n);
    const MultiPoly corr =
        MultiPoly::monomial(g.edge_count(), parent.correction.exponents)
            .remap_t_vars(embed, n);

    SplitGroup grp;
    grp.parent = t;
    grp.members = members[idx];
    std::vector<std::size_t> in_tree, out_tree;
    for (std::size_t s = 0; s < 3; ++s)
      (t.contains(slots[s].edge) ? in_tree : out_tree).push_back(s);
    grp.valence = in_tree.size();
    grp.classical_ok = group_classical[idx] == cl * nu;
    grp.form = "none";

    // Slot s is attached at corner s.
    auto edge_var = [&](std::size_t s) { return detail::var(n, slots[s].edge); };
    std::array<std::size_t, 3> perm{0, 1, 2};
    do {
      // a, b, c are the incident edges at corners A, B, C.
      const std::size_t A = perm[0], B = perm[1], C = perm[2];
      const MultiPoly a = edge_var(A), b = edge_var(B), c = edge_var(C);
      if (grp.valence == 3) {
        const MultiPoly al = side(A, C), be = side(A, B), ga = side(B, C);
        const MultiPoly f3 = a * al.pow(3) * be.pow(3) +
                             c * al.pow(3) * ga.pow(3) +
                             b * be.pow(3) * ga.pow(3);
        if (group_correction[idx] * (a * b * c) == corr * f3)
          grp.form = "valence-3";
      } else if (grp.valence == 2) {
        if (!t.contains(slots[A].edge) || !t.contains(slots[B].edge))
          continue;
        const MultiPoly al = side(A, B), be = side(A, C), ga = side(B, C);
        const MultiPoly f2 = a * al.pow(3) * be.pow(2) +
                             b * al.pow(3) * ga.pow(2) + be.pow(2) * ga.pow(2);
        if (group_correction[idx] == corr * f2)
          grp.form = "valence-2";
      } else if (grp.valence == 1) {
        if (!t.contains(slots[A].edge))
          continue;
        const MultiPoly x = side(A, B), y = side(A, C), z = side(B, C);
        const MultiPoly f1 = a.pow(2) * x.pow(2) * y.pow(2) +
                             a * x.pow(2) * z + a * y.pow(2) * z;
        if (group_correction[idx] == corr * f1)
          grp.form = "valence-1";
      }
    } while (grp.form == "none" && std::next_permutation(perm.begin(), perm.end()));

    grp.correction_ok = grp.form != "none";
    const bool ok = grp.members == 3 && grp.classical_ok && grp.correction_ok;
    if (!ok && out.passed) {
      out.passed = false;
      out.first_mismatch = detail::tree_name(g, t);
    }
    out.groups.push_back(std::move(grp));
  }

  const Graph back = collapse_triangle(h, tri);
  out.collapse_recovers =
      back.vertex_count() == g.vertex_count() && back.edges() == g.edges() &&
      kappa_polynomial(back) == kappa_polynomial(g);
  out.passed = out.passed && out.collapse_recovers;
  if (!out.collapse_recovers && !out.first_mismatch)
    out.first_mismatch = "collapse of the split triangle";
  return out;
}

} // namespace kgraph
