#pragma once

// Normalization of a valid tree decomposition into nice form: Leaf /
// Introduce(v) / Introduce(C) / Forget(v) / Join with an empty root bag.
// Width is preserved; path inputs yield path outputs.

#include "widthred/decomposition.hpp"

namespace widthred {

enum class NiceShape { Tree, Path };

namespace detail {

struct NiceBuilder {
  const TreeDecomposition &in;
  TreeDecomposition out;
  // clause index -> original node it is assigned to
  std::vector<std::vector<int>> clauses_at;

  explicit NiceBuilder(const TreeDecomposition &td, size_t num_clauses)
      : in(td), clauses_at(td.nodes.size()) {
    (void)num_clauses;
  }

  // Chain of Forget nodes (sorted) then Introduce nodes (sorted) morphing
  // `from` into `to`; keeps every intermediate bag within max(|from|,|to|).
  int morph(int below, std::vector<int> from, const std::vector<int> &to) {
    std::vector<int> drop, add;
    for (int v : from)
      if (!std::binary_search(to.begin(), to.end(), v)) drop.push_back(v);
    for (int v : to)
      if (!std::binary_search(from.begin(), from.end(), v)) add.push_back(v);
    int cur = below;
    std::vector<int> bag = from;
    for (int v : drop) {
      bag.erase(std::find(bag.begin(), bag.end(), v));
      cur = out.add_node(bag, NodeKind::Forget, v, {cur});
    }
    for (int v : add) {
      bag.push_back(v);
      cur = out.add_node(bag, NodeKind::IntroduceVertex, v, {cur});
    }
    return cur;
  }

  // Builds the nice subtree for original node i; returns the nice node whose
  // bag equals X_i (with this node's Introduce(C) chain already on top).
  int build(int i) {
    const DecompNode &nd = in.node(i);
    int top;
    if (nd.children.empty()) {
      int cur = out.add_node({}, NodeKind::Leaf, -1, {});
      top = morph(cur, {}, nd.bag);
    } else if (nd.children.size() == 1) {
      int c = build(nd.children[0]);
      top = morph(c, in.node(nd.children[0]).bag, nd.bag);
    } else {
      // left-leaning Join chain over the children
      std::vector<int> tops;
      for (int c : nd.children) tops.push_back(morph(build(c), in.node(c).bag, nd.bag));
      top = tops[0];
      for (size_t k = 1; k < tops.size(); ++k)
        top = out.add_node(nd.bag, NodeKind::Join, -1, {top, tops[k]});
    }
    for (int ci : clauses_at[static_cast<size_t>(i)])
      top = out.add_node(in.node(i).bag, NodeKind::IntroduceClause, ci, {top});
    return top;
  }
};

inline TreeDecomposition normalize_nice_impl(const UGraph &g, const TreeDecomposition &td,
                                             const std::vector<std::vector<int>> &clause_vars,
                                             NiceShape shape) {
  {
    ValidationReport rep = validate_decomposition(g, td);
    if (!rep.ok()) fail("normalize_nice: input decomposition invalid:\n" + rep.summary());
  }
  if (shape == NiceShape::Path && !td.path_shaped())
    fail("normalize_nice: path shape requested but input is not a path");

  NiceBuilder b(td, clause_vars.size());

  // Deterministic clause assignment: depth-first from the root, first visited
  // bag containing all of the clause's variables.
  {
    std::vector<int> order;
    std::vector<int> stack{td.root};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      order.push_back(i);
      const auto &ch = td.node(i).children;
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    std::vector<char> assigned(clause_vars.size(), 0);
    for (int i : order) {
      const auto &bag = td.node(i).bag;
      for (size_t ci = 0; ci < clause_vars.size(); ++ci) {
        if (assigned[ci]) continue;
        bool all = true;
        for (int v : clause_vars[ci])
          if (!std::binary_search(bag.begin(), bag.end(), v)) {
            all = false;
            break;
          }
        if (all) {
          assigned[ci] = 1;
          b.clauses_at[static_cast<size_t>(i)].push_back(static_cast<int>(ci));
        }
      }
    }
    for (size_t ci = 0; ci < clause_vars.size(); ++ci)
      if (!assigned[ci])
        fail("normalize_nice: no bag covers clause " + std::to_string(ci) +
             " (decomposition invalid for this instance)");
  }

  int top = b.build(td.root);
  top = b.morph(top, td.node(td.root).bag, {});
  b.out.root = top;
  b.out.is_nice = true;
  b.out.is_path = b.out.path_shaped();
  return b.out;
}

}  // namespace detail

inline TreeDecomposition normalize_nice(const CnfInstance &cnf, const TreeDecomposition &td,
                                        NiceShape shape = NiceShape::Tree) {
  return detail::normalize_nice_impl(primal_graph(cnf), td, detail::clause_var_sets(cnf), shape);
}

inline TreeDecomposition normalize_nice(const UGraph &g, const TreeDecomposition &td,
                                        NiceShape shape = NiceShape::Tree) {
  return detail::normalize_nice_impl(g, td, detail::edge_var_sets(g), shape);
}

// Single bag holding every vertex; the usual starting point when no better
// decomposition is supplied.
inline TreeDecomposition trivial_decomposition(int num_vertices) {
  TreeDecomposition td;
  std::vector<int> bag(static_cast<size_t>(num_vertices));
  for (int v = 0; v < num_vertices; ++v) bag[static_cast<size_t>(v)] = v;
  td.add_node(bag, NodeKind::Plain, -1, {});
  td.root = 0;
  td.is_path = true;
  return td;
}

}  // namespace widthred
