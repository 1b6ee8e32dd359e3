#pragma once

// Tree/path decompositions with typed nodes, the three-property validator,
// and the nice-form validator.  Introduce(C) covers both clause nodes of CNF
// decompositions and Introduce(uv) nodes of plain graph decompositions (an
// edge is treated as a 2-variable pseudo-clause).

#include <map>
#include <set>
#include <sstream>

#include "widthred/core.hpp"

namespace widthred {

enum class NodeKind { Leaf, IntroduceVertex, IntroduceClause, Forget, Join, Plain };

inline const char *node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Leaf: return "Leaf";
    case NodeKind::IntroduceVertex: return "IntroV";
    case NodeKind::IntroduceClause: return "IntroC";
    case NodeKind::Forget: return "Forget";
    case NodeKind::Join: return "Join";
    case NodeKind::Plain: return "Plain";
  }
  return "?";
}

struct DecompNode {
  std::vector<int> bag;  // sorted, unique
  NodeKind kind = NodeKind::Plain;
  int arg = -1;  // vertex id (IntroV/Forget) or clause index (IntroC)
  std::vector<int> children;
};

struct TreeDecomposition {
  std::vector<DecompNode> nodes;
  int root = 0;
  bool is_path = false;
  bool is_nice = false;

  DecompNode &node(int i) { return nodes[static_cast<size_t>(i)]; }
  const DecompNode &node(int i) const { return nodes[static_cast<size_t>(i)]; }

  int add_node(std::vector<int> bag, NodeKind kind, int arg, std::vector<int> children) {
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    nodes.push_back(DecompNode{std::move(bag), kind, arg, std::move(children)});
    return static_cast<int>(nodes.size()) - 1;
  }

  bool path_shaped() const {
    for (const DecompNode &n : nodes)
      if (n.children.size() > 1) return false;
    return true;
  }
};

enum class ViolationCode {
  EmptyDecomposition,
  NotATree,
  BadBagElement,
  VertexUncovered,
  EdgeUncovered,
  VertexDisconnected,
  // nice-form codes
  RootNotEmpty,
  BadLeaf,
  BadIntroduceVertex,
  BadIntroduceClause,
  BadForget,
  BadJoin,
  PlainNodeInNice,
  ForgetCountWrong,
  IntroduceClauseCountWrong,
};

inline const char *violation_code_name(ViolationCode c) {
  switch (c) {
    case ViolationCode::EmptyDecomposition: return "empty-decomposition";
    case ViolationCode::NotATree: return "not-a-tree";
    case ViolationCode::BadBagElement: return "bad-bag-element";
    case ViolationCode::VertexUncovered: return "vertex-uncovered";
    case ViolationCode::EdgeUncovered: return "edge-uncovered";
    case ViolationCode::VertexDisconnected: return "vertex-disconnected";
    case ViolationCode::RootNotEmpty: return "root-not-empty";
    case ViolationCode::BadLeaf: return "bad-leaf";
    case ViolationCode::BadIntroduceVertex: return "bad-introduce-vertex";
    case ViolationCode::BadIntroduceClause: return "bad-introduce-clause";
    case ViolationCode::BadForget: return "bad-forget";
    case ViolationCode::BadJoin: return "bad-join";
    case ViolationCode::PlainNodeInNice: return "plain-node-in-nice";
    case ViolationCode::ForgetCountWrong: return "forget-count-wrong";
    case ViolationCode::IntroduceClauseCountWrong: return "introduce-clause-count-wrong";
  }
  return "?";
}

struct Violation {
  ViolationCode code;
  int node = -1;  // witness node, when one exists
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  int width = 0;

  bool ok() const { return violations.empty(); }
  void add(ViolationCode code, int node, std::string detail) {
    violations.push_back(Violation{code, node, std::move(detail)});
  }
  std::string summary() const {
    std::ostringstream os;
    for (const Violation &v : violations) {
      os << violation_code_name(v.code);
      if (v.node >= 0) os << " @node " << v.node;
      if (!v.detail.empty()) os << ": " << v.detail;
      os << "\n";
    }
    return os.str();
  }
};

// Width convention: an all-empty decomposition has width 0, not -1.
inline int decomposition_width(const TreeDecomposition &td) {
  if (td.nodes.empty()) fail("decomposition_width: empty decomposition");
  size_t mx = 0;
  for (const DecompNode &n : td.nodes) mx = std::max(mx, n.bag.size());
  return mx == 0 ? 0 : static_cast<int>(mx) - 1;
}

namespace detail {

// Returns parent array (parent[root] = -1) or records NotATree violations.
inline std::vector<int> tree_parents(const TreeDecomposition &td, ValidationReport &rep) {
  const int n = static_cast<int>(td.nodes.size());
  std::vector<int> parent(static_cast<size_t>(n), -2);
  if (td.root < 0 || td.root >= n) {
    rep.add(ViolationCode::NotATree, td.root, "root out of range");
    return parent;
  }
  std::vector<int> stack{td.root};
  parent[static_cast<size_t>(td.root)] = -1;
  int seen = 0;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    ++seen;
    for (int c : td.node(i).children) {
      if (c < 0 || c >= n) {
        rep.add(ViolationCode::NotATree, i, "child index out of range");
        continue;
      }
      if (parent[static_cast<size_t>(c)] != -2) {
        rep.add(ViolationCode::NotATree, c, "node reached twice (cycle or shared child)");
        continue;
      }
      parent[static_cast<size_t>(c)] = i;
      stack.push_back(c);
    }
  }
  if (seen != n) rep.add(ViolationCode::NotATree, -1, "unreachable nodes present");
  return parent;
}

}  // namespace detail

// The three tree-decomposition properties, each with a distinct code and a
// witness.  Violations are reported, not thrown.
inline ValidationReport validate_decomposition(const UGraph &g, const TreeDecomposition &td) {
  ValidationReport rep;
  if (td.nodes.empty()) {
    rep.add(ViolationCode::EmptyDecomposition, -1, "");
    return rep;
  }
  std::vector<int> parent = detail::tree_parents(td, rep);
  const int n = static_cast<int>(td.nodes.size());

  for (int i = 0; i < n; ++i)
    for (int v : td.node(i).bag)
      if (v < 0 || v >= g.num_vertices)
        rep.add(ViolationCode::BadBagElement, i, "vertex " + std::to_string(v));

  // property 1: every vertex in some bag
  std::vector<char> covered(static_cast<size_t>(g.num_vertices), 0);
  for (const DecompNode &nd : td.nodes)
    for (int v : nd.bag)
      if (v >= 0 && v < g.num_vertices) covered[static_cast<size_t>(v)] = 1;
  for (int v = 0; v < g.num_vertices; ++v)
    if (!covered[static_cast<size_t>(v)])
      rep.add(ViolationCode::VertexUncovered, -1, "vertex " + std::to_string(v));

  // property 2: every edge inside some bag
  {
    std::vector<std::vector<int>> nodes_of(static_cast<size_t>(g.num_vertices));
    for (int i = 0; i < n; ++i)
      for (int v : td.node(i).bag)
        if (v >= 0 && v < g.num_vertices) nodes_of[static_cast<size_t>(v)].push_back(i);
    for (auto [u, v] : g.edges) {
      const auto &a = nodes_of[static_cast<size_t>(u)];
      const auto &b = nodes_of[static_cast<size_t>(v)];
      bool found = false;
      size_t x = 0, y = 0;
      while (x < a.size() && y < b.size()) {
        if (a[x] == b[y]) {
          found = true;
          break;
        }
        a[x] < b[y] ? ++x : ++y;
      }
      if (!found)
        rep.add(ViolationCode::EdgeUncovered, -1,
                "edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    }
  }

  // property 3: bags containing each vertex form a connected subtree
  {
    std::vector<int> comp_seen(static_cast<size_t>(g.num_vertices), 0);
    std::vector<char> in_bag_flag;
    // For each vertex count connected components among its nodes by walking
    // parents: a node is a component root iff its parent's bag lacks v.
    for (int i = 0; i < n; ++i) {
      for (int v : td.node(i).bag) {
        if (v < 0 || v >= g.num_vertices) continue;
        int p = parent[static_cast<size_t>(i)];
        bool parent_has = false;
        if (p >= 0) {
          const auto &pb = td.node(p).bag;
          parent_has = std::binary_search(pb.begin(), pb.end(), v);
        }
        if (!parent_has) comp_seen[static_cast<size_t>(v)] += 1;
      }
    }
    (void)in_bag_flag;
    for (int v = 0; v < g.num_vertices; ++v)
      if (comp_seen[static_cast<size_t>(v)] > 1)
        rep.add(ViolationCode::VertexDisconnected, -1,
                "vertex " + std::to_string(v) + " spans " +
                    std::to_string(comp_seen[static_cast<size_t>(v)]) + " subtrees");
  }

  rep.width = decomposition_width(td);
  return rep;
}

namespace detail {

// Shared nice-form checker; clauses[c] is the (sorted) variable set of clause
// or edge c, and total counts how many Introduce(C) nodes each c needs.
inline ValidationReport validate_nice_impl(const UGraph &g, const TreeDecomposition &td,
                                           const std::vector<std::vector<int>> &clause_vars) {
  ValidationReport rep = validate_decomposition(g, td);
  std::vector<int> parent = tree_parents(td, rep);
  if (!rep.ok() && td.nodes.empty()) return rep;

  const int n = static_cast<int>(td.nodes.size());
  if (!td.node(td.root).bag.empty()) rep.add(ViolationCode::RootNotEmpty, td.root, "");

  std::vector<int> forget_count(static_cast<size_t>(g.num_vertices), 0);
  std::vector<int> intro_clause_count(clause_vars.size(), 0);

  for (int i = 0; i < n; ++i) {
    const DecompNode &nd = td.node(i);
    const auto &bag = nd.bag;
    auto child_bag = [&](int which) -> const std::vector<int> & {
      return td.node(nd.children[static_cast<size_t>(which)]).bag;
    };
    switch (nd.kind) {
      case NodeKind::Leaf:
        if (!nd.children.empty() || !bag.empty())
          rep.add(ViolationCode::BadLeaf, i, "leaf must have empty bag and no children");
        break;
      case NodeKind::IntroduceVertex: {
        if (nd.children.size() != 1) {
          rep.add(ViolationCode::BadIntroduceVertex, i, "needs one child");
          break;
        }
        const auto &cb = child_bag(0);
        if (std::binary_search(cb.begin(), cb.end(), nd.arg) ||
            !std::binary_search(bag.begin(), bag.end(), nd.arg)) {
          rep.add(ViolationCode::BadIntroduceVertex, i, "introduced vertex placement");
          break;
        }
        std::vector<int> expect = cb;
        expect.push_back(nd.arg);
        std::sort(expect.begin(), expect.end());
        if (expect != bag) rep.add(ViolationCode::BadIntroduceVertex, i, "bag != child+v");
        break;
      }
      case NodeKind::IntroduceClause: {
        if (nd.children.size() != 1) {
          rep.add(ViolationCode::BadIntroduceClause, i, "needs one child");
          break;
        }
        if (child_bag(0) != bag) {
          rep.add(ViolationCode::BadIntroduceClause, i, "bag differs from child");
          break;
        }
        if (nd.arg < 0 || nd.arg >= static_cast<int>(clause_vars.size())) {
          rep.add(ViolationCode::BadIntroduceClause, i, "unknown clause index");
          break;
        }
        intro_clause_count[static_cast<size_t>(nd.arg)] += 1;
        for (int v : clause_vars[static_cast<size_t>(nd.arg)])
          if (!std::binary_search(bag.begin(), bag.end(), v))
            rep.add(ViolationCode::BadIntroduceClause, i,
                    "clause variable " + std::to_string(v) + " outside bag");
        break;
      }
      case NodeKind::Forget: {
        if (nd.children.size() != 1) {
          rep.add(ViolationCode::BadForget, i, "needs one child");
          break;
        }
        const auto &cb = child_bag(0);
        if (!std::binary_search(cb.begin(), cb.end(), nd.arg) ||
            std::binary_search(bag.begin(), bag.end(), nd.arg)) {
          rep.add(ViolationCode::BadForget, i, "forgotten vertex placement");
          break;
        }
        std::vector<int> expect;
        for (int v : cb)
          if (v != nd.arg) expect.push_back(v);
        if (expect != bag) rep.add(ViolationCode::BadForget, i, "bag != child-v");
        if (nd.arg >= 0 && nd.arg < g.num_vertices)
          forget_count[static_cast<size_t>(nd.arg)] += 1;
        break;
      }
      case NodeKind::Join:
        if (nd.children.size() != 2 || child_bag(0) != bag || child_bag(1) != bag)
          rep.add(ViolationCode::BadJoin, i, "needs two children with identical bags");
        break;
      case NodeKind::Plain:
        rep.add(ViolationCode::PlainNodeInNice, i, "");
        break;
    }
  }

  for (int v = 0; v < g.num_vertices; ++v)
    if (forget_count[static_cast<size_t>(v)] != 1)
      rep.add(ViolationCode::ForgetCountWrong, -1,
              "vertex " + std::to_string(v) + " forgotten " +
                  std::to_string(forget_count[static_cast<size_t>(v)]) + " times");
  for (size_t c = 0; c < clause_vars.size(); ++c)
    if (intro_clause_count[c] != 1)
      rep.add(ViolationCode::IntroduceClauseCountWrong, -1,
              "clause " + std::to_string(c) + " introduced " +
                  std::to_string(intro_clause_count[c]) + " times");
  return rep;
}

inline std::vector<std::vector<int>> clause_var_sets(const CnfInstance &cnf) {
  std::vector<std::vector<int>> out;
  out.reserve(cnf.clauses.size());
  for (const Clause &c : cnf.clauses) {
    std::vector<int> vars;
    for (const Literal &l : c.lits) vars.push_back(l.var);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    out.push_back(std::move(vars));
  }
  return out;
}

inline std::vector<std::vector<int>> edge_var_sets(const UGraph &g) {
  std::vector<std::vector<int>> out;
  out.reserve(g.edges.size());
  for (auto [u, v] : g.edges) out.push_back({u, v});
  return out;
}

}  // namespace detail

// Nice form over a CNF: Introduce(C) exactly once per clause.
inline ValidationReport validate_nice(const CnfInstance &cnf, const TreeDecomposition &td) {
  return detail::validate_nice_impl(primal_graph(cnf), td, detail::clause_var_sets(cnf));
}

// Nice form over a graph: Introduce(uv) exactly once per edge, with the edge
// list order defining the clause indices.
inline ValidationReport validate_nice(const UGraph &g, const TreeDecomposition &td) {
  return detail::validate_nice_impl(g, td, detail::edge_var_sets(g));
}

}  // namespace widthred
