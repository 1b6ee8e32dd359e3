#pragma once

// The four tree-width preserving reductions.  Each returns the target
// instance together with a width certificate: a tree decomposition built by
// td_from_schedule over the construction's own elimination schedule, plus a
// claimed bound of the shape w + c*M whose constant is fixed here and checked
// by the test suite.

#include "widthred/elimination.hpp"
#include "widthred/is_gadgets.hpp"
#include "widthred/nice.hpp"

namespace widthred {

struct WidthBound {
  int input_width = 0;
  long long claimed = 0;
  std::string formula;
  std::map<std::string, long long> constants;
};

// ---------------------------------------------------------------------------
// Shared: nice decomposition expanded so that a clause of multiplicity m owns
// m consecutive Introduce(C) nodes (one satisfaction counter bit group each).
// ---------------------------------------------------------------------------

struct ExpandedNice {
  struct Node {
    std::vector<int> bag;
    NodeKind kind = NodeKind::Plain;
    int arg = -1;   // clause index / vertex id
    int parent = -1;
    std::vector<int> children;
  };
  std::vector<Node> nodes;
  int root = 0;

  std::vector<int> postorder() const {
    std::vector<int> order, stack{root};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      order.push_back(i);
      for (int c : nodes[static_cast<size_t>(i)].children) stack.push_back(c);
    }
    std::reverse(order.begin(), order.end());
    return order;
  }
};

inline ExpandedNice expand_multiplicities(const TreeDecomposition &ntd, const CnfInstance &src) {
  ExpandedNice out;
  out.nodes.reserve(ntd.nodes.size());
  // map input node -> top of its expanded chain
  std::vector<int> top_of(ntd.nodes.size(), -1);
  // build in input index order, children resolved afterwards
  for (size_t i = 0; i < ntd.nodes.size(); ++i) {
    const DecompNode &nd = ntd.nodes[i];
    long long copies = 1;
    if (nd.kind == NodeKind::IntroduceClause)
      copies = src.clauses[static_cast<size_t>(nd.arg)].mult;
    int below = -1;
    for (long long c = 0; c < copies; ++c) {
      ExpandedNice::Node en;
      en.bag = nd.bag;
      en.kind = nd.kind;
      en.arg = nd.arg;
      if (below >= 0) en.children = {below};
      below = static_cast<int>(out.nodes.size());
      out.nodes.push_back(std::move(en));
    }
    top_of[i] = below;
  }
  // wire original children below the bottom copy of each chain
  for (size_t i = 0; i < ntd.nodes.size(); ++i) {
    const DecompNode &nd = ntd.nodes[i];
    long long copies =
        nd.kind == NodeKind::IntroduceClause ? src.clauses[static_cast<size_t>(nd.arg)].mult : 1;
    int bottom = top_of[i] - static_cast<int>(copies) + 1;
    for (int c : nd.children) out.nodes[static_cast<size_t>(bottom)].children.push_back(top_of[static_cast<size_t>(c)]);
  }
  out.root = top_of[static_cast<size_t>(ntd.root)];
  for (size_t i = 0; i < out.nodes.size(); ++i)
    for (int c : out.nodes[i].children) out.nodes[static_cast<size_t>(c)].parent = static_cast<int>(i);
  return out;
}

// ---------------------------------------------------------------------------
// Max 2-SAT -> SAT (satisfaction counters along the decomposition)
// ---------------------------------------------------------------------------

struct Max2SatToSatResult {
  CnfInstance cnf;
  TreeDecomposition certificate;
  WidthBound bound;
  EliminationSchedule schedule;
  std::string answer_map;

  ExpandedNice tree;
  struct NodeVars {
    std::vector<int> bag;  // source variable ids, sorted
    std::vector<int> xs;   // their copies, aligned with bag
    std::vector<int> ss;   // counter bits, little-endian
    int w = -1;
  };
  std::vector<NodeVars> node_vars;
  int counter_bits = 0;
};

namespace detail {

inline bool literal_value(const Literal &l, bool var_value) { return var_value != l.neg; }

// w <-> (l1 v l2 ...) over the node copies of the clause's variables.
inline void emit_iff_clause(CnfInstance &out, int w_var, const Clause &clause,
                            const std::map<int, int> &copy_of) {
  std::vector<int> vars;
  for (const Literal &l : clause.lits) vars.push_back(l.var);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  std::vector<int> scope{w_var};
  for (int v : vars) scope.push_back(copy_of.at(v));
  Clause cl = clause;  // capture literals by value
  std::vector<int> var_order = vars;
  ConstraintSpec spec = custom_constraint(
      scope,
      [cl, var_order](unsigned long long row) {
        bool w = (row & 1ULL) != 0;
        bool any = false;
        for (const Literal &l : cl.lits) {
          size_t pos =
              static_cast<size_t>(std::lower_bound(var_order.begin(), var_order.end(), l.var) -
                                  var_order.begin());
          if (literal_value(l, (row >> (1 + pos) & 1ULL) != 0)) any = true;
        }
        return w == any;
      },
      "w-iff-clause");
  for (Clause &c : compile_constraint(spec)) out.clauses.push_back(std::move(c));
}

inline void emit(CnfInstance &out, const ConstraintSpec &spec) {
  for (Clause &c : compile_constraint(spec)) out.clauses.push_back(std::move(c));
}

}  // namespace detail

inline Max2SatToSatResult max2sat_to_sat(const CnfInstance &src, const TreeDecomposition &ntd) {
  check_valid(src);
  if (!src.target) fail("max2sat_to_sat: source has no satisfaction target");
  for (size_t ci = 0; ci < src.clauses.size(); ++ci)
    if (src.clauses[ci].lits.size() > 2)
      fail("max2sat_to_sat: clause " + std::to_string(ci) + " longer than 2");
  {
    ValidationReport rep = validate_nice(src, ntd);
    if (!rep.ok()) fail("max2sat_to_sat: decomposition not nice:\n" + rep.summary());
  }

  Max2SatToSatResult res;
  const long long m_total = src.total_multiplicity();
  const int M = std::max(1, ceil_log2(m_total + 1));
  const int w = decomposition_width(ntd);
  res.counter_bits = M;
  res.tree = expand_multiplicities(ntd, src);
  const ExpandedNice &tree = res.tree;

  CnfInstance &out = res.cnf;
  res.node_vars.resize(tree.nodes.size());
  for (size_t i = 0; i < tree.nodes.size(); ++i) {
    Max2SatToSatResult::NodeVars &nv = res.node_vars[i];
    nv.bag = tree.nodes[i].bag;
    for (int x : nv.bag) {
      nv.xs.push_back(out.num_vars++);
      out.var_names.push_back(std::to_string(i) + ":x:" + std::to_string(x));
    }
    for (int j = 0; j < M; ++j) {
      nv.ss.push_back(out.num_vars++);
      out.var_names.push_back(std::to_string(i) + ":s:" + std::to_string(j));
    }
    nv.w = out.num_vars++;
    out.var_names.push_back(std::to_string(i) + ":w:0");
  }

  auto copy_map = [&](size_t node) {
    std::map<int, int> m;
    const auto &nv = res.node_vars[node];
    for (size_t j = 0; j < nv.bag.size(); ++j) m[nv.bag[j]] = nv.xs[j];
    return m;
  };
  auto s_group = [&](size_t node) {
    return VarGroup{res.node_vars[node].ss, std::to_string(node) + ":s"};
  };

  for (size_t i = 0; i < tree.nodes.size(); ++i) {
    const ExpandedNice::Node &nd = tree.nodes[i];
    // arc equalities with the parent
    if (nd.parent >= 0) {
      std::map<int, int> mine = copy_map(i), theirs = copy_map(static_cast<size_t>(nd.parent));
      for (auto [x, xc] : mine) {
        auto it = theirs.find(x);
        if (it != theirs.end())
          detail::emit(out, eq(VarGroup{{xc}, "x_i"}, VarGroup{{it->second}, "x_p"}));
      }
    }
    switch (nd.kind) {
      case NodeKind::Leaf:
        for (int j = 0; j < M; ++j) out.clauses.push_back(Clause{neg(res.node_vars[i].ss[static_cast<size_t>(j)])});
        break;
      case NodeKind::IntroduceVertex:
      case NodeKind::Forget:
        for (int j = 0; j < M; ++j)
          detail::emit(out, eq(VarGroup{{res.node_vars[i].ss[static_cast<size_t>(j)]}, "s_i"},
                               VarGroup{{res.node_vars[static_cast<size_t>(nd.children[0])].ss[static_cast<size_t>(j)]}, "s_c"}));
        break;
      case NodeKind::IntroduceClause: {
        std::map<int, int> copies = copy_map(i);
        detail::emit_iff_clause(out, res.node_vars[i].w, src.clauses[static_cast<size_t>(nd.arg)], copies);
        detail::emit(out, eq_sum(s_group(i), s_group(static_cast<size_t>(nd.children[0])),
                                 VarGroup{{res.node_vars[i].w}, "w_i"}));
        break;
      }
      case NodeKind::Join:
        detail::emit(out, eq_sum(s_group(i), s_group(static_cast<size_t>(nd.children[0])),
                                 s_group(static_cast<size_t>(nd.children[1]))));
        break;
      case NodeKind::Plain:
        fail("max2sat_to_sat: Plain node in nice decomposition");
    }
  }
  detail::emit(out, geq_const(s_group(static_cast<size_t>(tree.root)), *src.target));

  // bound: w + 3M + 3 <= w + 6M from the per-phase elimination degrees
  res.bound.input_width = w;
  res.bound.constants = {{"M", M}, {"c", 6}};
  res.bound.formula = "w + c*M, M = max(1, ceil(log2(m+1))), m = total multiplicity";
  res.bound.claimed = w + 6LL * M;

  // schedule: bottom-up; per node eliminate the bag copies (matching against
  // the parent's copies), then the counter block
  const int claim = static_cast<int>(res.bound.claimed);
  for (int i : tree.postorder()) {
    const ExpandedNice::Node &nd = tree.nodes[static_cast<size_t>(i)];
    const auto &nv = res.node_vars[static_cast<size_t>(i)];
    if (!nv.xs.empty()) {
      std::vector<int> partner;
      if (nd.parent >= 0) partner = res.node_vars[static_cast<size_t>(nd.parent)].xs;
      res.schedule.steps.push_back(ElimStep::matching(nv.xs, partner, claim));
    }
    std::vector<int> rest = nv.ss;
    rest.push_back(nv.w);
    res.schedule.steps.push_back(ElimStep::subset(rest, claim));
  }
  TreeDecomposition empty_tail;
  res.certificate = td_from_schedule(primal_graph(out), res.schedule, empty_tail);
  res.answer_map = "source: some assignment satisfies >= k clause weight  <=>  target: satisfiable";
  return res;
}

// ---------------------------------------------------------------------------
// SAT -> 3-SAT (clause chaining; width grows by at most 2)
// ---------------------------------------------------------------------------

struct SatTo3SatResult {
  CnfInstance cnf;
  TreeDecomposition certificate;
  WidthBound bound;
  EliminationSchedule schedule;
  std::string answer_map;
  std::vector<std::vector<int>> clause_aux_vars;  // per source clause
};

inline SatTo3SatResult sat_to_3sat(const CnfInstance &src, const TreeDecomposition *src_td = nullptr) {
  check_valid(src);
  TreeDecomposition td =
      src_td ? *src_td : trivial_decomposition(src.num_vars);
  {
    ValidationReport rep = validate_decomposition(primal_graph(src), td);
    if (!rep.ok()) fail("sat_to_3sat: source decomposition invalid:\n" + rep.summary());
  }

  SatTo3SatResult res;
  CnfInstance &out = res.cnf;
  out.num_vars = src.num_vars;
  out.max_clause_len = 3;
  res.clause_aux_vars.resize(src.clauses.size());

  for (size_t ci = 0; ci < src.clauses.size(); ++ci) {
    const Clause &c = src.clauses[ci];
    const size_t len = c.lits.size();
    if (len <= 3) {
      out.clauses.push_back(c);
      continue;
    }
    std::vector<int> &ys = res.clause_aux_vars[ci];
    for (size_t j = 0; j + 3 < len; ++j) {
      ys.push_back(out.num_vars++);
      out.var_names.push_back("y:" + std::to_string(ci) + ":" + std::to_string(j));
    }
    // (l1 v l2 v y1), (~y1 v l3 v y2), ..., (~y_{k-3} v l_{k-1} v l_k)
    Clause first({c.lits[0], c.lits[1], pos(ys[0])}, c.mult);
    out.clauses.push_back(first);
    for (size_t j = 1; j + 3 < len; ++j)
      out.clauses.push_back(Clause({neg(ys[j - 1]), c.lits[j + 1], pos(ys[j])}, c.mult));
    out.clauses.push_back(
        Clause({neg(ys.back()), c.lits[len - 2], c.lits[len - 1]}, c.mult));
  }

  const int w = decomposition_width(td);
  res.bound.input_width = w;
  res.bound.claimed = w + 2;
  res.bound.formula = "w + 2, exact";
  res.bound.constants = {{"c", 2}};

  // Layered elimination, one step per long clause: singleton layers {y_j}
  // have no far-apart edges, so the step degree is (#clause vars)+1 <= w+2.
  for (size_t ci = 0; ci < src.clauses.size(); ++ci) {
    if (res.clause_aux_vars[ci].empty()) continue;
    std::vector<std::vector<int>> layers;
    for (int y : res.clause_aux_vars[ci]) layers.push_back({y});
    res.schedule.steps.push_back(ElimStep::layered(layers, w + 2));
  }
  res.certificate = td_from_schedule(primal_graph(out), res.schedule, td);
  res.answer_map = "equisatisfiable";
  return res;
}

// ---------------------------------------------------------------------------
// 3-SAT -> Independent Set (variable/clause/counting gadgets along the
// decomposition); the catalog records every gadget for reuse by the
// clique-width synthesizer and the path-decomposition sweep.
// ---------------------------------------------------------------------------

struct ThreeSatIsNodeParts {
  std::vector<int> bag;                      // source vars, sorted
  std::vector<VarGadget> vars;               // aligned with bag
  std::vector<int> shared;                   // P_i = bag(i) cap bag(parent), sorted
  std::vector<int> clause_gadget;            // IntroC nodes only
  std::optional<CountingGadget> child_cnt;   // S_i, watches own positive copies of P_i
  std::optional<CountingGadget> parent_cnt;  // T_i, watches parent's negative copies of P_i
  std::vector<std::vector<int>> blocking;    // row gadgets: S_i.last + T_i.last <= |P_i|

  const VarGadget &gadget_of(int src_var) const {
    auto it = std::lower_bound(bag.begin(), bag.end(), src_var);
    if (it == bag.end() || *it != src_var) fail("threesat_to_is: variable not in node bag");
    return vars[static_cast<size_t>(it - bag.begin())];
  }
};

struct ThreeSatIsCatalog {
  IsBuilder builder;
  std::vector<ThreeSatIsNodeParts> nodes;  // aligned with ntd.nodes
  int root = 0;
  int M = 0;
  long long k = 0;
};

inline ThreeSatIsCatalog build_threesat_is_catalog(const CnfInstance &src,
                                                   const TreeDecomposition &ntd) {
  check_valid(src);
  for (size_t ci = 0; ci < src.clauses.size(); ++ci)
    if (src.clauses[ci].lits.size() > 3)
      fail("threesat_to_is: clause " + std::to_string(ci) + " longer than 3");
  {
    ValidationReport rep = validate_nice(src, ntd);
    if (!rep.ok()) fail("threesat_to_is: decomposition not nice:\n" + rep.summary());
  }

  ThreeSatIsCatalog cat;
  cat.root = ntd.root;
  const int w = decomposition_width(ntd);
  cat.M = std::max(1, ceil_log2(w + 2));
  cat.nodes.resize(ntd.nodes.size());
  std::vector<int> parent(ntd.nodes.size(), -1);
  for (size_t i = 0; i < ntd.nodes.size(); ++i)
    for (int c : ntd.nodes[i].children) parent[static_cast<size_t>(c)] = static_cast<int>(i);

  // pass 1: variable gadgets and clause gadgets
  for (size_t i = 0; i < ntd.nodes.size(); ++i) {
    ThreeSatIsNodeParts &parts = cat.nodes[i];
    parts.bag = ntd.nodes[i].bag;
    for (int x : parts.bag)
      parts.vars.push_back(
          cat.builder.variable_gadget("n" + std::to_string(i) + ".x" + std::to_string(x)));
    if (ntd.nodes[i].kind == NodeKind::IntroduceClause) {
      const Clause &cl = src.clauses[static_cast<size_t>(ntd.nodes[i].arg)];
      std::vector<int> ports;
      for (const Literal &l : cl.lits) {
        const VarGadget &vg = parts.gadget_of(l.var);
        ports.push_back(l.neg ? vg.pos : vg.neg);  // complement side
      }
      parts.clause_gadget = cat.builder.clause_gadget(
          ports, "n" + std::to_string(i) + ".C" + std::to_string(ntd.nodes[i].arg));
    }
  }

  // pass 2: arcs, counting gadgets, blocking rows
  for (size_t i = 0; i < ntd.nodes.size(); ++i) {
    if (parent[i] < 0) continue;
    ThreeSatIsNodeParts &parts = cat.nodes[i];
    const ThreeSatIsNodeParts &up = cat.nodes[static_cast<size_t>(parent[i])];
    for (int x : parts.bag)
      if (std::binary_search(up.bag.begin(), up.bag.end(), x)) parts.shared.push_back(x);

    std::vector<int> child_watch, parent_watch;
    for (int x : parts.shared) {
      cat.builder.add_edge(parts.gadget_of(x).neg, up.gadget_of(x).pos);  // arc edge
      child_watch.push_back(parts.gadget_of(x).pos);
      parent_watch.push_back(up.gadget_of(x).neg);
    }
    parts.child_cnt = is_counting_gadget(cat.builder, child_watch, cat.M,
                                         "n" + std::to_string(i) + ".S");
    parts.parent_cnt = is_counting_gadget(cat.builder, parent_watch, cat.M,
                                          "n" + std::to_string(i) + ".T");

    // sum of the two last layers stays within |P_i|
    std::vector<VarGadget> scope_gadgets;
    VarGroup a{{}, "S.last"}, b{{}, "T.last"};
    int slot = 0;
    for (const VarGadget &g : parts.child_cnt->last_layer()) {
      scope_gadgets.push_back(g);
      a.bits.push_back(slot++);
    }
    for (const VarGadget &g : parts.parent_cnt->last_layer()) {
      scope_gadgets.push_back(g);
      b.bits.push_back(slot++);
    }
    parts.blocking = arithmetic_clause_gadgets(
        cat.builder, scope_gadgets,
        sum_leq_const(a, b, static_cast<long long>(parts.shared.size())),
        "n" + std::to_string(i) + ".B");
  }
  cat.k = cat.builder.census();
  return cat;
}

struct ThreeSatToIsResult {
  UGraph graph;  // is_target = k
  long long k = 0;
  TreeDecomposition certificate;
  WidthBound bound;
  EliminationSchedule schedule;
  std::string answer_map;
  ThreeSatIsCatalog catalog;
  std::vector<int> node_parent;  // parent index per decomposition node
};

inline ThreeSatToIsResult threesat_to_is(const CnfInstance &src, const TreeDecomposition &ntd) {
  ThreeSatToIsResult res;
  res.catalog = build_threesat_is_catalog(src, ntd);
  ThreeSatIsCatalog &cat = res.catalog;
  res.k = cat.k;
  res.graph = cat.builder.graph();
  res.graph.is_target = res.k;

  const int w = decomposition_width(ntd);
  const int M = cat.M;
  res.bound.input_width = w;
  res.bound.constants = {{"M", M}, {"c", 16}};
  res.bound.formula = "w + c*M, M = max(1, ceil(log2(w+2)))";
  res.bound.claimed = w + 16LL * M;
  const int claim = static_cast<int>(res.bound.claimed);

  res.node_parent.assign(ntd.nodes.size(), -1);
  for (size_t i = 0; i < ntd.nodes.size(); ++i)
    for (int c : ntd.nodes[i].children) res.node_parent[static_cast<size_t>(c)] = static_cast<int>(i);

  // pre-pass: every clause gadget except those of source clauses
  EliminationSchedule &sched = res.schedule;
  auto subset_each = [&](const std::vector<std::vector<int>> &cliques) {
    for (const auto &clique : cliques) sched.steps.push_back(ElimStep::subset(clique, claim));
  };
  for (const ThreeSatIsNodeParts &parts : cat.nodes) {
    for (const CountingGadget *cg :
         {parts.child_cnt ? &*parts.child_cnt : nullptr, parts.parent_cnt ? &*parts.parent_cnt : nullptr}) {
      if (!cg) continue;
      for (int v : cg->zero_gadget_vertices) sched.steps.push_back(ElimStep::subset({v}, claim));
      for (const auto &layer_rows : cg->rows) subset_each(layer_rows);
    }
    subset_each(parts.blocking);
  }

  // node pass, bottom-up with the lemma's phase order
  std::vector<int> order, stack{ntd.root};
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    order.push_back(i);
    for (int c : ntd.nodes[static_cast<size_t>(i)].children) stack.push_back(c);
  }
  std::reverse(order.begin(), order.end());

  for (int i : order) {
    const ThreeSatIsNodeParts &parts = cat.nodes[static_cast<size_t>(i)];
    // (a) child counting gadget S_i, layered
    if (parts.child_cnt) {
      std::vector<std::vector<int>> layers;
      for (int a = 1; a <= parts.child_cnt->d + 1; ++a)
        layers.push_back(parts.child_cnt->layer_vertices(a));
      sched.steps.push_back(ElimStep::layered(layers, claim));
    }
    // (b) positive sides, matched against own negative sides
    if (!parts.vars.empty()) {
      std::vector<int> xs, xbars;
      for (const VarGadget &g : parts.vars) xs.push_back(g.pos), xbars.push_back(g.neg);
      sched.steps.push_back(ElimStep::matching(xs, xbars, claim));
    }
    // (c) source clause gadget
    if (!parts.clause_gadget.empty())
      sched.steps.push_back(ElimStep::subset(parts.clause_gadget, claim));
    // (d) parent counting gadgets of the children, layered
    for (int c : ntd.nodes[static_cast<size_t>(i)].children) {
      const ThreeSatIsNodeParts &cp = cat.nodes[static_cast<size_t>(c)];
      if (!cp.parent_cnt) continue;
      std::vector<std::vector<int>> layers;
      for (int a = 1; a <= cp.parent_cnt->d + 1; ++a)
        layers.push_back(cp.parent_cnt->layer_vertices(a));
      sched.steps.push_back(ElimStep::layered(layers, claim));
    }
    // (e) negative sides, matched against the parent's positive sides
    if (!parts.vars.empty()) {
      std::vector<int> xbars, parent_xs;
      for (const VarGadget &g : parts.vars) xbars.push_back(g.neg);
      if (res.node_parent[static_cast<size_t>(i)] >= 0)
        for (const VarGadget &g : cat.nodes[static_cast<size_t>(res.node_parent[static_cast<size_t>(i)])].vars)
          parent_xs.push_back(g.pos);
      sched.steps.push_back(ElimStep::matching(xbars, parent_xs, claim));
    }
  }

  TreeDecomposition empty_tail;
  res.certificate = td_from_schedule(res.graph, sched, empty_tail);
  res.answer_map = "source: satisfiable  <=>  target: independent set of size >= k exists";
  return res;
}

// ---------------------------------------------------------------------------
// Independent Set -> Max 2-SAT (unit clause per vertex, |V|+1 copies of the
// edge clause; the primal graph equals the input graph)
// ---------------------------------------------------------------------------

struct IsToMax2SatResult {
  CnfInstance cnf;  // target = k'
  TreeDecomposition certificate;
  WidthBound bound;
  std::string answer_map;
};

inline IsToMax2SatResult is_to_max2sat(const UGraph &src, const TreeDecomposition *src_td = nullptr) {
  check_valid(src);
  if (!src.is_target) fail("is_to_max2sat: source has no independent-set target");
  IsToMax2SatResult res;
  CnfInstance &out = res.cnf;
  out.num_vars = src.num_vertices;
  out.max_clause_len = 2;
  const long long copies = src.num_vertices + 1;
  for (int v = 0; v < src.num_vertices; ++v) out.clauses.push_back(Clause{pos(v)});
  for (auto [u, v] : src.edges) out.clauses.push_back(Clause({neg(u), neg(v)}, copies));
  out.target = static_cast<long long>(src.edges.size()) * copies + *src.is_target;

  TreeDecomposition td = src_td ? *src_td : trivial_decomposition(src.num_vertices);
  {
    ValidationReport rep = validate_decomposition(src, td);
    if (!rep.ok()) fail("is_to_max2sat: source decomposition invalid:\n" + rep.summary());
  }
  res.certificate = td;  // the primal graph equals the source graph
  res.bound.input_width = decomposition_width(td);
  res.bound.claimed = res.bound.input_width;
  res.bound.formula = "w, unchanged";
  res.bound.constants = {{"c", 0}};
  res.answer_map =
      "source: independent set of size >= k exists  <=>  target: >= |E|(|V|+1)+k clause weight";
  return res;
}

}  // namespace widthred
