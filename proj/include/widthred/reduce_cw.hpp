#pragma once

// Clique-width reductions.
//
// is_cw_to_sat_tw compiles the standard independent-set dynamic program over
// a k-expression into CNF: per operation, one selector variable per label and
// a binary counter for the subgraph's IS size, with constraints per operation
// kind; the result is satisfiable iff the evaluated graph has an IS of the
// requested size, and its primal graph eliminates along the expression tree
// with degree cw + O(log n).
//
// threesat_tw_to_is_cw rebuilds the 3SAT->IS gadget graph as a k-expression
// over tw + O(log tw) labels.  A sink label (#, id 1) absorbs finished
// vertices; per node, the live frontier is the negative side of each bag
// variable plus the last layer of the node's child counting gadget.  At Join
// nodes the two frontiers share label ids for classes that merge (both
// children's negative sides arc to the same parent copy) and keep disjoint
// ids for their counter layers.

#include "widthred/clique_expression.hpp"
#include "widthred/reduce_tw.hpp"

namespace widthred {

// ---------------------------------------------------------------------------
// Independent Set (clique-width) -> SAT (tree-width)
// ---------------------------------------------------------------------------

struct IsCwToSatTwResult {
  CnfInstance cnf;
  TreeDecomposition certificate;
  WidthBound bound;
  EliminationSchedule schedule;
  std::string answer_map;
  long long k = 0;
};

inline IsCwToSatTwResult is_cw_to_sat_tw(const CliqueExpression &expr, long long k) {
  if (expr.root < 0) fail("is_cw_to_sat_tw: malformed expression");
  const int cw = expr.label_budget;
  long long n = 0;
  for (const CweNode &nd : expr.nodes)
    if (nd.kind == CweNode::Kind::Create) ++n;
  const int M = std::max(1, ceil_log2(n + 1));

  // post-order op list with parent links
  std::vector<int> order, parent(expr.nodes.size(), -1);
  {
    std::vector<int> stack{expr.root};
    std::vector<char> seen(expr.nodes.size(), 0);
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      if (seen[static_cast<size_t>(i)]) fail("is_cw_to_sat_tw: expression is not a tree");
      seen[static_cast<size_t>(i)] = 1;
      order.push_back(i);
      const CweNode &nd = expr.nodes[static_cast<size_t>(i)];
      if (nd.kind != CweNode::Kind::Create) {
        parent[static_cast<size_t>(nd.left)] = i;
        stack.push_back(nd.left);
        if (nd.kind == CweNode::Kind::Union) {
          parent[static_cast<size_t>(nd.right)] = i;
          stack.push_back(nd.right);
        }
      }
    }
    std::reverse(order.begin(), order.end());
  }

  IsCwToSatTwResult res;
  res.k = k;
  CnfInstance &out = res.cnf;
  // per op: label selectors o_1..o_cw, then counter bits
  std::vector<std::vector<int>> sel(expr.nodes.size()), cnt(expr.nodes.size());
  for (int i : order) {
    for (int l = 1; l <= cw; ++l) {
      sel[static_cast<size_t>(i)].push_back(out.num_vars++);
      out.var_names.push_back("o" + std::to_string(i) + ":l" + std::to_string(l));
    }
    for (int j = 0; j < M; ++j) {
      cnt[static_cast<size_t>(i)].push_back(out.num_vars++);
      out.var_names.push_back("o" + std::to_string(i) + ":s" + std::to_string(j));
    }
  }
  auto s_group = [&](int i) { return VarGroup{cnt[static_cast<size_t>(i)], "s"}; };
  auto sel_at = [&](int i, int label) { return sel[static_cast<size_t>(i)][static_cast<size_t>(label - 1)]; };

  for (int i : order) {
    const CweNode &nd = expr.nodes[static_cast<size_t>(i)];
    switch (nd.kind) {
      case CweNode::Kind::Create:
        detail::emit(out, eq(s_group(i), VarGroup{{sel_at(i, nd.label_i)}, "o_i"}));
        break;
      case CweNode::Kind::Union: {
        for (int l = 1; l <= cw; ++l) {
          out.clauses.push_back(Clause{neg(sel_at(nd.left, l)), pos(sel_at(i, l))});
          out.clauses.push_back(Clause{neg(sel_at(nd.right, l)), pos(sel_at(i, l))});
        }
        detail::emit(out, eq_sum(s_group(i), s_group(nd.left), s_group(nd.right)));
        break;
      }
      case CweNode::Kind::Join: {
        for (int l = 1; l <= cw; ++l)
          detail::emit(out, eq(VarGroup{{sel_at(i, l)}, "o"}, VarGroup{{sel_at(nd.left, l)}, "c"}));
        out.clauses.push_back(Clause{neg(sel_at(i, nd.label_i)), neg(sel_at(i, nd.label_j))});
        for (int j = 0; j < M; ++j)
          detail::emit(out, eq(VarGroup{{cnt[static_cast<size_t>(i)][static_cast<size_t>(j)]}, "s"},
                               VarGroup{{cnt[static_cast<size_t>(nd.left)][static_cast<size_t>(j)]}, "s"}));
        break;
      }
      case CweNode::Kind::Rename: {
        for (int l = 1; l <= cw; ++l) {
          if (l == nd.label_i || l == nd.label_j) continue;
          detail::emit(out, eq(VarGroup{{sel_at(i, l)}, "o"}, VarGroup{{sel_at(nd.left, l)}, "c"}));
        }
        for (int j = 0; j < M; ++j)
          detail::emit(out, eq(VarGroup{{cnt[static_cast<size_t>(i)][static_cast<size_t>(j)]}, "s"},
                               VarGroup{{cnt[static_cast<size_t>(nd.left)][static_cast<size_t>(j)]}, "s"}));
        // o_j = c_i v c_j, and label i empties out
        {
          int oj = sel_at(i, nd.label_j), ci = sel_at(nd.left, nd.label_i),
              cj = sel_at(nd.left, nd.label_j);
          detail::emit(out, custom_constraint(
                               {oj, ci, cj},
                               [](unsigned long long row) {
                                 bool o = row & 1, a = row >> 1 & 1, b = row >> 2 & 1;
                                 return o == (a || b);
                               },
                               "rename-or"));
          out.clauses.push_back(Clause{neg(sel_at(i, nd.label_i))});
        }
        break;
      }
    }
  }
  detail::emit(out, geq_const(s_group(expr.root), k));

  res.bound.input_width = cw;  // the parameter the bound is relative to
  res.bound.constants = {{"M", M}, {"c", 3}};
  res.bound.formula = "cw + c*M, M = max(1, ceil(log2(n+1))), n = #vertices";
  res.bound.claimed = cw + 3LL * M;
  const int claim = static_cast<int>(res.bound.claimed);

  for (int i : order) {
    std::vector<int> partner;
    if (parent[static_cast<size_t>(i)] >= 0) partner = sel[static_cast<size_t>(parent[static_cast<size_t>(i)])];
    res.schedule.steps.push_back(ElimStep::matching(sel[static_cast<size_t>(i)], partner, claim));
    res.schedule.steps.push_back(ElimStep::subset(cnt[static_cast<size_t>(i)], claim));
  }
  TreeDecomposition empty_tail;
  res.certificate = td_from_schedule(primal_graph(out), res.schedule, empty_tail);
  res.answer_map =
      "source: evaluated graph has an independent set of size >= k  <=>  target: satisfiable";
  return res;
}

// ---------------------------------------------------------------------------
// 3-SAT (tree-width) -> Independent Set (clique-width)
// ---------------------------------------------------------------------------

struct ThreeSatTwToIsCwResult {
  CliqueExpression expr;
  long long k = 0;
  WidthBound label_bound;
  ThreeSatIsCatalog catalog;
  std::vector<int> node_parent;
};

namespace detail {

constexpr int kSinkLabel = 1;

class CwSynth {
 public:
  CwSynth(const ThreeSatIsCatalog &cat, const TreeDecomposition &ntd)
      : cat_(cat), ntd_(ntd), target_edges_(cat.builder.graph().edges) {}

  CliqueExpression run() {
    parent_.assign(ntd_.nodes.size(), -1);
    for (size_t i = 0; i < ntd_.nodes.size(); ++i)
      for (int c : ntd_.nodes[i].children) parent_[static_cast<size_t>(c)] = static_cast<int>(i);
    Sub top = process(ntd_.root);
    if (top.root < 0) fail("threesat_tw_to_is_cw: empty instance has no k-expression");
    if (!top.classes.empty()) fail("threesat_tw_to_is_cw: live labels remain at the root");
    if (emitted_.size() != target_edges_.size())
      fail("threesat_tw_to_is_cw: edge count mismatch: emitted " +
           std::to_string(emitted_.size()) + " of " + std::to_string(target_edges_.size()));
    expr_.root = top.root;
    expr_.label_budget = high_water_;
    return std::move(expr_);
  }

  int high_water() const { return high_water_; }

 private:
  struct Sub {
    int root = -1;
    std::map<int, std::vector<int>> classes;  // label -> catalog vertices
    std::map<int, int> label_of;              // catalog vertex -> label
    int next_fresh = 2;
    std::set<int> free;
  };

  const ThreeSatIsCatalog &cat_;
  const TreeDecomposition &ntd_;
  std::vector<std::pair<int, int>> target_edges_;  // sorted
  std::set<std::pair<int, int>> emitted_;
  CliqueExpression expr_;
  std::vector<int> parent_;
  int high_water_ = kSinkLabel;

  int alloc(Sub &sub) {
    int id;
    if (!sub.free.empty()) {
      id = *sub.free.begin();
      sub.free.erase(sub.free.begin());
    } else {
      id = sub.next_fresh++;
    }
    high_water_ = std::max(high_water_, id);
    return id;
  }

  void release(Sub &sub, int label) { sub.free.insert(label); }

  void create(Sub &sub, int v, int label) {
    int node = expr_.create(label, std::to_string(v));
    sub.root = sub.root < 0 ? node : expr_.unite(sub.root, node);
    sub.classes[label].push_back(v);
    sub.label_of[v] = label;
  }

  int create_fresh(Sub &sub, int v) {
    int l = alloc(sub);
    create(sub, v, l);
    return l;
  }

  // eta between two label classes; every implied edge must be a fresh
  // catalog edge.
  void wire(Sub &sub, int la, int lb) {
    if (la == lb || la == kSinkLabel || lb == kSinkLabel)
      fail("synth: refusing eta on identical or sink labels");
    sub.root = expr_.join(la, lb, sub.root);
    for (int u : sub.classes.at(la))
      for (int v : sub.classes.at(lb)) {
        std::pair<int, int> e{std::min(u, v), std::max(u, v)};
        if (!std::binary_search(target_edges_.begin(), target_edges_.end(), e))
          fail("synth: edge {" + std::to_string(e.first) + "," + std::to_string(e.second) +
               "} is not in the gadget graph");
        if (!emitted_.insert(e).second)
          fail("synth: edge {" + std::to_string(e.first) + "," + std::to_string(e.second) +
               "} emitted twice");
      }
  }

  void wire_vertices(Sub &sub, int u, int v) { wire(sub, sub.label_of.at(u), sub.label_of.at(v)); }

  void sink_label(Sub &sub, int label) {
    auto it = sub.classes.find(label);
    if (it == sub.classes.end()) fail("synth: sinking an empty label");
    sub.root = expr_.rename(label, kSinkLabel, sub.root);
    for (int v : it->second) sub.label_of.erase(v);
    sub.classes.erase(it);
    release(sub, label);
  }

  void sink_vertex(Sub &sub, int v) { sink_label(sub, sub.label_of.at(v)); }

  // --- counting gadget, layer by layer ------------------------------------

  struct CgState {
    const CountingGadget *cg = nullptr;
    int built = 0;  // layers created so far
  };

  void cg_layer(Sub &sub, CgState &st, int watch_vertex) {
    const CountingGadget &cg = *st.cg;
    const int a = ++st.built;  // 1-based layer index
    const int M = cg.M;
    if (a <= cg.d) {
      const VarGadget &y = cg.y[static_cast<size_t>(a - 1)];
      create_fresh(sub, y.pos);
      create_fresh(sub, y.neg);
      wire_vertices(sub, y.pos, y.neg);
    }
    for (const VarGadget &s : cg.s[static_cast<size_t>(a - 1)]) {
      create_fresh(sub, s.pos);
      create_fresh(sub, s.neg);
      wire_vertices(sub, s.pos, s.neg);
    }
    if (a == 1) {
      for (int j = 0; j < M; ++j) {
        int zv = cg.zero_gadget_vertices[static_cast<size_t>(j)];
        create_fresh(sub, zv);
        wire_vertices(sub, zv, cg.s[0][static_cast<size_t>(j)].pos);
        sink_vertex(sub, zv);
      }
    } else {
      // blocking rows of (s_a) = (s_{a-1}) + (y_{a-1})
      std::vector<VarGadget> scope;
      for (int j = 0; j < M; ++j) scope.push_back(cg.s[static_cast<size_t>(a - 1)][static_cast<size_t>(j)]);
      for (int j = 0; j < M; ++j) scope.push_back(cg.s[static_cast<size_t>(a - 2)][static_cast<size_t>(j)]);
      scope.push_back(cg.y[static_cast<size_t>(a - 2)]);
      VarGroup gs{{}, "s"}, gp{{}, "p"}, gy{{}, "y"};
      int slot = 0;
      for (int j = 0; j < M; ++j) gs.bits.push_back(slot++);
      for (int j = 0; j < M; ++j) gp.bits.push_back(slot++);
      gy.bits.push_back(slot++);
      emit_row_gadgets(sub, cg.rows[static_cast<size_t>(a - 2)], scope, eq_sum(gs, gp, gy));
      // previous layer is fully wired now
      for (int v : cg.layer_vertices(a - 1)) sink_vertex(sub, v);
    }
    if (a <= cg.d && watch_vertex >= 0)
      wire_vertices(sub, watch_vertex, cg.y[static_cast<size_t>(a - 1)].neg);
  }

  void emit_row_gadgets(Sub &sub, const std::vector<std::vector<int>> &cliques,
                        const std::vector<VarGadget> &scope, const ConstraintSpec &spec) {
    std::vector<unsigned long long> rows = falsifying_rows(spec);
    if (rows.size() != cliques.size()) fail("synth: row gadget count mismatch with catalog");
    for (size_t r = 0; r < rows.size(); ++r) {
      const std::vector<int> &clique = cliques[r];
      for (int cv : clique) create_fresh(sub, cv);
      for (size_t i = 0; i < clique.size(); ++i)
        for (size_t j = i + 1; j < clique.size(); ++j) wire_vertices(sub, clique[i], clique[j]);
      for (size_t i = 0; i < clique.size(); ++i)
        wire_vertices(sub, clique[i], scope[i].side((rows[r] >> i & 1ULL) != 0));
      for (int cv : clique) sink_vertex(sub, cv);
    }
  }

  // --- frontier alignment before a Join union ------------------------------

  // Renames classes of `b` so that merge targets match `a`'s ids and all
  // other live classes of `b` avoid `a`'s live ids.  mapping: b-vertex ->
  // required label (a's id for merged negs) or -1 (any id outside a's live).
  void align_for_union(Sub &a, Sub &b, const std::map<int, int> &merge_target) {
    std::set<int> a_live;
    for (const auto &[l, vs] : a.classes) a_live.insert(l);

    // desired label per live class of b (keyed by current label)
    std::map<int, int> want;  // current -> target
    std::set<int> taken = a_live;
    for (const auto &[l, vs] : b.classes) {
      int tgt = -1;
      for (int v : vs) {
        auto it = merge_target.find(v);
        if (it != merge_target.end()) {
          if (tgt >= 0 && tgt != it->second) fail("synth: conflicting merge targets");
          tgt = it->second;
        }
      }
      if (tgt < 0) continue;  // resolved below
      want[l] = tgt;
      taken.insert(tgt);
    }
    for (const auto &[l, vs] : b.classes) {
      if (want.count(l)) continue;
      // keep-separate class: lowest id not taken
      int tgt = 2;
      while (taken.count(tgt)) ++tgt;
      want[l] = tgt;
      taken.insert(tgt);
      high_water_ = std::max(high_water_, tgt);
    }

    // route renames; a temp id avoids collisions inside b
    auto occupied = [&](int label) { return b.classes.count(label) != 0; };
    std::map<int, int> pending = want;
    while (!pending.empty()) {
      bool progressed = false;
      for (auto it = pending.begin(); it != pending.end();) {
        auto [cur, tgt] = *it;
        if (cur == tgt) {
          it = pending.erase(it);
          progressed = true;
          continue;
        }
        if (!occupied(tgt)) {
          apply_rename(b, cur, tgt);
          // fix keys of remaining pending entries (cur moved to tgt)
          it = pending.erase(it);
          progressed = true;
          continue;
        }
        ++it;
      }
      if (!pending.empty() && !progressed) {
        // cycle: move one class to a temp id
        int temp = 2;
        std::set<int> avoid = taken;
        for (const auto &[l, vs] : b.classes) avoid.insert(l);
        while (avoid.count(temp)) ++temp;
        high_water_ = std::max(high_water_, temp);
        auto first = *pending.begin();
        apply_rename(b, first.first, temp);
        pending.erase(first.first);
        pending[temp] = first.second;
      }
    }
  }

  void apply_rename(Sub &sub, int from, int to) {
    if (from == to) return;
    if (sub.classes.count(to)) fail("synth: rename target occupied");
    sub.root = expr_.rename(from, to, sub.root);
    auto node = sub.classes.extract(from);
    node.key() = to;
    sub.classes.insert(std::move(node));
    for (int v : sub.classes.at(to)) sub.label_of[v] = to;
  }

  // --- node processing ------------------------------------------------------

  Sub process(int node) {
    const ThreeSatIsNodeParts &parts = cat_.nodes[static_cast<size_t>(node)];
    const auto &children = ntd_.nodes[static_cast<size_t>(node)].children;

    Sub sub;
    if (children.size() == 1) {
      sub = process(children[0]);
    } else if (children.size() == 2) {
      Sub a = process(children[0]);
      Sub b = process(children[1]);
      // classes that merge: both children's negative side of each bag
      // variable arcs to the same parent copy
      std::map<int, int> merge_target;
      const ThreeSatIsNodeParts &cb = cat_.nodes[static_cast<size_t>(children[1])];
      const ThreeSatIsNodeParts &ca = cat_.nodes[static_cast<size_t>(children[0])];
      for (int x : cb.shared) {
        if (!std::binary_search(ca.shared.begin(), ca.shared.end(), x)) continue;
        merge_target[cb.gadget_of(x).neg] = a.label_of.at(ca.gadget_of(x).neg);
      }
      align_for_union(a, b, merge_target);
      sub.root = expr_.unite(a.root, b.root);
      sub.classes = std::move(a.classes);
      sub.label_of = std::move(a.label_of);
      for (auto &[l, vs] : b.classes) {
        auto &dst = sub.classes[l];
        dst.insert(dst.end(), vs.begin(), vs.end());
        for (int v : vs) sub.label_of[v] = l;
      }
      sub.next_fresh = std::max(a.next_fresh, b.next_fresh);
      for (int id = 2; id < sub.next_fresh; ++id)
        if (!sub.classes.count(id)) sub.free.insert(id);
    } else if (children.size() > 2) {
      fail("threesat_tw_to_is_cw: decomposition is not nice (node with >2 children)");
    }

    // forgotten variables: their negative side is fully wired
    for (int c : children)
      for (int x : cat_.nodes[static_cast<size_t>(c)].bag)
        if (!std::binary_search(parts.bag.begin(), parts.bag.end(), x))
          sink_vertex(sub, cat_.nodes[static_cast<size_t>(c)].gadget_of(x).neg);

    CgState s_state{parts.child_cnt ? &*parts.child_cnt : nullptr, 0};
    std::vector<CgState> t_states;
    for (int c : children)
      t_states.push_back({cat_.nodes[static_cast<size_t>(c)].parent_cnt ? &*cat_.nodes[static_cast<size_t>(c)].parent_cnt : nullptr, 0});

    // which positive sides stay alive for the clause gadget
    std::set<int> kept_pos;
    if (!parts.clause_gadget.empty()) {
      const Clause &cl = clause_at(node);
      for (const Literal &l : cl.lits)
        if (l.neg) kept_pos.insert(parts.gadget_of(l.var).pos);
    }

    for (size_t bi = 0; bi < parts.bag.size(); ++bi) {
      int x = parts.bag[bi];
      const VarGadget &vg = parts.vars[bi];
      int pos_label = create_fresh(sub, vg.pos);
      create_fresh(sub, vg.neg);
      wire_vertices(sub, vg.pos, vg.neg);
      (void)pos_label;
      // arcs from every child that shares x (one eta covers a merged class)
      for (int c : children) {
        const ThreeSatIsNodeParts &cp = cat_.nodes[static_cast<size_t>(c)];
        if (!std::binary_search(cp.shared.begin(), cp.shared.end(), x)) continue;
        int neg_v = cp.gadget_of(x).neg;
        if (sub.label_of.count(neg_v)) {
          wire_vertices(sub, neg_v, vg.pos);
          sink_vertex(sub, neg_v);  // sinks the merged class at a Join
        }
      }
      if (s_state.cg && std::binary_search(parts.shared.begin(), parts.shared.end(), x))
        cg_layer(sub, s_state, vg.pos);
      for (size_t ci = 0; ci < children.size(); ++ci) {
        const ThreeSatIsNodeParts &cp = cat_.nodes[static_cast<size_t>(children[ci])];
        if (t_states[ci].cg && std::binary_search(cp.shared.begin(), cp.shared.end(), x))
          cg_layer(sub, t_states[ci], vg.neg);
      }
      if (!kept_pos.count(vg.pos)) sink_vertex(sub, vg.pos);
    }

    // last layer of the node's child counting gadget
    if (s_state.cg) cg_layer(sub, s_state, -1);

    // source clause gadget: ports are the complement sides at this node
    if (!parts.clause_gadget.empty()) {
      const Clause &cl = clause_at(node);
      for (int cv : parts.clause_gadget) create_fresh(sub, cv);
      for (size_t i = 0; i < parts.clause_gadget.size(); ++i)
        for (size_t j = i + 1; j < parts.clause_gadget.size(); ++j)
          wire_vertices(sub, parts.clause_gadget[i], parts.clause_gadget[j]);
      for (size_t i = 0; i < cl.lits.size(); ++i) {
        const VarGadget &vg = parts.gadget_of(cl.lits[i].var);
        wire_vertices(sub, parts.clause_gadget[i], cl.lits[i].neg ? vg.pos : vg.neg);
      }
      for (int cv : parts.clause_gadget) sink_vertex(sub, cv);
      for (int p : kept_pos) sink_vertex(sub, p);
    }

    // finish each child's parent counting gadget, then its blocking rows
    for (size_t ci = 0; ci < children.size(); ++ci) {
      const ThreeSatIsNodeParts &cp = cat_.nodes[static_cast<size_t>(children[ci])];
      if (!t_states[ci].cg) continue;
      cg_layer(sub, t_states[ci], -1);
      // sum of the two last layers <= |P_c|
      std::vector<VarGadget> scope;
      VarGroup ga{{}, "a"}, gb{{}, "b"};
      int slot = 0;
      for (const VarGadget &g : cp.child_cnt->last_layer()) {
        scope.push_back(g);
        ga.bits.push_back(slot++);
      }
      for (const VarGadget &g : cp.parent_cnt->last_layer()) {
        scope.push_back(g);
        gb.bits.push_back(slot++);
      }
      emit_row_gadgets(sub, cp.blocking, scope,
                       sum_leq_const(ga, gb, static_cast<long long>(cp.shared.size())));
      for (const VarGadget &g : cp.child_cnt->last_layer()) {
        sink_vertex(sub, g.pos);
        sink_vertex(sub, g.neg);
      }
      for (const VarGadget &g : cp.parent_cnt->last_layer()) {
        sink_vertex(sub, g.pos);
        sink_vertex(sub, g.neg);
      }
    }

    // the root consumes its own frontier: nothing above will wire it
    if (parent_[static_cast<size_t>(node)] < 0)
      for (const VarGadget &vg : parts.vars) sink_vertex(sub, vg.neg);

    return sub;
  }

  const Clause &clause_at(int node) const {
    fail("synth: clause_at must be bound by the caller");
  }

 public:
  // bound by threesat_tw_to_is_cw (needs the source CNF)
  std::function<const Clause &(int)> clause_lookup;

 private:
  friend ThreeSatTwToIsCwResult threesat_tw_to_is_cw(const CnfInstance &,
                                                     const TreeDecomposition &);
};

}  // namespace detail

inline ThreeSatTwToIsCwResult threesat_tw_to_is_cw(const CnfInstance &src,
                                                   const TreeDecomposition &ntd) {
  ThreeSatTwToIsCwResult res;
  res.catalog = build_threesat_is_catalog(src, ntd);
  res.k = res.catalog.k;
  res.node_parent.assign(ntd.nodes.size(), -1);
  for (size_t i = 0; i < ntd.nodes.size(); ++i)
    for (int c : ntd.nodes[i].children) res.node_parent[static_cast<size_t>(c)] = static_cast<int>(i);

  detail::CwSynth synth(res.catalog, ntd);
  synth.clause_lookup = [&](int node) -> const Clause & {
    return src.clauses[static_cast<size_t>(ntd.nodes[static_cast<size_t>(node)].arg)];
  };
  res.expr = synth.run();

  const int w = decomposition_width(ntd);
  const int M = res.catalog.M;
  res.label_bound.input_width = w;
  res.label_bound.constants = {{"M", M}, {"c", 30}};
  res.label_bound.formula = "w + c*M labels, M = max(1, ceil(log2(w+2)))";
  res.label_bound.claimed = w + 30LL * M;
  if (synth.high_water() > res.label_bound.claimed)
    fail("threesat_tw_to_is_cw: realized label count " + std::to_string(synth.high_water()) +
         " exceeds the claimed bound " + std::to_string(res.label_bound.claimed));
  return res;
}

}  // namespace widthred
