#pragma once

// Elimination orderings and the constructive width lemmas: eliminating a set
// S removes it and turns N(S) into a clique; a schedule of eliminations with
// bounded degree yields a tree decomposition of matching width.

#include <set>

#include "widthred/decomposition.hpp"

namespace widthred {

enum class ElimRule { Single, Subset, Matching, Layered };

struct ElimStep {
  ElimRule rule = ElimRule::Subset;
  std::vector<int> vertices;              // Single: {v}; Subset: S; Matching: X
  std::vector<int> matching_partner;      // Matching: Y
  std::vector<std::vector<int>> layers;   // Layered: S_1..S_d
  int claimed_degree = 0;

  static ElimStep single(int v, int claimed) {
    ElimStep s;
    s.rule = ElimRule::Single;
    s.vertices = {v};
    s.claimed_degree = claimed;
    return s;
  }
  static ElimStep subset(std::vector<int> vs, int claimed) {
    ElimStep s;
    s.rule = ElimRule::Subset;
    s.vertices = std::move(vs);
    s.claimed_degree = claimed;
    return s;
  }
  static ElimStep matching(std::vector<int> xs, std::vector<int> ys, int claimed) {
    ElimStep s;
    s.rule = ElimRule::Matching;
    s.vertices = std::move(xs);
    s.matching_partner = std::move(ys);
    s.claimed_degree = claimed;
    return s;
  }
  static ElimStep layered(std::vector<std::vector<int>> layers, int claimed) {
    ElimStep s;
    s.rule = ElimRule::Layered;
    s.layers = std::move(layers);
    for (const auto &layer : s.layers)
      s.vertices.insert(s.vertices.end(), layer.begin(), layer.end());
    s.claimed_degree = claimed;
    return s;
  }
};

struct EliminationSchedule {
  std::vector<ElimStep> steps;
};

namespace detail {

// Mutable adjacency-set graph used to simulate eliminations.
struct ElimGraph {
  std::vector<std::set<int>> adj;
  std::vector<char> alive;

  explicit ElimGraph(const UGraph &g)
      : adj(static_cast<size_t>(g.num_vertices)), alive(static_cast<size_t>(g.num_vertices), 1) {
    for (auto [u, v] : g.edges) {
      adj[static_cast<size_t>(u)].insert(v);
      adj[static_cast<size_t>(v)].insert(u);
    }
  }

  int n() const { return static_cast<int>(adj.size()); }

  void require_alive(int v, const char *ctx) const {
    if (v < 0 || v >= n()) fail(std::string(ctx) + ": unknown vertex " + std::to_string(v));
    if (!alive[static_cast<size_t>(v)])
      fail(std::string(ctx) + ": vertex " + std::to_string(v) + " already eliminated");
  }

  // N(S) among alive vertices, S excluded.
  std::vector<int> open_neighborhood(const std::vector<int> &s) const {
    std::set<int> in(s.begin(), s.end());
    std::set<int> nb;
    for (int v : s)
      for (int u : adj[static_cast<size_t>(v)])
        if (!in.count(u)) nb.insert(u);
    return {nb.begin(), nb.end()};
  }

  // Removes S and cliquifies N(S).
  void eliminate_set(const std::vector<int> &s) {
    std::vector<int> nb = open_neighborhood(s);
    for (int v : s) {
      for (int u : adj[static_cast<size_t>(v)]) adj[static_cast<size_t>(u)].erase(v);
      adj[static_cast<size_t>(v)].clear();
      alive[static_cast<size_t>(v)] = 0;
    }
    for (size_t i = 0; i < nb.size(); ++i)
      for (size_t j = i + 1; j < nb.size(); ++j) {
        adj[static_cast<size_t>(nb[i])].insert(nb[j]);
        adj[static_cast<size_t>(nb[j])].insert(nb[i]);
      }
  }
};

// One atomic elimination of the expanded schedule: the removed set with its
// closed neighborhood (= the bag of the lemma construction).
struct AtomicElim {
  std::vector<int> removed;
  std::vector<int> bag;        // N[S] at elimination time
  std::vector<int> neighbors;  // N(S) at elimination time
};

struct ScheduleRun {
  std::vector<AtomicElim> atoms;
  std::vector<int> step_realized_degree;
  ElimGraph graph;
};

// Simulates the schedule, checking each rule's side condition and computing
// the degree value its lemma guarantees.
inline ScheduleRun run_schedule(const UGraph &g, const EliminationSchedule &schedule) {
  ScheduleRun run{{}, {}, ElimGraph(g)};
  ElimGraph &eg = run.graph;

  auto eliminate_atomic = [&](const std::vector<int> &s) {
    AtomicElim a;
    a.removed = s;
    a.neighbors = eg.open_neighborhood(s);
    a.bag = a.neighbors;
    a.bag.insert(a.bag.end(), s.begin(), s.end());
    std::sort(a.bag.begin(), a.bag.end());
    eg.eliminate_set(s);
    run.atoms.push_back(std::move(a));
  };

  for (size_t si = 0; si < schedule.steps.size(); ++si) {
    const ElimStep &step = schedule.steps[si];
    const std::string ctx = "schedule step " + std::to_string(si);
    if (step.vertices.empty()) fail(ctx + ": empty step");
    {
      std::set<int> uniq(step.vertices.begin(), step.vertices.end());
      if (uniq.size() != step.vertices.size()) fail(ctx + ": repeated vertex inside step");
    }
    for (int v : step.vertices) eg.require_alive(v, ctx.c_str());

    int realized = 0;
    switch (step.rule) {
      case ElimRule::Single: {
        if (step.vertices.size() != 1) fail(ctx + ": Single rule needs exactly one vertex");
        int v = step.vertices[0];
        realized = static_cast<int>(eg.adj[static_cast<size_t>(v)].size());
        eliminate_atomic({v});
        break;
      }
      case ElimRule::Subset: {
        std::vector<int> nb = eg.open_neighborhood(step.vertices);
        realized = static_cast<int>(nb.size() + step.vertices.size()) - 1;
        eliminate_atomic(step.vertices);
        break;
      }
      case ElimRule::Matching: {
        std::set<int> xs(step.vertices.begin(), step.vertices.end());
        std::set<int> ys(step.matching_partner.begin(), step.matching_partner.end());
        for (int y : step.matching_partner) {
          eg.require_alive(y, ctx.c_str());
          if (xs.count(y)) fail(ctx + ": Matching sets X and Y intersect");
        }
        for (int x : step.vertices) {
          int deg_in_y = 0;
          for (int u : eg.adj[static_cast<size_t>(x)]) deg_in_y += ys.count(u) ? 1 : 0;
          if (deg_in_y > 1)
            fail(ctx + ": Matching side condition violated at vertex " + std::to_string(x) +
                 " (" + std::to_string(deg_in_y) + " neighbors in Y)");
        }
        // |N[X] \ Y| in the current graph
        std::set<int> closed(step.vertices.begin(), step.vertices.end());
        for (int x : step.vertices)
          for (int u : eg.adj[static_cast<size_t>(x)]) closed.insert(u);
        int count = 0;
        for (int v : closed) count += ys.count(v) ? 0 : 1;
        realized = count;
        for (int x : step.vertices) eliminate_atomic({x});
        break;
      }
      case ElimRule::Layered: {
        if (step.layers.empty()) fail(ctx + ": Layered rule needs layers");
        size_t k = 0;
        for (const auto &layer : step.layers) {
          if (layer.empty()) fail(ctx + ": empty layer");
          k = std::max(k, layer.size());
        }
        // no edges between S_i and S_j for |i-j| > 1
        std::map<int, size_t> layer_of;
        for (size_t li = 0; li < step.layers.size(); ++li)
          for (int v : step.layers[li]) layer_of[v] = li;
        for (const auto &[v, li] : layer_of)
          for (int u : eg.adj[static_cast<size_t>(v)]) {
            auto it = layer_of.find(u);
            if (it != layer_of.end() && (it->second > li + 1 || li > it->second + 1))
              fail(ctx + ": Layered side condition violated between layers " +
                   std::to_string(li) + " and " + std::to_string(it->second));
          }
        std::vector<int> nb = eg.open_neighborhood(step.vertices);
        realized = static_cast<int>(2 * k + nb.size()) - 1;
        for (const auto &layer : step.layers) eliminate_atomic(layer);
        break;
      }
    }
    if (realized > step.claimed_degree)
      fail(ctx + ": realized degree " + std::to_string(realized) + " exceeds claimed " +
           std::to_string(step.claimed_degree));
    run.step_realized_degree.push_back(realized);
  }
  return run;
}

}  // namespace detail

// G/S with survivor identifiers unchanged; eliminated identifiers become
// isolated in the returned dense graph.
inline UGraph eliminate(const UGraph &g, const std::vector<int> &vertices) {
  detail::ElimGraph eg(g);
  for (int v : vertices) eg.require_alive(v, "eliminate");
  eg.eliminate_set(vertices);
  UGraph out;
  out.num_vertices = g.num_vertices;
  for (int u = 0; u < eg.n(); ++u)
    for (int v : eg.adj[static_cast<size_t>(u)])
      if (u < v) out.edges.emplace_back(u, v);
  out.normalize();
  return out;
}

// Per-step degree values guaranteed by the lemma each rule invokes
// (Single: d(v); Subset: |N[S]|-1; Matching: |N[X]\Y|; Layered: 2k+|N(S)|-1).
// Throws when a side condition fails or a realized value exceeds the claim.
inline std::vector<int> check_schedule_degrees(const UGraph &g,
                                               const EliminationSchedule &schedule) {
  return detail::run_schedule(g, schedule).step_realized_degree;
}

// Builds a tree decomposition of `g` from an elimination schedule plus a
// decomposition `tail_td` of the remaining graph: each eliminated set S
// contributes a bag N[S], attached under a bag containing N(S).
inline TreeDecomposition td_from_schedule(const UGraph &g, const EliminationSchedule &schedule,
                                          const TreeDecomposition &tail_td) {
  detail::ScheduleRun run = detail::run_schedule(g, schedule);

  // Check the tail decomposes exactly what is left.
  {
    UGraph rest;
    rest.num_vertices = g.num_vertices;
    for (int u = 0; u < run.graph.n(); ++u)
      for (int v : run.graph.adj[static_cast<size_t>(u)])
        if (u < v) rest.edges.emplace_back(u, v);
    rest.normalize();
    std::vector<char> tail_covers(static_cast<size_t>(g.num_vertices), 0);
    for (const DecompNode &nd : tail_td.nodes)
      for (int v : nd.bag) {
        if (v < 0 || v >= g.num_vertices) fail("td_from_schedule: tail bag element out of range");
        tail_covers[static_cast<size_t>(v)] = 1;
      }
    for (int v = 0; v < g.num_vertices; ++v) {
      bool alive = run.graph.alive[static_cast<size_t>(v)];
      if (alive && !tail_covers[static_cast<size_t>(v)])
        fail("td_from_schedule: schedule/tail mismatch, vertex " + std::to_string(v) +
             " survives but is not covered by the tail");
    }
    if (!tail_td.nodes.empty()) {
      ValidationReport rep = validate_decomposition(rest, tail_td);
      for (const Violation &viol : rep.violations)
        if (viol.code != ViolationCode::VertexUncovered)  // eliminated ids are isolated
          fail("td_from_schedule: tail invalid for remaining graph: " +
               std::string(violation_code_name(viol.code)) + " " + viol.detail);
    }
  }

  TreeDecomposition out;
  if (tail_td.nodes.empty()) {
    out.add_node({}, NodeKind::Plain, -1, {});
    out.root = 0;
  } else {
    out.nodes = tail_td.nodes;
    for (DecompNode &nd : out.nodes) nd.kind = NodeKind::Plain, nd.arg = -1;
    out.root = tail_td.root;
  }

  const int num_atoms = static_cast<int>(run.atoms.size());
  // elim_time[v] = atom index that removed v, or INT_MAX when it survived.
  std::vector<int> elim_time(static_cast<size_t>(g.num_vertices), num_atoms);
  for (int t = 0; t < num_atoms; ++t)
    for (int v : run.atoms[static_cast<size_t>(t)].removed)
      elim_time[static_cast<size_t>(v)] = t;

  // Node index of the bag created for atom t (filled back-to-front).
  std::vector<int> atom_node(static_cast<size_t>(num_atoms), -1);

  auto tail_node_containing = [&](const std::vector<int> &need) -> int {
    int limit = tail_td.nodes.empty() ? 1 : static_cast<int>(tail_td.nodes.size());
    for (int i = 0; i < limit; ++i) {
      const auto &bag = out.node(i).bag;
      bool all = true;
      for (int v : need)
        if (!std::binary_search(bag.begin(), bag.end(), v)) {
          all = false;
          break;
        }
      if (all) return i;
    }
    return -1;
  };

  for (int t = num_atoms - 1; t >= 0; --t) {
    const detail::AtomicElim &atom = run.atoms[static_cast<size_t>(t)];
    // N(S) is a clique after the elimination; it survives intact until its
    // first member is eliminated, whose bag then contains all of N(S).
    int first_later = num_atoms;
    for (int v : atom.neighbors)
      first_later = std::min(first_later, elim_time[static_cast<size_t>(v)]);
    int attach;
    if (first_later < num_atoms) {
      attach = atom_node[static_cast<size_t>(first_later)];
    } else {
      attach = tail_node_containing(atom.neighbors);
      if (attach < 0)
        fail("td_from_schedule: attachment bag not found in tail for an elimination at step " +
             std::to_string(t));
    }
    int id = out.add_node(atom.bag, NodeKind::Plain, -1, {});
    out.node(attach).children.push_back(id);
    atom_node[static_cast<size_t>(t)] = id;
  }

  out.is_nice = false;
  out.is_path = out.path_shaped();
  return out;
}

}  // namespace widthred
