#pragma once

// Seed-deterministic instance generators.  mt19937_64 has a standardized
// sequence; bounded draws below avoid std::uniform_int_distribution, whose
// output is implementation-defined, so generated files are byte-identical
// across platforms and runs.

#include <random>

#include "widthred/elimination.hpp"
#include "widthred/nice.hpp"

namespace widthred {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(unsigned long long seed) : eng(seed) {}

  unsigned long long next() { return eng(); }
  int below(int n) { return n <= 1 ? 0 : static_cast<int>(next() % static_cast<unsigned>(n)); }
  bool chance(int num, int den) { return below(den) < num; }

  std::vector<int> sample(int population, int count) {
    std::vector<int> pool(static_cast<size_t>(population));
    for (int i = 0; i < population; ++i) pool[static_cast<size_t>(i)] = i;
    std::vector<int> out;
    for (int i = 0; i < count && !pool.empty(); ++i) {
      int j = below(static_cast<int>(pool.size()));
      out.push_back(pool[static_cast<size_t>(j)]);
      pool.erase(pool.begin() + j);
    }
    return out;
  }
};

inline Clause random_clause(Rng &rng, int num_vars, int max_len) {
  int len = 1 + rng.below(std::min(max_len, num_vars));
  std::vector<int> vars = rng.sample(num_vars, len);
  Clause c;
  for (int v : vars) c.lits.push_back(Literal{v, rng.chance(1, 2)});
  std::sort(c.lits.begin(), c.lits.end());
  return c;
}

inline CnfInstance random_cnf(Rng &rng, int num_vars, int num_clauses, int max_len) {
  CnfInstance cnf;
  cnf.num_vars = num_vars;
  for (int i = 0; i < num_clauses; ++i) cnf.clauses.push_back(random_clause(rng, num_vars, max_len));
  return cnf;
}

inline UGraph random_graph(Rng &rng, int n, int edge_percent) {
  UGraph g;
  g.num_vertices = n;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.chance(edge_percent, 100)) g.edges.emplace_back(u, v);
  g.normalize();
  return g;
}

// Valid decomposition of g from a random elimination ordering.
inline TreeDecomposition random_decomposition_for(Rng &rng, const UGraph &g) {
  if (g.num_vertices == 0) {
    TreeDecomposition td;
    td.add_node({}, NodeKind::Plain, -1, {});
    return td;
  }
  std::vector<int> order(static_cast<size_t>(g.num_vertices));
  for (int v = 0; v < g.num_vertices; ++v) order[static_cast<size_t>(v)] = v;
  for (int i = g.num_vertices - 1; i > 0; --i)
    std::swap(order[static_cast<size_t>(i)], order[static_cast<size_t>(rng.below(i + 1))]);
  EliminationSchedule sched;
  for (int v : order) sched.steps.push_back(ElimStep::single(v, g.num_vertices));
  TreeDecomposition empty_tail;
  return td_from_schedule(g, sched, empty_tail);
}

// A random bag tree of bounded width plus an instance whose clauses each sit
// inside some bag, so the decomposition is valid for the primal graph by
// construction.  Fresh variables only ever enter at one place, which keeps
// occurrence sets connected.
struct StructuredCnf {
  CnfInstance cnf;
  TreeDecomposition td;
};

inline StructuredCnf structured_cnf(Rng &rng, int num_bags, int max_bag, int num_clauses,
                                    int max_clause_len, bool path_shape) {
  TreeDecomposition td;
  int num_vars = 0;
  std::vector<int> fresh;

  auto new_bag_from = [&](const std::vector<int> &base) {
    std::vector<int> bag;
    for (int v : base)
      if (rng.chance(2, 3)) bag.push_back(v);
    while (static_cast<int>(bag.size()) > max_bag) bag.erase(bag.begin() + rng.below(static_cast<int>(bag.size())));
    int room = max_bag - static_cast<int>(bag.size());
    int add = room > 0 ? rng.below(room + 1) : 0;
    for (int i = 0; i < add; ++i) bag.push_back(num_vars++);
    std::sort(bag.begin(), bag.end());
    return bag;
  };

  std::vector<int> root_bag;
  for (int i = 0; i < 1 + rng.below(max_bag); ++i) root_bag.push_back(num_vars++);
  int root = td.add_node(root_bag, NodeKind::Plain, -1, {});
  td.root = root;
  std::vector<int> frontier{root};
  for (int b = 1; b < num_bags; ++b) {
    int parent = path_shape ? frontier.back()
                            : frontier[static_cast<size_t>(rng.below(static_cast<int>(frontier.size())))];
    int id = td.add_node(new_bag_from(td.node(parent).bag), NodeKind::Plain, -1, {});
    td.node(parent).children.push_back(id);
    if (path_shape)
      frontier.back() = id;
    else
      frontier.push_back(id);
  }

  CnfInstance cnf;
  for (int c = 0; c < num_clauses; ++c) {
    const DecompNode &nd = td.node(rng.below(static_cast<int>(td.nodes.size())));
    if (nd.bag.empty()) continue;
    int len = 1 + rng.below(std::min<int>(max_clause_len, static_cast<int>(nd.bag.size())));
    std::vector<int> idx = rng.sample(static_cast<int>(nd.bag.size()), len);
    Clause cl;
    for (int j : idx) cl.lits.push_back(Literal{nd.bag[static_cast<size_t>(j)], rng.chance(1, 2)});
    std::sort(cl.lits.begin(), cl.lits.end());
    cnf.clauses.push_back(std::move(cl));
  }
  cnf.num_vars = num_vars;
  // isolated variables still need a bag: they have one by construction
  td.is_path = td.path_shaped();
  return {std::move(cnf), std::move(td)};
}

struct StructuredGraph {
  UGraph graph;
  TreeDecomposition td;
};

inline StructuredGraph structured_graph(Rng &rng, int num_bags, int max_bag, int edge_percent,
                                        bool path_shape) {
  StructuredCnf sc = structured_cnf(rng, num_bags, max_bag, 0, 0, path_shape);
  UGraph g;
  g.num_vertices = sc.cnf.num_vars;
  for (const DecompNode &nd : sc.td.nodes)
    for (size_t i = 0; i < nd.bag.size(); ++i)
      for (size_t j = i + 1; j < nd.bag.size(); ++j)
        if (rng.chance(edge_percent, 100)) g.edges.emplace_back(nd.bag[i], nd.bag[j]);
  g.normalize();
  return {std::move(g), std::move(sc.td)};
}

}  // namespace widthred
