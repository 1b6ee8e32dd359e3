#pragma once

// Core data model: CNF formulas, undirected graphs, and the primal graph.
// Variable and vertex identifiers are dense 0-based integers; display names,
// when present, live in a side table and never influence semantics.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace widthred {

struct Error : std::runtime_error {
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

[[noreturn]] inline void fail(const std::string &msg) { throw Error(msg); }

inline int ceil_log2(long long v) {
  // smallest M with 2^M >= v (v >= 1)
  int m = 0;
  long long p = 1;
  while (p < v) {
    p <<= 1;
    ++m;
  }
  return m;
}

struct Literal {
  int var = 0;
  bool neg = false;

  friend bool operator==(const Literal &a, const Literal &b) {
    return a.var == b.var && a.neg == b.neg;
  }
  friend bool operator<(const Literal &a, const Literal &b) {
    return a.var != b.var ? a.var < b.var : a.neg < b.neg;
  }
};

inline Literal pos(int var) { return {var, false}; }
inline Literal neg(int var) { return {var, true}; }

struct Clause {
  std::vector<Literal> lits;
  long long mult = 1;

  Clause() = default;
  Clause(std::initializer_list<Literal> ls, long long m = 1) : lits(ls), mult(m) {}
  explicit Clause(std::vector<Literal> ls, long long m = 1) : lits(std::move(ls)), mult(m) {}

  bool satisfied_by(const std::vector<bool> &assignment) const {
    for (const Literal &l : lits)
      if (assignment[static_cast<size_t>(l.var)] != l.neg) return true;
    return false;
  }
};

struct CnfInstance {
  int num_vars = 0;
  std::vector<Clause> clauses;
  std::optional<long long> target;      // Max 2-SAT satisfaction target
  std::optional<int> max_clause_len;    // 3 for 3-CNF
  std::vector<std::string> var_names;   // optional, I/O only

  long long total_multiplicity() const {
    long long m = 0;
    for (const Clause &c : clauses) m += c.mult;
    return m;
  }
};

// Throws on structural violations (duplicate literal, bad index, ...).
inline void check_valid(const CnfInstance &cnf) {
  if (cnf.num_vars < 0) fail("cnf: negative variable count");
  for (size_t ci = 0; ci < cnf.clauses.size(); ++ci) {
    const Clause &c = cnf.clauses[ci];
    if (c.lits.empty()) fail("cnf: clause " + std::to_string(ci) + " is empty");
    if (c.mult <= 0) fail("cnf: clause " + std::to_string(ci) + " has non-positive multiplicity");
    if (cnf.max_clause_len && static_cast<int>(c.lits.size()) > *cnf.max_clause_len)
      fail("cnf: clause " + std::to_string(ci) + " longer than declared maximum");
    std::vector<Literal> sorted = c.lits;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i + 1 < sorted.size(); ++i)
      if (sorted[i] == sorted[i + 1]) fail("cnf: clause " + std::to_string(ci) + " repeats a literal");
    for (const Literal &l : c.lits)
      if (l.var < 0 || l.var >= cnf.num_vars)
        fail("cnf: clause " + std::to_string(ci) + " references unknown variable");
  }
  if (cnf.target && *cnf.target > cnf.total_multiplicity() && *cnf.target < 0)
    fail("cnf: target out of range");
}

struct UGraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // normalized: u < v, sorted, unique
  std::optional<long long> is_target;      // Independent Set size target
  std::vector<std::string> vertex_names;   // optional, I/O only

  void normalize() {
    for (auto &e : edges)
      if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }

  bool has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
  }

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<size_t>(num_vertices));
    for (auto [u, v] : edges) {
      adj[static_cast<size_t>(u)].push_back(v);
      adj[static_cast<size_t>(v)].push_back(u);
    }
    return adj;
  }
};

inline UGraph make_graph(int n, std::vector<std::pair<int, int>> edges,
                         std::optional<long long> is_target = std::nullopt) {
  UGraph g;
  g.num_vertices = n;
  g.edges = std::move(edges);
  g.is_target = is_target;
  g.normalize();
  return g;
}

inline void check_valid(const UGraph &g) {
  if (g.num_vertices < 0) fail("graph: negative vertex count");
  for (auto [u, v] : g.edges) {
    if (u == v) fail("graph: self-loop at vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= g.num_vertices || v >= g.num_vertices)
      fail("graph: edge endpoint out of range");
  }
  for (size_t i = 0; i + 1 < g.edges.size(); ++i)
    if (g.edges[i] == g.edges[i + 1]) fail("graph: duplicate edge");
}

// One vertex per variable; an edge wherever two variables share a clause.
inline UGraph primal_graph(const CnfInstance &cnf) {
  UGraph g;
  g.num_vertices = cnf.num_vars;
  std::vector<std::pair<int, int>> &es = g.edges;
  for (const Clause &c : cnf.clauses) {
    std::vector<int> vars;
    vars.reserve(c.lits.size());
    for (const Literal &l : c.lits) vars.push_back(l.var);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    for (size_t i = 0; i < vars.size(); ++i)
      for (size_t j = i + 1; j < vars.size(); ++j) es.emplace_back(vars[i], vars[j]);
  }
  g.normalize();
  return g;
}

}  // namespace widthred
