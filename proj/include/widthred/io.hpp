#pragma once

// File formats:
//   DIMACS CNF        p cnf <nvars> <nclauses>; clause lines "l1 l2 ... 0";
//                     header comment "c m2s target <k>" and clause prefix
//                     "w <mult>" carry Max 2-SAT extensions.
//   PACE graph        p tw <n> <m>; edge lines "u v"; header "c is target <k>".
//   decomposition     s td <#bags> <width+1> <n>; "b <id> v1 v2 ..."; arcs
//                     "<id> <id>"; extensions "c root <id>" and
//                     "c kind <id> <Leaf|IntroV v|IntroC c|Forget v|Join|Plain>".
// All identifiers are 1-based on disk and 0-based in memory.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "widthred/decomposition.hpp"

namespace widthred {

inline void write_dimacs(std::ostream &os, const CnfInstance &cnf) {
  if (cnf.target) os << "c m2s target " << *cnf.target << "\n";
  os << "p cnf " << cnf.num_vars << " " << cnf.clauses.size() << "\n";
  for (const Clause &c : cnf.clauses) {
    if (c.mult != 1) os << "w " << c.mult << " ";
    for (const Literal &l : c.lits) os << (l.neg ? -(l.var + 1) : (l.var + 1)) << " ";
    os << "0\n";
  }
}

inline CnfInstance read_dimacs(std::istream &is) {
  CnfInstance cnf;
  std::string line;
  bool header = false;
  long long declared_clauses = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "c") {
      std::string a, b;
      ls >> a >> b;
      if (a == "m2s" && b == "target") {
        long long k;
        if (ls >> k) cnf.target = k;
      }
      continue;
    }
    if (tok == "p") {
      std::string fmt;
      ls >> fmt >> cnf.num_vars >> declared_clauses;
      if (fmt != "cnf") fail("dimacs: expected 'p cnf' header");
      header = true;
      continue;
    }
    if (!header) fail("dimacs: clause line before header");
    Clause c;
    long long first;
    if (tok == "w") {
      if (!(ls >> c.mult) || c.mult <= 0) fail("dimacs: bad multiplicity");
      if (!(ls >> first)) fail("dimacs: empty weighted clause");
    } else {
      first = std::stoll(tok);
    }
    long long lit = first;
    while (true) {
      if (lit == 0) break;
      int v = static_cast<int>(lit > 0 ? lit : -lit) - 1;
      c.lits.push_back(Literal{v, lit < 0});
      if (!(ls >> lit)) fail("dimacs: clause not 0-terminated");
    }
    if (!c.lits.empty()) cnf.clauses.push_back(std::move(c));
  }
  if (!header) fail("dimacs: missing 'p cnf' header");
  if (declared_clauses != static_cast<long long>(cnf.clauses.size()))
    fail("dimacs: clause count mismatch with header");
  check_valid(cnf);
  return cnf;
}

inline void write_pace_graph(std::ostream &os, const UGraph &g) {
  if (g.is_target) os << "c is target " << *g.is_target << "\n";
  os << "p tw " << g.num_vertices << " " << g.edges.size() << "\n";
  for (auto [u, v] : g.edges) os << (u + 1) << " " << (v + 1) << "\n";
}

inline UGraph read_pace_graph(std::istream &is) {
  UGraph g;
  std::string line;
  bool header = false;
  long long declared_edges = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "c") {
      std::string a, b;
      ls >> a >> b;
      if (a == "is" && b == "target") {
        long long k;
        if (ls >> k) g.is_target = k;
      }
      continue;
    }
    if (tok == "p") {
      std::string fmt;
      ls >> fmt >> g.num_vertices >> declared_edges;
      if (fmt != "tw") fail("pace graph: expected 'p tw' header");
      header = true;
      continue;
    }
    if (!header) fail("pace graph: edge before header");
    int u = std::stoi(tok), v;
    if (!(ls >> v)) fail("pace graph: truncated edge line");
    g.edges.emplace_back(u - 1, v - 1);
  }
  if (!header) fail("pace graph: missing 'p tw' header");
  g.normalize();
  if (declared_edges != static_cast<long long>(g.edges.size()))
    fail("pace graph: edge count mismatch with header");
  check_valid(g);
  return g;
}

// n = number of vertices of the decomposed instance (recorded in the header).
inline void write_decomposition(std::ostream &os, const TreeDecomposition &td, int n) {
  int width_plus_1 = 0;
  for (const DecompNode &nd : td.nodes)
    width_plus_1 = std::max(width_plus_1, static_cast<int>(nd.bag.size()));
  os << "s td " << td.nodes.size() << " " << width_plus_1 << " " << n << "\n";
  os << "c root " << (td.root + 1) << "\n";
  for (size_t i = 0; i < td.nodes.size(); ++i) {
    const DecompNode &nd = td.nodes[i];
    os << "c kind " << (i + 1) << " " << node_kind_name(nd.kind);
    if (nd.kind == NodeKind::IntroduceVertex || nd.kind == NodeKind::Forget ||
        nd.kind == NodeKind::IntroduceClause)
      os << " " << (nd.arg + 1);
    os << "\n";
  }
  for (size_t i = 0; i < td.nodes.size(); ++i) {
    os << "b " << (i + 1);
    for (int v : td.nodes[i].bag) os << " " << (v + 1);
    os << "\n";
  }
  for (size_t i = 0; i < td.nodes.size(); ++i)
    for (int c : td.nodes[i].children) os << (i + 1) << " " << (c + 1) << "\n";
}

struct DecompositionFile {
  TreeDecomposition td;
  int num_vertices = 0;
};

inline DecompositionFile read_decomposition(std::istream &is) {
  DecompositionFile out;
  TreeDecomposition &td = out.td;
  std::string line;
  bool header = false;
  int declared_bags = 0;
  int root_1based = 1;
  bool any_kind = false;
  std::vector<std::pair<int, int>> arcs;
  std::vector<std::pair<int, std::pair<NodeKind, int>>> kinds;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "c") {
      std::string what;
      ls >> what;
      if (what == "root") {
        ls >> root_1based;
      } else if (what == "kind") {
        int id;
        std::string kind;
        ls >> id >> kind;
        NodeKind k = NodeKind::Plain;
        int arg = -1;
        if (kind == "Leaf") k = NodeKind::Leaf;
        else if (kind == "IntroV") k = NodeKind::IntroduceVertex;
        else if (kind == "IntroC") k = NodeKind::IntroduceClause;
        else if (kind == "Forget") k = NodeKind::Forget;
        else if (kind == "Join") k = NodeKind::Join;
        else if (kind == "Plain") k = NodeKind::Plain;
        else fail("decomposition: unknown node kind '" + kind + "'");
        if (k == NodeKind::IntroduceVertex || k == NodeKind::Forget ||
            k == NodeKind::IntroduceClause) {
          if (!(ls >> arg)) fail("decomposition: kind '" + kind + "' needs an argument");
          arg -= 1;
        }
        kinds.push_back({id - 1, {k, arg}});
        any_kind = true;
      }
      continue;
    }
    if (tok == "s") {
      std::string fmt;
      int width_plus_1;
      ls >> fmt >> declared_bags >> width_plus_1 >> out.num_vertices;
      if (fmt != "td") fail("decomposition: expected 's td' header");
      td.nodes.assign(static_cast<size_t>(declared_bags), DecompNode{});
      header = true;
      continue;
    }
    if (!header) fail("decomposition: content before 's td' header");
    if (tok == "b") {
      int id;
      ls >> id;
      if (id < 1 || id > declared_bags) fail("decomposition: bag id out of range");
      std::vector<int> bag;
      int v;
      while (ls >> v) bag.push_back(v - 1);
      std::sort(bag.begin(), bag.end());
      td.nodes[static_cast<size_t>(id - 1)].bag = std::move(bag);
      continue;
    }
    // arc line
    int a = std::stoi(tok), b;
    if (!(ls >> b)) fail("decomposition: truncated arc line");
    arcs.emplace_back(a - 1, b - 1);
  }
  if (!header) fail("decomposition: missing 's td' header");
  for (auto &[id, ka] : kinds) {
    if (id < 0 || id >= declared_bags) fail("decomposition: kind id out of range");
    td.nodes[static_cast<size_t>(id)].kind = ka.first;
    td.nodes[static_cast<size_t>(id)].arg = ka.second;
  }
  td.root = root_1based - 1;
  if (td.root < 0 || td.root >= declared_bags) fail("decomposition: root out of range");

  // Arcs are undirected in the file; orient away from the root.
  std::vector<std::vector<int>> adj(static_cast<size_t>(declared_bags));
  for (auto [a, b] : arcs) {
    if (a < 0 || b < 0 || a >= declared_bags || b >= declared_bags)
      fail("decomposition: arc endpoint out of range");
    adj[static_cast<size_t>(a)].push_back(b);
    adj[static_cast<size_t>(b)].push_back(a);
  }
  std::vector<char> seen(static_cast<size_t>(declared_bags), 0);
  std::vector<int> stack{td.root};
  seen[static_cast<size_t>(td.root)] = 1;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    for (int j : adj[static_cast<size_t>(i)])
      if (!seen[static_cast<size_t>(j)]) {
        seen[static_cast<size_t>(j)] = 1;
        td.nodes[static_cast<size_t>(i)].children.push_back(j);
        stack.push_back(j);
      }
  }
  for (char s : seen)
    if (!s) fail("decomposition: arcs do not connect all bags");
  for (auto &nd : td.nodes) std::sort(nd.children.begin(), nd.children.end());
  td.is_nice = any_kind;
  td.is_path = td.path_shaped();
  return out;
}

// Convenience file wrappers.
template <typename T>
inline T read_file_as(const std::string &path, T (*reader)(std::istream &)) {
  std::ifstream f(path);
  if (!f) fail("cannot open " + path);
  return reader(f);
}

inline void write_file(const std::string &path, const std::function<void(std::ostream &)> &fn) {
  std::ofstream f(path);
  if (!f) fail("cannot write " + path);
  fn(f);
}

}  // namespace widthred
