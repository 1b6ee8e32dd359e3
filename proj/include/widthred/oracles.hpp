#pragma once

// Ground-truth solvers.  The brute-force oracles enumerate assignments in
// Gray-code order with incremental clause bookkeeping and refuse inputs above
// a hard cap.  The dynamic-programming oracles run over a nice decomposition
// and handle instances whose width, not size, is small.  sat_dpll is a plain
// unit-propagation search for near-deterministic formulas (no clause
// learning).

#include <cstdlib>

#include "widthred/nice.hpp"

namespace widthred {

constexpr int kDefaultOracleCap = 26;

inline int oracle_cap() {
  if (const char *env = std::getenv("WIDTHRED_CAP")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return kDefaultOracleCap;
}

enum class AnswerKind { SatDecision, MaxCount, MaxSize };

struct OracleAnswer {
  AnswerKind kind = AnswerKind::SatDecision;
  bool sat = false;
  long long value = 0;
  std::vector<bool> witness_assignment;
  std::vector<int> witness_set;
};

namespace detail {

struct GrayScan {
  // per-variable list of (clause index, sign) occurrences
  std::vector<std::vector<std::pair<int, bool>>> occ;
  std::vector<int> true_lits;  // per clause
  int unsat_count = 0;

  explicit GrayScan(const CnfInstance &cnf)
      : occ(static_cast<size_t>(cnf.num_vars)), true_lits(cnf.clauses.size(), 0) {
    for (size_t ci = 0; ci < cnf.clauses.size(); ++ci)
      for (const Literal &l : cnf.clauses[ci].lits)
        occ[static_cast<size_t>(l.var)].push_back({static_cast<int>(ci), l.neg});
    // start at all-false: negative literals are true
    for (size_t ci = 0; ci < cnf.clauses.size(); ++ci) {
      for (const Literal &l : cnf.clauses[ci].lits)
        if (l.neg) true_lits[ci] += 1;
      if (true_lits[ci] == 0) ++unsat_count;
    }
  }

  // v flips to `now`; update satisfied-literal counts
  void flip(int v, bool now) {
    for (auto [ci, lit_neg] : occ[static_cast<size_t>(v)]) {
      int delta = (lit_neg != now) ? +1 : -1;
      int before = true_lits[static_cast<size_t>(ci)];
      true_lits[static_cast<size_t>(ci)] += delta;
      if (before == 0 && delta > 0) --unsat_count;
      if (before == 1 && delta < 0) ++unsat_count;
    }
  }
};

template <typename Visit>
inline void gray_scan_all(const CnfInstance &cnf, Visit visit) {
  const int n = cnf.num_vars;
  GrayScan scan(cnf);
  std::vector<bool> assignment(static_cast<size_t>(n), false);
  unsigned long long total = 1ULL << n;
  visit(scan, assignment);
  for (unsigned long long i = 1; i < total; ++i) {
    int v = __builtin_ctzll(i);  // Gray code flips bit ctz(i) at step i
    assignment[static_cast<size_t>(v)] = !assignment[static_cast<size_t>(v)];
    scan.flip(v, assignment[static_cast<size_t>(v)]);
    visit(scan, assignment);
  }
}

}  // namespace detail

inline OracleAnswer sat_bruteforce(const CnfInstance &cnf, int cap = oracle_cap()) {
  if (cnf.num_vars > cap)
    fail("sat_bruteforce: " + std::to_string(cnf.num_vars) + " variables exceeds cap " +
         std::to_string(cap));
  OracleAnswer ans;
  ans.kind = AnswerKind::SatDecision;
  detail::gray_scan_all(cnf, [&](const detail::GrayScan &scan, const std::vector<bool> &assignment) {
    if (!ans.sat && scan.unsat_count == 0) {
      ans.sat = true;
      ans.value = 1;
      ans.witness_assignment = assignment;
    }
  });
  return ans;
}

inline OracleAnswer max2sat_bruteforce(const CnfInstance &cnf, int cap = oracle_cap()) {
  if (cnf.num_vars > cap)
    fail("max2sat_bruteforce: variable count exceeds cap " + std::to_string(cap));
  OracleAnswer ans;
  ans.kind = AnswerKind::MaxCount;
  ans.value = -1;
  detail::gray_scan_all(cnf, [&](const detail::GrayScan &scan, const std::vector<bool> &assignment) {
    long long sat_weight = 0;
    for (size_t ci = 0; ci < cnf.clauses.size(); ++ci)
      if (scan.true_lits[ci] > 0) sat_weight += cnf.clauses[ci].mult;
    if (sat_weight > ans.value) {
      ans.value = sat_weight;
      ans.witness_assignment = assignment;
    }
  });
  if (ans.value < 0) ans.value = 0;
  ans.sat = cnf.target ? ans.value >= *cnf.target : ans.value > 0;
  return ans;
}

inline OracleAnswer is_bruteforce(const UGraph &g, int cap = oracle_cap()) {
  if (g.num_vertices > cap)
    fail("is_bruteforce: " + std::to_string(g.num_vertices) + " vertices exceeds cap " +
         std::to_string(cap));
  const int n = g.num_vertices;
  std::vector<unsigned long long> nbr(static_cast<size_t>(n), 0);
  for (auto [u, v] : g.edges) {
    nbr[static_cast<size_t>(u)] |= 1ULL << v;
    nbr[static_cast<size_t>(v)] |= 1ULL << u;
  }
  long long best = 0;
  unsigned long long best_set = 0;
  // branch on the lowest candidate vertex: include (dropping neighbors) or skip
  struct Frame {
    unsigned long long cand, chosen;
  };
  std::vector<Frame> stack{{n ? (~0ULL >> (64 - n)) : 0ULL, 0ULL}};
  while (!stack.empty()) {
    auto [cand, chosen] = stack.back();
    stack.pop_back();
    long long size = __builtin_popcountll(chosen);
    if (size + __builtin_popcountll(cand) <= best && best > 0) continue;
    if (!cand) {
      if (size > best || (size == best && best_set == 0)) {
        best = size;
        best_set = chosen;
      }
      continue;
    }
    int v = __builtin_ctzll(cand);
    unsigned long long vbit = 1ULL << v;
    stack.push_back({cand & ~vbit, chosen});                         // skip v
    stack.push_back({cand & ~(vbit | nbr[static_cast<size_t>(v)]), chosen | vbit});  // take v
  }
  OracleAnswer ans;
  ans.kind = AnswerKind::MaxSize;
  ans.value = best;
  for (int v = 0; v < n; ++v)
    if (best_set >> v & 1ULL) ans.witness_set.push_back(v);
  ans.sat = g.is_target ? best >= *g.is_target : best > 0;
  return ans;
}

// Plain DPLL with unit propagation; intended for formulas whose models are
// pinned down by propagation from a few free choices (tableau encodings,
// counter chains).  Decision only, no witness minimization.
inline OracleAnswer sat_dpll(const CnfInstance &cnf, long long node_budget = 50'000'000) {
  struct Solver {
    int n;
    std::vector<std::vector<int>> clause_lits;  // encoded: v*2 + neg
    std::vector<std::vector<int>> occ;          // var -> clause indices
    std::vector<int> assign;                    // -1 unknown, 0 false, 1 true
    std::vector<int> num_unassigned, num_true;
    std::vector<int> trail;
    long long budget;
    bool out_of_budget = false;

    bool set_var(int v, int val, std::vector<int> &propagated) {
      if (assign[static_cast<size_t>(v)] != -1) return assign[static_cast<size_t>(v)] == val;
      assign[static_cast<size_t>(v)] = val;
      propagated.push_back(v);
      for (int ci : occ[static_cast<size_t>(v)]) {
        num_unassigned[static_cast<size_t>(ci)] -= 1;
        bool makes_true = false;
        for (int enc : clause_lits[static_cast<size_t>(ci)])
          if (enc / 2 == v && (enc & 1) == (1 - val)) makes_true = true;
        if (makes_true) num_true[static_cast<size_t>(ci)] += 1;
      }
      return true;
    }

    // returns false on conflict
    bool propagate(std::vector<int> &propagated) {
      bool changed = true;
      while (changed) {
        changed = false;
        for (size_t ci = 0; ci < clause_lits.size(); ++ci) {
          if (num_true[ci] > 0) continue;
          if (num_unassigned[ci] == 0) return false;
          if (num_unassigned[ci] == 1) {
            for (int enc : clause_lits[ci]) {
              int v = enc / 2;
              if (assign[static_cast<size_t>(v)] == -1) {
                if (!set_var(v, (enc & 1) ? 0 : 1, propagated)) return false;
                changed = true;
                break;
              }
            }
          }
        }
      }
      return true;
    }

    void undo(const std::vector<int> &propagated) {
      for (int v : propagated) {
        for (int ci : occ[static_cast<size_t>(v)]) {
          num_unassigned[static_cast<size_t>(ci)] += 1;
          bool made_true = false;
          for (int enc : clause_lits[static_cast<size_t>(ci)])
            if (enc / 2 == v && (enc & 1) == (1 - assign[static_cast<size_t>(v)])) made_true = true;
          if (made_true) num_true[static_cast<size_t>(ci)] -= 1;
        }
        assign[static_cast<size_t>(v)] = -1;
      }
    }

    bool search() {
      if (--budget < 0) {
        out_of_budget = true;
        return false;
      }
      int pick = -1;
      for (size_t ci = 0; ci < clause_lits.size(); ++ci)
        if (num_true[ci] == 0) {
          for (int enc : clause_lits[ci])
            if (assign[static_cast<size_t>(enc / 2)] == -1) {
              pick = enc / 2;
              break;
            }
          if (pick >= 0) break;
        }
      if (pick < 0) return true;  // every clause satisfied
      for (int val : {1, 0}) {
        std::vector<int> propagated;
        if (set_var(pick, val, propagated) && propagate(propagated) && search()) return true;
        undo(propagated);
        if (out_of_budget) return false;
      }
      return false;
    }
  };

  Solver s;
  s.n = cnf.num_vars;
  s.budget = node_budget;
  s.assign.assign(static_cast<size_t>(s.n), -1);
  s.occ.assign(static_cast<size_t>(s.n), {});
  for (const Clause &c : cnf.clauses) {
    std::vector<int> encoded;
    for (const Literal &l : c.lits) encoded.push_back(l.var * 2 + (l.neg ? 1 : 0));
    std::sort(encoded.begin(), encoded.end());
    encoded.erase(std::unique(encoded.begin(), encoded.end()), encoded.end());
    s.clause_lits.push_back(std::move(encoded));
  }
  for (size_t ci = 0; ci < s.clause_lits.size(); ++ci) {
    std::vector<int> vars;
    for (int enc : s.clause_lits[ci]) vars.push_back(enc / 2);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    for (int v : vars) s.occ[static_cast<size_t>(v)].push_back(static_cast<int>(ci));
    s.num_unassigned.push_back(static_cast<int>(vars.size()));
    s.num_true.push_back(0);
  }

  OracleAnswer ans;
  ans.kind = AnswerKind::SatDecision;
  std::vector<int> top;
  bool ok = s.propagate(top) && s.search();
  if (s.out_of_budget) fail("sat_dpll: node budget exhausted");
  ans.sat = ok;
  ans.value = ok ? 1 : 0;
  if (ok) {
    ans.witness_assignment.assign(static_cast<size_t>(s.n), false);
    for (int v = 0; v < s.n; ++v)
      if (s.assign[static_cast<size_t>(v)] == 1) ans.witness_assignment[static_cast<size_t>(v)] = true;
  }
  return ans;
}

namespace detail {

struct BagContext {
  std::vector<int> bag;
  int index_of(int v) const {
    auto it = std::lower_bound(bag.begin(), bag.end(), v);
    return it != bag.end() && *it == v ? static_cast<int>(it - bag.begin()) : -1;
  }
};

}  // namespace detail

// Exact maximum independent set by DP over a nice decomposition; table size
// 2^|bag| per node.  Introduce(uv) nodes are legal and act as copies (edges
// are checked against the graph when a vertex enters a bag).
inline OracleAnswer is_treewidth_dp(const UGraph &g, const TreeDecomposition &ntd) {
  constexpr long long kImpossible = -(1LL << 50);
  std::vector<std::vector<long long>> tables(ntd.nodes.size());
  std::vector<std::vector<int>> adj = g.adjacency();

  // post-order over the rooted tree
  std::vector<int> order, stack{ntd.root};
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    order.push_back(i);
    for (int c : ntd.node(i).children) stack.push_back(c);
  }
  std::reverse(order.begin(), order.end());

  for (int i : order) {
    const DecompNode &nd = ntd.node(i);
    const size_t bs = nd.bag.size();
    std::vector<long long> table(1ULL << bs, kImpossible);
    auto child_table = [&](int which) -> std::vector<long long> & {
      return tables[static_cast<size_t>(nd.children[static_cast<size_t>(which)])];
    };
    switch (nd.kind) {
      case NodeKind::Leaf:
        table[0] = 0;
        break;
      case NodeKind::IntroduceVertex: {
        const auto &cb = ntd.node(nd.children[0]).bag;
        detail::BagContext ctx{nd.bag};
        int vi = ctx.index_of(nd.arg);
        // neighbor mask of v inside the new bag
        unsigned long long nb_mask = 0;
        for (int u : adj[static_cast<size_t>(nd.arg)]) {
          int ui = ctx.index_of(u);
          if (ui >= 0) nb_mask |= 1ULL << ui;
        }
        // map child subset indices into new bag positions
        std::vector<int> child_pos(cb.size());
        for (size_t j = 0; j < cb.size(); ++j) child_pos[j] = ctx.index_of(cb[j]);
        for (unsigned long long cs = 0; cs < (1ULL << cb.size()); ++cs) {
          long long val = child_table(0)[cs];
          if (val == kImpossible) continue;
          unsigned long long s = 0;
          for (size_t j = 0; j < cb.size(); ++j)
            if (cs >> j & 1ULL) s |= 1ULL << child_pos[j];
          table[s] = std::max(table[s], val);
          if ((s & nb_mask) == 0)
            table[s | (1ULL << vi)] = std::max(table[s | (1ULL << vi)], val + 1);
        }
        break;
      }
      case NodeKind::IntroduceClause:
        table = child_table(0);
        break;
      case NodeKind::Forget: {
        const auto &cb = ntd.node(nd.children[0]).bag;
        detail::BagContext ctx{nd.bag};
        std::vector<int> child_pos(cb.size());
        for (size_t j = 0; j < cb.size(); ++j) child_pos[j] = ctx.index_of(cb[j]);  // -1 for v
        for (unsigned long long cs = 0; cs < (1ULL << cb.size()); ++cs) {
          long long val = child_table(0)[cs];
          if (val == kImpossible) continue;
          unsigned long long s = 0;
          for (size_t j = 0; j < cb.size(); ++j)
            if ((cs >> j & 1ULL) && child_pos[j] >= 0) s |= 1ULL << child_pos[j];
          table[s] = std::max(table[s], val);
        }
        break;
      }
      case NodeKind::Join: {
        const auto &l = child_table(0);
        const auto &r = child_table(1);
        for (unsigned long long s = 0; s < (1ULL << bs); ++s)
          if (l[s] != kImpossible && r[s] != kImpossible)
            table[s] = l[s] + r[s] - __builtin_popcountll(s);
        break;
      }
      case NodeKind::Plain:
        fail("is_treewidth_dp: decomposition is not nice (Plain node)");
    }
    for (int c : nd.children) tables[static_cast<size_t>(c)].clear();
    tables[static_cast<size_t>(i)] = std::move(table);
  }

  OracleAnswer ans;
  ans.kind = AnswerKind::MaxSize;
  long long best = tables[static_cast<size_t>(ntd.root)].empty()
                       ? 0
                       : tables[static_cast<size_t>(ntd.root)][0];
  ans.value = std::max(best, 0LL);
  ans.sat = g.is_target ? ans.value >= *g.is_target : ans.value > 0;
  return ans;
}

// SAT decision by DP over a nice decomposition of the primal graph; clauses
// are enforced at their Introduce(C) node, so each must lie inside that bag.
inline OracleAnswer sat_treewidth_dp(const CnfInstance &cnf, const TreeDecomposition &ntd) {
  std::vector<std::vector<char>> tables(ntd.nodes.size());

  std::vector<int> order, stack{ntd.root};
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    order.push_back(i);
    for (int c : ntd.node(i).children) stack.push_back(c);
  }
  std::reverse(order.begin(), order.end());

  for (int i : order) {
    const DecompNode &nd = ntd.node(i);
    const size_t bs = nd.bag.size();
    std::vector<char> table(1ULL << bs, 0);
    auto child_table = [&](int which) -> std::vector<char> & {
      return tables[static_cast<size_t>(nd.children[static_cast<size_t>(which)])];
    };
    detail::BagContext ctx{nd.bag};
    switch (nd.kind) {
      case NodeKind::Leaf:
        table[0] = 1;
        break;
      case NodeKind::IntroduceVertex: {
        const auto &cb = ntd.node(nd.children[0]).bag;
        int vi = ctx.index_of(nd.arg);
        std::vector<int> child_pos(cb.size());
        for (size_t j = 0; j < cb.size(); ++j) child_pos[j] = ctx.index_of(cb[j]);
        for (unsigned long long cs = 0; cs < (1ULL << cb.size()); ++cs) {
          if (!child_table(0)[cs]) continue;
          unsigned long long s = 0;
          for (size_t j = 0; j < cb.size(); ++j)
            if (cs >> j & 1ULL) s |= 1ULL << child_pos[j];
          table[s] = 1;
          table[s | (1ULL << vi)] = 1;
        }
        break;
      }
      case NodeKind::IntroduceClause: {
        if (nd.arg < 0 || nd.arg >= static_cast<int>(cnf.clauses.size()))
          fail("sat_treewidth_dp: bad clause index at Introduce(C)");
        const Clause &cl = cnf.clauses[static_cast<size_t>(nd.arg)];
        for (unsigned long long s = 0; s < (1ULL << bs); ++s) {
          if (!child_table(0)[s]) continue;
          bool ok = false;
          for (const Literal &l : cl.lits) {
            int li = ctx.index_of(l.var);
            if (li < 0) fail("sat_treewidth_dp: clause variable escapes its bag");
            if (((s >> li & 1ULL) != 0) != l.neg) {
              ok = true;
              break;
            }
          }
          if (ok) table[s] = 1;
        }
        break;
      }
      case NodeKind::Forget: {
        const auto &cb = ntd.node(nd.children[0]).bag;
        std::vector<int> child_pos(cb.size());
        for (size_t j = 0; j < cb.size(); ++j) child_pos[j] = ctx.index_of(cb[j]);
        for (unsigned long long cs = 0; cs < (1ULL << cb.size()); ++cs) {
          if (!child_table(0)[cs]) continue;
          unsigned long long s = 0;
          for (size_t j = 0; j < cb.size(); ++j)
            if ((cs >> j & 1ULL) && child_pos[j] >= 0) s |= 1ULL << child_pos[j];
          table[s] = 1;
        }
        break;
      }
      case NodeKind::Join: {
        const auto &l = child_table(0);
        const auto &r = child_table(1);
        for (unsigned long long s = 0; s < (1ULL << bs); ++s) table[s] = l[s] && r[s];
        break;
      }
      case NodeKind::Plain:
        fail("sat_treewidth_dp: decomposition is not nice (Plain node)");
    }
    for (int c : nd.children) tables[static_cast<size_t>(c)].clear();
    tables[static_cast<size_t>(i)] = std::move(table);
  }

  OracleAnswer ans;
  ans.kind = AnswerKind::SatDecision;
  ans.sat = !tables[static_cast<size_t>(ntd.root)].empty() && tables[static_cast<size_t>(ntd.root)][0];
  ans.value = ans.sat ? 1 : 0;
  return ans;
}

// Maximum satisfied clause weight by DP over a nice decomposition; each
// clause is counted once, at its Introduce(C) node.
inline OracleAnswer max2sat_treewidth_dp(const CnfInstance &cnf, const TreeDecomposition &ntd) {
  constexpr long long kImpossible = -(1LL << 50);
  std::vector<std::vector<long long>> tables(ntd.nodes.size());

  std::vector<int> order, stack{ntd.root};
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    order.push_back(i);
    for (int c : ntd.node(i).children) stack.push_back(c);
  }
  std::reverse(order.begin(), order.end());

  for (int i : order) {
    const DecompNode &nd = ntd.node(i);
    const size_t bs = nd.bag.size();
    std::vector<long long> table(1ULL << bs, kImpossible);
    auto child_table = [&](int which) -> std::vector<long long> & {
      return tables[static_cast<size_t>(nd.children[static_cast<size_t>(which)])];
    };
    detail::BagContext ctx{nd.bag};
    switch (nd.kind) {
      case NodeKind::Leaf:
        table[0] = 0;
        break;
      case NodeKind::IntroduceVertex: {
        const auto &cb = ntd.node(nd.children[0]).bag;
        int vi = ctx.index_of(nd.arg);
        std::vector<int> child_pos(cb.size());
        for (size_t j = 0; j < cb.size(); ++j) child_pos[j] = ctx.index_of(cb[j]);
        for (unsigned long long cs = 0; cs < (1ULL << cb.size()); ++cs) {
          long long val = child_table(0)[cs];
          if (val == kImpossible) continue;
          unsigned long long s = 0;
          for (size_t j = 0; j < cb.size(); ++j)
            if (cs >> j & 1ULL) s |= 1ULL << child_pos[j];
          table[s] = std::max(table[s], val);
          table[s | (1ULL << vi)] = std::max(table[s | (1ULL << vi)], val);
        }
        break;
      }
      case NodeKind::IntroduceClause: {
        const Clause &cl = cnf.clauses[static_cast<size_t>(nd.arg)];
        for (unsigned long long s = 0; s < (1ULL << bs); ++s) {
          long long val = child_table(0)[s];
          if (val == kImpossible) continue;
          bool ok = false;
          for (const Literal &l : cl.lits) {
            int li = ctx.index_of(l.var);
            if (li < 0) fail("max2sat_treewidth_dp: clause variable escapes its bag");
            if (((s >> li & 1ULL) != 0) != l.neg) {
              ok = true;
              break;
            }
          }
          table[s] = val + (ok ? cl.mult : 0);
        }
        break;
      }
      case NodeKind::Forget: {
        const auto &cb = ntd.node(nd.children[0]).bag;
        std::vector<int> child_pos(cb.size());
        for (size_t j = 0; j < cb.size(); ++j) child_pos[j] = ctx.index_of(cb[j]);
        for (unsigned long long cs = 0; cs < (1ULL << cb.size()); ++cs) {
          long long val = child_table(0)[cs];
          if (val == kImpossible) continue;
          unsigned long long s = 0;
          for (size_t j = 0; j < cb.size(); ++j)
            if ((cs >> j & 1ULL) && child_pos[j] >= 0) s |= 1ULL << child_pos[j];
          table[s] = std::max(table[s], val);
        }
        break;
      }
      case NodeKind::Join: {
        const auto &l = child_table(0);
        const auto &r = child_table(1);
        for (unsigned long long s = 0; s < (1ULL << bs); ++s)
          if (l[s] != kImpossible && r[s] != kImpossible) table[s] = l[s] + r[s];
        break;
      }
      case NodeKind::Plain:
        fail("max2sat_treewidth_dp: decomposition is not nice (Plain node)");
    }
    for (int c : nd.children) tables[static_cast<size_t>(c)].clear();
    tables[static_cast<size_t>(i)] = std::move(table);
  }

  OracleAnswer ans;
  ans.kind = AnswerKind::MaxCount;
  ans.value = tables[static_cast<size_t>(ntd.root)].empty()
                  ? 0
                  : std::max(tables[static_cast<size_t>(ntd.root)][0], 0LL);
  ans.sat = cnf.target ? ans.value >= *cnf.target : ans.value > 0;
  return ans;
}

// Re-verifies a witness against its instance.
inline bool verify_witness(const CnfInstance &cnf, const std::vector<bool> &assignment) {
  for (const Clause &c : cnf.clauses)
    if (!c.satisfied_by(assignment)) return false;
  return true;
}

inline bool verify_witness(const UGraph &g, const std::vector<int> &set) {
  for (size_t i = 0; i < set.size(); ++i)
    for (size_t j = i + 1; j < set.size(); ++j)
      if (g.has_edge(set[i], set[j])) return false;
  return true;
}

}  // namespace widthred
