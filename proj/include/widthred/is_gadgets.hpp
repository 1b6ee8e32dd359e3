#pragma once

// Independent-set gadget factory.  A variable gadget is an edge {x, x-bar};
// a clause gadget for (l_1 v ... v l_d) is a d-clique with vertex c_i tied to
// the complement of l_i; a counting gadget binary-encodes, in its last layer,
// how many watched vertices were selected.  The global IS target k is the
// census: number of variable gadgets plus number of clause gadgets.

#include "widthred/constraints.hpp"

namespace widthred {

struct VarGadget {
  int pos = -1;
  int neg = -1;
  int side(bool value) const { return value ? pos : neg; }
};

class IsBuilder {
 public:
  int add_vertex(std::string name) {
    names_.push_back(std::move(name));
    gadget_of_.push_back(-1);
    return static_cast<int>(names_.size()) - 1;
  }

  void add_edge(int u, int v) {
    if (u == v || u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices())
      fail("is builder: bad edge endpoint");
    if (u > v) std::swap(u, v);
    edges_.emplace_back(u, v);
  }

  int num_vertices() const { return static_cast<int>(names_.size()); }
  long long var_census() const { return var_census_; }
  long long clause_census() const { return clause_census_; }
  long long census() const { return var_census_ + clause_census_; }

  VarGadget variable_gadget(const std::string &role) {
    VarGadget g;
    g.pos = add_vertex(role + "+");
    g.neg = add_vertex(role + "-");
    int id = new_gadget({g.pos, g.neg});
    var_side_.push_back(g);
    (void)id;
    add_edge(g.pos, g.neg);
    var_census_ += 1;
    return g;
  }

  // complement_ports[i] is the vertex excluded when c_i enters the IS.
  std::vector<int> clause_gadget(const std::vector<int> &complement_ports,
                                 const std::string &role) {
    if (complement_ports.empty()) fail("is builder: clause gadget needs at least one literal");
    std::vector<int> clique;
    for (size_t i = 0; i < complement_ports.size(); ++i) {
      int p = complement_ports[i];
      if (p < 0 || p >= num_vertices()) fail("is builder: dangling port in clause gadget");
      clique.push_back(add_vertex(role + ".c" + std::to_string(i + 1)));
    }
    for (size_t i = 0; i < clique.size(); ++i)
      for (size_t j = i + 1; j < clique.size(); ++j) add_edge(clique[i], clique[j]);
    for (size_t i = 0; i < clique.size(); ++i) add_edge(clique[i], complement_ports[i]);
    new_gadget(clique);
    clause_gadgets_.push_back({clique, complement_ports});
    clause_census_ += 1;
    return clique;
  }

  // Free vertex outside any gadget (does not count toward the census).
  int pendant(const std::string &name) { return add_vertex(name); }

  UGraph graph() const {
    UGraph g;
    g.num_vertices = num_vertices();
    g.edges = edges_;
    g.normalize();
    return g;
  }

  const std::vector<std::string> &names() const { return names_; }
  const std::vector<std::vector<int>> &gadgets() const { return gadget_members_; }
  int gadget_of(int v) const { return gadget_of_[static_cast<size_t>(v)]; }

  struct ClauseGadgetRec {
    std::vector<int> clique;
    std::vector<int> ports;
  };
  const std::vector<ClauseGadgetRec> &clause_gadget_records() const { return clause_gadgets_; }
  const std::vector<VarGadget> &variable_gadget_records() const { return var_side_; }

 private:
  int new_gadget(const std::vector<int> &members) {
    int id = static_cast<int>(gadget_members_.size());
    gadget_members_.push_back(members);
    for (int v : members) gadget_of_[static_cast<size_t>(v)] = id;
    return id;
  }

  std::vector<std::string> names_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> gadget_of_;
  std::vector<std::vector<int>> gadget_members_;
  std::vector<VarGadget> var_side_;
  std::vector<ClauseGadgetRec> clause_gadgets_;
  long long var_census_ = 0;
  long long clause_census_ = 0;
};

struct IsGadgetFragment {
  std::vector<int> vertices;
  std::vector<std::pair<int, int>> edges;
  long long var_gadgets = 0;
  long long clause_gadgets = 0;
  std::map<std::string, int> ports;

  int port(const std::string &name) const {
    auto it = ports.find(name);
    if (it == ports.end()) fail("fragment: unknown port " + name);
    return it->second;
  }
};

namespace detail {

// Captures builder growth between construction calls.
struct FragmentScope {
  IsBuilder &b;
  int v0;
  long long vc0, cc0;
  IsGadgetFragment frag;

  explicit FragmentScope(IsBuilder &builder)
      : b(builder), v0(builder.num_vertices()), vc0(builder.var_census()),
        cc0(builder.clause_census()) {}

  IsGadgetFragment finish() {
    UGraph g = b.graph();
    for (int v = v0; v < b.num_vertices(); ++v) frag.vertices.push_back(v);
    for (auto e : g.edges)
      if (e.first >= v0 || e.second >= v0) frag.edges.push_back(e);
    frag.var_gadgets = b.var_census() - vc0;
    frag.clause_gadgets = b.clause_census() - cc0;
    return frag;
  }
};

}  // namespace detail

inline IsGadgetFragment is_variable_gadget(IsBuilder &b, const std::string &role) {
  detail::FragmentScope scope(b);
  VarGadget g = b.variable_gadget(role);
  scope.frag.ports["x"] = g.pos;
  scope.frag.ports["xbar"] = g.neg;
  return scope.finish();
}

inline IsGadgetFragment is_clause_gadget(IsBuilder &b, const std::vector<int> &complement_ports,
                                         const std::string &role) {
  detail::FragmentScope scope(b);
  std::vector<int> clique = b.clause_gadget(complement_ports, role);
  for (size_t i = 0; i < clique.size(); ++i)
    scope.frag.ports["c" + std::to_string(i + 1)] = clique[i];
  return scope.finish();
}

// Layered counter: layer a holds variable gadgets for y_a and s_{a,j}; the
// last layer holds s_{d+1,j} only.  Clause gadgets pin (s_{1,*}) to zero and
// realize (s_{a+1,*}) = (s_{a,*}) + (y_a) by blocking every falsifying row
// with a clause gadget over the row's complementary sides.
struct CountingGadget {
  int d = 0;
  int M = 0;
  std::vector<int> watched;                         // u_a, a in [d]
  std::vector<VarGadget> y;                         // [d]
  std::vector<std::vector<VarGadget>> s;            // [d+1][M]
  std::vector<int> zero_gadget_vertices;            // (not s_{1,j}) singleton cliques
  std::vector<std::vector<std::vector<int>>> rows;  // rows[a-1] = cliques for layer a -> a+1

  const std::vector<VarGadget> &last_layer() const { return s.back(); }

  std::vector<int> all_vertices() const {
    std::vector<int> out;
    for (const VarGadget &g : y) out.push_back(g.pos), out.push_back(g.neg);
    for (const auto &layer : s)
      for (const VarGadget &g : layer) out.push_back(g.pos), out.push_back(g.neg);
    for (int v : zero_gadget_vertices) out.push_back(v);
    for (const auto &layer_rows : rows)
      for (const auto &clique : layer_rows) out.insert(out.end(), clique.begin(), clique.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  // Variable-gadget vertices of layer a (1-based); the lemma's S_{i,a}.
  std::vector<int> layer_vertices(int a) const {
    std::vector<int> out;
    if (a <= d) out.push_back(y[static_cast<size_t>(a - 1)].pos),
                    out.push_back(y[static_cast<size_t>(a - 1)].neg);
    for (const VarGadget &g : s[static_cast<size_t>(a - 1)])
      out.push_back(g.pos), out.push_back(g.neg);
    std::sort(out.begin(), out.end());
    return out;
  }
};

// Blocking-row realization: one clause gadget per falsifying row, whose port
// i is the side of scope gadget i carrying the row's value.
inline std::vector<std::vector<int>> arithmetic_clause_gadgets(
    IsBuilder &b, const std::vector<VarGadget> &scope_gadgets, const ConstraintSpec &spec,
    const std::string &role) {
  std::vector<std::vector<int>> cliques;
  std::vector<unsigned long long> rows = falsifying_rows(spec);
  for (size_t r = 0; r < rows.size(); ++r) {
    std::vector<int> ports;
    ports.reserve(scope_gadgets.size());
    for (size_t i = 0; i < scope_gadgets.size(); ++i)
      ports.push_back(scope_gadgets[i].side((rows[r] >> i & 1ULL) != 0));
    cliques.push_back(b.clause_gadget(ports, role + ".row" + std::to_string(r)));
  }
  return cliques;
}

inline CountingGadget is_counting_gadget(IsBuilder &b, const std::vector<int> &watched, int M,
                                         const std::string &role) {
  const int d = static_cast<int>(watched.size());
  if (M < ceil_log2(d + 1))
    fail("counting gadget: M = " + std::to_string(M) + " too small for d = " + std::to_string(d));
  CountingGadget cg;
  cg.d = d;
  cg.M = M;
  cg.watched = watched;

  for (int a = 1; a <= d; ++a)
    cg.y.push_back(b.variable_gadget(role + ".y" + std::to_string(a)));
  for (int a = 1; a <= d + 1; ++a) {
    std::vector<VarGadget> layer;
    for (int j = 1; j <= M; ++j)
      layer.push_back(b.variable_gadget(role + ".s" + std::to_string(a) + "," + std::to_string(j)));
    cg.s.push_back(std::move(layer));
  }

  // (not s_{1,j}): excluding the positive side forces value zero.
  for (int j = 0; j < M; ++j) {
    std::vector<int> clique = b.clause_gadget({cg.s[0][static_cast<size_t>(j)].pos},
                                              role + ".zero" + std::to_string(j + 1));
    cg.zero_gadget_vertices.push_back(clique[0]);
  }

  // (s_{a+1,*}) = (s_{a,*}) + (y_a), scope order: s_{a+1} bits, s_a bits, y_a.
  for (int a = 1; a <= d; ++a) {
    std::vector<VarGadget> scope_gadgets;
    std::vector<int> fake_ids;  // constraint over gadget indices, ids are positional
    VarGroup snext{{}, "s(a+1)"}, scur{{}, "s(a)"}, ya{{}, "y(a)"};
    for (int j = 0; j < M; ++j) {
      scope_gadgets.push_back(cg.s[static_cast<size_t>(a)][static_cast<size_t>(j)]);
      snext.bits.push_back(static_cast<int>(fake_ids.size()));
      fake_ids.push_back(0);
    }
    for (int j = 0; j < M; ++j) {
      scope_gadgets.push_back(cg.s[static_cast<size_t>(a - 1)][static_cast<size_t>(j)]);
      scur.bits.push_back(static_cast<int>(fake_ids.size()));
      fake_ids.push_back(0);
    }
    scope_gadgets.push_back(cg.y[static_cast<size_t>(a - 1)]);
    ya.bits.push_back(static_cast<int>(fake_ids.size()));
    fake_ids.push_back(0);
    ConstraintSpec spec = eq_sum(snext, scur, ya);
    cg.rows.push_back(
        arithmetic_clause_gadgets(b, scope_gadgets, spec, role + ".add" + std::to_string(a)));
  }

  for (int a = 1; a <= d; ++a) b.add_edge(watched[static_cast<size_t>(a - 1)], cg.y[static_cast<size_t>(a - 1)].neg);
  return cg;
}

// Enumerates every census-maximal independent set of the builder's graph,
// i.e. every IS with one vertex per gadget.  Side choices of variable gadgets
// and pendant subsets are enumerated; clause-gadget cliques only need a free
// slot, which does not affect any port, so slots are checked rather than
// enumerated.  visit() receives the chosen-vertex flags (clause cliques left
// unset).
template <typename F>
inline void for_each_census_maximal(const IsBuilder &b, F visit) {
  UGraph g = b.graph();
  std::vector<std::vector<int>> adj = g.adjacency();

  std::vector<int> var_pos, var_neg, pendants;
  for (const VarGadget &vg : b.variable_gadget_records()) {
    var_pos.push_back(vg.pos);
    var_neg.push_back(vg.neg);
  }
  for (int v = 0; v < b.num_vertices(); ++v)
    if (b.gadget_of(v) < 0) pendants.push_back(v);

  const size_t nv = var_pos.size(), np = pendants.size();
  if (nv + np > 26) fail("census enumeration: too many free choices");

  std::vector<char> chosen(static_cast<size_t>(b.num_vertices()), 0);
  for (unsigned long long mask = 0; mask < (1ULL << (nv + np)); ++mask) {
    std::fill(chosen.begin(), chosen.end(), 0);
    for (size_t i = 0; i < nv; ++i)
      chosen[static_cast<size_t>((mask >> i & 1ULL) ? var_pos[i] : var_neg[i])] = 1;
    bool ok = true;
    for (size_t i = 0; i < np && ok; ++i)
      if (mask >> (nv + i) & 1ULL) chosen[static_cast<size_t>(pendants[i])] = 1;
    // independence among chosen vertices
    for (auto [u, v] : g.edges)
      if (chosen[static_cast<size_t>(u)] && chosen[static_cast<size_t>(v)]) {
        ok = false;
        break;
      }
    if (!ok) continue;
    // every clause gadget needs a slot whose ports are all free
    for (const auto &rec : b.clause_gadget_records()) {
      bool slot = false;
      for (size_t i = 0; i < rec.clique.size() && !slot; ++i)
        if (!chosen[static_cast<size_t>(rec.ports[i])]) slot = true;
      if (!slot) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    visit(static_cast<const std::vector<char> &>(chosen));
  }
}

inline long long counting_gadget_value(const CountingGadget &cg, const std::vector<char> &chosen) {
  long long v = 0;
  const auto &last = cg.last_layer();
  for (size_t j = 0; j < last.size(); ++j)
    if (chosen[static_cast<size_t>(last[j].pos)]) v += 1LL << j;
  return v;
}

}  // namespace widthred
