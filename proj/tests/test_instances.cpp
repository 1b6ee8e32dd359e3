#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "widthred/io.hpp"
#include "widthred/nice.hpp"
#include "widthred/generate.hpp"

using namespace widthred;

TEST_CASE("primal graph basics") {
  SECTION("single clause forces a clique") {
    CnfInstance cnf;
    cnf.num_vars = 3;
    cnf.clauses = {Clause{pos(0), pos(1), pos(2)}};
    UGraph g = primal_graph(cnf);
    REQUIRE(g.num_vertices == 3);
    REQUIRE(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
  }
  SECTION("variable with no clauses stays isolated") {
    CnfInstance cnf;
    cnf.num_vars = 1;
    UGraph g = primal_graph(cnf);
    REQUIRE(g.num_vertices == 1);
    REQUIRE(g.edges.empty());
  }
  SECTION("two binary clauses") {
    CnfInstance cnf;
    cnf.num_vars = 3;
    cnf.clauses = {Clause{pos(0), pos(1)}, Clause{pos(1), pos(2)}};
    UGraph g = primal_graph(cnf);
    REQUIRE(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  }
  SECTION("multiplicities are ignored") {
    CnfInstance a, b;
    a.num_vars = b.num_vars = 2;
    a.clauses = {Clause({pos(0), neg(1)}, 1)};
    b.clauses = {Clause({pos(0), neg(1)}, 7)};
    REQUIRE(primal_graph(a).edges == primal_graph(b).edges);
  }
}

TEST_CASE("primal graph is monotone under clause addition") {
  Rng rng(7);
  for (int iter = 0; iter < 30; ++iter) {
    CnfInstance cnf = random_cnf(rng, 6, 8, 3);
    UGraph before = primal_graph(cnf);
    cnf.clauses.push_back(random_clause(rng, cnf.num_vars, 3));
    UGraph after = primal_graph(cnf);
    for (auto e : before.edges) REQUIRE(after.has_edge(e.first, e.second));
  }
}

TEST_CASE("structural validation rejects malformed instances") {
  CnfInstance cnf;
  cnf.num_vars = 2;
  cnf.clauses = {Clause{pos(0), pos(0)}};
  REQUIRE_THROWS_AS(check_valid(cnf), Error);

  cnf.clauses = {Clause{pos(5)}};
  REQUIRE_THROWS_AS(check_valid(cnf), Error);

  UGraph g = make_graph(3, {{0, 1}});
  g.edges.emplace_back(2, 2);
  REQUIRE_THROWS_AS(check_valid(g), Error);
}

TEST_CASE("validate_decomposition") {
  UGraph triangle = make_graph(3, {{0, 1}, {0, 2}, {1, 2}});
  SECTION("triangle in a single bag") {
    TreeDecomposition td;
    td.add_node({0, 1, 2}, NodeKind::Plain, -1, {});
    ValidationReport rep = validate_decomposition(triangle, td);
    REQUIRE(rep.ok());
    REQUIRE(rep.width == 2);
  }
  SECTION("path graph, two bags") {
    UGraph p3 = make_graph(3, {{0, 1}, {1, 2}});
    TreeDecomposition td;
    int a = td.add_node({0, 1}, NodeKind::Plain, -1, {});
    td.add_node({1, 2}, NodeKind::Plain, -1, {a});
    td.root = 1;
    ValidationReport rep = validate_decomposition(p3, td);
    REQUIRE(rep.ok());
    REQUIRE(rep.width == 1);
  }
  SECTION("uncovered edge is reported with a witness") {
    UGraph p3 = make_graph(3, {{0, 1}, {1, 2}});
    TreeDecomposition td;
    int a = td.add_node({0, 1}, NodeKind::Plain, -1, {});
    td.add_node({2}, NodeKind::Plain, -1, {a});
    td.root = 1;
    ValidationReport rep = validate_decomposition(p3, td);
    REQUIRE_FALSE(rep.ok());
    bool saw_edge = false;
    for (const Violation &v : rep.violations) {
      REQUIRE(v.code == ViolationCode::EdgeUncovered);
      saw_edge = true;
    }
    REQUIRE(saw_edge);
  }
  SECTION("disconnected occurrence set is reported") {
    UGraph g = make_graph(3, {});
    TreeDecomposition td;
    int a = td.add_node({0}, NodeKind::Plain, -1, {});
    int b = td.add_node({1, 2}, NodeKind::Plain, -1, {a});
    td.add_node({0}, NodeKind::Plain, -1, {b});
    td.root = 2;
    ValidationReport rep = validate_decomposition(g, td);
    REQUIRE_FALSE(rep.ok());
    REQUIRE(rep.violations[0].code == ViolationCode::VertexDisconnected);
  }
}

TEST_CASE("a decomposition of G validates for every subgraph of G") {
  Rng rng(11);
  for (int iter = 0; iter < 25; ++iter) {
    UGraph g = random_graph(rng, 2 + rng.below(7), 60);
    TreeDecomposition td = random_decomposition_for(rng, g);
    REQUIRE(validate_decomposition(g, td).ok());
    // drop a random subset of edges
    UGraph h = g;
    std::vector<std::pair<int, int>> kept;
    for (auto e : h.edges)
      if (rng.below(2)) kept.push_back(e);
    h.edges = kept;
    ValidationReport rep = validate_decomposition(h, td);
    REQUIRE(rep.ok());
  }
}

TEST_CASE("decomposition width conventions") {
  TreeDecomposition td;
  td.add_node({}, NodeKind::Plain, -1, {});
  REQUIRE(decomposition_width(td) == 0);  // all-empty convention

  TreeDecomposition td2;
  int a = td2.add_node({0, 1, 2}, NodeKind::Plain, -1, {});
  td2.add_node({2, 3}, NodeKind::Plain, -1, {a});
  td2.root = 1;
  REQUIRE(decomposition_width(td2) == 2);

  // K_n in a single bag has width n-1
  TreeDecomposition td3;
  td3.add_node({0, 1, 2, 3, 4}, NodeKind::Plain, -1, {});
  REQUIRE(decomposition_width(td3) == 4);

  TreeDecomposition empty;
  REQUIRE_THROWS_AS(decomposition_width(empty), Error);
}

TEST_CASE("validate_nice rejects duplicate clause introduction and non-empty roots") {
  CnfInstance cnf;
  cnf.num_vars = 2;
  cnf.clauses = {Clause{pos(0), pos(1)}};
  TreeDecomposition td = normalize_nice(cnf, trivial_decomposition(2));
  REQUIRE(validate_nice(cnf, td).ok());

  SECTION("duplicate IntroduceClause") {
    TreeDecomposition bad = td;
    // splice a second IntroduceClause above the existing one
    for (size_t i = 0; i < bad.nodes.size(); ++i) {
      if (bad.nodes[i].kind == NodeKind::IntroduceClause) {
        int extra = bad.add_node(bad.nodes[i].bag, NodeKind::IntroduceClause, 0, {});
        for (size_t j = 0; j < bad.nodes.size(); ++j)
          for (int &c : bad.nodes[j].children)
            if (c == static_cast<int>(i)) c = extra;
        bad.node(extra).children.push_back(static_cast<int>(i));
        break;
      }
    }
    ValidationReport rep = validate_nice(cnf, bad);
    REQUIRE_FALSE(rep.ok());
    bool saw = false;
    for (const Violation &v : rep.violations)
      if (v.code == ViolationCode::IntroduceClauseCountWrong) saw = true;
    REQUIRE(saw);
  }

  SECTION("non-empty root") {
    TreeDecomposition bad = td;
    // chop the final forgets: re-root at a node with non-empty bag
    for (size_t i = 0; i < bad.nodes.size(); ++i)
      if (!bad.nodes[i].bag.empty() && bad.nodes[i].kind == NodeKind::IntroduceClause)
        bad.root = static_cast<int>(i);
    ValidationReport rep = validate_nice(cnf, bad);
    REQUIRE_FALSE(rep.ok());
  }
}

TEST_CASE("dimacs round trip") {
  CnfInstance cnf;
  cnf.num_vars = 4;
  cnf.clauses = {Clause({pos(0), neg(2)}, 1), Clause({neg(1), pos(3)}, 5), Clause({pos(2)}, 1)};
  cnf.target = 6;
  std::ostringstream os;
  write_dimacs(os, cnf);
  std::istringstream is(os.str());
  CnfInstance back = read_dimacs(is);
  REQUIRE(back.num_vars == cnf.num_vars);
  REQUIRE(back.target == cnf.target);
  REQUIRE(back.clauses.size() == cnf.clauses.size());
  for (size_t i = 0; i < cnf.clauses.size(); ++i) {
    REQUIRE(back.clauses[i].mult == cnf.clauses[i].mult);
    REQUIRE(back.clauses[i].lits == cnf.clauses[i].lits);
  }
}

TEST_CASE("graph and decomposition round trips on random data") {
  Rng rng(3);
  for (int iter = 0; iter < 20; ++iter) {
    UGraph g = random_graph(rng, 1 + rng.below(8), 50);
    if (rng.below(2)) g.is_target = rng.below(5);
    std::ostringstream os;
    write_pace_graph(os, g);
    std::istringstream is(os.str());
    UGraph back = read_pace_graph(is);
    REQUIRE(back.num_vertices == g.num_vertices);
    REQUIRE(back.edges == g.edges);
    REQUIRE(back.is_target == g.is_target);

    TreeDecomposition td = random_decomposition_for(rng, g);
    std::ostringstream os2;
    write_decomposition(os2, td, g.num_vertices);
    std::istringstream is2(os2.str());
    DecompositionFile df = read_decomposition(is2);
    REQUIRE(df.num_vertices == g.num_vertices);
    REQUIRE(df.td.nodes.size() == td.nodes.size());
    REQUIRE(df.td.root == td.root);
    for (size_t i = 0; i < td.nodes.size(); ++i) {
      REQUIRE(df.td.nodes[i].bag == td.nodes[i].bag);
      std::vector<int> a = td.nodes[i].children;
      std::sort(a.begin(), a.end());
      REQUIRE(df.td.nodes[i].children == a);
    }
    REQUIRE(validate_decomposition(g, df.td).ok());
  }
}
