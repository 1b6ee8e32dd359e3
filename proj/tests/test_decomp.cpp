#include <catch2/catch_amalgamated.hpp>

#include "widthred/elimination.hpp"
#include "widthred/generate.hpp"
#include "widthred/nice.hpp"

using namespace widthred;

TEST_CASE("eliminate") {
  SECTION("path midpoint: neighbors become a clique") {
    UGraph p3 = make_graph(3, {{0, 1}, {1, 2}});
    UGraph out = eliminate(p3, {1});
    REQUIRE(out.edges == std::vector<std::pair<int, int>>{{0, 2}});
  }
  SECTION("isolated vertex leaves edges unchanged") {
    UGraph g = make_graph(3, {{0, 1}});
    UGraph out = eliminate(g, {2});
    REQUIRE(out.edges == g.edges);
  }
  SECTION("K4 minus any vertex is K3") {
    UGraph k4 = make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    UGraph out = eliminate(k4, {3});
    REQUIRE(out.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
  }
  SECTION("unknown vertex is an error") {
    UGraph g = make_graph(2, {{0, 1}});
    REQUIRE_THROWS_AS(eliminate(g, {5}), Error);
  }
}

TEST_CASE("check_schedule_degrees") {
  SECTION("matching rule on star leaves, center excluded via Y") {
    UGraph star = make_graph(4, {{0, 1}, {0, 2}, {0, 3}});  // 0 = center
    EliminationSchedule sched;
    sched.steps.push_back(ElimStep::matching({1, 2, 3}, {0}, 3));
    std::vector<int> degs = check_schedule_degrees(star, sched);
    REQUIRE(degs == std::vector<int>{3});  // |N[X] \ Y| = 3
  }
  SECTION("layered rule bound is 2k+|N(S)|-1") {
    // layers {1},{2} hanging off a 2-clique {0,3}: k=1, N(S) = {0,3}
    UGraph g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    EliminationSchedule sched;
    sched.steps.push_back(ElimStep::layered({{1}, {2}}, 3));
    std::vector<int> degs = check_schedule_degrees(g, sched);
    REQUIRE(degs == std::vector<int>{3});  // 2*1 + 2 - 1
  }
  SECTION("claimed degree below realized is an error") {
    UGraph k3 = make_graph(3, {{0, 1}, {0, 2}, {1, 2}});
    EliminationSchedule sched;
    sched.steps.push_back(ElimStep::single(0, 1));
    REQUIRE_THROWS_AS(check_schedule_degrees(k3, sched), Error);
  }
  SECTION("matching side condition violation is an error") {
    UGraph k3 = make_graph(3, {{0, 1}, {0, 2}, {1, 2}});
    EliminationSchedule sched;
    sched.steps.push_back(ElimStep::matching({0}, {1, 2}, 3));
    REQUIRE_THROWS_AS(check_schedule_degrees(k3, sched), Error);
  }
  SECTION("layered far-apart edge is an error") {
    UGraph g = make_graph(3, {{0, 2}});
    EliminationSchedule sched;
    sched.steps.push_back(ElimStep::layered({{0}, {1}, {2}}, 5));
    REQUIRE_THROWS_AS(check_schedule_degrees(g, sched), Error);
  }
}

TEST_CASE("td_from_schedule") {
  TreeDecomposition empty_tail;
  SECTION("triangle eliminated singly gives width 2") {
    UGraph k3 = make_graph(3, {{0, 1}, {0, 2}, {1, 2}});
    EliminationSchedule sched;
    for (int v : {0, 1, 2}) sched.steps.push_back(ElimStep::single(v, 2));
    TreeDecomposition td = td_from_schedule(k3, sched, empty_tail);
    REQUIRE(validate_decomposition(k3, td).ok());
    REQUIRE(decomposition_width(td) == 2);
  }
  SECTION("P4, endpoints then middle, width 1") {
    UGraph p4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
    EliminationSchedule sched;
    sched.steps.push_back(ElimStep::single(0, 1));
    sched.steps.push_back(ElimStep::single(3, 1));
    sched.steps.push_back(ElimStep::single(1, 1));
    sched.steps.push_back(ElimStep::single(2, 1));
    TreeDecomposition td = td_from_schedule(p4, sched, empty_tail);
    ValidationReport rep = validate_decomposition(p4, td);
    REQUIRE(rep.ok());
    REQUIRE(rep.width == 1);
  }
  SECTION("star leaves via matching, width 1") {
    UGraph star = make_graph(4, {{0, 1}, {0, 2}, {0, 3}});
    EliminationSchedule sched;
    sched.steps.push_back(ElimStep::matching({1, 2, 3}, {0}, 3));
    sched.steps.push_back(ElimStep::single(0, 1));
    TreeDecomposition td = td_from_schedule(star, sched, empty_tail);
    ValidationReport rep = validate_decomposition(star, td);
    REQUIRE(rep.ok());
    REQUIRE(rep.width == 1);
  }
  SECTION("schedule/tail mismatch is an error") {
    UGraph p3 = make_graph(3, {{0, 1}, {1, 2}});
    EliminationSchedule sched;
    sched.steps.push_back(ElimStep::single(0, 2));
    REQUIRE_THROWS_AS(td_from_schedule(p3, sched, empty_tail), Error);
  }
  SECTION("non-empty tail") {
    UGraph p3 = make_graph(3, {{0, 1}, {1, 2}});
    EliminationSchedule sched;
    sched.steps.push_back(ElimStep::single(0, 1));
    TreeDecomposition tail;
    tail.add_node({1, 2}, NodeKind::Plain, -1, {});
    TreeDecomposition td = td_from_schedule(p3, sched, tail);
    ValidationReport rep = validate_decomposition(p3, td);
    REQUIRE(rep.ok());
    REQUIRE(rep.width == 1);
  }
}

TEST_CASE("td_from_schedule on random graphs and random legal schedules") {
  Rng rng(21);
  TreeDecomposition empty_tail;
  for (int iter = 0; iter < 40; ++iter) {
    int n = 2 + rng.below(9);
    UGraph g = random_graph(rng, n, 15 + rng.below(60));
    // random mix of Single and Subset steps over a random order
    std::vector<int> order(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) order[static_cast<size_t>(v)] = v;
    for (int i = n - 1; i > 0; --i)
      std::swap(order[static_cast<size_t>(i)], order[static_cast<size_t>(rng.below(i + 1))]);
    EliminationSchedule sched;
    size_t at = 0;
    while (at < order.size()) {
      size_t take = 1 + static_cast<size_t>(rng.below(2));
      take = std::min(take, order.size() - at);
      std::vector<int> vs(order.begin() + static_cast<long>(at),
                          order.begin() + static_cast<long>(at + take));
      if (take == 1)
        sched.steps.push_back(ElimStep::single(vs[0], n));
      else
        sched.steps.push_back(ElimStep::subset(vs, 2 * n));
      at += take;
    }
    std::vector<int> degs = check_schedule_degrees(g, sched);
    TreeDecomposition td = td_from_schedule(g, sched, empty_tail);
    ValidationReport rep = validate_decomposition(g, td);
    INFO(rep.summary());
    REQUIRE(rep.ok());
    // width(result) <= max realized degree (empty tail)
    int max_deg = 0;
    for (int d : degs) max_deg = std::max(max_deg, d);
    REQUIRE(rep.width <= std::max(max_deg, 0));
  }
}

TEST_CASE("normalize_nice on the spec's single-bag example") {
  CnfInstance cnf;
  cnf.num_vars = 2;
  cnf.clauses = {Clause{pos(0), pos(1)}};
  TreeDecomposition td = trivial_decomposition(2);
  TreeDecomposition nice = normalize_nice(cnf, td);
  ValidationReport rep = validate_nice(cnf, nice);
  INFO(rep.summary());
  REQUIRE(rep.ok());
  REQUIRE(decomposition_width(nice) == 1);
  // Leaf; IntroV; IntroV; IntroC; Forget; Forget
  REQUIRE(nice.nodes.size() == 6);
}

TEST_CASE("normalize_nice preserves width and path shape") {
  UGraph p3 = make_graph(3, {{0, 1}, {1, 2}});
  TreeDecomposition td;
  int a = td.add_node({0, 1}, NodeKind::Plain, -1, {});
  td.add_node({1, 2}, NodeKind::Plain, -1, {a});
  td.root = 1;
  TreeDecomposition nice = normalize_nice(p3, td, NiceShape::Path);
  ValidationReport rep = validate_nice(p3, nice);
  INFO(rep.summary());
  REQUIRE(rep.ok());
  REQUIRE(nice.is_path);
  REQUIRE(decomposition_width(nice) == 1);
}

TEST_CASE("normalize_nice is idempotent at the width level") {
  CnfInstance cnf;
  cnf.num_vars = 3;
  cnf.clauses = {Clause{pos(0), neg(1)}, Clause{pos(1), pos(2)}};
  TreeDecomposition nice = normalize_nice(cnf, trivial_decomposition(3));
  TreeDecomposition again = normalize_nice(cnf, nice);
  REQUIRE(validate_nice(cnf, again).ok());
  REQUIRE(decomposition_width(again) == decomposition_width(nice));
}

TEST_CASE("normalize_nice validates on random instances and is deterministic") {
  Rng rng(31);
  for (int iter = 0; iter < 100; ++iter) {
    StructuredCnf sc = structured_cnf(rng, 1 + rng.below(6), 1 + rng.below(4), rng.below(9), 3,
                                      rng.chance(1, 2));
    if (sc.cnf.num_vars == 0) continue;
    TreeDecomposition nice = normalize_nice(sc.cnf, sc.td);
    ValidationReport rep = validate_nice(sc.cnf, nice);
    INFO(rep.summary());
    REQUIRE(rep.ok());
    REQUIRE(decomposition_width(nice) == decomposition_width(sc.td));
    // node count stays polynomial: <= 4 * (bags * (maxbag+2) + clauses + 1)
    size_t bound = 0;
    for (const DecompNode &nd : sc.td.nodes) bound += nd.bag.size() + 2;
    bound = 4 * (bound + sc.cnf.clauses.size() + 1);
    REQUIRE(nice.nodes.size() <= bound);

    TreeDecomposition nice2 = normalize_nice(sc.cnf, sc.td);
    REQUIRE(nice.nodes.size() == nice2.nodes.size());
    for (size_t i = 0; i < nice.nodes.size(); ++i) {
      REQUIRE(nice.nodes[i].bag == nice2.nodes[i].bag);
      REQUIRE(nice.nodes[i].kind == nice2.nodes[i].kind);
      REQUIRE(nice.nodes[i].arg == nice2.nodes[i].arg);
    }
  }
}

TEST_CASE("normalize_nice on 20 random CNFs round-trips validate_nice") {
  Rng rng(41);
  int done = 0;
  while (done < 20) {
    CnfInstance cnf = random_cnf(rng, 2 + rng.below(7), 1 + rng.below(8), 3);
    UGraph g = primal_graph(cnf);
    TreeDecomposition td = random_decomposition_for(rng, g);
    TreeDecomposition nice = normalize_nice(cnf, td);
    REQUIRE(validate_nice(cnf, nice).ok());
    ++done;
  }
}
