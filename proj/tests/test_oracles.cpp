#include <catch2/catch_amalgamated.hpp>

#include "widthred/generate.hpp"
#include "widthred/oracles.hpp"

using namespace widthred;

TEST_CASE("sat_bruteforce basics") {
  CnfInstance unsat;
  unsat.num_vars = 1;
  unsat.clauses = {Clause{pos(0)}, Clause{neg(0)}};
  REQUIRE_FALSE(sat_bruteforce(unsat).sat);

  CnfInstance sat;
  sat.num_vars = 2;
  sat.clauses = {Clause{pos(0), pos(1)}};
  OracleAnswer ans = sat_bruteforce(sat);
  REQUIRE(ans.sat);
  REQUIRE(verify_witness(sat, ans.witness_assignment));

  CnfInstance empty;
  empty.num_vars = 3;
  REQUIRE(sat_bruteforce(empty).sat);

  CnfInstance big;
  big.num_vars = 30;
  REQUIRE_THROWS_AS(sat_bruteforce(big), Error);
}

TEST_CASE("max2sat_bruteforce") {
  CnfInstance empty;
  empty.num_vars = 0;
  REQUIRE(max2sat_bruteforce(empty).value == 0);

  CnfInstance unit;
  unit.num_vars = 1;
  unit.clauses = {Clause{pos(0)}};
  REQUIRE(max2sat_bruteforce(unit).value == 1);

  // K2-derived instance: (x_u), (x_v), 3 copies of (-x_u v -x_v) -> max 4
  CnfInstance k2;
  k2.num_vars = 2;
  k2.clauses = {Clause{pos(0)}, Clause{pos(1)}, Clause({neg(0), neg(1)}, 3)};
  REQUIRE(max2sat_bruteforce(k2).value == 4);
}

TEST_CASE("max2sat_bruteforce agrees with direct weighted enumeration") {
  Rng rng(27);
  for (int iter = 0; iter < 25; ++iter) {
    CnfInstance cnf = random_cnf(rng, 1 + rng.below(6), 1 + rng.below(8), 2);
    for (Clause &c : cnf.clauses) c.mult = 1 + rng.below(3);
    long long best = 0;
    for (unsigned long long a = 0; a < (1ULL << cnf.num_vars); ++a) {
      std::vector<bool> assignment;
      for (int v = 0; v < cnf.num_vars; ++v) assignment.push_back((a >> v & 1ULL) != 0);
      long long w = 0;
      for (const Clause &c : cnf.clauses)
        if (c.satisfied_by(assignment)) w += c.mult;
      best = std::max(best, w);
    }
    REQUIRE(max2sat_bruteforce(cnf).value == best);
  }
}

TEST_CASE("is_bruteforce basics") {
  REQUIRE(is_bruteforce(make_graph(3, {{0, 1}, {0, 2}, {1, 2}})).value == 1);  // triangle
  REQUIRE(is_bruteforce(make_graph(4, {{0, 1}, {1, 2}, {2, 3}})).value == 2);  // P4
  REQUIRE(is_bruteforce(make_graph(1, {})).value == 1);
  REQUIRE(is_bruteforce(make_graph(0, {})).value == 0);
  UGraph g = make_graph(5, {{0, 1}, {2, 3}});
  OracleAnswer ans = is_bruteforce(g);
  REQUIRE(ans.value == 3);
  REQUIRE(verify_witness(g, ans.witness_set));
}

TEST_CASE("is_treewidth_dp agrees with is_bruteforce on random graphs") {
  Rng rng(37);
  for (int iter = 0; iter < 50; ++iter) {
    UGraph g = random_graph(rng, 1 + rng.below(10), 10 + rng.below(70));
    TreeDecomposition td = random_decomposition_for(rng, g);
    TreeDecomposition nice = normalize_nice(g, td);
    REQUIRE(validate_nice(g, nice).ok());
    REQUIRE(is_treewidth_dp(g, nice).value == is_bruteforce(g).value);
  }
}

TEST_CASE("is_treewidth_dp small cases") {
  UGraph single = make_graph(1, {});
  TreeDecomposition nice = normalize_nice(single, trivial_decomposition(1));
  REQUIRE(is_treewidth_dp(single, nice).value == 1);

  UGraph empty = make_graph(0, {});
  TreeDecomposition td;
  td.add_node({}, NodeKind::Leaf, -1, {});
  td.is_nice = true;
  REQUIRE(is_treewidth_dp(empty, td).value == 0);
}

TEST_CASE("sat_treewidth_dp and sat_dpll agree with sat_bruteforce") {
  Rng rng(47);
  for (int iter = 0; iter < 40; ++iter) {
    CnfInstance cnf = random_cnf(rng, 2 + rng.below(7), 1 + rng.below(12), 3);
    bool expected = sat_bruteforce(cnf).sat;
    TreeDecomposition nice =
        normalize_nice(cnf, random_decomposition_for(rng, primal_graph(cnf)));
    REQUIRE(sat_treewidth_dp(cnf, nice).sat == expected);
    REQUIRE(sat_dpll(cnf).sat == expected);
  }
}

TEST_CASE("max2sat_treewidth_dp agrees with max2sat_bruteforce") {
  Rng rng(57);
  for (int iter = 0; iter < 30; ++iter) {
    CnfInstance cnf = random_cnf(rng, 2 + rng.below(6), 1 + rng.below(9), 2);
    for (Clause &c : cnf.clauses) c.mult = 1 + rng.below(4);
    TreeDecomposition nice =
        normalize_nice(cnf, random_decomposition_for(rng, primal_graph(cnf)));
    REQUIRE(max2sat_treewidth_dp(cnf, nice).value == max2sat_bruteforce(cnf).value);
  }
}

TEST_CASE("oracle witnesses re-verify") {
  Rng rng(67);
  for (int iter = 0; iter < 20; ++iter) {
    CnfInstance cnf = random_cnf(rng, 2 + rng.below(6), 1 + rng.below(8), 3);
    OracleAnswer ans = sat_bruteforce(cnf);
    if (ans.sat) REQUIRE(verify_witness(cnf, ans.witness_assignment));
    UGraph g = random_graph(rng, 2 + rng.below(8), 40);
    OracleAnswer ia = is_bruteforce(g);
    REQUIRE(verify_witness(g, ia.witness_set));
    REQUIRE(static_cast<long long>(ia.witness_set.size()) == ia.value);
  }
}
