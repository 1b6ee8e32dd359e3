#include <catch2/catch_amalgamated.hpp>

#include "widthred/generate.hpp"
#include "widthred/oracles.hpp"
#include "widthred/reduce_tw.hpp"

using namespace widthred;

namespace {

CnfInstance unit_instance(long long k) {
  CnfInstance cnf;
  cnf.num_vars = 1;
  cnf.clauses = {Clause{pos(0)}};
  cnf.target = k;
  return cnf;
}

// decide "independent set of size >= k" on a reduction output via the width DP
bool is_answer(const ThreeSatToIsResult &res) {
  TreeDecomposition nice = normalize_nice(res.graph, res.certificate);
  return is_treewidth_dp(res.graph, nice).value >= res.k;
}

}  // namespace

TEST_CASE("max2sat_to_sat on the unit instance") {
  CnfInstance src = unit_instance(1);
  TreeDecomposition ntd = normalize_nice(src, trivial_decomposition(1));
  Max2SatToSatResult res = max2sat_to_sat(src, ntd);
  REQUIRE(sat_dpll(res.cnf).sat);

  src.target = 2;
  Max2SatToSatResult res2 = max2sat_to_sat(src, ntd);
  REQUIRE_FALSE(sat_dpll(res2.cnf).sat);
}

TEST_CASE("max2sat_to_sat rejects long clauses and requires a target") {
  CnfInstance src;
  src.num_vars = 3;
  src.clauses = {Clause{pos(0), pos(1), pos(2)}};
  src.target = 1;
  TreeDecomposition ntd = normalize_nice(src, trivial_decomposition(3));
  REQUIRE_THROWS_AS(max2sat_to_sat(src, ntd), Error);
}

TEST_CASE("max2sat_to_sat answer preservation and certificates on random instances") {
  Rng rng(101);
  int done = 0;
  while (done < 25) {
    StructuredCnf sc = structured_cnf(rng, 1 + rng.below(4), 1 + rng.below(3), 1 + rng.below(6), 2,
                                      rng.chance(1, 2));
    if (sc.cnf.num_vars == 0 || sc.cnf.clauses.empty()) continue;
    for (Clause &c : sc.cnf.clauses) c.mult = 1 + rng.below(2);
    long long m_total = sc.cnf.total_multiplicity();
    long long best = max2sat_bruteforce(sc.cnf).value;
    TreeDecomposition ntd = normalize_nice(sc.cnf, sc.td);
    for (long long k = 0; k <= m_total + 1; ++k) {
      sc.cnf.target = k;
      Max2SatToSatResult res = max2sat_to_sat(sc.cnf, ntd);
      bool target_sat = sat_dpll(res.cnf).sat;
      REQUIRE(target_sat == (best >= k));
      if (k == 0) {
        ValidationReport rep = validate_decomposition(primal_graph(res.cnf), res.certificate);
        INFO(rep.summary());
        REQUIRE(rep.ok());
        REQUIRE(rep.width <= res.bound.claimed);
        REQUIRE(res.bound.claimed ==
                res.bound.input_width + res.bound.constants.at("c") * res.bound.constants.at("M"));
      }
    }
    ++done;
  }
}

TEST_CASE("sat_to_3sat chains long clauses") {
  CnfInstance src;
  src.num_vars = 4;
  src.clauses = {Clause{pos(0), pos(1), pos(2), pos(3)}};
  SatTo3SatResult res = sat_to_3sat(src);
  REQUIRE(res.cnf.num_vars == 5);  // one fresh variable
  REQUIRE(res.cnf.clauses.size() == 2);
  // (a v b v y1), (~y1 v c v d)
  REQUIRE(res.cnf.clauses[0].lits == std::vector<Literal>{pos(0), pos(1), pos(4)});
  REQUIRE(res.cnf.clauses[1].lits == std::vector<Literal>{neg(4), pos(2), pos(3)});
}

TEST_CASE("sat_to_3sat keeps short clauses byte-identical") {
  CnfInstance src;
  src.num_vars = 3;
  src.clauses = {Clause({pos(0), neg(1), pos(2)}, 4)};
  SatTo3SatResult res = sat_to_3sat(src);
  REQUIRE(res.cnf.clauses.size() == 1);
  REQUIRE(res.cnf.clauses[0].lits == src.clauses[0].lits);
  REQUIRE(res.cnf.clauses[0].mult == src.clauses[0].mult);
  REQUIRE(res.cnf.num_vars == src.num_vars);
}

TEST_CASE("sat_to_3sat certificate width is at most w + 2") {
  // a 5-clause whose variables form the only structure: single bag, w = 4
  CnfInstance src;
  src.num_vars = 5;
  src.clauses = {Clause{pos(0), pos(1), pos(2), pos(3), pos(4)}};
  SatTo3SatResult res = sat_to_3sat(src);
  ValidationReport rep = validate_decomposition(primal_graph(res.cnf), res.certificate);
  INFO(rep.summary());
  REQUIRE(rep.ok());
  REQUIRE(res.bound.claimed == 4 + 2);
  REQUIRE(rep.width <= res.bound.claimed);
}

TEST_CASE("sat_to_3sat equisatisfiability on random instances") {
  Rng rng(111);
  for (int iter = 0; iter < 40; ++iter) {
    CnfInstance src = random_cnf(rng, 3 + rng.below(6), 1 + rng.below(8), 6);
    UGraph primal = primal_graph(src);
    TreeDecomposition td = random_decomposition_for(rng, primal);
    SatTo3SatResult res = sat_to_3sat(src, &td);
    for (const Clause &c : res.cnf.clauses) REQUIRE(c.lits.size() <= 3);
    REQUIRE(sat_bruteforce(src).sat == sat_bruteforce(res.cnf, 30).sat);
    ValidationReport rep = validate_decomposition(primal_graph(res.cnf), res.certificate);
    INFO(rep.summary());
    REQUIRE(rep.ok());
    REQUIRE(rep.width <= decomposition_width(td) + 2);
  }
}

TEST_CASE("threesat_to_is on tiny formulas") {
  SECTION("(x) and (not x): no census-sized independent set") {
    CnfInstance src;
    src.num_vars = 1;
    src.clauses = {Clause{pos(0)}, Clause{neg(0)}};
    TreeDecomposition ntd = normalize_nice(src, trivial_decomposition(1));
    ThreeSatToIsResult res = threesat_to_is(src, ntd);
    REQUIRE_FALSE(sat_bruteforce(src).sat);
    REQUIRE_FALSE(is_answer(res));
  }
  SECTION("(x or y): census-sized independent set exists") {
    CnfInstance src;
    src.num_vars = 2;
    src.clauses = {Clause{pos(0), pos(1)}};
    TreeDecomposition ntd = normalize_nice(src, trivial_decomposition(2));
    ThreeSatToIsResult res = threesat_to_is(src, ntd);
    REQUIRE(sat_bruteforce(src).sat);
    REQUIRE(is_answer(res));
    // k equals the gadget census
    REQUIRE(res.k == res.catalog.builder.var_census() + res.catalog.builder.clause_census());
  }
}

TEST_CASE("threesat_to_is certificate validates within its claimed bound") {
  Rng rng(121);
  int done = 0;
  while (done < 8) {
    StructuredCnf sc =
        structured_cnf(rng, 1 + rng.below(4), 1 + rng.below(3), 1 + rng.below(4), 3, rng.chance(1, 2));
    if (sc.cnf.num_vars == 0) continue;
    TreeDecomposition ntd = normalize_nice(sc.cnf, sc.td);
    ThreeSatToIsResult res = threesat_to_is(sc.cnf, ntd);
    ValidationReport rep = validate_decomposition(res.graph, res.certificate);
    INFO(rep.summary());
    REQUIRE(rep.ok());
    REQUIRE(rep.width <= res.bound.claimed);
    ++done;
  }
}

TEST_CASE("threesat_to_is answer preservation on random instances") {
  Rng rng(131);
  int done = 0;
  while (done < 12) {
    StructuredCnf sc =
        structured_cnf(rng, 1 + rng.below(3), 1 + rng.below(3), 1 + rng.below(4), 3, rng.chance(1, 2));
    if (sc.cnf.num_vars == 0) continue;
    TreeDecomposition ntd = normalize_nice(sc.cnf, sc.td);
    ThreeSatToIsResult res = threesat_to_is(sc.cnf, ntd);
    REQUIRE(sat_bruteforce(sc.cnf).sat == is_answer(res));
    ++done;
  }
}

TEST_CASE("is_to_max2sat") {
  SECTION("K2 with k = 2: best weight 4 < k' = 5") {
    UGraph k2 = make_graph(2, {{0, 1}}, 2);
    IsToMax2SatResult res = is_to_max2sat(k2);
    REQUIRE(*res.cnf.target == 1 * 3 + 2);
    OracleAnswer ans = max2sat_bruteforce(res.cnf);
    REQUIRE(ans.value == 4);
    REQUIRE_FALSE(ans.value >= *res.cnf.target);
  }
  SECTION("triangle with k = 1: k' = 13 achievable") {
    UGraph k3 = make_graph(3, {{0, 1}, {0, 2}, {1, 2}}, 1);
    IsToMax2SatResult res = is_to_max2sat(k3);
    REQUIRE(*res.cnf.target == 3 * 4 + 1);
    REQUIRE(max2sat_bruteforce(res.cnf).value >= *res.cnf.target);
  }
  SECTION("primal graph equals the source graph; certificate passes through") {
    Rng rng(141);
    for (int iter = 0; iter < 20; ++iter) {
      UGraph g = random_graph(rng, 1 + rng.below(8), 40);
      g.is_target = rng.below(5);
      TreeDecomposition td = random_decomposition_for(rng, g);
      IsToMax2SatResult res = is_to_max2sat(g, &td);
      UGraph primal = primal_graph(res.cnf);
      REQUIRE(primal.num_vertices == g.num_vertices);
      REQUIRE(primal.edges == g.edges);
      REQUIRE(res.certificate.nodes.size() == td.nodes.size());
      REQUIRE(res.bound.claimed == decomposition_width(td));
    }
  }
}

TEST_CASE("is_to_max2sat answer preservation on random graphs") {
  Rng rng(151);
  for (int iter = 0; iter < 25; ++iter) {
    UGraph g = random_graph(rng, 1 + rng.below(8), 15 + rng.below(60));
    long long alpha = is_bruteforce(g).value;
    for (long long k = 0; k <= g.num_vertices + 1; ++k) {
      g.is_target = k;
      IsToMax2SatResult res = is_to_max2sat(g);
      bool src_yes = alpha >= k;
      bool dst_yes = max2sat_bruteforce(res.cnf).value >= *res.cnf.target;
      REQUIRE(src_yes == dst_yes);
    }
  }
}

TEST_CASE("composition: sat -> 3sat -> is -> max2sat preserves answers") {
  Rng rng(161);
  int done = 0;
  while (done < 6) {
    StructuredCnf sc = structured_cnf(rng, 1 + rng.below(3), 1 + rng.below(3), 1 + rng.below(4), 4,
                                      rng.chance(1, 2));
    if (sc.cnf.num_vars == 0) continue;
    bool expected = sat_bruteforce(sc.cnf).sat;

    SatTo3SatResult step1 = sat_to_3sat(sc.cnf, &sc.td);
    TreeDecomposition ntd1 = normalize_nice(step1.cnf, step1.certificate);
    ThreeSatToIsResult step2 = threesat_to_is(step1.cnf, ntd1);
    IsToMax2SatResult step3 = is_to_max2sat(step2.graph, &step2.certificate);

    TreeDecomposition nice3 = normalize_nice(step3.cnf, step3.certificate);
    bool final_yes = max2sat_treewidth_dp(step3.cnf, nice3).value >= *step3.cnf.target;
    REQUIRE(final_yes == expected);
    ++done;
  }
}
