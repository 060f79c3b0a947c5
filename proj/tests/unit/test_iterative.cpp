#include "doctest.h"
#include "rftrlp/error.hpp"
#include "rftrlp/iterative.hpp"
#include "rftrlp/oracle.hpp"
#include "support.hpp"

using namespace rftrlp;

namespace {

struct Prepared {
  Instance inst;
  TransformedGraph m;
  DerivedSets ds;
  explicit Prepared(Instance i)
      : inst(std::move(i)), m(build_transformed_graph(inst.network)), ds(derive_sets(inst.network, m)) {}
};

/// Triangles {1,2,3} and {5,6,7} joined only through node 4.
Instance dumbbell() {
  std::vector<Edge> edges{{1, 2, 100}, {1, 3, 100}, {2, 3, 100}, {5, 6, 100}, {5, 7, 100},
                          {6, 7, 100}, {1, 4, 100}, {3, 4, 100}, {4, 5, 100}, {4, 7, 100}};
  return support::make_instance(7, edges, 150, {{1, 1, 1, 1, 1, 1, 1}});
}

}  // namespace

TEST_SUITE("master problem") {
  TEST_CASE("4-cycle: domination alone forces every node") {
    const Prepared p(support::fixture("cycle4.json"));
    CHECK(solve_master(p.inst, p.m, p.ds, {}) == NodeSet{1, 2, 3, 4});
  }

  TEST_CASE("two-triangle network: cheap but disconnected master choice") {
    const Prepared p(support::fixture("two_triangles.json"));
    const auto master = solve_master(p.inst, p.m, p.ds, {});
    CHECK(master == NodeSet{1, 2, 4, 5, 6, 8});
    CHECK(robust_cost(master, p.inst.scenarios).robust == 6);
    CHECK_FALSE(feasible_structural(p.inst, p.m, p.ds, master));
  }

  TEST_CASE("fixing every node returns every node") {
    const Prepared p(support::fixture("two_triangles.json"));
    const NodeSet all{1, 2, 3, 4, 5, 6, 7, 8};
    CHECK(solve_master(p.inst, p.m, p.ds, all) == all);
  }

  TEST_CASE("FRE-infeasible instance raises") {
    const Prepared p(support::fixture("cycle5.json"));
    CHECK_THROWS_AS(solve_master(p.inst, p.m, p.ds, {}), InfeasibleInstanceError);
  }
}

TEST_SUITE("subproblem") {
  TEST_CASE("feasible master set needs nothing more") {
    const Prepared p(support::fixture("cycle4.json"));
    CHECK(solve_subproblem(p.inst, p.m, p.ds, {1, 2, 3, 4}).empty());
    const Prepared q(support::fixture("two_triangles.json"));
    CHECK(solve_subproblem(q.inst, q.m, q.ds, {2, 3, 4, 6, 7, 8}).empty());
  }

  TEST_CASE("two separated components get joined") {
    const Prepared p(dumbbell());
    const NodeSet master{1, 2, 3, 5, 6, 7};
    REQUIRE_FALSE(feasible_structural(p.inst, p.m, p.ds, master));
    const auto k = solve_subproblem(p.inst, p.m, p.ds, master);
    CHECK_FALSE(k.empty());
    CHECK(feasible_structural(p.inst, p.m, p.ds, master.set_union(k)));
  }

  TEST_CASE("empty master set is rejected") {
    const Prepared p(support::fixture("cycle4.json"));
    CHECK_THROWS_AS(solve_subproblem(p.inst, p.m, p.ds, {}), ValidationError);
  }
}

TEST_SUITE("iterative solve") {
  TEST_CASE("4-cycle converges in the first round") {
    const auto r = solve_it_fb(support::fixture("cycle4.json"));
    CHECK(r.status == milp::SolveStatus::Optimal);
    REQUIRE(r.solution);
    CHECK(r.solution->robust_cost == 4);
    CHECK(r.trace.rounds.size() == 1);
    CHECK(r.trace.converged);
  }

  TEST_CASE("two-triangle network ends above the first master cost") {
    const auto inst = support::fixture("two_triangles.json");
    const auto r = solve_it_fb(inst);
    REQUIRE(r.solution);
    REQUIRE_FALSE(r.trace.rounds.empty());
    CHECK(r.trace.rounds.front().master_objective == 6);
    CHECK(r.solution->robust_cost > 6);
    CHECK(r.solution->robust_cost == brute_force_optimum(inst, Predicate::Structural)->robust_cost);
  }

  TEST_CASE("FRE-infeasible instance is reported infeasible") {
    const auto r = solve_it_fb(support::fixture("cycle5.json"));
    CHECK(r.status == milp::SolveStatus::Infeasible);
    CHECK_FALSE(r.solution);
  }

  TEST_CASE("random runs: terminal set feasible, trace monotone, at most n rounds") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
      GenConfig cfg;
      cfg.n = 8;
      cfg.seed = seed;
      cfg.scenarios = 5;
      cfg.flavor = seed % 2 ? GenFlavor::Gen1 : GenFlavor::Gen2;
      const Prepared p(generate(cfg));
      const auto r = solve_it_fb(p.inst, p.m, p.ds);
      if (r.status == milp::SolveStatus::Infeasible) continue;
      REQUIRE(r.solution);
      CHECK(feasible_structural(p.inst, p.m, p.ds, r.solution->chosen));
      CHECK(r.trace.monotone());
      CHECK(r.trace.rounds.size() <= 8);
    }
  }
}
