#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dbbel/ratlp.hpp"
#include "testutil.hpp"

using namespace dbbel;

namespace {

// Exact substitution check, independent of the solver's own re-check.
bool satisfies(const LinearProgram& lp, const std::vector<Rat>& x) {
  for (const LpRow& row : lp.rows) {
    Rat lhs = 0;
    for (int j = 0; j < lp.num_vars; ++j) lhs += row.coeffs[j] * x[j];
    bool ok = row.rel == Rel::Le ? lhs <= row.bound
              : row.rel == Rel::Ge ? lhs >= row.bound
                                   : lhs == row.bound;
    if (!ok) return false;
  }
  return true;
}

Rat objective_value(const LinearProgram& lp, const std::vector<Rat>& x) {
  Rat v = 0;
  for (int j = 0; j < lp.num_vars; ++j) v += (*lp.objective)[j] * x[j];
  return v;
}

}  // namespace

TEST_CASE("maximize a single bounded variable") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.rows = {{{Rat(1)}, Rel::Le, Rat(1)}, {{Rat(1)}, Rel::Ge, Rat(0)}};
  lp.objective = {{Rat(1)}};
  lp.sense = Sense::Maximize;
  LpOutcome out = solve(lp);
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(*out.optimum == 1);
  CHECK((*out.witness)[0] == 1);
}

TEST_CASE("conflicting lower bounds on a unit sum are infeasible") {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.rows = {{{Rat(1), Rat(0)}, Rel::Ge, Rat(1) / 2},
             {{Rat(0), Rat(1)}, Rel::Ge, Rat(2) / 3},
             {{Rat(1), Rat(1)}, Rel::Eq, Rat(1)},
             {{Rat(1), Rat(0)}, Rel::Ge, Rat(0)},
             {{Rat(0), Rat(1)}, Rel::Ge, Rat(0)}};
  LpOutcome out = solve(lp);
  CHECK(out.status == LpStatus::Infeasible);
  CHECK_FALSE(out.witness.has_value());
}

TEST_CASE("minimize with the optimum tight at the bounds") {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.rows = {{{Rat(1), Rat(0)}, Rel::Ge, Rat(1) / 3},
             {{Rat(0), Rat(1)}, Rel::Ge, Rat(1) / 4}};
  lp.objective = {{Rat(1), Rat(1)}};
  lp.sense = Sense::Minimize;
  LpOutcome out = solve(lp);
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(*out.optimum == Rat(7) / 12);
  CHECK(satisfies(lp, *out.witness));
  CHECK(objective_value(lp, *out.witness) == Rat(7) / 12);
}

TEST_CASE("unbounded and pure-feasibility outcomes") {
  LinearProgram up;
  up.num_vars = 1;
  up.rows = {{{Rat(1)}, Rel::Ge, Rat(0)}};
  up.objective = {{Rat(1)}};
  up.sense = Sense::Maximize;
  CHECK(solve(up).status == LpStatus::Unbounded);

  LinearProgram feas;
  feas.num_vars = 2;
  feas.rows = {{{Rat(1), Rat(1)}, Rel::Eq, Rat(1)},
               {{Rat(1), Rat(-1)}, Rel::Eq, Rat(0)}};
  LpOutcome out = solve(feas);
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK((*out.witness)[0] == Rat(1) / 2);
  CHECK((*out.witness)[1] == Rat(1) / 2);
  CHECK_FALSE(out.optimum.has_value());
}

TEST_CASE("free variables may go negative") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.rows = {{{Rat(1)}, Rel::Le, Rat(-3)}};
  lp.objective = {{Rat(1)}};
  lp.sense = Sense::Maximize;
  LpOutcome out = solve(lp);
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(*out.optimum == -3);
}

TEST_CASE("malformed programs are rejected") {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.rows = {{{Rat(1)}, Rel::Le, Rat(1)}};  // row too narrow
  CHECK_THROWS_AS(solve(lp), std::invalid_argument);

  LinearProgram no_obj;
  no_obj.num_vars = 1;
  no_obj.rows = {{{Rat(1)}, Rel::Le, Rat(1)}};
  no_obj.sense = Sense::Maximize;
  CHECK_THROWS_AS(solve(no_obj), std::invalid_argument);

  LinearProgram bad_obj;
  bad_obj.num_vars = 2;
  bad_obj.rows = {{{Rat(1), Rat(1)}, Rel::Le, Rat(1)}};
  bad_obj.objective = {{Rat(1)}};
  bad_obj.sense = Sense::Minimize;
  CHECK_THROWS_AS(solve(bad_obj), std::invalid_argument);
}

TEST_CASE("identical programs produce identical witnesses") {
  testutil::Rng rng(98765);
  for (int trial = 0; trial < 20; ++trial) {
    LinearProgram lp;
    lp.num_vars = 3;
    for (int r = 0; r < 5; ++r) {
      LpRow row;
      for (int j = 0; j < 3; ++j) row.coeffs.push_back(Rat(testutil::pick(rng, -3, 3)));
      row.rel = static_cast<Rel>(testutil::pick(rng, 0, 2));
      row.bound = Rat(testutil::pick(rng, -4, 4));
      lp.rows.push_back(std::move(row));
    }
    for (int j = 0; j < 3; ++j)  // keep the feasible region bounded below/above
      lp.rows.push_back({{Rat(j == 0), Rat(j == 1), Rat(j == 2)}, Rel::Le, Rat(10)});
    lp.objective = {{Rat(1), Rat(2), Rat(-1)}};
    lp.sense = Sense::Minimize;
    LpOutcome a = solve(lp);
    LpOutcome b = solve(lp);
    CHECK(a.status == b.status);
    CHECK(a.witness == b.witness);
    CHECK(a.optimum == b.optimum);
    if (a.status == LpStatus::Optimal) {
      CHECK(satisfies(lp, *a.witness));
      if (a.optimum) CHECK(objective_value(lp, *a.witness) == *a.optimum);
    }
  }
}

TEST_CASE("primal optimum matches the explicit dual optimum") {
  // min c'x s.t. Ax >= b, x >= 0 against max b'y s.t. A'y <= c, y >= 0.
  // Nonnegative data keeps both sides feasible (x large enough; y = 0).
  testutil::Rng rng(192837);
  for (int trial = 0; trial < 25; ++trial) {
    int n = testutil::pick(rng, 1, 3), m = testutil::pick(rng, 1, 3);
    std::vector<std::vector<Rat>> A(m, std::vector<Rat>(n));
    std::vector<Rat> b(m), c(n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) A[i][j] = Rat(testutil::pick(rng, 0, 3));
      b[i] = Rat(testutil::pick(rng, 0, 4));
    }
    for (int j = 0; j < n; ++j) c[j] = Rat(testutil::pick(rng, 1, 4));
    for (int i = 0; i < m; ++i) {  // drop rows no x can satisfy
      bool all_zero = true;
      for (int j = 0; j < n; ++j) all_zero = all_zero && A[i][j] == 0;
      if (all_zero) b[i] = 0;
    }

    LinearProgram primal;
    primal.num_vars = n;
    for (int i = 0; i < m; ++i) primal.rows.push_back({A[i], Rel::Ge, b[i]});
    for (int j = 0; j < n; ++j) {
      std::vector<Rat> e(n, Rat(0));
      e[j] = 1;
      primal.rows.push_back({e, Rel::Ge, Rat(0)});
    }
    primal.objective = c;
    primal.sense = Sense::Minimize;

    LinearProgram dual;
    dual.num_vars = m;
    for (int j = 0; j < n; ++j) {
      std::vector<Rat> col(m);
      for (int i = 0; i < m; ++i) col[i] = A[i][j];
      dual.rows.push_back({col, Rel::Le, c[j]});
    }
    for (int i = 0; i < m; ++i) {
      std::vector<Rat> e(m, Rat(0));
      e[i] = 1;
      dual.rows.push_back({e, Rel::Ge, Rat(0)});
    }
    dual.objective = b;
    dual.sense = Sense::Maximize;

    LpOutcome p = solve(primal);
    LpOutcome d = solve(dual);
    REQUIRE(p.status == LpStatus::Optimal);
    REQUIRE(d.status == LpStatus::Optimal);
    CHECK(*p.optimum == *d.optimum);
  }
}
