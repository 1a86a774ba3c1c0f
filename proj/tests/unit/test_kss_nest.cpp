#include <doctest.h>

#include <memory>

#include "cantor/error.hpp"
#include "cantor/kss_nest.hpp"
#include "cantor/puzzle.hpp"
#include "cantor/symbolic.hpp"

using namespace cantor;

namespace {

constexpr int kLen = 300000;

SymbolicPuzzle& fib() {
  static SymbolicPuzzle sp(kneading_itinerary("W", 2, kLen));
  return sp;
}

const NestContext& fib_ctx() {
  static NestContext ctx = make_context(fib(), 0, {0}, kLen / 2, kLen / 4);
  return ctx;
}

const Nest& fib_nest() {
  static Nest nest = build_nest(fib(), fib_ctx(), 0, 2);
  return nest;
}

bool critical_piece(PieceEngine& e, int piece) {
  int depth = e.node(piece).depth;
  for (int c = 0; c < e.critical_count(); ++c)
    if (e.resolvable(c, 0, depth) && e.piece_of(c, 0, depth) == piece) return true;
  return false;
}

// First entry of f^time(orbit) into the target piece by plain orbit scanning.
Landing scan_landing(PieceEngine& e, int orbit, int time, int target, int depth, int cap, bool hatted) {
  for (int k = hatted ? 0 : 1; k <= cap; ++k) {
    if (e.piece_of(orbit, time + k, depth) != target) continue;
    Landing out;
    out.k = k;
    out.depth = depth + k;
    for (int m = 0; m < k; ++m)
      if (critical_piece(e, e.piece_of(orbit, time + m, depth + k - m))) out.degree *= 2;
    out.piece = e.piece_of(orbit, time, depth + k);
    return out;
  }
  return {-1, -1, -1, -1};
}

}  // namespace

TEST_CASE("Fibonacci nest builds two levels with the expected shape") {
  const Nest& nest = fib_nest();
  REQUIRE(nest.failed_level < 0);
  REQUIRE(nest.levels.size() == 2);
  const NestLevel& l0 = nest.levels[0];
  CHECK(l0.I == 0);
  CHECK(l0.B_I == 3);
  CHECK(l0.L == 5);
  CHECK(l0.Kp == 11);
  CHECK(l0.K == 13);
  CHECK(l0.Kt == 18);
  CHECK(l0.M == std::vector<int>{13, 34, 89, 233});
  CHECK(nest.levels[1].I == 233);
  CHECK(nest.levels[1].L == 843);
  CHECK(nest.levels[1].K == 1830);
}

TEST_CASE("nest recursion with b = 1") {
  auto& e = fib();
  const NestContext& ctx = fib_ctx();
  REQUIRE(ctx.b == 1);
  for (const NestLevel& lv : fib_nest().levels) {
    ABPair a = operators_AB(e, ctx, lv.I);
    CHECK(a.depth_A == lv.L);
    ABPair k = operators_AB(e, ctx, lv.L);
    CHECK(k.depth_B == lv.K);
    CHECK(k.depth_A == lv.Kt);
    int m = lv.K;
    for (int j = 0; j < 3; ++j) m = successors_of(e, ctx, m).gamma().depth;
    CHECK(m == lv.M.back());
    CHECK(lv.Kt >= lv.K);
    CHECK(lv.K >= lv.Kp);
    CHECK(lv.M.back() > lv.K);
  }
  CHECK(fib_nest().levels[1].I == fib_nest().levels[0].M.back());
}

TEST_CASE("full inequality matrix passes on the Fibonacci nest") {
  auto checks = check_kss_inequalities(fib(), fib_nest());
  CHECK(checks.size() > 30);
  for (const auto& c : checks) {
    INFO(c.family << " n=" << c.n << " j=" << c.j << ": " << c.lhs << " " << c.relation << " " << c.rhs);
    CHECK(c.pass);
  }
  const NestLevel& l1 = fib_nest().levels[1];
  CHECK(l1.deg_p >= 32);
  CHECK(l1.deg_p <= 64);
}

TEST_CASE("planted off-by-one q is flagged at its instance") {
  Nest bad = fib_nest();
  bad.levels[1].q[1] += 1;
  int flagged = 0;
  for (const auto& c : check_kss_inequalities(fib(), bad))
    if (!c.pass) {
      ++flagged;
      CHECK(c.family == "q_{n,j} <= r(M_{n,j})");
      CHECK(c.n == 1);
      CHECK(c.j == 2);
    }
  CHECK(flagged == 1);
}

TEST_CASE("return times shrink along nested pieces") {
  int prev = 0;
  for (int depth : {0, 3, 5, 13, 40, 233, 900}) {
    ReturnTable r = return_times(fib(), fib_ctx(), depth);
    REQUIRE(r.r > 0);
    CHECK(r.r >= prev);
    CHECK(r.stable);
    prev = r.r;
  }
}

TEST_CASE("B(I) minus A(I) holds no sampled critical orbit point") {
  auto& e = fib();
  for (int depth : {0, 5, 13, 233}) {
    ABPair p = operators_AB(e, fib_ctx(), depth);
    CHECK(p.s - p.t >= 1);
    CHECK(p.depth_A > p.depth_B);
    for (int time = 0; time < 20000; ++time) {
      int a = e.critical_agreement(0, time, 0, 0);
      CHECK_FALSE((a >= p.depth_B && a < p.depth_A));
    }
  }
}

TEST_CASE("pullback components agree with orbit scans") {
  auto& e = fib();
  for (int depth : {0, 2, 5, 9})
    for (int time : {0, 1, 4, 7})
      for (bool hatted : {false, true}) {
        int target = e.piece_of(0, 0, depth);
        Landing got = pullback_component(e, 0, time, 0, 0, depth, 500, hatted);
        Landing want = scan_landing(e, 0, time, target, depth, 500, hatted);
        CHECK(got.k == want.k);
        CHECK(got.depth == want.depth);
        CHECK(got.degree == want.degree);
        CHECK(got.degree <= fib_ctx().D * fib_ctx().D);
      }
  CHECK_THROWS_AS(pullback_component(e, 0, 0, 0, 0, 200, 10, false), Error);
}

TEST_CASE("pullback components on a corpus cubic") {
  Puzzle pz(load_map(CANTOR_CORPUS_DIR "/cubic_b.json"));
  pz.ensure_critical_length(300);
  auto& e = pz.engine();
  for (int s = 0; s < 3; ++s) pz.add_julia_orbit(200, 40 + s);
  for (int o = 0; o < e.orbit_count(); ++o)
    for (int depth : {0, 1, 3}) {
      int target = e.piece_of(0, 0, depth);
      Landing want = scan_landing(e, o, 0, target, depth, 120, true);
      if (want.k < 0) {
        CHECK_THROWS_AS(pullback_component(e, o, 0, 0, 0, depth, 120, true), Error);
        continue;
      }
      Landing got = pullback_component(e, o, 0, 0, 0, depth, 120, true);
      CHECK(got.k == want.k);
      CHECK(got.depth == want.depth);
      CHECK(got.degree == want.degree);
    }
}

TEST_CASE("successors from children equal the brute-force list") {
  // piece tables grow with depth times length, so the oracle runs on a short model
  SymbolicPuzzle e(kneading_itinerary("W", 2, 4000));
  NestContext ctx = make_context(e, 0, {0}, 2000, 400);
  for (int depth = 0; depth <= 12; ++depth) {
    SuccessorList fast = successors_of(e, ctx, depth);
    SuccessorList slow = successors_brute_force(e, ctx, depth);
    REQUIRE(fast.items.size() == slow.items.size());
    for (size_t i = 0; i < fast.items.size(); ++i) {
      CHECK(fast.items[i].q == slow.items[i].q);
      CHECK(fast.items[i].depth == slow.items[i].depth);
      CHECK(fast.items[i].degree == slow.items[i].degree);
    }
    CHECK(fast.enough);
    CHECK(fast.p4);
    // the first return is the first successor
    Landing first = pullback_component(e, 0, 0, 0, 0, depth, 1000, false);
    CHECK(fast.items.front().depth == first.depth);
  }
}

TEST_CASE("witness pieces around points of the critical orbit") {
  auto& e = fib();
  for (int n = 0; n < 2; ++n)
    for (int time : {1, 2, 7}) {
      ShenWitness w = shen_witness(e, fib_nest(), n, 0, time, kLen / 2);
      CHECK(w.conformal);
      CHECK(w.chain_ok);
      CHECK(w.sandwich_u);
      CHECK(w.deg_l_Vp == w.deg_l_V);
      CHECK(w.deg_l_V == w.deg_l_Vt);
      CHECK(w.deg_u_Up <= w.D3);
      CHECK(w.deg_l_Vp <= w.D2);
      // with one critical point the first critical hit is the landing itself
      CHECK(w.l == w.v);
      CHECK(w.V_t >= w.V);
      CHECK(w.V >= w.V_p);
      CHECK(w.U_t >= w.U);
      CHECK(w.U >= w.U_p);
    }
}
