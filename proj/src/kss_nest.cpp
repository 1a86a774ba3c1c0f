#include "cantor/kss_nest.hpp"

#include <algorithm>
#include <map>

#include "cantor/error.hpp"

namespace cantor {

long long ipow(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > (1LL << 62) / std::max(1LL, base)) fail(ErrorCode::Numeric, "integer power overflow");
    r *= base;
  }
  return r;
}

NestContext make_context(const PieceEngine& e, int c0, std::vector<int> klass, int time_cap, int child_cap) {
  if (c0 < 0 || c0 >= e.critical_count()) fail(ErrorCode::Domain, "unknown critical point");
  if (std::find(klass.begin(), klass.end(), c0) == klass.end()) klass.push_back(c0);
  std::sort(klass.begin(), klass.end());
  NestContext ctx;
  ctx.c0 = c0;
  ctx.klass = klass;
  ctx.b = static_cast<int>(klass.size());
  ctx.d0 = e.local_degree(c0);
  ctx.d_max = 0;
  for (int c : klass) ctx.d_max = std::max(ctx.d_max, e.local_degree(c));
  ctx.d1 = ipow(ctx.d_max, 8 * ctx.b * ctx.b - 2 * ctx.b);
  for (int c = 0; c < e.critical_count(); ++c) ctx.D *= e.local_degree(c);
  ctx.time_cap = time_cap;
  ctx.child_cap = child_cap;
  return ctx;
}

NestContext make_context(const PieceEngine& e, const CritGraph& g, int c0, int time_cap, int child_cap) {
  if (c0 < 0 || c0 >= g.count) fail(ErrorCode::Domain, "unknown critical point");
  NestContext ctx = make_context(e, c0, g.klass[c0], time_cap, child_cap);
  ctx.persistent = g.type[c0] == CritType::Persistent;
  return ctx;
}

bool in_critical_piece(const PieceEngine& e, int orbit, int time, int c0, int depth) {
  if (!e.resolvable(orbit, time, depth) || !e.resolvable(c0, 0, depth)) return false;
  return e.critical_agreement(orbit, time, c0, 0) >= depth;
}

namespace {

// Decidable: both points carry enough labels.
bool decidable(const PieceEngine& e, int orbit, int time, int c0, int depth) {
  return e.resolvable(orbit, time, depth) && e.resolvable(c0, 0, depth);
}

int first_visit(const PieceEngine& e, int orbit, int from, int c0, int depth, int cap) {
  for (int j = from; j <= cap; ++j) {
    if (!decidable(e, orbit, j, c0, depth)) return -1;
    if (e.critical_agreement(orbit, j, c0, 0) >= depth) return j;
  }
  return -1;
}

std::string at_depth(int d) { return " (depth " + std::to_string(d) + ")"; }

}  // namespace

Landing pullback_component(PieceEngine& e, int orbit, int time, int target_orbit, int target_time, int depth,
                           int time_cap, bool hatted) {
  const bool fast = target_orbit < e.critical_count() && target_time == 0;
  auto inside = [&](int t) {
    if (!e.resolvable(orbit, t, depth) || !e.resolvable(target_orbit, target_time, depth))
      fail(ErrorCode::Cap, "no visit at cap" + at_depth(depth));
    int a = fast ? e.critical_agreement(orbit, t, target_orbit, 0) : e.agreement(orbit, t, target_orbit, target_time);
    return a >= depth;
  };
  Landing out;
  if (hatted && inside(time)) {
    out.depth = depth;
    if (e.resolvable(orbit, time, depth)) out.piece = e.piece_of(orbit, time, depth);
    return out;
  }
  for (int k = 1; k <= time_cap; ++k) {
    if (time + k >= e.orbit_length(orbit)) break;
    if (!inside(time + k)) continue;
    out.k = k;
    out.depth = depth + k;
    out.degree = diagonal_degree(e, orbit, time, depth, k);
    if (e.resolvable(orbit, time, out.depth)) out.piece = e.piece_of(orbit, time, out.depth);
    return out;
  }
  fail(ErrorCode::Cap, "no visit at cap" + at_depth(depth));
}

ReturnTable return_times(const PieceEngine& e, const NestContext& ctx, int depth) {
  ReturnTable out;
  out.depth = depth;
  int best_half = -1;
  for (int c : ctx.klass) {
    int last = -1;
    for (int j = 0; j <= ctx.time_cap; ++j) {
      if (!decidable(e, c, j, ctx.c0, depth)) break;
      if (e.critical_agreement(c, j, ctx.c0, 0) < depth) continue;
      ++out.visits;
      if (last >= 0) {
        int r = j - last;
        out.r_z.push_back(r);
        if (out.r < 0 || r < out.r) out.r = r;
        if (2 * j <= ctx.time_cap && (best_half < 0 || r < best_half)) best_half = r;
      }
      last = j;
    }
  }
  out.stable = out.r >= 0 && best_half == out.r;
  return out;
}

ABPair operators_AB(const PieceEngine& e, const NestContext& ctx, int depth_I) {
  const int n = depth_I;
  const int c0 = ctx.c0;
  ABPair out;
  out.depth_I = n;
  for (int t = 1; t <= ctx.time_cap; ++t) {
    if (!decidable(e, c0, t, c0, n)) break;
    if (e.critical_agreement(c0, t, c0, 0) < n) continue;
    int land = first_visit(e, c0, t + 1, c0, n, ctx.time_cap + t);
    if (land < 0) break;
    int s = land;
    if (!e.resolvable(c0, 0, n + s)) break;
    // (P3) on the sample: no orbit point in B(I) outside A(I).
    bool clean = true;
    int checked = 0;
    for (int c : ctx.klass) {
      for (int j = 0; j <= ctx.time_cap && clean; ++j) {
        if (c == c0 && j == 0) continue;
        if (!decidable(e, c, j, c0, n + s)) break;
        ++checked;
        int a = e.critical_agreement(c, j, c0, 0);
        if (a >= n + t && a < n + s) clean = false;
      }
    }
    if (!clean) {
      ++out.skipped;
      continue;
    }
    out.t = t;
    out.s = s;
    out.depth_B = n + t;
    out.depth_A = n + s;
    out.deg_B = diagonal_degree(e, c0, 0, n, t);
    out.deg_A = diagonal_degree(e, c0, 0, n, s);
    out.p1 = out.deg_B <= ipow(ctx.d_max, ctx.b * ctx.b);
    out.p2 = out.deg_A <= ipow(ctx.d_max, ctx.b * ctx.b + ctx.b);
    out.p3_checked = checked;
    return out;
  }
  fail(ErrorCode::Cap, "required returns not found at cap" + at_depth(n));
}

namespace {

SuccessorList finish(const PieceEngine& e, const NestContext& ctx, int n, std::map<int, Successor>& by_depth) {
  SuccessorList out;
  out.depth_P = n;
  for (auto& [depth, s] : by_depth) {
    s.degree = diagonal_degree(e, ctx.c0, 0, n, s.q);
    out.items.push_back(s);
  }
  out.enough = out.items.size() >= 2;
  out.p4 = !out.items.empty() && out.gamma().degree <= ipow(ctx.d_max, 2 * ctx.b - 1);
  if (out.items.empty()) fail(ErrorCode::Cap, "no successor found at cap" + at_depth(n));
  return out;
}

}  // namespace

SuccessorList successors_of(PieceEngine& e, const NestContext& ctx, int depth_P) {
  const int n = depth_P;
  const int c0 = ctx.c0;
  std::map<int, Successor> by_depth;
  for (int c : ctx.klass) {
    // L^_c(P)
    int k0 = first_visit(e, c, 0, c0, n, ctx.time_cap);
    if (k0 < 0) continue;
    for (const Child& q : children_of(e, c, n + k0, ctx.child_cap, ctx.klass, false)) {
      const int m = n + k0 + q.k;  // Q = P_m(c')
      int j = -1;
      for (int i = 0; i <= ctx.time_cap; ++i) {
        if (!e.resolvable(c0, i, m) || !e.resolvable(q.critical, 0, m)) break;
        if (e.critical_agreement(c0, i, q.critical, 0) >= m) {
          j = i;
          break;
        }
      }
      if (j < 0) continue;
      Successor s;
      s.depth = m + j;
      s.q = s.depth - n;
      s.via = c;
      by_depth.emplace(s.depth, s);
    }
  }
  return finish(e, ctx, n, by_depth);
}

SuccessorList successors_brute_force(PieceEngine& e, const NestContext& ctx, int depth_P) {
  const int n = depth_P;
  const int c0 = ctx.c0;
  const int P = e.piece_of(c0, 0, n);
  std::map<int, Successor> by_depth;
  for (int c : ctx.klass) {
    int k0 = -1;
    for (int k = 0; k <= ctx.time_cap && e.resolvable(c, k, n); ++k)
      if (e.piece_of(c, k, n) == P) {
        k0 = k;
        break;
      }
    if (k0 < 0) continue;
    for (const Child& q : children_brute_force(e, c, n + k0, ctx.child_cap, ctx.klass)) {
      const int m = e.node(q.piece).depth;
      int j = -1;
      for (int i = 0; i <= ctx.time_cap && e.resolvable(c0, i, m); ++i)
        if (e.piece_of(c0, i, m) == q.piece) {
          j = i;
          break;
        }
      if (j < 0) continue;
      Successor s;
      s.depth = m + j;
      s.q = s.depth - n;
      s.via = c;
      by_depth.emplace(s.depth, s);
    }
  }
  return finish(e, ctx, n, by_depth);
}

Nest build_nest(PieceEngine& e, const NestContext& ctx, int depth_I0, int levels) {
  Nest nest;
  nest.ctx = ctx;
  const int c0 = ctx.c0;
  int I = depth_I0;
  for (int n = 0; n < levels; ++n) {
    NestLevel lv;
    lv.n = n;
    lv.I = I;
    try {
      ABPair ab_I = operators_AB(e, ctx, I);
      lv.L = ab_I.depth_A;
      lv.B_I = ab_I.depth_B;
      lv.s = ab_I.s;
      lv.deg_s = ab_I.deg_A;
      lv.deg_B_I = ab_I.deg_B;
      ABPair ab_L = operators_AB(e, ctx, lv.L);
      lv.K = ab_L.depth_B;
      lv.t = ab_L.t;
      lv.deg_t = ab_L.deg_B;
      lv.Kt = ab_L.depth_A;
      lv.bn = ab_L.s;
      lv.deg_A_L = ab_L.deg_A;
      lv.Kp = lv.B_I + lv.t;
      lv.deg_t_Kp = diagonal_degree(e, c0, 0, lv.B_I, lv.t);
      lv.M.push_back(lv.K);
      for (int j = 1; j <= 3 * ctx.b; ++j) {
        SuccessorList sl = successors_of(e, ctx, lv.M.back());
        lv.q.push_back(sl.gamma().q);
        lv.deg_q.push_back(sl.gamma().degree);
        lv.successor_count.push_back(static_cast<int>(sl.items.size()));
        lv.M.push_back(sl.gamma().depth);
        lv.q_sum += sl.gamma().q;
      }
      if (n > 0) {
        const NestLevel& prev = nest.levels.back();
        lv.p = prev.q_sum + lv.s + lv.t;
        lv.h = lv.bn + lv.s + prev.q_sum;
        lv.image_ok = lv.K - prev.K == lv.p && in_critical_piece(e, c0, lv.p, c0, prev.K);
        lv.deg_p = diagonal_degree(e, c0, 0, prev.K, lv.p);
      }
    } catch (const Error& err) {
      nest.failed_level = n;
      nest.failure = err.what();
      return nest;
    }
    nest.levels.push_back(lv);
    I = lv.M.back();
  }
  return nest;
}

std::vector<InequalityCheck> check_kss_inequalities(const PieceEngine& e, const Nest& nest) {
  const NestContext& ctx = nest.ctx;
  const long long b = ctx.b;
  std::map<int, int> cache;
  auto r = [&](int depth) -> long long {
    auto it = cache.find(depth);
    if (it == cache.end()) it = cache.emplace(depth, return_times(e, ctx, depth).r).first;
    return it->second;
  };
  std::vector<InequalityCheck> out;
  auto add = [&](std::string family, int n, int j, long long lhs, const char* rel, long long rhs, bool need_r) {
    InequalityCheck c{std::move(family), n, j, lhs, rhs, rel, false};
    bool known = !need_r || (lhs >= 0 && rhs >= 0);
    std::string op = rel;
    if (known) c.pass = op == "<=" ? lhs <= rhs : op == ">=" ? lhs >= rhs : lhs == rhs;
    out.push_back(std::move(c));
  };
  const long long p1 = ipow(ctx.d_max, ctx.b * ctx.b), p2 = ipow(ctx.d_max, ctx.b * ctx.b + ctx.b);
  const long long p4 = ipow(ctx.d_max, 2 * ctx.b - 1);
  for (const NestLevel& lv : nest.levels) {
    add("(P1) deg(f^t|B(I_n)) <= d_max^{b^2}", lv.n, 0, lv.deg_B_I, "<=", p1, false);
    add("(P2) deg(f^s_n|L_n) <= d_max^{b^2+b}", lv.n, 0, lv.deg_s, "<=", p2, false);
    add("(P1) deg(f^t_n|K_n) <= d_max^{b^2}", lv.n, 0, lv.deg_t, "<=", p1, false);
    add("(P2) deg(f^b_n|K~_n) <= d_max^{b^2+b}", lv.n, 0, lv.deg_A_L, "<=", p2, false);
    for (size_t j = 0; j < lv.deg_q.size(); ++j) {
      add("(P4) deg(f^q_{n,j}|M_{n,j}) <= d_max^{2b-1}", lv.n, static_cast<int>(j) + 1, lv.deg_q[j], "<=", p4, false);
      add("successors of M_{n,j-1} >= 2", lv.n, static_cast<int>(j) + 1, lv.successor_count[j], ">=", 2, false);
    }
  }
  for (size_t i = 1; i < nest.levels.size(); ++i) {
    const NestLevel& lv = nest.levels[i];
    const NestLevel& pv = nest.levels[i - 1];
    const int n = lv.n;
    add("r(I_n) <= s_n", n, 0, r(lv.I), "<=", lv.s, true);
    add("s_n <= (b+1) r(L_n)", n, 0, lv.s, "<=", r(lv.L) < 0 ? -1 : (b + 1) * r(lv.L), true);
    add("r(L_n) <= t_n", n, 0, r(lv.L), "<=", lv.t, true);
    add("t_n <= b r(K_n)", n, 0, lv.t, "<=", r(lv.K) < 0 ? -1 : b * r(lv.K), true);
    for (int j = 1; j <= 3 * ctx.b; ++j) {
      long long q = lv.q[j - 1];
      add("2 r(M_{n,j-1}) <= q_{n,j}", n, j, r(lv.M[j - 1]) < 0 ? -1 : 2 * r(lv.M[j - 1]), "<=", q, true);
      add("q_{n,j} <= r(M_{n,j})", n, j, q, "<=", r(lv.M[j]), true);
    }
    add("s_{n-1} <= r(L_n)", n, 0, pv.s, "<=", r(lv.L), true);
    add("r(I_n) >= 2^{3b} r(I_{n-1})", n, 0, r(lv.I), ">=", r(pv.I) < 0 ? -1 : ipow(2, 3 * ctx.b) * r(pv.I), true);
    add("d0^{3b+2} <= deg(f^p_n|K_n)", n, 0, ipow(ctx.d0, 3 * ctx.b + 2), "<=", lv.deg_p, false);
    add("deg(f^p_n|K_n) <= d1", n, 0, lv.deg_p, "<=", ctx.d1, false);
    add("deg(f^t_n|K'_n) == deg(f^t_n|K_n)", n, 0, lv.deg_t_Kp, "==", lv.deg_t, false);
    add("depth(K_n) - depth(K_{n-1}) == p_n", n, 0, lv.K - pv.K, "==", lv.image_ok ? lv.p : -1, false);
  }
  return out;
}

ShenWitness shen_witness(const PieceEngine& e, const Nest& nest, int n, int orbit, int time, int time_cap) {
  if (n < 0 || n >= static_cast<int>(nest.levels.size())) fail(ErrorCode::Domain, "nest level not built");
  const NestContext& ctx = nest.ctx;
  const NestLevel& lv = nest.levels[n];
  ShenWitness w;
  w.n = n;
  // first moment in K~_n
  w.l = -1;
  for (int j = 0; j <= time_cap; ++j) {
    if (!decidable(e, orbit, time + j, ctx.c0, lv.Kt)) break;
    if (e.critical_agreement(orbit, time + j, ctx.c0, 0) >= lv.Kt) {
      w.l = j;
      break;
    }
  }
  if (w.l < 0) fail(ErrorCode::Cap, "x does not reach K~_n at cap");
  w.V_t = lv.Kt + w.l;
  w.V = lv.K + w.l;
  w.V_p = lv.Kp + w.l;
  w.deg_l_Vt = diagonal_degree(e, orbit, time, lv.Kt, w.l);
  w.deg_l_V = diagonal_degree(e, orbit, time, lv.K, w.l);
  w.deg_l_Vp = diagonal_degree(e, orbit, time, lv.Kp, w.l);
  // smallest v > 0 with a critical point of [c0] in f^v(V~)
  w.v = -1;
  for (int v = 1; v <= w.l && w.v < 0; ++v)
    for (int c : ctx.klass)
      if (e.critical_agreement(orbit, time + v, c, 0) >= w.V_t - v) {
        w.v = v;
        w.critical = c;
        break;
      }
  if (w.v < 0) fail(ErrorCode::Cap, "no critical point of [c0] met before K~_n");
  w.Lam_t = w.V_t - w.v;
  w.Lam = w.V - w.v;
  w.Lam_p = w.V_p - w.v;
  w.deg_v_Vp = diagonal_degree(e, orbit, time, w.Lam_p, w.v);
  w.conformal = w.deg_v_Vp == 1;
  // Gamma~ = L_c(Lambda~), U~ = L_x(Gamma~)
  const int c = w.critical;
  int k = first_visit(e, c, 1, c, w.Lam_t, time_cap);
  if (k < 0) fail(ErrorCode::Cap, "c does not return to Lambda~ at cap");
  w.Gamma_t = w.Lam_t + k;
  int j = first_visit(e, orbit, time + 1, c, w.Gamma_t, time + time_cap);
  if (j < 0) fail(ErrorCode::Cap, "x does not reach Gamma~ at cap");
  j -= time;
  w.u = k + j;
  w.U_t = w.Lam_t + w.u;
  w.U = w.Lam + w.u;
  w.U_p = w.Lam_p + w.u;
  w.deg_u_Ut = diagonal_degree(e, orbit, time, w.Lam_t, w.u);
  w.deg_u_U = diagonal_degree(e, orbit, time, w.Lam, w.u);
  w.deg_u_Up = diagonal_degree(e, orbit, time, w.Lam_p, w.u);
  w.chain_ok = e.resolvable(orbit, time + w.u, w.Lam_t) && e.critical_agreement(orbit, time + w.u, c, 0) >= w.Lam_t;
  // one passage per critical point along a first landing
  w.D2 = ctx.D;
  w.D3 = ctx.D * ctx.D;
  w.sandwich_l = w.deg_l_Vp == w.deg_l_V && w.deg_l_V == w.deg_l_Vt && w.deg_l_Vp >= 2 && w.deg_l_Vp <= w.D2;
  w.sandwich_u = w.deg_u_Up == w.deg_u_U && w.deg_u_U == w.deg_u_Ut && w.deg_u_Up >= 2 && w.deg_u_Up <= w.D3;
  return w;
}

std::string format_nest(const Nest& nest, const std::vector<InequalityCheck>& checks) {
  const NestContext& ctx = nest.ctx;
  std::string out;
  out += "critical " + std::to_string(ctx.c0) + " b " + std::to_string(ctx.b) + " d0 " + std::to_string(ctx.d0) +
         " d_max " + std::to_string(ctx.d_max) + " d1 " + std::to_string(ctx.d1) + " D " + std::to_string(ctx.D) + "\n";
  out += std::string("persistent at caps: ") + (ctx.persistent ? "yes" : "no") + "\n";
  out += "time cap " + std::to_string(ctx.time_cap) + " child cap " + std::to_string(ctx.child_cap) + "\n";
  for (const NestLevel& lv : nest.levels) {
    out += "level " + std::to_string(lv.n) + ": depth I " + std::to_string(lv.I) + " B(I) " + std::to_string(lv.B_I) +
           " L " + std::to_string(lv.L) + " K' " + std::to_string(lv.Kp) + " K " + std::to_string(lv.K) + " K~ " +
           std::to_string(lv.Kt) + " M";
    for (int m : lv.M) out += " " + std::to_string(m);
    out += "\n  s " + std::to_string(lv.s) + " t " + std::to_string(lv.t) + " b " + std::to_string(lv.bn) + " q";
    for (int q : lv.q) out += " " + std::to_string(q);
    out += " p " + std::to_string(lv.p) + " h " + std::to_string(lv.h) + "\n";
    out += "  deg s " + std::to_string(lv.deg_s) + " t " + std::to_string(lv.deg_t) + " t|K' " +
           std::to_string(lv.deg_t_Kp) + " p " + std::to_string(lv.deg_p) + " q";
    for (long long d : lv.deg_q) out += " " + std::to_string(d);
    out += "\n";
  }
  if (nest.failed_level >= 0)
    out += "stopped at level " + std::to_string(nest.failed_level) + ": " + nest.failure + "\n";
  int failed = 0;
  for (const auto& c : checks) {
    out += std::string(c.pass ? "pass " : "FAIL ") + c.family + " n=" + std::to_string(c.n);
    if (c.j) out += " j=" + std::to_string(c.j);
    out += ": " + std::to_string(c.lhs) + " " + c.relation + " " + std::to_string(c.rhs) + "\n";
    failed += !c.pass;
  }
  out += "checks " + std::to_string(checks.size()) + " failed " + std::to_string(failed) + "\n";
  return out;
}

}  // namespace cantor
