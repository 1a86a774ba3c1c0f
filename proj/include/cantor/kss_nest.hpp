#pragma once

#include <string>
#include <vector>

#include "cantor/engine.hpp"
#include "cantor/tableau.hpp"

namespace cantor {

// The critical class the nest is built around. Every nest piece contains c0,
// so a piece is named by its depth: P_d(c0).
struct NestContext {
  int c0 = 0;
  std::vector<int> klass;  // [c0], including c0
  int b = 1;
  int d0 = 2;
  int d_max = 2;
  long long d1 = 0;        // d_max^(8b^2 - 2b)
  long long D = 1;         // product of all local degrees
  int time_cap = 0;        // orb([c0]) is sampled on times 0..time_cap
  int child_cap = 0;       // largest child exponent searched
  bool persistent = false; // as certified by classify at its caps
};

NestContext make_context(const PieceEngine& e, const CritGraph& g, int c0, int time_cap, int child_cap);
// Without a classification: [c0] given directly.
NestContext make_context(const PieceEngine& e, int c0, std::vector<int> klass, int time_cap, int child_cap);

long long ipow(long long base, int exp);

// Whether P_depth(f^time(orbit)) = P_depth(c0), with enough data to tell.
bool in_critical_piece(const PieceEngine& e, int orbit, int time, int c0, int depth);

// L_z(I) for z = f^time(orbit) and I = P_depth(f^target_time(target_orbit)).
struct Landing {
  int k = 0;          // f^k maps the component onto I
  int depth = 0;      // depth of the component
  long long degree = 1;
  int piece = -1;     // node id when resolvable
};
Landing pullback_component(PieceEngine& e, int orbit, int time, int target_orbit, int target_time, int depth,
                           int time_cap, bool hatted);

// First-return times of sampled orb([c0]) points to J = P_depth(c0).
struct ReturnTable {
  int depth = 0;
  int visits = 0;              // samples of orb([c0]) found in J
  std::vector<int> r_z;        // per sample with a return inside the data
  int r = -1;                  // min r_z, -1 when no return was seen
  bool stable = false;         // same minimum on the first half of the sample
};
ReturnTable return_times(const PieceEngine& e, const NestContext& ctx, int depth);

struct ABPair {
  int depth_I = 0;
  int t = 0, s = 0;            // f^t(B) = I, f^s(A) = I
  int depth_B = 0, depth_A = 0;
  long long deg_B = 1, deg_A = 1;
  bool p1 = false, p2 = false; // degree bounds
  int p3_checked = 0;          // orbit samples inspected
  int skipped = 0;             // smaller landing times rejected by (P3) or the passage bound
};
ABPair operators_AB(const PieceEngine& e, const NestContext& ctx, int depth_I);

struct Successor {
  int q = 0;                   // f^q maps it onto P
  int depth = 0;
  int via = -1;                // c in [c0] whose pullback supplied the child
  long long degree = 1;
};
struct SuccessorList {
  int depth_P = 0;
  std::vector<Successor> items;  // by increasing q
  bool p4 = false;
  bool enough = false;           // at least two successors
  const Successor& gamma() const { return items.back(); }
};
SuccessorList successors_of(PieceEngine& e, const NestContext& ctx, int depth_P);
// Same list from piece ids only (children_brute_force and orbit scans).
SuccessorList successors_brute_force(PieceEngine& e, const NestContext& ctx, int depth_P);

struct NestLevel {
  int n = 0;
  int I = 0, L = 0, K = 0, Kp = 0, Kt = 0, B_I = 0;  // depths
  std::vector<int> M;                                // M_{n,0..3b}
  int s = 0, t = 0, bn = 0;
  std::vector<int> q;                                // q_{n,1..3b}
  int q_sum = 0;
  int p = -1, h = -1;                                // defined from n = 1
  long long deg_s = 1, deg_t = 1, deg_t_Kp = 1, deg_p = 0;
  long long deg_B_I = 1, deg_A_L = 1;                // f^t on B(I_n), f^b_n on A(L_n)
  std::vector<long long> deg_q;
  std::vector<int> successor_count;                  // per M_{n,j}, j < 3b
  bool image_ok = true;                              // f^p(K_n) = K_{n-1}
};

struct Nest {
  NestContext ctx;
  std::vector<NestLevel> levels;
  int failed_level = -1;
  std::string failure;
};
Nest build_nest(PieceEngine& e, const NestContext& ctx, int depth_I0, int levels);

struct InequalityCheck {
  std::string family;
  int n = 0, j = 0;
  long long lhs = 0, rhs = 0;
  std::string relation;  // "<=", ">=", "=="
  bool pass = false;
};
// (P1)(P2)(P4) degree bounds on every level, the return-time and degree
// inequalities for n >= 1; r-values come from return_times.
std::vector<InequalityCheck> check_kss_inequalities(const PieceEngine& e, const Nest& nest);
// Pieces around x = f^time(orbit) pulled back from the level-n nest pieces
// around c0: V~ c V c V' over K~_n c K_n c K'_n by
// f^l, their images Lambda under f^v at the first critical hit, and
// U~ c U c U' over the Lambdas by f^u. Depths of pieces around x are depths
// of P_d(f^time x).
struct ShenWitness {
  int n = 0;
  int l = 0, v = 0, u = 0;
  int V_t = 0, V = 0, V_p = 0;            // depths around x
  int critical = -1;                      // c in [c0] reached by f^v
  int Lam_t = 0, Lam = 0, Lam_p = 0;      // depths around c
  int Gamma_t = 0;                        // L_c(Lambda~), around c
  int U_t = 0, U = 0, U_p = 0;            // depths around x
  long long deg_l_Vp = 0, deg_l_V = 0, deg_l_Vt = 0;
  long long deg_v_Vp = 0;
  long long deg_u_Up = 0, deg_u_U = 0, deg_u_Ut = 0;
  long long D2 = 0, D3 = 0;               // explicit products of local degrees
  bool conformal = false;                 // deg(f^v|V') == 1
  bool sandwich_l = false, sandwich_u = false;
  bool chain_ok = false;                  // f^u(U~) = Lambda~ as pieces
};
ShenWitness shen_witness(const PieceEngine& e, const Nest& nest, int n, int orbit, int time, int time_cap);

std::string format_nest(const Nest& nest, const std::vector<InequalityCheck>& checks);

}  // namespace cantor
