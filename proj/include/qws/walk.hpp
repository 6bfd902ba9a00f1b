// Generalized quantum steps T_Gamma(delta, p, s, c) and walks.
//
//   T |c; m>      = cos(G/2) |s; m>      + sin(G/2) e^{i delta}  |s_perp; m+p>
//   T |c_perp; m> = cos(G/2) |s_perp; m> - sin(G/2) e^{-i delta} |s; m-p>
//
// Gamma == 0 steps are "improper": a pure coin rotation c -> s.
#pragma once

#include <optional>
#include <vector>

#include "qws/composite.hpp"

namespace qws {

struct QuantumStep {
  double gamma = 0.0;
  double delta = 0.0;
  Position p = 0;
  CoinState s;  // shift state
  CoinState c;  // coin state

  // Validated constructors. proper() requires gamma in (0, 2pi] and p != 0;
  // improper() yields the canonical gamma = 0, p = 0, delta = 0 form.
  static QuantumStep proper(double gamma, double delta, Position p, const CoinState& s,
                            const CoinState& c);
  static QuantumStep improper(const CoinState& s, const CoinState& c);

  bool is_improper() const noexcept { return gamma == 0.0; }
  CoinOperator coin_operator() const { return coin_op(s, c); }
};

struct Walk {
  std::vector<QuantumStep> steps;  // first applied first

  std::size_t proper_count() const;
  std::size_t improper_count() const;
  // sum_i |p_i|
  Position total_step_size() const;
};

struct StepOptions {
  Position max_abs_position = kDefaultMaxPosition;
};

CompositeState apply_step(const QuantumStep& t, const CompositeState& u, const StepOptions& = {});
CompositeState apply_walk(const Walk& w, const CompositeState& u, const StepOptions& = {});
// Same action on un-normalized spinors; nothing is pruned or renormalized.
RawState apply_step_raw(const QuantumStep& t, const RawState& u);

// T_Gamma(pi + delta, p, c, s).
QuantumStep step_inverse(const QuantumStep& t);
Walk walk_inverse(const Walk& w);

// Single step equal to T after T0 (T0 applied first). Throws
// std::invalid_argument when T0 is not improper.
QuantumStep absorb_improper(const QuantumStep& t, const QuantumStep& t0);

// Canonical representative: gamma in [0, 2pi], delta in [0, 2pi), p > 0 for
// proper steps, and the improper canonical form when sin(gamma/2) vanishes.
QuantumStep normalize_step(const QuantumStep& t);

// T2 after T1 as a single step when T2.c == T1.s and delta, p agree.
std::optional<QuantumStep> fuse_same_axis(const QuantumStep& t2, const QuantumStep& t1);

// Characteristic vector of W|u;0>, checked to be independent of u.
CharacteristicVector walk_characteristic(const Walk& w);

bool translation_covariance_check(const QuantumStep& t, const CompositeState& u, Position d,
                                  double tol = 1e-9);

// True when the two steps act identically on |c;0>, |c_perp;0> for a basis c.
bool same_action(const QuantumStep& a, const QuantumStep& b, double tol = 1e-9);
bool same_action(const Walk& a, const Walk& b, double tol = 1e-9);

}  // namespace qws
