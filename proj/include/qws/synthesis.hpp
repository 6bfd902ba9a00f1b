// Shrinking algorithm, minimal synthesis from home-states, walk
// simplification and walks between walk-states.
#pragma once

#include <functional>
#include <optional>
#include <string>

#include "qws/errors.hpp"
#include "qws/walk.hpp"

namespace qws {

// Chooses the shift state of a shrinking step given its coin state. The
// shrinking conditions leave it free.
using ShiftStatePolicy = std::function<CoinState(const CoinState& coin_state)>;

// s = e^{i phase(<l|c>)} |l>. Every synthesized step then compiles to one
// q-plate and one homogeneous waveplate.
CoinState optics_shift_state(const CoinState& coin_state);

struct SynthesisOptions {
  double tol = kClassifierTol;
  ShiftStatePolicy shift_state = optics_shift_state;
};

// Shrinking failed; carries the state that could not be reduced.
class ShrinkFailure : public NotShrinkableError {
 public:
  ShrinkFailure(const std::string& what, double max_violation, CompositeState failing)
      : NotShrinkableError(what, max_violation), failing_state(std::move(failing)) {}
  CompositeState failing_state;
};

struct ShrinkResult {
  QuantumStep step;
  CompositeState state;
};

// One unit-size step removing both ends of the span [b, e] (or, for a
// two-term span, the end farther from position 0). Throws
// NotShrinkableError for non-walk-states or a failed span postcondition.
ShrinkResult shrink_step(const CompositeState& u, const SynthesisOptions& opts = {});

struct HomeWalk {
  Walk walk;        // takes the input to |home; 0>
  CoinState home;
};

// Gamma = pi unit steps taking |u; m> to a home-state.
HomeWalk product_to_home(const CompositeState& product, const SynthesisOptions& opts = {});

// Shrinks to a product term, then walks it home. Exactly N proper steps.
HomeWalk reduce_to_home(const CompositeState& u, const SynthesisOptions& opts = {});

struct SynthesisResult {
  Walk walk;  // apply_walk(walk, |home; 0>) == target
  CoinState home;
  std::size_t step_count = 0;
};

SynthesisResult synthesize(const CompositeState& u, const SynthesisOptions& opts = {});

// min(W): the all-unit-step walk acting like W, built from the reference
// home |l; 0>.
Walk simplify_walk(const Walk& w, const SynthesisOptions& opts = {});

// Minimal walk taking P to Q (and perp(P) to perp(Q)).
Walk connect(const CompositeState& p, const CompositeState& q, const SynthesisOptions& opts = {});

struct SameWalkReport {
  bool char_match = false;
  bool cross_orthogonality_ok = false;
  double sufficiency_value = 0.0;  // |<P|Q>|^2 + |<P|Q_perp>|^2
  bool verdict = false;
};

SameWalkReport same_walk_test(const CompositeState& p, const CompositeState& q, double tol = 1e-9);

}  // namespace qws
