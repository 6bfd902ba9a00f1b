// Qubit (x) qudit composite states in canonical form
//   |U> = sum_m u_m |coin_m ; m>,   u_m > 0 real, coin_m unit-norm.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qws/coin.hpp"

namespace qws {

using Position = std::int64_t;
using Spinor = std::array<cplx, 2>;  // un-normalized u_m * coin_m

// Amplitudes at or below this are dropped on canonicalization.
inline constexpr double kAmpEpsilon = 1e-12;
inline constexpr double kNormTol = 1e-9;
inline constexpr double kClassifierTol = 1e-9;
inline constexpr Position kDefaultMaxPosition = 1'000'000;

struct Component {
  double amp = 0.0;
  CoinState coin;
};

class CompositeState {
 public:
  using ComponentMap = std::map<Position, Component>;

  // Validates the canonical-form invariants; throws InvalidStateError or
  // EmptyStateError. Does not renormalize.
  explicit CompositeState(ComponentMap components);

  // |coin; m>
  static CompositeState product(const CoinState& coin, Position m = 0);

  const ComponentMap& components() const noexcept { return components_; }
  std::size_t size() const noexcept { return components_.size(); }
  Position begin_pos() const { return components_.begin()->first; }
  Position end_pos() const { return components_.rbegin()->first; }
  // N = max(|b|, |e|)
  Position reach() const;
  bool is_product() const noexcept { return components_.size() == 1; }

  double amp_at(Position m) const;
  Spinor spinor_at(Position m) const;  // zero if unoccupied

  // Largest per-position spinor difference.
  double distance(const CompositeState& other) const;

 private:
  ComponentMap components_;
};

using RawState = std::map<Position, Spinor>;

struct CanonicalizeOptions {
  Position max_abs_position = kDefaultMaxPosition;
};

// Splits each spinor into (norm, direction), drops entries <= kAmpEpsilon
// relative to the total norm, and renormalizes. Throws EmptyStateError when
// nothing survives and SpanLimitError past the position bound.
CompositeState canonicalize(const RawState& raw, const CanonicalizeOptions& opts = {});

RawState to_raw(const CompositeState& u);

cplx inner_composite(const CompositeState& p, const CompositeState& q);

CompositeState shift(const CompositeState& u, Position d);

// Position m -> m * d. Throws std::invalid_argument for d == 0.
CompositeState scale(const CompositeState& u, Position d);

// Amplitude at m is u_{-m}, coin at m is perp(coin_{-m}).
CompositeState perp_composite(const CompositeState& u);

// Canonicalized alpha*U + beta*V. Renormalizes when the result is not unit
// norm (e.g. overlapping, non-orthogonal inputs); `renormalized` reports it.
CompositeState superpose(cplx alpha, const CompositeState& u, cplx beta, const CompositeState& v,
                         bool* renormalized = nullptr);

// Multiplies every coin by a global phase.
CompositeState with_global_phase(const CompositeState& u, cplx phase);

struct ClassifierReport {
  bool walk_state = true;
  double max_violation = 0.0;
  // (d, |<U|U_d>|) for each violated d, ascending d.
  std::vector<std::pair<Position, double>> violations;
};

// Translational-invariance test: |<U|U_d>| <= tol for every d = 1..e-b.
ClassifierReport is_walk_state(const CompositeState& u, double tol = kClassifierTol);

// Nearest walk-state (minimum-norm correction, Newton iterations on the
// linearized constraints <U|U_d> = 0) supported on the same span [b, e].
// Meant for states already within a small violation of a walk-state;
// rounding otherwise builds up when walk-states are shrunk repeatedly.
CompositeState project_to_walk_state(const CompositeState& u, int max_iterations = 4);

struct CharacteristicVector {
  std::vector<double> f;  // f_0 .. f_N
  Position reach() const { return static_cast<Position>(f.size()) - 1; }
  double distance(const CharacteristicVector& other) const;
};

CharacteristicVector characteristic_vector(const CompositeState& u);

std::vector<std::pair<Position, double>> trace_out_coin(const CompositeState& u);

// Closed-form walk-state conditions for 2-, 3- and 4-term states.
struct SpecialCaseClause {
  std::string name;
  double residual = 0.0;
  bool holds = false;
};

struct SpecialCaseReport {
  bool applicable = false;
  std::size_t terms = 0;
  std::vector<SpecialCaseClause> clauses;
  bool verdict = false;

  const SpecialCaseClause* clause(const std::string& name) const;
};

SpecialCaseReport special_case_checks(const CompositeState& u, double tol = kClassifierTol);

}  // namespace qws
