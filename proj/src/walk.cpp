#include "qws/walk.hpp"

#include <cmath>
#include <random>
#include <string>

#include "qws/errors.hpp"

namespace qws {

namespace {

// sin(Gamma/2) below this is treated as an improper step.
constexpr double kImproperSinTol = 1e-14;

void check_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

QuantumStep QuantumStep::proper(double gamma, double delta, Position p, const CoinState& s,
                                const CoinState& c) {
  check_finite(gamma, "gamma");
  check_finite(delta, "delta");
  if (!(gamma > 0.0 && gamma <= kTwoPi)) {
    throw std::invalid_argument("proper step requires gamma in (0, 2pi]");
  }
  if (p == 0) throw std::invalid_argument("proper step requires p != 0");
  return QuantumStep{gamma, wrap_two_pi(delta), p, s, c};
}

QuantumStep QuantumStep::improper(const CoinState& s, const CoinState& c) {
  return QuantumStep{0.0, 0.0, 0, s, c};
}

std::size_t Walk::proper_count() const {
  std::size_t n = 0;
  for (const auto& t : steps) n += t.is_improper() ? 0 : 1;
  return n;
}

std::size_t Walk::improper_count() const { return steps.size() - proper_count(); }

Position Walk::total_step_size() const {
  Position total = 0;
  for (const auto& t : steps) total += std::abs(t.p);
  return total;
}

RawState apply_step_raw(const QuantumStep& t, const RawState& u) {
  const CoinState sp = perp(t.s);
  const CoinState cp = perp(t.c);
  const double cg = std::cos(0.5 * t.gamma);
  const double sg = std::sin(0.5 * t.gamma);
  const cplx fwd = sg * std::polar(1.0, t.delta);   // onto |s_perp; m+p>
  const cplx bwd = -sg * std::polar(1.0, -t.delta); // onto |s; m-p>
  const bool moves = !t.is_improper();

  RawState raw;
  auto add = [&raw](Position m, cplx k, const CoinState& w) {
    Spinor& slot = raw[m];
    slot[0] += k * w.w0();
    slot[1] += k * w.w1();
  };
  for (const auto& [m, x] : u) {
    const cplx a = std::conj(t.c.w0()) * x[0] + std::conj(t.c.w1()) * x[1];  // along |c>
    const cplx b = std::conj(cp.w0()) * x[0] + std::conj(cp.w1()) * x[1];    // along |c_perp>
    if (!moves) {
      add(m, a, t.s);
      add(m, b, sp);
      continue;
    }
    add(m, a * cg, t.s);
    add(m, b * cg, sp);
    add(m + t.p, a * fwd, sp);
    add(m - t.p, b * bwd, t.s);
  }
  return raw;
}

CompositeState apply_step(const QuantumStep& t, const CompositeState& u, const StepOptions& opts) {
  return canonicalize(apply_step_raw(t, to_raw(u)), CanonicalizeOptions{opts.max_abs_position});
}

CompositeState apply_walk(const Walk& w, const CompositeState& u, const StepOptions& opts) {
  CompositeState state = u;
  for (const auto& t : w.steps) state = apply_step(t, state, opts);
  return state;
}

QuantumStep step_inverse(const QuantumStep& t) {
  if (t.is_improper()) return QuantumStep::improper(t.c, t.s);
  return QuantumStep{t.gamma, wrap_two_pi(kPi + t.delta), t.p, t.c, t.s};
}

Walk walk_inverse(const Walk& w) {
  Walk inv;
  inv.steps.reserve(w.steps.size());
  for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it) inv.steps.push_back(step_inverse(*it));
  return inv;
}

QuantumStep absorb_improper(const QuantumStep& t, const QuantumStep& t0) {
  if (!t0.is_improper()) throw std::invalid_argument("absorb_improper: T0 must be an improper step");
  // w = T0^{-1} |c>
  const CoinState w = coin_op(t0.c, t0.s).apply(t.c);
  QuantumStep out = t;
  out.c = w;
  return out;
}

QuantumStep normalize_step(const QuantumStep& t) {
  if (t.is_improper()) return QuantumStep::improper(t.s, t.c);
  if (t.p == 0) {
    // No walk-space motion: a coin rotation c -> cos|s> + sin e^{i delta}|s_perp>.
    const CoinState sp = perp(t.s);
    const double cg = std::cos(0.5 * t.gamma);
    const cplx k = std::sin(0.5 * t.gamma) * std::polar(1.0, t.delta);
    return QuantumStep::improper(
        CoinState::normalized(cg * t.s.w0() + k * sp.w0(), cg * t.s.w1() + k * sp.w1()), t.c);
  }
  double gamma = std::fmod(t.gamma, 2.0 * kTwoPi);
  if (gamma < 0.0) gamma += 2.0 * kTwoPi;
  double delta = t.delta;
  if (gamma > kTwoPi) {
    gamma = 2.0 * kTwoPi - gamma;
    delta += kPi;
  }
  const double sg = std::sin(0.5 * gamma);
  if (std::abs(sg) <= kImproperSinTol) {
    // cos(Gamma/2) = +-1: pure coin rotation c -> +-s.
    return QuantumStep::improper(std::cos(0.5 * gamma) > 0.0 ? t.s : -t.s, t.c);
  }
  QuantumStep out{gamma, delta, t.p, t.s, t.c};
  if (out.p < 0) {
    out.p = -out.p;
    out.delta = -out.delta;
    out.s = perp(t.s);
    out.c = perp(t.c);
  }
  out.delta = wrap_two_pi(out.delta);
  return out;
}

std::optional<QuantumStep> fuse_same_axis(const QuantumStep& t2, const QuantumStep& t1) {
  if (!approx_equal(t2.c, t1.s)) return std::nullopt;
  if (t1.is_improper() && t2.is_improper()) return QuantumStep::improper(t2.s, t1.c);
  if (t1.is_improper() || t2.is_improper()) return std::nullopt;
  if (t1.p != t2.p) return std::nullopt;
  const double dd = wrap_two_pi(t2.delta - t1.delta);
  if (std::min(dd, kTwoPi - dd) > 1e-9) return std::nullopt;
  return normalize_step(QuantumStep{t1.gamma + t2.gamma, t1.delta, t1.p, t2.s, t1.c});
}

CharacteristicVector walk_characteristic(const Walk& w) {
  const CharacteristicVector ref =
      characteristic_vector(apply_walk(w, CompositeState::product(coins::l())));
  std::mt19937_64 rng(0x5157u);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < 10; ++i) {
    const CoinState u = CoinState::normalized({gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)});
    const auto other = characteristic_vector(apply_walk(w, CompositeState::product(u)));
    if (ref.distance(other) > 1e-6) {
      throw InternalConsistencyError("walk characteristic vector depends on the home coin");
    }
  }
  return ref;
}

bool translation_covariance_check(const QuantumStep& t, const CompositeState& u, Position d,
                                  double tol) {
  const auto lhs = apply_step(t, shift(u, d));
  const auto rhs = shift(apply_step(t, u), d);
  return lhs.distance(rhs) <= tol;
}

bool same_action(const QuantumStep& a, const QuantumStep& b, double tol) {
  return same_action(Walk{{a}}, Walk{{b}}, tol);
}

bool same_action(const Walk& a, const Walk& b, double tol) {
  // Translation invariance and linearity: |l;0> and |r;0> fix the operator.
  for (const CoinState& u : {coins::l(), coins::r()}) {
    const auto home = CompositeState::product(u);
    if (apply_walk(a, home).distance(apply_walk(b, home)) > tol) return false;
  }
  return true;
}

}  // namespace qws
