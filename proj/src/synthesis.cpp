#include "qws/synthesis.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

namespace qws {

namespace {

// Probability leaked outside the expected span after a shrinking step. Exact
// walk-states leave ~1e-16; anything above this means the cancellation failed.
constexpr double kShrinkLeakTol = 1e-7;
// u_{e-1} |<(u_e)_perp|u_{e-1}>| below this is the full-transfer limit.
constexpr double kDegenerateDen = 1e-14;
constexpr double kRoundTripTol = 1e-9;

std::string violation_text(double v) {
  std::ostringstream os;
  os << "state is not a walk-state (max violation " << v << ")";
  return os.str();
}

Component component_or_zero(const CompositeState& u, Position m) {
  const auto it = u.components().find(m);
  return it == u.components().end() ? Component{0.0, coins::l()} : it->second;
}

// Walk parameters: gamma, delta and the (unnormalized) coin state per proper step.
constexpr int kParamsPerStep = 6;
constexpr int kMaxRefineSteps = 48;
constexpr double kRefineTarget = 1e-14;

Walk with_offsets(const Walk& base, const Eigen::VectorXd& x, const SynthesisOptions& opts) {
  Walk w = base;
  int k = 0;
  for (auto& t : w.steps) {
    if (t.is_improper()) continue;
    const double* d = x.data() + kParamsPerStep * k++;
    t.gamma += d[0];
    t.delta += d[1];
    t.c = CoinState::normalized(t.c.w0() + cplx(d[2], d[3]), t.c.w1() + cplx(d[4], d[5]));
    t.s = opts.shift_state(t.c);
  }
  return w;
}

// Every spinor entry of W|U> away from position 0, over a fixed window.
Eigen::VectorXd off_home(const Walk& w, const RawState& u, Position lo, Position hi) {
  RawState out = u;
  for (const auto& t : w.steps) out = apply_step_raw(t, out);
  Eigen::VectorXd r = Eigen::VectorXd::Zero(4 * (hi - lo));
  int i = 0;
  for (Position m = lo; m <= hi; ++m) {
    if (m == 0) continue;
    const auto it = out.find(m);
    if (it != out.end()) {
      r[i] = it->second[0].real();
      r[i + 1] = it->second[0].imag();
      r[i + 2] = it->second[1].real();
      r[i + 3] = it->second[1].imag();
    }
    i += 4;
  }
  return r;
}

// Shrinking accumulates rounding at every step (the end amplitudes are
// divided out), so the finished walk is tuned by Gauss-Newton on its own
// parameters until W|U> is a product term at 0.
Walk refine_reduction(const Walk& walk, const CompositeState& u, const SynthesisOptions& opts) {
  const int n = static_cast<int>(walk.proper_count());
  // Finite-difference Jacobian costs O(n^3) walk evaluations.
  if (n == 0 || n > kMaxRefineSteps) return walk;
  const Position reach = walk.total_step_size();
  const Position lo = u.begin_pos() - reach;
  const Position hi = u.end_pos() + reach;
  const RawState raw = to_raw(u);

  Walk best = walk;
  Eigen::VectorXd r = off_home(best, raw, lo, hi);
  const int np = kParamsPerStep * n;
  const double h = 1e-6;
  double lambda = 1e-6;
  for (int iter = 0; iter < 30 && r.norm() > kRefineTarget; ++iter) {
    Eigen::MatrixXd jac(r.size(), np);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(np);
    for (int j = 0; j < np; ++j) {
      x[j] = h;
      const Eigen::VectorXd plus = off_home(with_offsets(best, x, opts), raw, lo, hi);
      x[j] = -h;
      const Eigen::VectorXd minus = off_home(with_offsets(best, x, opts), raw, lo, hi);
      x[j] = 0.0;
      jac.col(j) = (plus - minus) / (2 * h);
    }
    // Levenberg-Marquardt as an augmented least-squares problem (QR keeps the
    // conditioning of J rather than J^T J).
    bool improved = false;
    for (int tries = 0; tries < 12 && !improved; ++tries) {
      Eigen::MatrixXd aug(r.size() + np, np);
      aug << jac, std::sqrt(lambda) * Eigen::MatrixXd::Identity(np, np);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(r.size() + np);
      rhs.head(r.size()) = -r;
      const Eigen::VectorXd dx = aug.householderQr().solve(rhs);
      Walk next = with_offsets(best, dx, opts);
      bool valid = true;
      for (const auto& t : next.steps) {
        if (!t.is_improper() && !(t.gamma > 0.0 && t.gamma <= kTwoPi)) valid = false;
      }
      const Eigen::VectorXd rn = valid ? off_home(next, raw, lo, hi) : r;
      if (valid && rn.norm() < r.norm()) {
        for (auto& t : next.steps) t.delta = wrap_two_pi(t.delta);
        best = std::move(next);
        r = rn;
        lambda = std::max(lambda * 0.1, 1e-30);
        improved = true;
      } else {
        lambda *= 100.0;
      }
    }
    if (!improved) break;
  }
  return best;
}

}  // namespace

CoinState optics_shift_state(const CoinState& coin_state) {
  return coins::l() * std::polar(1.0, phase(inner(coins::l(), coin_state)));
}

namespace {

// Intermediate states of a reduction carry rounding amplified by earlier
// steps, so only the caller's state goes through the classifier; after that
// the leak bound and the final round trip are the checks.
ShrinkResult shrink_impl(const CompositeState& u, const SynthesisOptions& opts, bool classify) {
  if (u.is_product()) throw std::invalid_argument("shrink_step needs at least two terms");
  const auto report = is_walk_state(u, classify ? opts.tol : 1.0);
  if (!report.walk_state) throw ShrinkFailure(violation_text(report.max_violation), report.max_violation, u);

  // Shrinking divides by end amplitudes, so any constraint defect is amplified
  // at every step; start each step from the nearest exact walk-state.
  const CompositeState polished = project_to_walk_state(u);
  const Position b = polished.begin_pos();
  const Position e = polished.end_pos();
  // Two-term spans keep the end nearer to position 0 so the final product
  // term needs the fewest moves home.
  const bool drop_begin = (e - b == 1) && (b + e < 0);

  double gamma = kPi;
  double delta = 0.0;
  CoinState coin;
  Position lo = b + 1;
  Position hi = e - 1;
  if (!drop_begin) {
    // Right end: c = (u_e)_perp empties e+1; Gamma, delta cancel position e.
    const Component ue = component_or_zero(polished, e);
    const Component um = component_or_zero(polished, e - 1);
    coin = perp(ue.coin);
    const cplx x = inner(coin, um.coin);
    const double den = um.amp * std::abs(x);
    if (den > kDegenerateDen) {
      gamma = 2.0 * std::atan(ue.amp / den);
      delta = -phase(x);
    }
    if (e - b == 1) lo = hi = b;
  } else {
    // Left end: c = u_b empties b-1; Gamma, delta cancel position b.
    const Component ub = component_or_zero(polished, b);
    const Component un = component_or_zero(polished, b + 1);
    coin = ub.coin;
    const cplx y = inner(perp(ub.coin), un.coin);
    const double den = un.amp * std::abs(y);
    if (den > kDegenerateDen) {
      gamma = 2.0 * std::atan(ub.amp / den);
      delta = phase(y);
    }
    lo = hi = e;
  }

  const QuantumStep step = QuantumStep::proper(gamma, delta, 1, opts.shift_state(coin), coin);
  const CompositeState out = apply_step(step, polished);

  double leak = 0.0;
  CompositeState::ComponentMap kept;
  for (const auto& [m, comp] : out.components()) {
    if (m < lo || m > hi) {
      leak += comp.amp * comp.amp;
    } else {
      kept.emplace(m, comp);
    }
  }
  if (leak > kShrinkLeakTol || kept.empty()) {
    std::ostringstream os;
    os << "shrinking step left probability " << leak << " outside [" << lo << ", " << hi << "]";
    throw ShrinkFailure(os.str(), report.max_violation, u);
  }
  const double norm = std::sqrt(1.0 - leak);
  for (auto& [m, comp] : kept) comp.amp /= norm;
  return ShrinkResult{step, CompositeState(std::move(kept))};
}

}  // namespace

ShrinkResult shrink_step(const CompositeState& u, const SynthesisOptions& opts) {
  return shrink_impl(u, opts, true);
}

HomeWalk product_to_home(const CompositeState& product, const SynthesisOptions& opts) {
  if (!product.is_product()) throw std::invalid_argument("product_to_home needs a single-term state");
  const Position m = product.begin_pos();
  CoinState cur = product.components().begin()->second.coin;
  Walk walk;
  // |u; m> -> |s; m-1> via T_pi(0, 1, s, u_perp); mirrored: |u; m> -> |s_perp; m+1>
  // via T_pi(0, 1, s, u).
  for (Position k = 0; k < std::abs(m); ++k) {
    const CoinState c = m > 0 ? perp(cur) : cur;
    const CoinState s = opts.shift_state(c);
    walk.steps.push_back(QuantumStep::proper(kPi, 0.0, 1, s, c));
    cur = m > 0 ? s : perp(s);
  }
  return HomeWalk{std::move(walk), cur};
}

HomeWalk reduce_to_home(const CompositeState& u, const SynthesisOptions& opts) {
  Walk walk;
  CompositeState state = u;
  bool first = true;
  while (!state.is_product()) {
    ShrinkResult r = shrink_impl(state, opts, first);
    first = false;
    walk.steps.push_back(r.step);
    state = std::move(r.state);
  }
  HomeWalk tail = product_to_home(state, opts);
  walk.steps.insert(walk.steps.end(), tail.walk.steps.begin(), tail.walk.steps.end());
  walk = refine_reduction(walk, u, opts);
  const CompositeState home = apply_walk(walk, u);
  const auto it = home.components().find(0);
  if (it == home.components().end()) throw InternalConsistencyError("reduction missed the home position");
  return HomeWalk{std::move(walk), it->second.coin};
}

SynthesisResult synthesize(const CompositeState& u, const SynthesisOptions& opts) {
  HomeWalk reduced = reduce_to_home(u, opts);
  SynthesisResult result;
  result.walk = walk_inverse(reduced.walk);
  result.home = reduced.home;
  result.step_count = result.walk.proper_count();
  const auto rebuilt = apply_walk(result.walk, CompositeState::product(result.home));
  if (rebuilt.distance(u) > kRoundTripTol) {
    throw InternalConsistencyError("synthesized walk does not reproduce the target");
  }
  return result;
}

Walk simplify_walk(const Walk& w, const SynthesisOptions& opts) {
  const CoinState ref = coins::l();
  const CompositeState out = apply_walk(w, CompositeState::product(ref));
  const SynthesisResult syn = synthesize(out, opts);
  // W = W_s T0(., ., p_s, p); T0 is folded into the first step of W_s.
  const QuantumStep t0 = QuantumStep::improper(syn.home, ref);
  if (syn.walk.steps.empty()) return Walk{{t0}};
  Walk simplified = syn.walk;
  simplified.steps.front() = absorb_improper(simplified.steps.front(), t0);
  return simplified;
}

Walk connect(const CompositeState& p, const CompositeState& q, const SynthesisOptions& opts) {
  for (const CompositeState* s : {&p, &q}) {
    const auto report = is_walk_state(*s, opts.tol);
    if (!report.walk_state) {
      throw ShrinkFailure(violation_text(report.max_violation), report.max_violation, *s);
    }
  }
  const HomeWalk rp = reduce_to_home(p, opts);  // P -> |p; 0>
  const HomeWalk rq = reduce_to_home(q, opts);  // Q -> |q; 0>
  Walk w = rp.walk;
  w.steps.push_back(QuantumStep::improper(rq.home, rp.home));
  const Walk wq = walk_inverse(rq.walk);
  w.steps.insert(w.steps.end(), wq.steps.begin(), wq.steps.end());

  Walk minimal = simplify_walk(w, opts);
  if (apply_walk(minimal, p).distance(q) > kRoundTripTol) {
    throw InternalConsistencyError("connecting walk does not map P to Q");
  }
  return minimal;
}

SameWalkReport same_walk_test(const CompositeState& p, const CompositeState& q, double tol) {
  SameWalkReport rep;
  rep.char_match = characteristic_vector(p).distance(characteristic_vector(q)) <= tol;
  rep.cross_orthogonality_ok = true;
  for (Position d = p.begin_pos() - q.end_pos(); d <= p.end_pos() - q.begin_pos(); ++d) {
    if (d == 0) continue;
    if (std::abs(inner_composite(p, shift(q, d))) > tol) {
      rep.cross_orthogonality_ok = false;
      break;
    }
  }
  rep.sufficiency_value =
      std::norm(inner_composite(p, q)) + std::norm(inner_composite(p, perp_composite(q)));
  rep.verdict = rep.char_match && rep.cross_orthogonality_ok &&
                std::abs(rep.sufficiency_value - 1.0) <= tol;
  return rep;
}

}  // namespace qws
