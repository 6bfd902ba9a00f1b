#include "qws/optics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qws/errors.hpp"
#include "qws/kernels.hpp"

namespace qws {

namespace {

constexpr double kIdentityPlate = 1e-14;
constexpr double kVerifyTol = 1e-9;
constexpr double kGuardEnergy = 1e-6;
constexpr double kGridTol = 1e-9;

double wrap_pi(double angle) {
  double a = std::fmod(angle, kPi);
  if (a < 0.0) a += kPi;
  if (a >= kPi) a -= kPi;
  return a;
}

std::pair<double, double> reduce(double gamma, double angle, const char* what) {
  if (!std::isfinite(gamma) || !std::isfinite(angle)) {
    throw std::invalid_argument(std::string(what) + " parameters must be finite");
  }
  if (gamma < 0.0) {
    gamma = -gamma;
    angle += 0.5 * kPi;
  }
  if (gamma > kTwoPi) throw std::invalid_argument(std::string(what) + " retardance beyond 2pi");
  return {gamma, wrap_pi(angle)};
}

// 2q as an integer, or throw.
Position twice_q(double q) {
  const double tq = 2.0 * q;
  const double rounded = std::round(tq);
  if (!std::isfinite(tq) || std::abs(tq - rounded) > 1e-12 || rounded == 0.0) {
    throw std::invalid_argument("q-plate charge q must be a nonzero half-integer");
  }
  return static_cast<Position>(rounded);
}

// g * b - a, as a max-spinor distance.
double phase_mismatch(const CompositeState& a, const CompositeState& b, cplx g) {
  return a.distance(with_global_phase(b, g));
}

// Global phase g with plates == g * reference on every test input, or throw.
cplx fit_global_phase(const std::vector<CompositeState>& plates_out,
                      const std::vector<CompositeState>& ref_out, const char* what) {
  cplx g = inner_composite(ref_out.front(), plates_out.front());
  g /= std::abs(g);
  for (std::size_t i = 0; i < plates_out.size(); ++i) {
    if (phase_mismatch(plates_out[i], ref_out[i], g) > kVerifyTol) {
      throw InternalConsistencyError(std::string(what) + ": plate action differs from the step");
    }
  }
  return g;
}

std::vector<CompositeState> basis_probes(Position reach) {
  std::vector<CompositeState> probes;
  for (Position m = -reach; m <= reach; ++m) {
    probes.push_back(CompositeState::product(coins::l(), m));
    probes.push_back(CompositeState::product(coins::r(), m));
  }
  return probes;
}

cplx verify_against(const PlateSequence& seq, const Walk& w, Position reach, const char* what) {
  std::vector<CompositeState> got;
  std::vector<CompositeState> want;
  for (const auto& probe : basis_probes(reach)) {
    got.push_back(apply_plates(seq, probe));
    want.push_back(apply_walk(w, probe));
  }
  return fit_global_phase(got, want, what);
}

void push_waveplate(PlateSequence& seq, const Waveplate& w) {
  if (w.gamma > kIdentityPlate) seq.elements.emplace_back(w);
}

// Eq-38 style three plates for a proper step. Returns nullopt when the
// diagonal phases left between the plates do not commute through the
// q-plate (only possible for gamma != pi).
std::optional<PlateSequence> three_plate(const QuantumStep& t) {
  const CoinState& c = t.c;
  const CoinState& s = t.s;
  const CoinState l = coins::l();
  const CoinState r = coins::r();
  const Waveplate w1 = make_waveplate(
      2.0 * std::atan2(std::abs(inner(r, c)), std::abs(inner(l, c))),
      0.5 * kPi + 0.5 * (phase(inner(r, c)) - phase(inner(l, c))));
  const Waveplate w2 = make_waveplate(
      2.0 * std::atan2(std::abs(inner(r, s)), std::abs(inner(l, s))),
      0.5 * (phase(inner(r, s)) - phase(inner(l, s))));
  // coin_op(l, c) = Z(theta1) W1, coin_op(s, l) = W2 Z(theta2).
  const CoinOperator z1 = coin_op(l, c) * waveplate_matrix(w1).adjoint();
  const CoinOperator z2 = waveplate_matrix(w2).adjoint() * coin_op(s, l);
  const double theta1 = phase(z1(0, 0));
  const double theta2 = phase(z2(0, 0));
  const double cg = std::cos(0.5 * t.gamma);
  cplx g{1.0, 0.0};
  if (std::abs(cg) > 1e-12) {
    if (std::abs(std::sin(theta1 + theta2)) > 1e-9) return std::nullopt;
    g = std::polar(1.0, theta1 + theta2);
  }
  const double alpha0 = 0.5 * (t.delta + theta1 - theta2 - phase(g));
  PlateSequence seq;
  push_waveplate(seq, w1);
  seq.elements.emplace_back(make_qplate(t.gamma, 0.5 * static_cast<double>(t.p), alpha0));
  push_waveplate(seq, w2);
  seq.global_phase = g;
  return seq;
}

void append(PlateSequence& dst, const PlateSequence& src) {
  dst.elements.insert(dst.elements.end(), src.elements.begin(), src.elements.end());
  dst.global_phase *= src.global_phase;
}

void append_pair(PlateSequence& dst, const CoinOperator& op) {
  for (const auto& w : waveplate_pair(op)) push_waveplate(dst, w);
}

}  // namespace

std::size_t PlateSequence::waveplate_count() const {
  return static_cast<std::size_t>(std::count_if(elements.begin(), elements.end(), [](const auto& e) {
    return std::holds_alternative<Waveplate>(e);
  }));
}

std::size_t PlateSequence::qplate_count() const { return elements.size() - waveplate_count(); }

Waveplate make_waveplate(double gamma, double alpha) {
  const auto [g, a] = reduce(gamma, alpha, "waveplate");
  return Waveplate{g, a};
}

QPlate make_qplate(double gamma, double q, double alpha0) {
  twice_q(q);
  const auto [g, a] = reduce(gamma, alpha0, "q-plate");
  return QPlate{g, q, a};
}

CoinOperator waveplate_matrix(const Waveplate& w) {
  // W maps l -> cos l + sin e^{2i alpha} r, which is coin_op(x, l) for that x.
  const double cg = std::cos(0.5 * w.gamma);
  const double sg = std::sin(0.5 * w.gamma);
  return coin_op(CoinState::normalized(cg, sg * std::polar(1.0, 2.0 * w.alpha)), coins::l());
}

CoinState apply_waveplate(const Waveplate& w, const CoinState& u) {
  const double cg = std::cos(0.5 * w.gamma);
  const double sg = std::sin(0.5 * w.gamma);
  const cplx ul = u.w0();
  const cplx ur = u.w1();
  return CoinState::normalized(cg * ul - sg * ur * std::polar(1.0, -2.0 * w.alpha),
                               cg * ur + sg * ul * std::polar(1.0, 2.0 * w.alpha));
}

CompositeState apply_qplate(const QPlate& q, const CompositeState& u) {
  const Position shift2q = twice_q(q.q);
  const double cg = std::cos(0.5 * q.gamma);
  const double sg = std::sin(0.5 * q.gamma);
  const cplx up = std::polar(1.0, 2.0 * q.alpha0);
  RawState raw;
  for (const auto& [m, comp] : u.components()) {
    const cplx ul = comp.amp * comp.coin.w0();
    const cplx ur = comp.amp * comp.coin.w1();
    Spinor& here = raw[m];
    here[0] += cg * ul;
    here[1] += cg * ur;
    if (sg != 0.0) {
      raw[m - shift2q][0] += -sg * ur * std::conj(up);
      raw[m + shift2q][1] += sg * ul * up;
    }
  }
  return canonicalize(raw);
}

QuantumStep qplate_as_step(const QPlate& q) {
  const Position p = twice_q(q.q);
  if (q.gamma == 0.0) return QuantumStep::improper(coins::l(), coins::l());
  return QuantumStep::proper(q.gamma, 2.0 * q.alpha0, p, coins::l(), coins::l());
}

PlateElement plate_inverse(const PlateElement& e) {
  if (const auto* w = std::get_if<Waveplate>(&e)) return make_waveplate(w->gamma, w->alpha + 0.5 * kPi);
  const auto& q = std::get<QPlate>(e);
  return make_qplate(q.gamma, q.q, q.alpha0 + 0.5 * kPi);
}

CompositeState apply_plates(const PlateSequence& seq, const CompositeState& u) {
  CompositeState state = u;
  for (const auto& e : seq.elements) {
    if (const auto* w = std::get_if<Waveplate>(&e)) {
      const CoinOperator op = waveplate_matrix(*w);
      CompositeState::ComponentMap next;
      for (const auto& [m, comp] : state.components()) next.emplace(m, Component{comp.amp, op.apply(comp.coin)});
      state = CompositeState(std::move(next));
    } else {
      state = apply_qplate(std::get<QPlate>(e), state);
    }
  }
  return state;
}

std::vector<Waveplate> waveplate_pair(const CoinOperator& op) {
  // W(G, b2) W(pi, b1) = [[-conj(x2) x1, .], [cos(G/2) x1, .]] with x = e^{2ib}.
  const cplx a = op(0, 0);
  const cplx b = op(1, 0);
  const double nb = std::abs(b);
  cplx x1{1.0, 0.0};
  double c2 = 0.0;
  if (nb > 1e-15) {
    x1 = b / nb;
    c2 = nb;
  }
  const cplx x2 = -std::conj(a) * x1;
  const double gamma2 = 2.0 * std::acos(std::clamp(c2, -1.0, 1.0));
  return {make_waveplate(kPi, 0.5 * phase(x1)), make_waveplate(gamma2, 0.5 * phase(x2))};
}

PlateSequence compile_step(const QuantumStep& t) {
  if (t.is_improper() || std::abs(t.gamma - kPi) > 1e-12) {
    throw UnsupportedStepError(
        "compile_step handles gamma = pi steps only; use compile_steps for general walks");
  }
  auto seq = three_plate(t);
  if (!seq) throw InternalConsistencyError("gamma = pi step failed to compile");
  seq->global_phase = verify_against(*seq, Walk{{t}}, std::abs(t.p), "compile_step");
  return *seq;
}

CompiledWalk compile_walk(const CompositeState& target, const CompileOptions& opts) {
  SynthesisOptions sopt;
  sopt.tol = opts.tol;
  sopt.shift_state = optics_shift_state;
  CompiledWalk out;
  out.synthesis = synthesize(target, sopt);
  out.input = opts.input.value_or(out.synthesis.home);
  if (opts.input) append_pair(out.plates, coin_op(out.synthesis.home, *opts.input));
  for (const auto& t : out.synthesis.walk.steps) {
    auto seq = three_plate(t);
    if (!seq) throw InternalConsistencyError("synthesized step violates the optics phase relation");
    append(out.plates, *seq);
  }
  const CompositeState got = apply_plates(out.plates, CompositeState::product(out.input));
  cplx g = inner_composite(target, got);
  g /= std::abs(g);
  if (phase_mismatch(got, target, g) > kVerifyTol) {
    throw InternalConsistencyError("compiled plates do not reproduce the target");
  }
  out.plates.global_phase = g;
  return out;
}

PlateSequence compile_steps(const Walk& w) {
  PlateSequence seq;
  for (const auto& t : w.steps) {
    if (t.is_improper()) {
      append_pair(seq, t.coin_operator());
      continue;
    }
    if (auto three = three_plate(t)) {
      append(seq, *three);
      continue;
    }
    // T = coin_op(s, l) T(delta, p, l, l) coin_op(l, c), exactly.
    append_pair(seq, coin_op(coins::l(), t.c));
    seq.elements.emplace_back(make_qplate(t.gamma, 0.5 * static_cast<double>(t.p), 0.5 * t.delta));
    append_pair(seq, coin_op(t.s, coins::l()));
  }
  Position reach = 0;
  for (const auto& t : w.steps) reach = std::max(reach, std::abs(t.p));
  seq.global_phase = verify_against(seq, w, std::max<Position>(reach, 1), "compile_steps");
  return seq;
}

Spinor sop_at_azimuth(const CompositeState& u, double phi) {
  Spinor acc{};
  for (const auto& [m, comp] : u.components()) {
    const cplx k = comp.amp * std::polar(1.0, static_cast<double>(m) * phi);
    acc[0] += k * comp.coin.w0();
    acc[1] += k * comp.coin.w1();
  }
  return acc;
}

std::size_t default_samples(const CompositeState& u) {
  return std::max<std::size_t>(64, 4 * static_cast<std::size_t>(u.reach()) + 4);
}

AzimuthalProfile sample_profile(const CompositeState& u, std::size_t samples) {
  if (samples == 0) samples = default_samples(u);
  const auto jones = kernels::parallel::sample_azimuths(u, samples);
  AzimuthalProfile prof;
  prof.samples.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    prof.samples.push_back({kTwoPi * static_cast<double>(k) / static_cast<double>(samples), jones[k]});
  }
  return prof;
}

std::vector<double> total_intensity(const AzimuthalProfile& profile) {
  std::vector<double> out;
  out.reserve(profile.samples.size());
  for (const auto& s : profile.samples) out.push_back(std::norm(s.jones[0]) + std::norm(s.jones[1]));
  return out;
}

CompositeState oam_decompose(const AzimuthalProfile& profile) {
  const std::size_t k = profile.samples.size();
  if (k < 4) throw std::invalid_argument("oam_decompose needs at least 4 samples");
  std::vector<Spinor> jones;
  jones.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double want = kTwoPi * static_cast<double>(i) / static_cast<double>(k);
    if (std::abs(profile.samples[i].phi - want) > kGridTol) {
      throw std::invalid_argument("oam_decompose needs a uniform grid phi_k = 2 pi k / K");
    }
    jones.push_back(profile.samples[i].jones);
  }
  const auto half = static_cast<Position>((k - 1) / 2);
  const auto band = static_cast<Position>((k - 1) / 4);
  const auto bins = kernels::parallel::azimuthal_dft(jones, -half, half);
  RawState raw;
  double guard = 0.0;
  for (Position m = -half; m <= half; ++m) {
    const Spinor& x = bins[static_cast<std::size_t>(m + half)];
    if (std::abs(m) > band) {
      guard += std::norm(x[0]) + std::norm(x[1]);
    } else {
      raw[m] = x;
    }
  }
  if (guard > kGuardEnergy) {
    std::ostringstream os;
    os << "profile is not band-limited to |m| <= " << band << " (guard energy " << guard
       << "); sample more azimuths";
    throw BandLimitError(os.str());
  }
  return canonicalize(raw);
}

EllipseParams ellipse_params(const CoinState& u) {
  const cplx ul = u.w0();
  const cplx ur = u.w1();
  EllipseParams p;
  p.ellipticity = std::abs(std::norm(ul) - std::norm(ur));
  p.orientation = phase(std::polar(1.0, phase(ur) - phase(ul) + 0.25 * kPi));
  if (p.ellipticity <= 1e-9) {
    p.helicity = Helicity::linear;
  } else {
    p.helicity = std::abs(ul) > std::abs(ur) ? Helicity::left : Helicity::right;
  }
  return p;
}

const char* helicity_name(Helicity h) {
  switch (h) {
    case Helicity::left: return "left";
    case Helicity::right: return "right";
    case Helicity::linear: return "linear";
  }
  return "linear";
}

}  // namespace qws
