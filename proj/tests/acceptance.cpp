// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "qws/optics.hpp"
#include "qws/synthesis.hpp"
#include "support.hpp"

using namespace qws;
namespace t = qws::test;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream why;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    if (!cond) ok = false;
  }
};

double dense_norm2(const t::Dense& x) {
  double s = 0.0;
  for (const auto& [m, v] : x) s += std::norm(v[0]) + std::norm(v[1]);
  return s;
}

t::Dense times(t::Dense x, cplx k) {
  for (auto& [m, v] : x) {
    v[0] *= k;
    v[1] *= k;
  }
  return x;
}

// f_m = P_m + P_-m straight from the amplitudes
std::vector<double> oracle_characteristic(const CompositeState& u) {
  const auto x = t::dense(u);
  Position n = 0;
  for (const auto& [m, v] : x) n = std::max<Position>(n, std::abs(m));
  std::vector<double> f(n + 1, 0.0);
  for (const auto& [m, v] : x) f[std::abs(m)] += std::norm(v[0]) + std::norm(v[1]);
  return f;
}

double vec_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return 1e300;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double wrap(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0 ? a + kTwoPi : a;
}

double angle_gap(double a, double b) {
  const double d = wrap(a - b);
  return std::min(d, kTwoPi - d);
}

CompositeState probe() { return t::random_composite(t::uniform_int(1, 4), -3, 3); }

// ---- criteria ------------------------------------------------------------

void classification(Check& ck) {
  for (const char* n : {"A", "B", "C", "D"}) {
    ck.expect(is_walk_state(builtin_fixture(n), 1e-9).walk_state, std::string(n) + " rejected");
  }
  for (const char* n : {"E", "F"}) {
    const auto r = is_walk_state(builtin_fixture(n), 1e-9);
    ck.expect(!r.walk_state, std::string(n) + " accepted");
    ck.expect(r.max_violation > 1e-3, std::string(n) + " violation too small");
    // direct double-sum of the orthogonality constraints
    double worst = 0.0;
    for (double g : t::oracle_overlaps(builtin_fixture(n))) worst = std::max(worst, g);
    ck.expect(worst > 1e-3, std::string(n) + " oracle violation too small");
  }
}

void characteristic(Check& ck) {
  const std::map<std::string, std::vector<double>> want{
      {"A", {0.0, 0.5, 0.5}}, {"B", {1.0 / 3, 1.0 / 3, 1.0 / 3}}, {"C", {0.5, 0.0, 0.5}}, {"D", {0.2, 0.4, 0.2}}};
  for (const auto& [n, f] : want) {
    const auto u = builtin_fixture(n);
    const auto got = characteristic_vector(u).f;
    const double d = vec_distance(got, f);
    std::ostringstream msg;
    msg << n << " off by " << d << " (got";
    for (double x : got) msg << ' ' << x;
    msg << ")";
    ck.expect(d <= 1e-9, msg.str());
    ck.expect(vec_distance(got, oracle_characteristic(u)) <= 1e-12, n + " disagrees with direct sum");
  }
}

void synthesis(Check& ck) {
  const std::map<std::string, std::size_t> steps{{"A", 2}, {"B", 2}, {"C", 2}, {"D", 2}, {"G", 5}, {"H", 5}};
  for (const auto& [n, k] : steps) {
    const auto u = builtin_fixture(n);
    const auto syn = synthesize(u);
    ck.expect(syn.walk.proper_count() == k && syn.step_count == k, n + " step count");
    for (const auto& st : syn.walk.steps) ck.expect(st.is_improper() || std::abs(st.p) == 1, n + " non-unit step");
    const auto got = t::oracle_walk(syn.walk, t::dense(CompositeState::product(syn.home)));
    ck.expect(t::dense_distance(got, t::dense(u)) <= 1e-9, n + " reconstruction");
  }
}

void inter_state(Check& ck) {
  const auto d = builtin_fixture("D");
  const auto id = with_global_phase(d, kI);
  const Walk w = connect(d, id);
  ck.expect(w.proper_count() == 4, "connect: proper steps " + std::to_string(w.proper_count()));
  ck.expect(t::dense_distance(t::oracle_walk(w, t::dense(d)), t::dense(id)) <= 1e-9, "connect: D not mapped to iD");
  const auto f = walk_characteristic(w).f;
  ck.expect(vec_distance(f, {0.04, 0.16, 0.48, 0.16, 0.16}) <= 1e-6, "walk characteristic");
  // same vector from the walk applied to an arbitrary home
  ck.expect(vec_distance(oracle_characteristic(apply_walk(w, CompositeState::product(coins::r()))),
                         {0.04, 0.16, 0.48, 0.16, 0.16}) <= 1e-6,
            "characteristic of W|r;0>");
  Walk sq = w;
  sq.steps.insert(sq.steps.end(), w.steps.begin(), w.steps.end());
  const Walk s = simplify_walk(sq);
  ck.expect(s.steps.size() == 1 && s.steps[0].is_improper(), "W^2 not a single improper step");
  if (s.steps.size() == 1) {
    const auto m = s.steps[0].coin_operator();
    const double e = std::max({std::abs(m(0, 0) + 1.0), std::abs(m(1, 1) + 1.0), std::abs(m(0, 1)), std::abs(m(1, 0))});
    ck.expect(e <= 1e-9, "W^2 differs from -I");
  }
}

void simplification(Check& ck) {
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    const Walk w = t::random_walk(7, true, 2);
    const auto generated = apply_walk(w, CompositeState::product(t::random_coin()));
    const Position n = std::max(-generated.begin_pos(), generated.end_pos());
    Walk sw;
    try {
      sw = simplify_walk(w);
    } catch (const std::exception& e) {
      ++bad;
      ck.expect(false, std::string("simplify threw: ") + e.what());
      continue;
    }
    bool ok = sw.proper_count() == static_cast<std::size_t>(n);
    for (const auto& st : sw.steps) ok = ok && (st.is_improper() || std::abs(st.p) == 1);
    for (int k = 0; k < 10; ++k) {
      const auto x = t::dense(probe());
      ok = ok && t::dense_distance(t::oracle_walk(sw, x), t::oracle_walk(w, x)) <= 1e-9;
    }
    if (!ok) ++bad;
  }
  ck.expect(bad == 0, std::to_string(bad) + "/100 walks failed");
}

void compilation(Check& ck) {
  const std::map<std::string, std::size_t> pairs{{"A", 2}, {"B", 2}, {"C", 2}, {"D", 2}, {"G", 5}, {"H", 5}};
  for (const auto& [n, k] : pairs) {
    const auto u = builtin_fixture(n);
    const auto cw = compile_walk(u);
    const auto& seq = cw.plates;
    ck.expect(seq.qplate_count() == k, n + " q-plate count");
    // A..D may end with one extra waveplate pair
    const std::size_t extra = k == 2 ? 2 : 0;
    ck.expect(seq.waveplate_count() <= k + extra, n + " waveplate count");
    ck.expect(std::abs(std::abs(seq.global_phase) - 1.0) <= 1e-12, n + " global phase not unit modulus");
    // plates times the phase against the synthesized walk, on the input and on probes
    std::vector<CompositeState> xs{CompositeState::product(cw.input), CompositeState::product(perp(cw.input))};
    for (int i = 0; i < 5; ++i) xs.push_back(probe());
    for (const auto& x : xs) {
      const auto got = times(t::dense(apply_plates(seq, x)), seq.global_phase);
      ck.expect(t::dense_distance(got, t::oracle_walk(cw.synthesis.walk, t::dense(x))) <= 1e-9, n + " plate action");
    }
    ck.expect(t::dense_distance(times(t::dense(apply_plates(seq, xs[0])), seq.global_phase), t::dense(u)) <= 1e-9,
              n + " target not reached");
  }
}

void normalization(Check& ck) {
  auto intensity = [](const CompositeState& u, double phi) {
    cplx a{}, b{};
    for (const auto& [m, v] : t::dense(u)) {
      const cplx e = std::exp(kI * (static_cast<double>(m) * phi));
      a += v[0] * e;
      b += v[1] * e;
    }
    return std::norm(a) + std::norm(b);
  };
  for (const char* n : {"A", "B", "C", "D", "G", "H"}) {
    const auto u = builtin_fixture(n);
    const auto lib = total_intensity(sample_profile(u, 360));
    double dev = 0.0;
    for (std::size_t k = 0; k < 360; ++k) {
      dev = std::max(dev, std::abs(lib[k] - 1.0));
      dev = std::max(dev, std::abs(intensity(u, kTwoPi * k / 360.0) - 1.0));
    }
    ck.expect(lib.size() == 360 && dev <= 1e-9, std::string(n) + " intensity not flat");
  }
  for (const char* n : {"E", "F"}) {
    const auto u = builtin_fixture(n);
    const auto lib = total_intensity(sample_profile(u, 360));
    double dev = 0.0;
    for (double x : lib) dev = std::max(dev, std::abs(x - 1.0));
    ck.expect(dev > 0.05, std::string(n) + " intensity unexpectedly flat");
  }
}

void round_trips(Check& ck) {
  for (const auto& n : fixture_names()) {
    const auto u = builtin_fixture(n);
    AzimuthalProfile prof = sample_profile(u);
    for (auto& s : prof.samples) s.jones = sop_at_azimuth(u, s.phi);
    ck.expect(oam_decompose(prof).distance(u) <= 1e-9, n + " OAM round trip");
  }
  for (int i = 0; i < 100; ++i) {
    const Walk w = t::random_walk(6, true, 2);
    const auto x = t::dense(probe());
    const auto back = t::oracle_walk(walk_inverse(w), t::oracle_walk(w, x));
    ck.expect(t::dense_distance(back, x) <= 1e-9, "walk_inverse round trip");
  }
  for (int i = 0; i < 100; ++i) {
    const auto st = t::random_step(true, 2);
    const auto inv = step_inverse(st);
    if (st.is_improper()) {
      ck.expect(inv.is_improper() && approx_equal(inv.s, st.c, 1e-15) && approx_equal(inv.c, st.s, 1e-15),
                "improper inverse");
      continue;
    }
    ck.expect(inv.gamma == st.gamma && inv.p == st.p, "inverse keeps gamma and p");
    ck.expect(angle_gap(inv.delta, kPi + st.delta) <= 1e-12, "inverse delta");
    ck.expect(approx_equal(inv.s, st.c, 1e-15) && approx_equal(inv.c, st.s, 1e-15), "inverse swaps s and c");
  }
}

void invariants(Check& ck) {
  for (int i = 0; i < 100; ++i) {
    const Walk w = t::random_walk(5, true, 2);
    const auto a = probe(), b = probe();
    // unitarity: norms and overlaps survive
    const auto wa = apply_walk(w, a), wb = apply_walk(w, b);
    ck.expect(std::abs(dense_norm2(t::oracle_walk(w, t::dense(a))) - 1.0) <= 1e-9, "norm");
    ck.expect(std::abs(inner_composite(wa, wb) - inner_composite(a, b)) <= 1e-9, "inner product");
  }
  for (int i = 0; i < 100; ++i) {
    const auto st = t::random_step(true, 2);
    const auto u = probe();
    const Position d = t::uniform_int(-5, 5);
    ck.expect(apply_step(st, shift(u, d)).distance(shift(apply_step(st, u), d)) <= 1e-9, "translation covariance");
  }
  for (int i = 0; i < 100; ++i) {
    const Walk w = t::random_walk(4, true, 2);
    const auto u = t::random_walk_state(4);
    const auto wu = apply_walk(w, u);
    ck.expect(is_walk_state(wu).walk_state, "walk-state lost");
    double worst = 0.0;
    for (double g : t::oracle_overlaps(wu)) worst = std::max(worst, g);
    ck.expect(worst <= 1e-9, "oracle overlaps of W|U>");
  }
  for (int i = 0; i < 100; ++i) {
    const Walk w = t::random_walk(6, true, 2);
    const auto u = t::random_coin();
    const auto lhs = t::oracle_walk(w, t::dense(CompositeState::product(perp(u))));
    const auto rhs = t::dense(perp_composite(apply_walk(w, CompositeState::product(u))));
    ck.expect(t::dense_distance(lhs, rhs) <= 1e-9, "perp mapping");
  }
  for (int i = 0; i < 100; ++i) {
    const Walk w = t::random_walk(6, true, 2);
    const auto f1 = oracle_characteristic(apply_walk(w, CompositeState::product(t::random_coin())));
    const auto f2 = oracle_characteristic(apply_walk(w, CompositeState::product(t::random_coin())));
    ck.expect(vec_distance(f1, f2) <= 1e-9, "characteristic depends on home");
    ck.expect(vec_distance(walk_characteristic(w).f, f1) <= 1e-9, "walk_characteristic");
  }
}

void constructors(Check& ck) {
  const double r2 = std::sqrt(2.0);
  const auto d = builtin_fixture("D");
  const auto d3 = shift(d, 3);
  const auto g = superpose(1 / r2, d3, 1 / r2, perp_composite(d3));
  const auto d2 = scale(d, 2);
  const auto h = superpose(1 / r2, d2, 1 / r2, shift(perp_composite(d2), 1));
  const double a = 1 / std::sqrt(10.0);
  auto ket = [a](std::initializer_list<std::pair<Position, t::Vec2>> terms) {
    t::Dense x;
    for (const auto& [m, v] : terms) x[m] = {a * v[0], a * v[1]};
    return x;
  };
  const t::Vec2 l{1.0, 0.0}, r{0.0, 1.0};
  const t::Vec2 dv{std::polar(1 / r2, -kPi / 4), std::polar(1 / r2, -kPi / 4)};
  const t::Vec2 av{-std::polar(1 / r2, kPi / 4), std::polar(1 / r2, kPi / 4)};
  auto k = [](cplx z, t::Vec2 v) { return t::Vec2{z * v[0], z * v[1]}; };
  // H written out term by term
  const auto h_want = ket({{-4, dv}, {-3, k(kI, dv)}, {-2, l}, {-1, k(-kI, r)}, {0, k(-1.0, r)},
                           {1, l}, {2, k(kI, l)}, {3, r}, {4, k(kI, av)}, {5, av}});
  ck.expect(t::dense_distance(t::dense(h), h_want) <= 1e-9, "H terms");
  ck.expect(g.distance(builtin_fixture("G")) <= 1e-9, "G differs from fixture");
  ck.expect(g.begin_pos() == -5 && g.end_pos() == 5 && g.size() == 10, "G span");
  ck.expect(h.begin_pos() == -4 && h.end_pos() == 5 && h.size() == 10, "H span");
  for (const auto* u : {&g, &h}) {
    for (const auto& [m, c] : u->components()) ck.expect(std::abs(c.amp - a) <= 1e-9, "amplitude not 1/sqrt(10)");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria{
      {"classification", classification}, {"characteristic vectors", characteristic},
      {"minimal synthesis", synthesis},   {"inter-state walk", inter_state},
      {"simplification", simplification}, {"optical compilation", compilation},
      {"normalization", normalization},   {"round trips", round_trips},
      {"invariants", invariants},         {"constructors", constructors}};
  int failed = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check ck;
    try {
      criteria[i].second(ck);
    } catch (const std::exception& e) {
      ck.expect(false, std::string("threw: ") + e.what());
    }
    failed += !ck.ok;
    std::printf("%s %2zu %s%s%s\n", ck.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, ck.ok ? "" : ": ",
                ck.why.str().c_str());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d/%zu passed in %.2fs\n", static_cast<int>(criteria.size()) - failed, criteria.size(), secs);
  return failed == 0 ? 0 : 1;
}
