// Shared generators and reference oracles for the unit and acceptance tests.
// The oracles work on plain complex arrays and do not call the library's
// step or overlap code.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <vector>

#include "qws/fixtures.hpp"
#include "qws/walk.hpp"

namespace qws::test {

using Vec2 = std::array<cplx, 2>;
using Dense = std::map<Position, Vec2>;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611u);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }
inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline CoinState random_coin() {
  std::normal_distribution<double> g;
  return CoinState::normalized({g(rng()), g(rng())}, {g(rng()), g(rng())});
}

inline cplx random_phase() { return std::polar(1.0, uniform(-kPi, kPi)); }

inline QuantumStep random_step(bool allow_improper = true, int max_p = 2) {
  if (allow_improper && uniform_int(0, 4) == 0) return QuantumStep::improper(random_coin(), random_coin());
  Position p = uniform_int(1, max_p);
  if (uniform_int(0, 1)) p = -p;
  return QuantumStep::proper(uniform(0.05, kTwoPi), uniform(0.0, kTwoPi), p, random_coin(), random_coin());
}

inline Walk random_walk(int max_len, bool allow_improper = true, int max_p = 2) {
  Walk w;
  const int n = uniform_int(0, max_len);
  for (int i = 0; i < n; ++i) w.steps.push_back(random_step(allow_improper, max_p));
  return w;
}

// Random walk-state: a random walk applied to a random home-state.
inline CompositeState random_walk_state(int max_len = 6, int max_p = 2) {
  return apply_walk(random_walk(max_len, true, max_p), CompositeState::product(random_coin()));
}

// Random composite with random coins on `terms` distinct positions in [lo, hi].
inline CompositeState random_composite(int terms, int lo, int hi) {
  RawState raw;
  while (static_cast<int>(raw.size()) < terms) {
    const CoinState c = random_coin();
    const double a = uniform(0.2, 1.0);
    raw[uniform_int(lo, hi)] = {a * c.w0(), a * c.w1()};
  }
  return canonicalize(raw);
}

// ---- dense oracles -------------------------------------------------------

inline Dense dense(const CompositeState& u) {
  Dense d;
  for (const auto& [m, comp] : u.components()) d[m] = {comp.amp * comp.coin.w0(), comp.amp * comp.coin.w1()};
  return d;
}

inline Vec2 vec(const CoinState& c) { return {c.w0(), c.w1()}; }

inline Vec2 orth(const Vec2& w) { return {-std::conj(w[1]), std::conj(w[0])}; }

inline cplx dot(const Vec2& a, const Vec2& b) { return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]; }

// The step from its action on the basis |c;m>, |c_perp;m>.
inline Dense oracle_step(const QuantumStep& t, const Dense& in) {
  const Vec2 c = vec(t.c);
  const Vec2 cp = orth(c);
  const Vec2 s = vec(t.s);
  const Vec2 sp = orth(s);
  const double cg = std::cos(t.gamma / 2);
  const double sg = std::sin(t.gamma / 2);
  Dense out;
  auto add = [&out](Position m, cplx k, const Vec2& v) {
    out[m][0] += k * v[0];
    out[m][1] += k * v[1];
  };
  for (const auto& [m, x] : in) {
    const cplx a = dot(c, x);
    const cplx b = dot(cp, x);
    if (t.gamma == 0.0) {
      add(m, a, s);
      add(m, b, sp);
      continue;
    }
    add(m, a * cg, s);
    add(m + t.p, a * sg * std::exp(kI * t.delta), sp);
    add(m, b * cg, sp);
    add(m - t.p, -b * sg * std::exp(-kI * t.delta), s);
  }
  return out;
}

inline Dense oracle_walk(const Walk& w, Dense x) {
  for (const auto& t : w.steps) x = oracle_step(t, x);
  return x;
}

inline double dense_distance(const Dense& a, const Dense& b) {
  double worst = 0.0;
  auto visit = [&worst](const Dense& x, const Dense& y) {
    for (const auto& [m, v] : x) {
      const auto it = y.find(m);
      const Vec2 w = it == y.end() ? Vec2{} : it->second;
      worst = std::max({worst, std::abs(v[0] - w[0]), std::abs(v[1] - w[1])});
    }
  };
  visit(a, b);
  visit(b, a);
  return worst;
}

// |<U|U_d>| for every d by direct double sum.
inline std::vector<double> oracle_overlaps(const CompositeState& u) {
  const Dense x = dense(u);
  std::vector<double> g;
  for (Position d = 1; d <= u.end_pos() - u.begin_pos(); ++d) {
    cplx acc{};
    for (const auto& [m, v] : x) {
      const auto it = x.find(m + d);
      if (it != x.end()) acc += dot(v, it->second);
    }
    g.push_back(std::abs(acc));
  }
  return g;
}

}  // namespace qws::test
