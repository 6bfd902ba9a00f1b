#include "qws/composite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "qws/errors.hpp"
#include "qws/kernels.hpp"

namespace qws {

CompositeState::CompositeState(ComponentMap components) : components_(std::move(components)) {
  if (components_.empty()) throw EmptyStateError("composite state has no components");
  double total = 0.0;
  for (const auto& [m, comp] : components_) {
    if (!(comp.amp > kAmpEpsilon)) {
      throw InvalidStateError("component at m=" + std::to_string(m) +
                              " has amplitude <= 1e-12 or negative");
    }
    if (std::abs(comp.coin.norm() - 1.0) > kCoinNormTol) {
      throw InvalidStateError("component at m=" + std::to_string(m) + " has a non-unit coin");
    }
    total += comp.amp * comp.amp;
  }
  if (std::abs(total - 1.0) > kNormTol) {
    throw InvalidStateError("composite state is not normalized (sum u_m^2 = " +
                            std::to_string(total) + ")");
  }
}

CompositeState CompositeState::product(const CoinState& coin, Position m) {
  return CompositeState(ComponentMap{{m, Component{1.0, coin}}});
}

Position CompositeState::reach() const {
  return std::max(std::abs(begin_pos()), std::abs(end_pos()));
}

double CompositeState::amp_at(Position m) const {
  const auto it = components_.find(m);
  return it == components_.end() ? 0.0 : it->second.amp;
}

Spinor CompositeState::spinor_at(Position m) const {
  const auto it = components_.find(m);
  if (it == components_.end()) return Spinor{};
  return {it->second.amp * it->second.coin.w0(), it->second.amp * it->second.coin.w1()};
}

double CompositeState::distance(const CompositeState& other) const {
  double worst = 0.0;
  auto visit = [&](Position m) {
    const Spinor x = spinor_at(m);
    const Spinor y = other.spinor_at(m);
    worst = std::max(worst, std::sqrt(std::norm(x[0] - y[0]) + std::norm(x[1] - y[1])));
  };
  for (const auto& [m, _] : components_) visit(m);
  for (const auto& [m, _] : other.components_) visit(m);
  return worst;
}

// ---------------------------------------------------------------------------

CompositeState canonicalize(const RawState& raw, const CanonicalizeOptions& opts) {
  double total2 = 0.0;
  for (const auto& [m, x] : raw) total2 += std::norm(x[0]) + std::norm(x[1]);
  const double total = std::sqrt(total2);
  if (!(total > 0.0) || !std::isfinite(total)) throw EmptyStateError("all-zero composite state");

  CompositeState::ComponentMap out;
  double kept2 = 0.0;
  for (const auto& [m, x] : raw) {
    const double n = std::sqrt(std::norm(x[0]) + std::norm(x[1]));
    if (n / total <= kAmpEpsilon) continue;
    if (std::abs(m) > opts.max_abs_position) {
      throw SpanLimitError("position " + std::to_string(m) + " exceeds the walk-space bound " +
                           std::to_string(opts.max_abs_position));
    }
    out.emplace(m, Component{n, CoinState::normalized(x[0], x[1])});
    kept2 += n * n;
  }
  if (out.empty()) throw EmptyStateError("all-zero composite state");
  const double kept = std::sqrt(kept2);
  for (auto& [m, comp] : out) comp.amp /= kept;
  return CompositeState(std::move(out));
}

RawState to_raw(const CompositeState& u) {
  RawState raw;
  for (const auto& [m, comp] : u.components()) raw.emplace(m, u.spinor_at(m));
  return raw;
}

cplx inner_composite(const CompositeState& p, const CompositeState& q) {
  cplx acc{};
  const auto& qc = q.components();
  for (const auto& [m, pc] : p.components()) {
    const auto it = qc.find(m);
    if (it == qc.end()) continue;
    acc += pc.amp * it->second.amp * inner(pc.coin, it->second.coin);
  }
  return acc;
}

CompositeState shift(const CompositeState& u, Position d) {
  CompositeState::ComponentMap out;
  for (const auto& [m, comp] : u.components()) out.emplace(m + d, comp);
  return CompositeState(std::move(out));
}

CompositeState scale(const CompositeState& u, Position d) {
  if (d == 0) throw std::invalid_argument("scale factor must be nonzero");
  CompositeState::ComponentMap out;
  for (const auto& [m, comp] : u.components()) out.emplace(m * d, comp);
  return CompositeState(std::move(out));
}

CompositeState perp_composite(const CompositeState& u) {
  CompositeState::ComponentMap out;
  for (const auto& [m, comp] : u.components()) out.emplace(-m, Component{comp.amp, perp(comp.coin)});
  return CompositeState(std::move(out));
}

CompositeState superpose(cplx alpha, const CompositeState& u, cplx beta, const CompositeState& v,
                         bool* renormalized) {
  RawState raw;
  for (const auto& [m, x] : to_raw(u)) raw[m] = {alpha * x[0], alpha * x[1]};
  for (const auto& [m, x] : to_raw(v)) {
    Spinor& slot = raw[m];
    slot[0] += beta * x[0];
    slot[1] += beta * x[1];
  }
  double total2 = 0.0;
  for (const auto& [m, x] : raw) total2 += std::norm(x[0]) + std::norm(x[1]);
  const bool renorm = std::abs(total2 - 1.0) > kNormTol;
  if (renorm && total2 > 0.0) {
    std::cerr << "qws: warning: superposition is not unit-norm (|.|^2 = " << total2
              << "), renormalizing\n";
  }
  if (renormalized != nullptr) *renormalized = renorm;
  return canonicalize(raw);
}

CompositeState with_global_phase(const CompositeState& u, cplx ph) {
  CompositeState::ComponentMap out;
  for (const auto& [m, comp] : u.components()) out.emplace(m, Component{comp.amp, comp.coin * ph});
  return CompositeState(std::move(out));
}

// ---------------------------------------------------------------------------

ClassifierReport is_walk_state(const CompositeState& u, double tol) {
  ClassifierReport report;
  if (u.is_product()) return report;
  const Position span = u.end_pos() - u.begin_pos();
  // The dense kernel is O(span^2); very sparse wide states use the pair loop.
  const bool dense = static_cast<double>(span) * static_cast<double>(span) <=
                     64.0 * static_cast<double>(u.size()) * static_cast<double>(u.size()) + 1e6;
  const auto g = dense ? kernels::parallel::shift_overlaps(u) : kernels::serial::shift_overlaps(u);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double v = std::abs(g[i]);
    report.max_violation = std::max(report.max_violation, v);
    if (v > tol) report.violations.emplace_back(static_cast<Position>(i + 1), v);
  }
  report.walk_state = report.violations.empty();
  return report;
}

CompositeState project_to_walk_state(const CompositeState& u, int max_iterations) {
  // Dense least-squares cost grows as size^2 * span; large states are left alone.
  constexpr std::size_t kMaxTerms = 400;
  if (u.is_product() || u.size() > kMaxTerms) return u;
  std::vector<Position> pos;
  std::vector<Spinor> x;
  for (const auto& [m, comp] : u.components()) {
    pos.push_back(m);
    x.push_back({comp.amp * comp.coin.w0(), comp.amp * comp.coin.w1()});
  }
  const std::size_t n = pos.size();
  const Position span = pos.back() - pos.front();
  const auto rows = static_cast<Eigen::Index>(2 * span);
  const auto cols = static_cast<Eigen::Index>(4 * n);

  for (int it = 0; it < max_iterations; ++it) {
    // g_d = sum_m <x_m|x_{m+d}>; J holds d(Re g_d, Im g_d) / d(Re, Im of x_k^j).
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(rows, cols);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(rows);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = i + 1; k < n; ++k) {
        const Position d = pos[k] - pos[i];
        const auto r = static_cast<Eigen::Index>(2 * (d - 1));
        // <x_i|x_k>: conjugate-linear in x_i, linear in x_k
        for (int j = 0; j < 2; ++j) {
          const cplx term = std::conj(x[i][j]) * x[k][j];
          g(r) += term.real();
          g(r + 1) += term.imag();
          const auto ci = static_cast<Eigen::Index>(4 * i + 2 * j);
          const auto ck = static_cast<Eigen::Index>(4 * k + 2 * j);
          // d/dRe x_i = x_k, d/dIm x_i = -i x_k
          const cplx di_re = x[k][j];
          const cplx di_im = -kI * x[k][j];
          // d/dRe x_k = conj x_i, d/dIm x_k = i conj x_i
          const cplx dk_re = std::conj(x[i][j]);
          const cplx dk_im = kI * std::conj(x[i][j]);
          jac(r, ci) += di_re.real();
          jac(r + 1, ci) += di_re.imag();
          jac(r, ci + 1) += di_im.real();
          jac(r + 1, ci + 1) += di_im.imag();
          jac(r, ck) += dk_re.real();
          jac(r + 1, ck) += dk_re.imag();
          jac(r, ck + 1) += dk_im.real();
          jac(r + 1, ck + 1) += dk_im.imag();
        }
      }
    }
    for (Eigen::Index r = 0; r < rows; r += 2) worst = std::max(worst, std::hypot(g(r), g(r + 1)));
    if (worst <= 4.0 * std::numeric_limits<double>::epsilon()) break;
    const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-g);
    for (std::size_t i = 0; i < n; ++i) {
      for (int j = 0; j < 2; ++j) {
        const auto c = static_cast<Eigen::Index>(4 * i + 2 * j);
        x[i][j] += cplx{step(c), step(c + 1)};
      }
    }
  }
  RawState raw;
  for (std::size_t i = 0; i < n; ++i) raw[pos[i]] = x[i];
  return canonicalize(raw);
}

double CharacteristicVector::distance(const CharacteristicVector& other) const {
  const std::size_t n = std::max(f.size(), other.f.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i < f.size() ? f[i] : 0.0;
    const double y = i < other.f.size() ? other.f[i] : 0.0;
    worst = std::max(worst, std::abs(x - y));
  }
  return worst;
}

CharacteristicVector characteristic_vector(const CompositeState& u) {
  CharacteristicVector cv;
  cv.f.assign(static_cast<std::size_t>(u.reach()) + 1, 0.0);
  for (const auto& [m, comp] : u.components()) {
    cv.f[static_cast<std::size_t>(std::abs(m))] += comp.amp * comp.amp;
  }
  return cv;
}

std::vector<std::pair<Position, double>> trace_out_coin(const CompositeState& u) {
  std::vector<std::pair<Position, double>> out;
  out.reserve(u.size());
  for (const auto& [m, comp] : u.components()) out.emplace_back(m, comp.amp * comp.amp);
  return out;
}

// ---------------------------------------------------------------------------

const SpecialCaseClause* SpecialCaseReport::clause(const std::string& name) const {
  for (const auto& c : clauses)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

struct Term {
  Position m;
  double amp;
  CoinState coin;
};

SpecialCaseClause make_clause(std::string name, double residual, double tol) {
  return SpecialCaseClause{std::move(name), residual, residual <= tol};
}

bool all_hold(const std::vector<SpecialCaseClause>& cs) {
  return std::all_of(cs.begin(), cs.end(), [](const auto& c) { return c.holds; });
}

void two_term(const std::vector<Term>& t, double tol, SpecialCaseReport& r) {
  r.clauses.push_back(make_clause("orthogonal_coins", std::abs(inner(t[0].coin, t[1].coin)), tol));
  r.verdict = all_hold(r.clauses);
}

void three_term(const std::vector<Term>& t, double tol, SpecialCaseReport& r) {
  const Term& b = t[0];
  const Term& m = t[1];
  const Term& e = t[2];
  const bool mid = 2 * m.m == b.m + e.m;
  r.clauses.push_back(SpecialCaseClause{"midpoint", mid ? 0.0 : 1.0, mid});
  r.clauses.push_back(make_clause("outer_orthogonal", std::abs(inner(b.coin, e.coin)), tol));
  // x_m = (e^{i delta} x_e |x_b> - e^{-i delta} x_b |x_e>) / sqrt(x_b^2 + x_e^2),
  // with delta read off the |x_b> component of the middle coin.
  const double norm = std::sqrt(b.amp * b.amp + e.amp * e.amp);
  const cplx ph = std::polar(1.0, phase(inner(b.coin, m.coin)));
  const cplx p0 = (ph * e.amp * b.coin.w0() - std::conj(ph) * b.amp * e.coin.w0()) / norm;
  const cplx p1 = (ph * e.amp * b.coin.w1() - std::conj(ph) * b.amp * e.coin.w1()) / norm;
  const double resid = std::max(std::abs(p0 - m.coin.w0()), std::abs(p1 - m.coin.w1()));
  r.clauses.push_back(make_clause("middle_coin_relation", mid ? resid : 1.0, tol));
  r.verdict = all_hold(r.clauses);
}

void four_term(const std::vector<Term>& t, const CompositeState& u, double tol,
               SpecialCaseReport& r) {
  const Term& b = t[0];
  const Term& m = t[1];
  const Term& n = t[2];
  const Term& e = t[3];
  const bool mirrored = (m.m - b.m) == (e.m - n.m);
  r.clauses.push_back(SpecialCaseClause{"mirrored_spacing", mirrored ? 0.0 : 1.0, mirrored});
  if (!mirrored) {
    r.verdict = false;
    return;
  }
  if (n.m - m.m == m.m - b.m) {
    // Equally spaced: no closed form; defer to the general constraints.
    const auto general = is_walk_state(u, tol);
    r.clauses.push_back(SpecialCaseClause{"general_constraints", general.max_violation,
                                          general.walk_state});
    r.verdict = general.walk_state;
    return;
  }
  r.clauses.push_back(make_clause("outer_orthogonal", std::abs(inner(b.coin, e.coin)), tol));
  r.clauses.push_back(make_clause("inner_orthogonal", std::abs(inner(m.coin, n.coin)), tol));

  // Branch A: y_b/y_m = y_e/y_n, <y_b|y_m> = <y_n|y_e> = 0, <y_b|y_n> + <y_m|y_e> = 0.
  const double ratio_a = std::abs(b.amp * n.amp - m.amp * e.amp);
  const double chain_a =
      std::max(std::abs(inner(b.coin, m.coin)), std::abs(inner(n.coin, e.coin)));
  const double cross_a = std::abs(inner(b.coin, n.coin) + inner(m.coin, e.coin));
  // Branch B (m and n roles exchanged): y_b/y_n = y_e/y_m,
  // <y_b|y_n> = <y_m|y_e> = 0, <y_b|y_m> + <y_n|y_e> = 0.
  const double ratio_b = std::abs(b.amp * m.amp - n.amp * e.amp);
  const double chain_b =
      std::max(std::abs(inner(b.coin, n.coin)), std::abs(inner(m.coin, e.coin)));
  const double cross_b = std::abs(inner(b.coin, m.coin) + inner(n.coin, e.coin));

  std::vector<SpecialCaseClause> a{make_clause("a_amplitude_ratio", ratio_a, tol),
                                   make_clause("a_orthogonal_chain", chain_a, tol),
                                   make_clause("a_cross_sum", cross_a, tol)};
  std::vector<SpecialCaseClause> bb{make_clause("b_amplitude_ratio", ratio_b, tol),
                                    make_clause("b_orthogonal_chain", chain_b, tol),
                                    make_clause("b_cross_sum", cross_b, tol)};
  const bool base = all_hold(r.clauses);
  const bool branch = all_hold(a) || all_hold(bb);
  r.clauses.insert(r.clauses.end(), a.begin(), a.end());
  r.clauses.insert(r.clauses.end(), bb.begin(), bb.end());
  r.verdict = base && branch;
}

}  // namespace

SpecialCaseReport special_case_checks(const CompositeState& u, double tol) {
  SpecialCaseReport report;
  report.terms = u.size();
  if (u.size() < 2 || u.size() > 4) return report;
  report.applicable = true;
  std::vector<Term> t;
  for (const auto& [m, comp] : u.components()) t.push_back(Term{m, comp.amp, comp.coin});
  switch (t.size()) {
    case 2: two_term(t, tol, report); break;
    case 3: three_term(t, tol, report); break;
    default: four_term(t, u, tol, report); break;
  }
  return report;
}

}  // namespace qws
