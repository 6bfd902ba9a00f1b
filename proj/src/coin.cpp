#include "qws/coin.hpp"

#include <cmath>
#include <string>

#include "qws/errors.hpp"

namespace qws {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

cplx polar_unit(double angle) { return {std::cos(angle), std::sin(angle)}; }
}  // namespace

CoinState::CoinState(cplx w0, cplx w1) : w0_(w0), w1_(w1) {
  const double n2 = std::norm(w0) + std::norm(w1);
  if (!(std::abs(n2 - 1.0) <= kCoinNormTol)) {
    throw InvalidStateError("coin state is not unit-norm (|w|^2 = " + std::to_string(n2) + ")");
  }
}

CoinState CoinState::normalized(cplx w0, cplx w1) {
  const double n = std::sqrt(std::norm(w0) + std::norm(w1));
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw EmptyStateError("cannot normalize a zero coin vector");
  }
  return CoinState(w0 / n, w1 / n, Unchecked{});
}

double CoinState::norm() const noexcept { return std::sqrt(std::norm(w0_) + std::norm(w1_)); }

CoinState CoinState::operator*(cplx ph) const {
  if (std::abs(std::abs(ph) - 1.0) > kCoinNormTol) {
    throw std::invalid_argument("coin state may only be multiplied by a unit-modulus phase");
  }
  return CoinState(w0_ * ph, w1_ * ph, Unchecked{});
}

namespace coins {
CoinState l() { return CoinState::normalized(1.0, 0.0); }
CoinState r() { return CoinState::normalized(0.0, 1.0); }
CoinState h() { return CoinState::normalized(kInvSqrt2, -kI * kInvSqrt2); }
CoinState v() { return CoinState::normalized(-kI * kInvSqrt2, kInvSqrt2); }
CoinState d() {
  const cplx ph = polar_unit(-kPi / 4) * kInvSqrt2;
  return CoinState::normalized(ph, ph);
}
CoinState a() {
  const cplx ph = polar_unit(kPi / 4) * kInvSqrt2;
  return CoinState::normalized(-ph, ph);
}
CoinState c() { return CoinState::normalized(std::sqrt(3.0) / 2.0, 0.5 * kI); }
CoinState e() { return CoinState::normalized(0.5 * kI, std::sqrt(3.0) / 2.0); }
}  // namespace coins

std::optional<CoinState> CoinState::named(std::string_view name) {
  if (name == "l") return coins::l();
  if (name == "r") return coins::r();
  if (name == "h") return coins::h();
  if (name == "v") return coins::v();
  if (name == "d") return coins::d();
  if (name == "a") return coins::a();
  if (name == "c") return coins::c();
  if (name == "e") return coins::e();
  return std::nullopt;
}

CoinState perp(const CoinState& w) {
  return CoinState(-std::conj(w.w1()), std::conj(w.w0()), CoinState::Unchecked{});
}

cplx inner(const CoinState& a, const CoinState& b) {
  return std::conj(a.w0()) * b.w0() + std::conj(a.w1()) * b.w1();
}

double phase(cplx z) {
  if (z == cplx{0.0, 0.0}) return 0.0;
  double ang = std::arg(z);
  // std::arg returns [-pi, pi]; map -pi (from -1 - 0i) onto +pi.
  if (ang <= -kPi) ang += kTwoPi;
  return ang;
}

double wrap_two_pi(double angle) {
  double w = std::fmod(angle, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w -= kTwoPi;
  return w;
}

bool approx_equal(const CoinState& a, const CoinState& b, double tol) {
  return std::abs(a.w0() - b.w0()) <= tol && std::abs(a.w1() - b.w1()) <= tol;
}

bool equal_up_to_phase(const CoinState& a, const CoinState& b, double tol) {
  return std::abs(inner(a, b)) >= 1.0 - tol;
}

// ---------------------------------------------------------------------------

CoinOperator CoinOperator::identity() {
  Matrix m{};
  m[0][0] = 1.0;
  m[1][1] = 1.0;
  return CoinOperator(m);
}

std::array<cplx, 2> CoinOperator::apply(const std::array<cplx, 2>& x) const {
  return {m_[0][0] * x[0] + m_[0][1] * x[1], m_[1][0] * x[0] + m_[1][1] * x[1]};
}

CoinState CoinOperator::apply(const CoinState& w) const {
  const auto y = apply(std::array<cplx, 2>{w.w0(), w.w1()});
  return CoinState::normalized(y[0], y[1]);
}

CoinOperator CoinOperator::adjoint() const {
  Matrix m{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m[i][j] = std::conj(m_[j][i]);
  return CoinOperator(m);
}

cplx CoinOperator::determinant() const { return m_[0][0] * m_[1][1] - m_[0][1] * m_[1][0]; }

CoinOperator CoinOperator::operator*(const CoinOperator& rhs) const {
  Matrix m{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m[i][j] = m_[i][0] * rhs.m_[0][j] + m_[i][1] * rhs.m_[1][j];
  return CoinOperator(m);
}

double CoinOperator::distance(const CoinOperator& other) const {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) worst = std::max(worst, std::abs(m_[i][j] - other.m_[i][j]));
  return worst;
}

CoinOperator coin_op(const CoinState& s, const CoinState& c) {
  const CoinState sp = perp(s);
  const CoinState cp = perp(c);
  CoinOperator::Matrix m{};
  const cplx sv[2] = {s.w0(), s.w1()};
  const cplx spv[2] = {sp.w0(), sp.w1()};
  const cplx cv[2] = {c.w0(), c.w1()};
  const cplx cpv[2] = {cp.w0(), cp.w1()};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m[i][j] = sv[i] * std::conj(cv[j]) + spv[i] * std::conj(cpv[j]);
  return CoinOperator(m);
}

}  // namespace qws
