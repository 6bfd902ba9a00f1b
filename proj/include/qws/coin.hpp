// Two-dimensional coin space (polarization in the optical picture).
//
// Basis convention: |0> is left-circular |l>, |1> is right-circular |r>.
#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>

namespace qws {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr cplx kI{0.0, 1.0};

// Unit-norm tolerance for coin states.
inline constexpr double kCoinNormTol = 1e-12;
// Component-wise equality tolerance for coin states.
inline constexpr double kCoinEqTol = 1e-9;

class CoinState {
 public:
  // |0>, i.e. |l>.
  CoinState() = default;

  // Throws InvalidStateError unless |w0|^2 + |w1|^2 = 1 within kCoinNormTol.
  CoinState(cplx w0, cplx w1);

  // Rescales (w0, w1) to unit norm; throws EmptyStateError on a zero vector.
  static CoinState normalized(cplx w0, cplx w1);

  // Named constants l, r, h, v, d, a, c, e. Returns nullopt for anything else.
  static std::optional<CoinState> named(std::string_view name);

  cplx w0() const noexcept { return w0_; }
  cplx w1() const noexcept { return w1_; }
  double norm() const noexcept;

  CoinState operator*(cplx phase) const;  // phase must be unit-modulus
  CoinState operator-() const { return CoinState(-w0_, -w1_, Unchecked{}); }

 private:
  struct Unchecked {};
  CoinState(cplx w0, cplx w1, Unchecked) : w0_(w0), w1_(w1) {}
  friend CoinState perp(const CoinState&);

  cplx w0_{1.0, 0.0};
  cplx w1_{0.0, 0.0};
};

namespace coins {
CoinState l();
CoinState r();
CoinState h();
CoinState v();
CoinState d();
CoinState a();
CoinState c();
CoinState e();
}  // namespace coins

// -conj(w1)|0> + conj(w0)|1>. Note perp(perp(w)) == -w.
CoinState perp(const CoinState& w);

// <a|b>, conjugate-linear in a.
cplx inner(const CoinState& a, const CoinState& b);

// Principal argument in (-pi, pi]; phase(0) == 0.
double phase(cplx z);

// Wraps an angle into [0, 2pi).
double wrap_two_pi(double angle);

bool approx_equal(const CoinState& a, const CoinState& b, double tol = kCoinEqTol);
bool equal_up_to_phase(const CoinState& a, const CoinState& b, double tol = kCoinEqTol);

// 2x2 SU(2) matrix in the (|0>, |1>) basis. Built only by coin_op() or
// composition of existing operators.
class CoinOperator {
 public:
  using Matrix = std::array<std::array<cplx, 2>, 2>;

  static CoinOperator identity();

  const Matrix& matrix() const noexcept { return m_; }
  cplx operator()(int row, int col) const { return m_[row][col]; }

  CoinState apply(const CoinState& w) const;
  std::array<cplx, 2> apply(const std::array<cplx, 2>& x) const;

  CoinOperator adjoint() const;
  cplx determinant() const;

  // (*this) after rhs, i.e. the product this * rhs.
  CoinOperator operator*(const CoinOperator& rhs) const;

  // Largest entry-wise deviation from another operator.
  double distance(const CoinOperator& other) const;

 private:
  explicit CoinOperator(const Matrix& m) : m_(m) {}
  friend CoinOperator coin_op(const CoinState&, const CoinState&);

  Matrix m_{};
};

// |s><c| + |s_perp><c_perp|: maps c -> s and c_perp -> s_perp.
CoinOperator coin_op(const CoinState& s, const CoinState& c);

}  // namespace qws
