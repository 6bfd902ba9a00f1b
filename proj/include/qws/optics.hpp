// Jones-calculus realization of walks: waveplates, q-plates, plate-sequence
// compilation, azimuthal profiles of vector beams and OAM extraction.
//
// Waveplate in the circular (|l>, |r>) basis:
//   [[cos(G/2), -sin(G/2) e^{-2i alpha}], [sin(G/2) e^{2i alpha}, cos(G/2)]]
// A q-plate of charge q is the step T_G(2 alpha0, 2q, l, l).
#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "qws/synthesis.hpp"

namespace qws {

struct Waveplate {
  double gamma = 0.0;  // retardance, [0, 2pi)
  double alpha = 0.0;  // fast axis, [0, pi)
};

struct QPlate {
  double gamma = 0.0;
  double q = 0.5;       // 2q a nonzero integer
  double alpha0 = 0.0;  // [0, pi)
};

using PlateElement = std::variant<Waveplate, QPlate>;

struct PlateSequence {
  std::vector<PlateElement> elements;  // first applied first
  cplx global_phase{1.0, 0.0};

  std::size_t waveplate_count() const;
  std::size_t qplate_count() const;
};

// Angles are stored mod pi. A negative gamma becomes (-gamma, angle + pi/2),
// the inverse plate; gamma beyond 2pi is rejected.
Waveplate make_waveplate(double gamma, double alpha);
QPlate make_qplate(double gamma, double q, double alpha0);

CoinOperator waveplate_matrix(const Waveplate& w);
CoinState apply_waveplate(const Waveplate& w, const CoinState& u);
// Throws std::invalid_argument unless 2q is a nonzero integer.
CompositeState apply_qplate(const QPlate& q, const CompositeState& u);
QuantumStep qplate_as_step(const QPlate& q);
PlateElement plate_inverse(const PlateElement& e);
// Applies the elements in order; the global phase is not applied.
CompositeState apply_plates(const PlateSequence& seq, const CompositeState& u);

// Two waveplates [W(pi, a), W(G, b)] realizing an arbitrary SU(2) exactly.
std::vector<Waveplate> waveplate_pair(const CoinOperator& op);

// [W(G1, a1), Q(pi, p/2, a0), W(G2, a2)] for a gamma = pi step; identity
// waveplates are left out. Throws UnsupportedStepError for other gammas.
PlateSequence compile_step(const QuantumStep& t);

struct CompiledWalk {
  PlateSequence plates;
  CoinState input;  // the sequence acts on |input; 0>
  SynthesisResult synthesis;
};

struct CompileOptions {
  double tol = kClassifierTol;
  // Start from |input; 0> instead of the synthesized home; adds one waveplate
  // pair in front.
  std::optional<CoinState> input;
};

// One q-plate (q = 1/2) plus one homogeneous waveplate per synthesized step.
CompiledWalk compile_walk(const CompositeState& target, const CompileOptions& opts = {});

// Any walk: improper steps as waveplate pairs, proper steps as q-plates
// flanked by the waveplates (or waveplate pairs) they need.
PlateSequence compile_steps(const Walk& w);

// Jones vector sum_m u_m e^{i m phi} coin_m.
Spinor sop_at_azimuth(const CompositeState& u, double phi);

struct AzimuthalSample {
  double phi = 0.0;
  Spinor jones{};
};

struct AzimuthalProfile {
  std::vector<AzimuthalSample> samples;
};

std::size_t default_samples(const CompositeState& u);
// samples == 0 picks default_samples(u).
AzimuthalProfile sample_profile(const CompositeState& u, std::size_t samples = 0);
// |jones|^2 at each sample.
std::vector<double> total_intensity(const AzimuthalProfile& profile);

// Discrete extraction of the OAM components. Throws std::invalid_argument for
// a non-uniform grid and BandLimitError when the guard band holds > 1e-6.
CompositeState oam_decompose(const AzimuthalProfile& profile);

enum class Helicity { left, right, linear };

struct EllipseParams {
  double ellipticity = 0.0;
  double orientation = 0.0;  // (-pi, pi]
  Helicity helicity = Helicity::linear;
};

EllipseParams ellipse_params(const CoinState& u);
const char* helicity_name(Helicity h);

}  // namespace qws
