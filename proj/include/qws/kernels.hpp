// Data-parallel numeric kernels behind the classifier and the azimuthal
// profile / OAM decomposition. Each kernel has a plain serial reference and
// an OpenMP version; the library calls the parallel one, tests and the
// benchmark compare the two.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qws/composite.hpp"

namespace qws::kernels {

// g[d-1] = <U|U_d> for d = 1..e-b.
using OverlapFn = std::vector<cplx> (*)(const CompositeState&);
// Jones vectors sum_m u_m e^{i m phi_k} coin_m at phi_k = 2 pi k / K.
using SampleFn = std::vector<Spinor> (*)(const CompositeState&, std::size_t);
// bins[m - lo] = (1/K) sum_k e^{-i m phi_k} x_k for m in [lo, hi].
using DftFn = std::vector<Spinor> (*)(std::span<const Spinor>, Position, Position);

namespace serial {
std::vector<cplx> shift_overlaps(const CompositeState& u);
std::vector<Spinor> sample_azimuths(const CompositeState& u, std::size_t samples);
std::vector<Spinor> azimuthal_dft(std::span<const Spinor> profile, Position lo, Position hi);
}  // namespace serial

namespace parallel {
std::vector<cplx> shift_overlaps(const CompositeState& u);
std::vector<Spinor> sample_azimuths(const CompositeState& u, std::size_t samples);
std::vector<Spinor> azimuthal_dft(std::span<const Spinor> profile, Position lo, Position hi);
}  // namespace parallel

int max_threads();

}  // namespace qws::kernels
