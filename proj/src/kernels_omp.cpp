#include <omp.h>

#include <cmath>

#include "qws/kernels.hpp"

namespace qws::kernels {

int max_threads() { return omp_get_max_threads(); }

namespace parallel {

std::vector<cplx> shift_overlaps(const CompositeState& u) {
  const Position b = u.begin_pos();
  const Position span = u.end_pos() - b;
  // Dense weighted spinors y_m = u_m coin_m over [b, e].
  std::vector<Spinor> y(static_cast<std::size_t>(span + 1), Spinor{});
  for (const auto& [m, comp] : u.components()) {
    y[static_cast<std::size_t>(m - b)] = {comp.amp * comp.coin.w0(), comp.amp * comp.coin.w1()};
  }
  std::vector<cplx> g(static_cast<std::size_t>(span), cplx{});
  const long long n = static_cast<long long>(span);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long d = 1; d <= n; ++d) {
    cplx acc{};
    for (long long m = 0; m + d <= n; ++m) {
      const Spinor& lhs = y[static_cast<std::size_t>(m)];
      const Spinor& rhs = y[static_cast<std::size_t>(m + d)];
      acc += std::conj(lhs[0]) * rhs[0] + std::conj(lhs[1]) * rhs[1];
    }
    g[static_cast<std::size_t>(d - 1)] = acc;
  }
  return g;
}

std::vector<Spinor> sample_azimuths(const CompositeState& u, std::size_t samples) {
  std::vector<Position> pos;
  std::vector<Spinor> y;
  pos.reserve(u.size());
  y.reserve(u.size());
  for (const auto& [m, comp] : u.components()) {
    pos.push_back(m);
    y.push_back({comp.amp * comp.coin.w0(), comp.amp * comp.coin.w1()});
  }
  std::vector<Spinor> out(samples, Spinor{});
  const long long count = static_cast<long long>(samples);
#pragma omp parallel for schedule(static)
  for (long long k = 0; k < count; ++k) {
    const double phi = kTwoPi * static_cast<double>(k) / static_cast<double>(samples);
    Spinor acc{};
    for (std::size_t i = 0; i < pos.size(); ++i) {
      const cplx rot = std::polar(1.0, static_cast<double>(pos[i]) * phi);
      acc[0] += rot * y[i][0];
      acc[1] += rot * y[i][1];
    }
    out[static_cast<std::size_t>(k)] = acc;
  }
  return out;
}

std::vector<Spinor> azimuthal_dft(std::span<const Spinor> profile, Position lo, Position hi) {
  const std::size_t samples = profile.size();
  const double inv = 1.0 / static_cast<double>(samples);
  std::vector<Spinor> bins(static_cast<std::size_t>(hi - lo + 1), Spinor{});
  const long long count = static_cast<long long>(bins.size());
#pragma omp parallel for schedule(static)
  for (long long idx = 0; idx < count; ++idx) {
    const double m = static_cast<double>(lo + idx);
    Spinor acc{};
    for (std::size_t k = 0; k < samples; ++k) {
      const double phi = kTwoPi * static_cast<double>(k) * inv;
      const cplx rot = std::polar(1.0, -m * phi);
      acc[0] += rot * profile[k][0];
      acc[1] += rot * profile[k][1];
    }
    bins[static_cast<std::size_t>(idx)] = {acc[0] * inv, acc[1] * inv};
  }
  return bins;
}

}  // namespace parallel
}  // namespace qws::kernels
