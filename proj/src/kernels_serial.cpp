#include <cmath>

#include "qws/kernels.hpp"

namespace qws::kernels::serial {

std::vector<cplx> shift_overlaps(const CompositeState& u) {
  const Position span = u.end_pos() - u.begin_pos();
  std::vector<cplx> g(static_cast<std::size_t>(span), cplx{});
  const auto& comps = u.components();
  for (auto i = comps.begin(); i != comps.end(); ++i) {
    auto j = i;
    for (++j; j != comps.end(); ++j) {
      const Position d = j->first - i->first;
      g[static_cast<std::size_t>(d - 1)] +=
          i->second.amp * j->second.amp * inner(i->second.coin, j->second.coin);
    }
  }
  return g;
}

std::vector<Spinor> sample_azimuths(const CompositeState& u, std::size_t samples) {
  std::vector<Spinor> out(samples, Spinor{});
  for (std::size_t k = 0; k < samples; ++k) {
    const double phi = kTwoPi * static_cast<double>(k) / static_cast<double>(samples);
    for (const auto& [m, comp] : u.components()) {
      const cplx rot = std::polar(comp.amp, static_cast<double>(m) * phi);
      out[k][0] += rot * comp.coin.w0();
      out[k][1] += rot * comp.coin.w1();
    }
  }
  return out;
}

std::vector<Spinor> azimuthal_dft(std::span<const Spinor> profile, Position lo, Position hi) {
  const std::size_t samples = profile.size();
  std::vector<Spinor> bins(static_cast<std::size_t>(hi - lo + 1), Spinor{});
  for (Position m = lo; m <= hi; ++m) {
    Spinor acc{};
    for (std::size_t k = 0; k < samples; ++k) {
      const double phi = kTwoPi * static_cast<double>(k) / static_cast<double>(samples);
      const cplx rot = std::polar(1.0, -static_cast<double>(m) * phi);
      acc[0] += rot * profile[k][0];
      acc[1] += rot * profile[k][1];
    }
    bins[static_cast<std::size_t>(m - lo)] = {acc[0] / static_cast<double>(samples),
                                              acc[1] / static_cast<double>(samples)};
  }
  return bins;
}

}  // namespace qws::kernels::serial
