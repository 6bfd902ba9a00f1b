// Deterministic SVG figures: concentric-circle state diagrams, walk panels,
// polarization-ellipse rings and polar intensity plots.
#pragma once

#include <string>

#include "qws/optics.hpp"

namespace qws {

enum class RenderStyle { circles, ellipses, polar, walk_panel };

struct RenderSpec {
  RenderStyle style = RenderStyle::circles;
  double scale = 1.0;       // > 0
  std::size_t samples = 0;  // azimuths for polar/ellipses; 0 = style default
};

const char* style_name(RenderStyle s);
// Throws std::invalid_argument for an unknown name.
RenderStyle parse_style(const std::string& name);

// Each throws std::invalid_argument when spec.style does not match or the
// scale is not positive.
std::string render_composite(const CompositeState& u, const RenderSpec& spec);
std::string render_profile(const CompositeState& u, const RenderSpec& spec);
std::string render_ellipse_ring(const CompositeState& u, const RenderSpec& spec);
std::string render_walk_panel(const Walk& w, const CoinState& home, const RenderSpec& spec);

// Dispatches on spec.style (not walk_panel).
std::string render_state(const CompositeState& u, const RenderSpec& spec);

}  // namespace qws
