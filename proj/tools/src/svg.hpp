#pragma once

#include <string>
#include <vector>

#include "fluxmodes/modes.hpp"

namespace fluxmodes::cli {

// gamma-versus-q polyline plot of tower data: solid lines for regular
// towers, dashed for singular normalizable, dotted for non-normalizable.
std::string towers_svg(const std::vector<TowerPoint>& points);

}  // namespace fluxmodes::cli
