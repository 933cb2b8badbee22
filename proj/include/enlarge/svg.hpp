#pragma once

#include <string>
#include <vector>

#include "enlarge/body.hpp"

namespace enlarge {

/// Boundary of a planar body as a counter-clockwise polygon (columns). Polyhedral bodies give
/// their exact vertices, other bodies a 360-point radial sampling.
Mat boundary_polygon(const Body& body, const Tolerances& tol = {});

/// SVG 1.1 document with the bodies drawn over the unit circle, y axis pointing up.
std::string render_svg(const std::vector<Body>& bodies, const Tolerances& tol = {});

}  // namespace enlarge
