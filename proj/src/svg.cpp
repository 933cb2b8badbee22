#include "enlarge/svg.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace enlarge {

Mat boundary_polygon(const Body& body, const Tolerances& tol) {
  if (body.dim() != 2) throw InputError("render: only planar bodies can be drawn");
  if (is_polyhedral(body))
    if (auto pts = vertex_candidates(body, tol)) return planar_hull(*pts, tol);
  const int count = 360;
  Mat out(2, count);
  for (int k = 0; k < count; ++k) {
    const double t = 2 * std::numbers::pi * k / count;
    Vec u(2);
    u << std::cos(t), std::sin(t);
    try {
      out.col(k) = u / gauge(body, u, tol);
    } catch (const UnsupportedRepresentation&) {
      // Corner of the tangent lines at t and the next angle.
      const double s = t + 2 * std::numbers::pi / count;
      Mat a(2, 2);
      a << std::cos(t), std::sin(t), std::cos(s), std::sin(s);
      Vec b(2);
      b << support(body, Vec(a.row(0).transpose()), tol), support(body, Vec(a.row(1).transpose()), tol);
      out.col(k) = a.partialPivLu().solve(b);
    }
  }
  return out;
}

std::string render_svg(const std::vector<Body>& bodies, const Tolerances& tol) {
  std::vector<Mat> polys;
  double extent = 1.0;
  for (const Body& b : bodies) {
    polys.push_back(boundary_polygon(b, tol));
    extent = std::max(extent, polys.back().cwiseAbs().maxCoeff());
  }
  extent *= 1.1;
  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  char buf[160];
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"512\" height=\"512\" "
                "viewBox=\"%.6g %.6g %.6g %.6g\">\n",
                -extent, -extent, 2 * extent, 2 * extent);
  out += buf;
  out += "<g transform=\"scale(1,-1)\" fill=\"none\">\n";
  std::snprintf(buf, sizeof buf, "<line x1=\"%.6g\" y1=\"0\" x2=\"%.6g\" y2=\"0\" stroke=\"#ccc\" stroke-width=\"0.005\"/>\n",
                -extent, extent);
  out += buf;
  std::snprintf(buf, sizeof buf, "<line x1=\"0\" y1=\"%.6g\" x2=\"0\" y2=\"%.6g\" stroke=\"#ccc\" stroke-width=\"0.005\"/>\n",
                -extent, extent);
  out += buf;
  out += "<circle cx=\"0\" cy=\"0\" r=\"1\" stroke=\"#888\" stroke-width=\"0.008\" stroke-dasharray=\"0.03 0.02\"/>\n";
  for (std::size_t i = 0; i < polys.size(); ++i) {
    out += "<polygon stroke=\"";
    out += colours[i % 5];
    out += "\" stroke-width=\"0.012\" points=\"";
    for (Eigen::Index k = 0; k < polys[i].cols(); ++k) {
      std::snprintf(buf, sizeof buf, "%s%.9g,%.9g", k ? " " : "", polys[i](0, k), polys[i](1, k));
      out += buf;
    }
    out += "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace enlarge
