#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "bjorth/matrix.hpp"

namespace bjorth {

// Planar convex geometry over complex points, used to test membership of a
// point in a sampled numerical range.

namespace detail {

inline double cross(const cd& o, const cd& a, const cd& b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

inline double dist_to_segment(const cd& a, const cd& b, const cd& p) {
  const cd ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + ab * t));
}

}  // namespace detail

// Convex hull by the monotone chain, counterclockwise, no repeated endpoint.
// Collinear inputs collapse to their extreme segment; fewer than three
// distinct points pass through unchanged.
inline std::vector<cd> convex_hull(std::vector<cd> pts) {
  auto lex = [](const cd& a, const cd& b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  };
  std::sort(pts.begin(), pts.end(), lex);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;

  std::vector<cd> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && detail::cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
    while (k >= lower && detail::cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// Signed distance from a point to a convex hull: negative inside (distance
// to the boundary), positive outside, zero on the boundary.  Hulls without
// interior (segments, single points) never report a negative value.
inline double signed_point_margin(const std::vector<cd>& hull, const cd& p) {
  if (hull.empty()) return std::numeric_limits<double>::infinity();
  if (hull.size() == 1) return std::abs(p - hull[0]);
  if (hull.size() == 2) return detail::dist_to_segment(hull[0], hull[1], p);

  bool inside = true;
  double dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const cd& a = hull[i];
    const cd& b = hull[(i + 1) % hull.size()];
    if (detail::cross(a, b, p) < 0.0) inside = false;  // hull is counterclockwise
    dist = std::min(dist, detail::dist_to_segment(a, b, p));
  }
  return inside ? -dist : dist;
}

inline double signed_origin_margin(const std::vector<cd>& hull) {
  return signed_point_margin(hull, cd(0.0, 0.0));
}

}  // namespace bjorth
