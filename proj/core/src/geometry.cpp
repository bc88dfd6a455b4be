#include "scenedesc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scenedesc {

namespace {

constexpr double kPi = 3.14159265358979323846;

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double segment_distance(const Vec2& p1, const Vec2& p2, const Vec2& q1,
                        const Vec2& q2) {
  auto point_seg = [](const Vec2& p, const Vec2& a, const Vec2& b) {
    double vx = b.x - a.x, vy = b.y - a.y;
    double wx = p.x - a.x, wy = p.y - a.y;
    double vv = vx * vx + vy * vy;
    double t = vv > 0.0 ? std::clamp((wx * vx + wy * vy) / vv, 0.0, 1.0) : 0.0;
    double dx = p.x - (a.x + t * vx);
    double dy = p.y - (a.y + t * vy);
    return std::hypot(dx, dy);
  };
  // Proper intersection means distance zero.
  double d1 = cross(p1, p2, q1), d2 = cross(p1, p2, q2);
  double d3 = cross(q1, q2, p1), d4 = cross(q1, q2, p2);
  if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return 0.0;
  return std::min({point_seg(q1, p1, p2), point_seg(q2, p1, p2),
                   point_seg(p1, q1, q2), point_seg(p2, q1, q2)});
}

bool point_in_convex(const Vec2& p, const std::vector<Vec2>& poly) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    if (cross(a, b, p) < 0.0) return false;
  }
  return true;
}

}  // namespace

double norm(const Vec3& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

double normalize_yaw(double yaw) {
  double y = std::fmod(yaw + kPi, 2.0 * kPi);
  if (y < 0.0) y += 2.0 * kPi;
  return y - kPi;
}

std::array<Vec2, 4> Cuboid::footprint() const {
  double hx = dims.x / 2.0;
  double hy = dims.y / 2.0;
  double c = std::cos(yaw);
  double s = std::sin(yaw);
  auto corner = [&](double dx, double dy) {
    return Vec2{center.x + dx * c - dy * s, center.y + dx * s + dy * c};
  };
  return {corner(-hx, -hy), corner(hx, -hy), corner(hx, hy), corner(-hx, hy)};
}

double polygon_area(const std::vector<Vec2>& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % poly.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return std::abs(a) / 2.0;
}

// Sutherland-Hodgman; both polygons counter-clockwise.
std::vector<Vec2> clip_convex(const std::vector<Vec2>& subject,
                              const std::vector<Vec2>& clip) {
  std::vector<Vec2> output = subject;
  for (std::size_t i = 0; i < clip.size() && !output.empty(); ++i) {
    const Vec2& a = clip[i];
    const Vec2& b = clip[(i + 1) % clip.size()];
    std::vector<Vec2> input;
    input.swap(output);
    for (std::size_t j = 0; j < input.size(); ++j) {
      const Vec2& p = input[j];
      const Vec2& q = input[(j + 1) % input.size()];
      bool p_in = cross(a, b, p) >= 0.0;
      bool q_in = cross(a, b, q) >= 0.0;
      auto intersect = [&]() {
        double a1 = b.y - a.y, b1 = a.x - b.x, c1 = a1 * a.x + b1 * a.y;
        double a2 = q.y - p.y, b2 = p.x - q.x, c2 = a2 * p.x + b2 * p.y;
        double det = a1 * b2 - a2 * b1;
        return Vec2{(b2 * c1 - b1 * c2) / det, (a1 * c2 - a2 * c1) / det};
      };
      if (p_in) {
        output.push_back(p);
        if (!q_in) output.push_back(intersect());
      } else if (q_in) {
        output.push_back(intersect());
      }
    }
  }
  return output;
}

double polygon_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  if (a.empty() || b.empty()) return 0.0;
  if (point_in_convex(a[0], b) || point_in_convex(b[0], a)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      best = std::min(best, segment_distance(a[i], a[(i + 1) % a.size()],
                                             b[j], b[(j + 1) % b.size()]));
    }
  }
  return best;
}

double horizontal_overlap_ratio(const Cuboid& a, const Cuboid& b) {
  auto fa = a.footprint();
  auto fb = b.footprint();
  std::vector<Vec2> pa(fa.begin(), fa.end());
  std::vector<Vec2> pb(fb.begin(), fb.end());
  double inter = polygon_area(clip_convex(pa, pb));
  double smaller = std::min(a.footprint_area(), b.footprint_area());
  return smaller > 0.0 ? inter / smaller : 0.0;
}

double surface_gap(const Cuboid& a, const Cuboid& b) {
  auto fa = a.footprint();
  auto fb = b.footprint();
  std::vector<Vec2> pa(fa.begin(), fa.end());
  std::vector<Vec2> pb(fb.begin(), fb.end());
  double dxy = polygon_distance(pa, pb);
  double dz = std::max({a.z_min() - b.z_max(), b.z_min() - a.z_max(), 0.0});
  return std::hypot(dxy, dz);
}

}  // namespace scenedesc
