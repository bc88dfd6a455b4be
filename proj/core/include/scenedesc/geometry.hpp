#pragma once

#include <array>
#include <vector>

namespace scenedesc {

// Camera-aligned world frame: x right, y forward from the camera, z up.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend bool operator==(const Vec3& a, const Vec3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

double norm(const Vec3& v);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Axis-aligned extent in the floor plane.
struct Rect {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }

  friend bool operator==(const Rect&, const Rect&) = default;
};

// Oriented box, parallel to the floor: dims = (width, depth, height),
// yaw rotates about the vertical axis.
struct Cuboid {
  Vec3 center;
  Vec3 dims{1.0, 1.0, 1.0};
  double yaw = 0.0;

  double z_min() const { return center.z - dims.z / 2.0; }
  double z_max() const { return center.z + dims.z / 2.0; }
  double footprint_area() const { return dims.x * dims.y; }

  // Floor-plane corners, counter-clockwise.
  std::array<Vec2, 4> footprint() const;

  friend bool operator==(const Cuboid&, const Cuboid&) = default;
};

// Maps yaw into [-pi, pi).
double normalize_yaw(double yaw);

// Convex polygon helpers used by the relation rules. Polygons are
// counter-clockwise vertex lists.
double polygon_area(const std::vector<Vec2>& poly);
std::vector<Vec2> clip_convex(const std::vector<Vec2>& subject,
                              const std::vector<Vec2>& clip);
double polygon_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

// Area of the footprint intersection divided by the smaller footprint area.
double horizontal_overlap_ratio(const Cuboid& a, const Cuboid& b);

// Nearest-surface separation of two floor-parallel boxes: zero when they
// intersect, otherwise hypot of the footprint distance and the z-interval gap.
double surface_gap(const Cuboid& a, const Cuboid& b);

// Thresholds for the pairwise relation rules.
struct SpatialRuleConfig {
  double contact_eps = 0.05;     // face-contact tolerance for top-of, meters
  double top_overlap = 0.5;      // min footprint overlap ratio for top-of
  double above_overlap = 0.1;    // min footprint overlap ratio for above
  double near_gap = 0.5;         // max surface gap for near, meters
  double next_to_gap = 0.15;     // max surface gap for next-to, meters
  double axis_dominance = 1.5;   // displacement axis must exceed others by this
};

// Thresholds for the object-position rules.
struct PositionRuleConfig {
  double center_band = 0.4;      // central fraction per axis for center-of-room
  double side_band = 0.3;        // outer fraction for left/right-of-room
  double front_distance = 1.5;   // max camera distance for front-of-camera
  double front_angle_deg = 30.0; // max angle off the camera axis
  double far_fraction = 0.75;    // far-away threshold as fraction of diagonal
  double corner_distance = 0.5;  // max footprint-to-wall distance for corners
};

}  // namespace scenedesc
