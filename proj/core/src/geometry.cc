/* Copyright 2026 The Framedrop Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "framedrop/geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

#include "framedrop/errors.h"

namespace framedrop {
namespace {

using Point = std::array<double, 2>;

// Clipping noise on touching edges.
constexpr double kMinIntersectionArea = 1e-12;

double Cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

Point LineIntersection(const Point& p, const Point& q, const Point& a,
                       const Point& b) {
  // Intersection of segment pq with the infinite line through ab.
  const double cp = Cross(a, b, p);
  const double cq = Cross(a, b, q);
  const double t = cp / (cp - cq);
  return {p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])};
}

double PolygonArea(const std::vector<Point>& poly) {
  if (poly.size() < 3) return 0.0;
  double twice_area = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    twice_area += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * std::abs(twice_area);
}

// Strict weak order over boxes so that pairwise functions can evaluate in a
// canonical argument order and be exactly symmetric.
bool CanonicalLess(const OrientedBox& a, const OrientedBox& b) {
  return std::tie(a.cx, a.cy, a.cz, a.length, a.width, a.height, a.yaw) <
         std::tie(b.cx, b.cy, b.cz, b.length, b.width, b.height, b.yaw);
}

bool BoundingCirclesDisjoint(const OrientedBox& a, const OrientedBox& b) {
  const double ra = 0.5 * std::hypot(a.length, a.width);
  const double rb = 0.5 * std::hypot(b.length, b.width);
  return std::hypot(a.cx - b.cx, a.cy - b.cy) > ra + rb;
}

double ClipArea(const OrientedBox& subject, const OrientedBox& clip) {
  const auto subject_corners = FootprintCorners(subject);
  const auto clip_corners = FootprintCorners(clip);
  std::vector<Point> output(subject_corners.begin(), subject_corners.end());
  std::vector<Point> input;
  input.reserve(8);
  output.reserve(8);
  for (size_t e = 0; e < 4 && !output.empty(); ++e) {
    const Point& a = clip_corners[e];
    const Point& b = clip_corners[(e + 1) % 4];
    input.swap(output);
    output.clear();
    for (size_t i = 0; i < input.size(); ++i) {
      const Point& current = input[i];
      const Point& previous = input[(i + input.size() - 1) % input.size()];
      const bool current_inside = Cross(a, b, current) >= 0.0;
      const bool previous_inside = Cross(a, b, previous) >= 0.0;
      if (current_inside) {
        if (!previous_inside) {
          output.push_back(LineIntersection(previous, current, a, b));
        }
        output.push_back(current);
      } else if (previous_inside) {
        output.push_back(LineIntersection(previous, current, a, b));
      }
    }
  }
  return PolygonArea(output);
}

double VerticalOverlap(const OrientedBox& a, const OrientedBox& b) {
  const double top = std::min(a.cz + 0.5 * a.height, b.cz + 0.5 * b.height);
  const double bottom =
      std::max(a.cz - 0.5 * a.height, b.cz - 0.5 * b.height);
  return std::max(0.0, top - bottom);
}

double OrderedIou3d(const OrientedBox& a, const OrientedBox& b) {
  const double dz = VerticalOverlap(a, b);
  if (dz <= 0.0) return 0.0;
  const double area = FootprintIntersectionArea(a, b);
  if (area <= 0.0) return 0.0;
  const double inter = area * dz;
  const double vol_a = a.length * a.width * a.height;
  const double vol_b = b.length * b.width * b.height;
  return std::clamp(inter / (vol_a + vol_b - inter), 0.0, 1.0);
}

double OrderedBevIou(const OrientedBox& a, const OrientedBox& b) {
  const double inter = FootprintIntersectionArea(a, b);
  if (inter <= 0.0) return 0.0;
  const double area_a = a.length * a.width;
  const double area_b = b.length * b.width;
  return std::clamp(inter / (area_a + area_b - inter), 0.0, 1.0);
}

}  // namespace

double NormalizeYaw(double yaw) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(yaw, kTwoPi);
  if (wrapped > std::numbers::pi) wrapped -= kTwoPi;
  if (wrapped <= -std::numbers::pi) wrapped += kTwoPi;
  return wrapped;
}

bool IsValidBox(const OrientedBox& box) {
  const auto finite = [](double v) { return std::isfinite(v); };
  return finite(box.cx) && finite(box.cy) && finite(box.cz) &&
         finite(box.yaw) && finite(box.length) && finite(box.width) &&
         finite(box.height) && box.length > 0.0 && box.width > 0.0 &&
         box.height > 0.0;
}

OrientedBox MakeBox(double cx, double cy, double cz, double length,
                    double width, double height, double yaw) {
  OrientedBox box{cx, cy, cz, length, width, height, yaw};
  if (!IsValidBox(box)) {
    throw ConfigError("invalid box: extents must be positive and finite");
  }
  box.yaw = NormalizeYaw(yaw);
  return box;
}

std::array<std::array<double, 2>, 4> FootprintCorners(const OrientedBox& box) {
  const double c = std::cos(box.yaw);
  const double s = std::sin(box.yaw);
  const double hl = 0.5 * box.length;
  const double hw = 0.5 * box.width;
  // Local corners, CCW: (+l,+w), (-l,+w), (-l,-w), (+l,-w).
  constexpr std::array<std::array<double, 2>, 4> kSigns = {
      {{1.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0}, {1.0, -1.0}}};
  std::array<std::array<double, 2>, 4> corners{};
  for (size_t i = 0; i < 4; ++i) {
    const double lx = kSigns[i][0] * hl;
    const double ly = kSigns[i][1] * hw;
    corners[i] = {box.cx + c * lx - s * ly, box.cy + s * lx + c * ly};
  }
  return corners;
}

double FootprintIntersectionArea(const OrientedBox& a, const OrientedBox& b) {
  if (BoundingCirclesDisjoint(a, b)) return 0.0;
  const bool swap = CanonicalLess(b, a);
  const double area = swap ? ClipArea(b, a) : ClipArea(a, b);
  return area < kMinIntersectionArea ? 0.0 : area;
}

double BevIou(const OrientedBox& a, const OrientedBox& b) {
  if (a == b) return 1.0;
  return CanonicalLess(b, a) ? OrderedBevIou(b, a) : OrderedBevIou(a, b);
}

double Iou3d(const OrientedBox& a, const OrientedBox& b) {
  if (a == b) return 1.0;
  return CanonicalLess(b, a) ? OrderedIou3d(b, a) : OrderedIou3d(a, b);
}

double Similarity(SimilarityMetric metric, const OrientedBox& a,
                  const OrientedBox& b) {
  switch (metric) {
    case SimilarityMetric::kBevIou:
      return BevIou(a, b);
    case SimilarityMetric::kIou3d:
      return Iou3d(a, b);
  }
  return 0.0;
}

SimilarityMetric ParseSimilarityMetric(std::string_view name) {
  if (name == "bev-iou") return SimilarityMetric::kBevIou;
  if (name == "3d-iou") return SimilarityMetric::kIou3d;
  throw ConfigError("unknown similarity metric '" + std::string(name) +
                    "' (expected bev-iou or 3d-iou)");
}

std::string_view SimilarityMetricName(SimilarityMetric metric) {
  return metric == SimilarityMetric::kBevIou ? "bev-iou" : "3d-iou";
}

namespace {
constexpr std::array<std::pair<ObjectClass, std::string_view>, 9>
    kClassNames = {{
        {ObjectClass::kCar, "Car"},
        {ObjectClass::kVan, "Van"},
        {ObjectClass::kTruck, "Truck"},
        {ObjectClass::kPedestrian, "Pedestrian"},
        {ObjectClass::kPersonSitting, "Person_sitting"},
        {ObjectClass::kCyclist, "Cyclist"},
        {ObjectClass::kTram, "Tram"},
        {ObjectClass::kMisc, "Misc"},
        {ObjectClass::kDontCare, "DontCare"},
    }};
}  // namespace

std::optional<ObjectClass> ParseObjectClass(std::string_view name) {
  for (const auto& [cls, text] : kClassNames) {
    if (text == name) return cls;
  }
  return std::nullopt;
}

std::string_view ObjectClassName(ObjectClass cls) {
  for (const auto& [c, text] : kClassNames) {
    if (c == cls) return text;
  }
  return "Misc";
}

}  // namespace framedrop
