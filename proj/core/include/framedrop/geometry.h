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

#ifndef FRAMEDROP_GEOMETRY_H_
#define FRAMEDROP_GEOMETRY_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace framedrop {

// Ground-plane frame: x forward, y left, z up (right-handed). Boxes are
// center-anchored; the vertical extent is [cz - height/2, cz + height/2].
// `length` runs along the heading given by `yaw`, `width` across it.
struct OrientedBox {
  double cx = 0.0;
  double cy = 0.0;
  double cz = 0.0;
  double length = 1.0;
  double width = 1.0;
  double height = 1.0;
  double yaw = 0.0;

  friend bool operator==(const OrientedBox&, const OrientedBox&) = default;
};

// Maps any finite angle into (-pi, pi].
double NormalizeYaw(double yaw);

// True if all extents are strictly positive and every field is finite.
bool IsValidBox(const OrientedBox& box);

// Returns `box` with its yaw normalized. Throws ConfigError if the box has
// a non-positive or non-finite extent.
OrientedBox MakeBox(double cx, double cy, double cz, double length,
                    double width, double height, double yaw);

// Footprint corners in counter-clockwise order.
std::array<std::array<double, 2>, 4> FootprintCorners(const OrientedBox& box);

// Intersection-over-union of the yaw-rotated footprint rectangles.
double BevIou(const OrientedBox& a, const OrientedBox& b);

// Footprint intersection times vertical overlap, over the union of volumes.
double Iou3d(const OrientedBox& a, const OrientedBox& b);

// Footprint intersection area in m^2 (Sutherland-Hodgman clipping).
double FootprintIntersectionArea(const OrientedBox& a, const OrientedBox& b);

enum class SimilarityMetric { kBevIou, kIou3d };

double Similarity(SimilarityMetric metric, const OrientedBox& a,
                  const OrientedBox& b);

// "bev-iou" or "3d-iou".
SimilarityMetric ParseSimilarityMetric(std::string_view name);
std::string_view SimilarityMetricName(SimilarityMetric metric);

enum class ObjectClass : std::uint8_t {
  kCar,
  kVan,
  kTruck,
  kPedestrian,
  kPersonSitting,
  kCyclist,
  kTram,
  kMisc,
  kDontCare,
};

// KITTI type strings ("Car", "Person_sitting", ...). Unknown names yield
// nullopt.
std::optional<ObjectClass> ParseObjectClass(std::string_view name);
std::string_view ObjectClassName(ObjectClass cls);

struct Detection {
  OrientedBox box;
  double score = 1.0;
  ObjectClass class_label = ObjectClass::kCar;

  friend bool operator==(const Detection&, const Detection&) = default;
};

struct LabeledObject {
  int frame_index = 0;
  int track_id = 0;
  OrientedBox box;
  ObjectClass class_label = ObjectClass::kCar;

  friend bool operator==(const LabeledObject&, const LabeledObject&) = default;
};

}  // namespace framedrop

#endif  // FRAMEDROP_GEOMETRY_H_
