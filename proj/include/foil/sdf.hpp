// Copyright 2026 The foil-pinn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <vector>

#include "foil/geometry.hpp"

namespace foil {

/// Exact Euclidean distance from p to the closed segment [a, b].
double distance_to_segment(Vec2 p, Vec2 a, Vec2 b);

/// Signed distances to an airfoil polyline: positive in the flow, zero on the
/// surface, negative inside the section.
struct SdfField {
    std::vector<Vec2> points;
    std::vector<double> values;
};

/// Flat segment list with per-segment bounding boxes. Immutable after
/// construction, so one instance can be queried from many threads.
class SegmentSet {
public:
    explicit SegmentSet(const Polyline& poly);

    double distance(Vec2 p) const;
    /// Even-odd ray crossing; points on an edge count as inside.
    bool contains(Vec2 p) const;
    double signed_distance(Vec2 p) const;

    std::size_t size() const { return segments_.size(); }

    struct Bounds {
        double xmin, xmax, ymin, ymax;
    };
    Bounds bounds() const { return {xmin_, xmax_, ymin_, ymax_}; }

private:
    struct Segment {
        Vec2 a, b;
        double xmin, xmax, ymin, ymax;
    };
    bool crossing_parity(Vec2 p) const;

    std::vector<Segment> segments_;
    double xmin_, xmax_, ymin_, ymax_;
};

double distance_to_polyline(Vec2 p, const Polyline& poly);
bool contains(Vec2 p, const Polyline& poly);
double signed_distance(Vec2 p, const Polyline& poly);

/// Element-wise signed distance, parallel over points; output order matches
/// the input regardless of thread count.
SdfField sdf_field(std::span<const Vec2> points, const Polyline& poly);

namespace reference {

/// Serial O(points x segments) scan with no early-outs. Test and benchmark
/// baseline for sdf_field.
SdfField sdf_field_serial(std::span<const Vec2> points, const Polyline& poly);

}  // namespace reference

}  // namespace foil
