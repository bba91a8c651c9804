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

#include "foil/sdf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "foil/error.hpp"

namespace foil {

namespace {

double squared_distance_to_segment(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const Vec2 ap = p - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? dot(ap, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const Vec2 d = p - (a + t * ab);
    return dot(d, d);
}

double squared_distance_to_box(Vec2 p, double xmin, double xmax, double ymin, double ymax) {
    const double dx = std::max({xmin - p.x, 0.0, p.x - xmax});
    const double dy = std::max({ymin - p.y, 0.0, p.y - ymax});
    return dx * dx + dy * dy;
}

}  // namespace

double distance_to_segment(Vec2 p, Vec2 a, Vec2 b) {
    return std::sqrt(squared_distance_to_segment(p, a, b));
}

SegmentSet::SegmentSet(const Polyline& poly) {
    if (poly.size() < 2) throw ContractError("SegmentSet: polyline needs at least 2 vertices");
    xmin_ = ymin_ = std::numeric_limits<double>::infinity();
    xmax_ = ymax_ = -std::numeric_limits<double>::infinity();
    segments_.reserve(poly.segment_count());
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[i + 1];
        segments_.push_back({a, b, std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y),
                             std::max(a.y, b.y)});
        xmin_ = std::min(xmin_, segments_.back().xmin);
        xmax_ = std::max(xmax_, segments_.back().xmax);
        ymin_ = std::min(ymin_, segments_.back().ymin);
        ymax_ = std::max(ymax_, segments_.back().ymax);
    }
}

double SegmentSet::distance(Vec2 p) const {
    double best = std::numeric_limits<double>::infinity();
    for (const Segment& s : segments_) {
        if (squared_distance_to_box(p, s.xmin, s.xmax, s.ymin, s.ymax) >= best) continue;
        best = std::min(best, squared_distance_to_segment(p, s.a, s.b));
    }
    return std::sqrt(best);
}

bool SegmentSet::crossing_parity(Vec2 p) const {
    if (p.x < xmin_ || p.x > xmax_ || p.y < ymin_ || p.y > ymax_) return false;
    bool inside = false;
    for (const Segment& s : segments_) {
        if ((s.a.y > p.y) != (s.b.y > p.y)) {
            const double x_cross = s.a.x + (p.y - s.a.y) * (s.b.x - s.a.x) / (s.b.y - s.a.y);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

bool SegmentSet::contains(Vec2 p) const {
    if (distance(p) == 0.0) return true;
    return crossing_parity(p);
}

double SegmentSet::signed_distance(Vec2 p) const {
    const double d = distance(p);
    if (d == 0.0) return 0.0;
    return crossing_parity(p) ? -d : d;
}

double distance_to_polyline(Vec2 p, const Polyline& poly) { return SegmentSet(poly).distance(p); }

bool contains(Vec2 p, const Polyline& poly) { return SegmentSet(poly).contains(p); }

double signed_distance(Vec2 p, const Polyline& poly) { return SegmentSet(poly).signed_distance(p); }

SdfField sdf_field(std::span<const Vec2> points, const Polyline& poly) {
    if (points.empty()) throw ContractError("sdf_field: empty point list");
    const SegmentSet segments(poly);
    SdfField field;
    field.points.assign(points.begin(), points.end());
    field.values.resize(points.size());
    const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        field.values[static_cast<std::size_t>(i)] = segments.signed_distance(points[static_cast<std::size_t>(i)]);
    }
    return field;
}

namespace reference {

SdfField sdf_field_serial(std::span<const Vec2> points, const Polyline& poly) {
    if (points.empty()) throw ContractError("sdf_field: empty point list");
    SdfField field;
    field.points.assign(points.begin(), points.end());
    field.values.reserve(points.size());
    const auto verts = poly.vertices();
    for (const Vec2 p : points) {
        double best = std::numeric_limits<double>::infinity();
        bool inside = false;
        for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
            const Vec2 a = verts[i];
            const Vec2 b = verts[i + 1];
            best = std::min(best, squared_distance_to_segment(p, a, b));
            if ((a.y > p.y) != (b.y > p.y) &&
                p.x < a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)) {
                inside = !inside;
            }
        }
        const double d = std::sqrt(best);
        field.values.push_back(d == 0.0 ? 0.0 : (inside ? -d : d));
    }
    return field;
}

}  // namespace reference

}  // namespace foil
