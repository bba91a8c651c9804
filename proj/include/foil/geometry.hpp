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
#include <string>
#include <string_view>
#include <vector>

namespace foil {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// NACA 4-digit design parameters, all as chord fractions.
struct AirfoilParams {
    double m = 0.0;  ///< max camber (digit M / 100)
    double p = 0.0;  ///< chordwise position of max camber (digit P / 10)
    double t = 0.0;  ///< max thickness (digits XX / 100)
    std::string code;

    bool symmetric() const { return m == 0.0; }
};

/// Parse an "MPXX" code. Throws ParseError naming the offending field.
AirfoilParams parse_naca_code(std::string_view code);

/// Inverse of parse_naca_code for parameters on the digit lattice.
std::string format_naca_code(const AirfoilParams& params);

/// Half thickness of the closed-trailing-edge 4-digit section.
double half_thickness(double x, double t);

struct CamberPoint {
    double y = 0.0;
    double slope = 0.0;
};

CamberPoint camber_line(double x, const AirfoilParams& params);

/// Closed airfoil outline in chord units. Starts at the leading edge, runs
/// over the upper surface to the trailing edge and back along the lower
/// surface; the final vertex repeats the first.
class Polyline {
public:
    Polyline() = default;
    explicit Polyline(std::vector<Vec2> vertices);

    std::span<const Vec2> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    std::size_t segment_count() const { return vertices_.empty() ? 0 : vertices_.size() - 1; }
    Vec2 operator[](std::size_t i) const { return vertices_[i]; }

    double perimeter() const;

private:
    std::vector<Vec2> vertices_;
};

/// Cosine-spaced surface with n_per_side stations per side (2n+1 vertices).
Polyline surface_polyline(const AirfoilParams& params, int n_per_side);

/// Rigid rotation by angle_deg (positive = nose up) about pivot.
Polyline rotated(const Polyline& poly, double angle_deg, Vec2 pivot = {0.25, 0.0});

/// Cosine station x_i = (1 - cos(pi i / n)) / 2.
double cosine_station(int i, int n);

}  // namespace foil
