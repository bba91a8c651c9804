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

#include "foil/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "foil/error.hpp"

namespace foil {

AirfoilParams parse_naca_code(std::string_view code) {
    if (code.size() != 4) {
        throw ParseError("code", "wrong length (expected 4 digits, got " +
                                     std::to_string(code.size()) + ")");
    }
    static constexpr const char* kFields[] = {"M", "P", "XX", "XX"};
    int digits[4];
    for (int i = 0; i < 4; ++i) {
        const char c = code[static_cast<std::size_t>(i)];
        if (c < '0' || c > '9') throw ParseError(kFields[i], "non-digit character '" + std::string(1, c) + "'");
        digits[i] = c - '0';
    }
    const int xx = 10 * digits[2] + digits[3];
    if (xx == 0) throw ParseError("XX", "zero thickness");
    if (xx > 40) throw ParseError("XX", "thickness above 40% chord");
    if (digits[0] > 0 && digits[1] == 0) {
        throw ParseError("P", "cambered section needs a nonzero camber position");
    }
    AirfoilParams params;
    params.m = digits[0] / 100.0;
    params.p = digits[1] / 10.0;
    params.t = xx / 100.0;
    params.code = std::string(code);
    return params;
}

std::string format_naca_code(const AirfoilParams& params) {
    const long m = std::lround(params.m * 100.0);
    const long p = std::lround(params.p * 10.0);
    const long xx = std::lround(params.t * 100.0);
    std::string out(4, '0');
    out[0] = static_cast<char>('0' + m);
    out[1] = static_cast<char>('0' + p);
    out[2] = static_cast<char>('0' + xx / 10);
    out[3] = static_cast<char>('0' + xx % 10);
    return out;
}

double half_thickness(double x, double t) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("half_thickness: x outside [0, 1]");
    // closed trailing edge; clamp the rounding residue at x = 1
    const double y = 5.0 * t *
                     (0.2969 * std::sqrt(x) - 0.1260 * x - 0.3516 * x * x + 0.2843 * x * x * x -
                      0.1036 * x * x * x * x);
    return std::max(y, 0.0);
}

CamberPoint camber_line(double x, const AirfoilParams& params) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("camber_line: x outside [0, 1]");
    const double m = params.m;
    const double p = params.p;
    if (m == 0.0) return {};
    if (x < p) {
        return {m / (p * p) * (2.0 * p * x - x * x), 2.0 * m / (p * p) * (p - x)};
    }
    const double q = 1.0 - p;
    return {m / (q * q) * ((1.0 - 2.0 * p) + 2.0 * p * x - x * x), 2.0 * m / (q * q) * (p - x)};
}

Polyline::Polyline(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {}

double Polyline::perimeter() const {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
        total += std::hypot(vertices_[i + 1].x - vertices_[i].x, vertices_[i + 1].y - vertices_[i].y);
    }
    return total;
}

double cosine_station(int i, int n) {
    if (i == 0) return 0.0;
    if (i == n) return 1.0;
    return 0.5 * (1.0 - std::cos(std::numbers::pi * i / n));
}

Polyline surface_polyline(const AirfoilParams& params, int n_per_side) {
    if (n_per_side < 4) throw DomainError("surface_polyline: n_per_side must be >= 4");
    const int n = n_per_side;
    std::vector<Vec2> upper(static_cast<std::size_t>(n) + 1);
    std::vector<Vec2> lower(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double x = cosine_station(i, n);
        const double yt = half_thickness(x, params.t);
        const auto [yc, slope] = camber_line(x, params);
        const double theta = std::atan(slope);
        const double s = std::sin(theta);
        const double c = std::cos(theta);
        upper[static_cast<std::size_t>(i)] = {x - yt * s, yc + yt * c};
        lower[static_cast<std::size_t>(i)] = {x + yt * s, yc - yt * c};
    }
    std::vector<Vec2> verts;
    verts.reserve(2 * static_cast<std::size_t>(n) + 1);
    verts.insert(verts.end(), upper.begin(), upper.end());
    for (int i = n - 1; i >= 0; --i) verts.push_back(lower[static_cast<std::size_t>(i)]);
    return Polyline(std::move(verts));
}

Polyline rotated(const Polyline& poly, double angle_deg, Vec2 pivot) {
    if (angle_deg == 0.0) return poly;
    // Nose up means a clockwise rotation in the x-y plane.
    const double a = -angle_deg * std::numbers::pi / 180.0;
    const double c = std::cos(a);
    const double s = std::sin(a);
    std::vector<Vec2> out;
    out.reserve(poly.size());
    for (const Vec2 v : poly.vertices()) {
        const Vec2 d = v - pivot;
        out.push_back({pivot.x + c * d.x - s * d.y, pivot.y + s * d.x + c * d.y});
    }
    out.back() = out.front();
    return Polyline(std::move(out));
}

}  // namespace foil
