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

#include <doctest.h>

#include <cmath>
#include <string>

#include "foil/error.hpp"
#include "foil/geometry.hpp"
#include "oracles.hpp"

using namespace foil;

namespace {

bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    auto orient = [](Vec2 p, Vec2 q, Vec2 r) { return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x); };
    const double o1 = orient(a, b, c);
    const double o2 = orient(a, b, d);
    const double o3 = orient(c, d, a);
    const double o4 = orient(c, d, b);
    return o1 * o2 < 0.0 && o3 * o4 < 0.0;
}

std::string code_of(int m, int p, int xx) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%d%d%02d", m, p, xx);
    return buf;
}

}  // namespace

TEST_CASE("parse_naca_code follows the MPXX convention") {
    const AirfoilParams a = parse_naca_code("2412");
    CHECK(a.m == doctest::Approx(0.02).epsilon(1e-15));
    CHECK(a.p == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(a.t == doctest::Approx(0.12).epsilon(1e-15));
    CHECK(a.code == "2412");

    const AirfoilParams s = parse_naca_code("0012");
    CHECK(s.m == 0.0);
    CHECK(s.p == 0.0);
    CHECK(s.t == doctest::Approx(0.12));
    CHECK(s.symmetric());
}

TEST_CASE("parse_naca_code rejects malformed codes naming the field") {
    auto field_of = [](const char* code) {
        try {
            parse_naca_code(code);
        } catch (const ParseError& e) {
            return e.field();
        }
        return std::string("<accepted>");
    };
    CHECK_THROWS_AS(parse_naca_code("24"), ParseError);
    CHECK_THROWS_AS(parse_naca_code("24120"), ParseError);
    CHECK_THROWS_AS(parse_naca_code("24a2"), ParseError);
    CHECK_THROWS_AS(parse_naca_code("0000"), ParseError);
    CHECK(field_of("0000") == "XX");
    CHECK(field_of("2012") == "P");
    CHECK(field_of("0041") == "XX");
    CHECK(field_of("24") != "<accepted>");
}

TEST_CASE("format_naca_code round-trips every lattice code") {
    for (int m = 0; m <= 9; ++m) {
        for (int p = (m == 0 ? 0 : 1); p <= 9; ++p) {
            for (int xx : {1, 6, 12, 18, 21, 40}) {
                const std::string code = code_of(m, p, xx);
                CHECK(format_naca_code(parse_naca_code(code)) == code);
            }
        }
    }
}

TEST_CASE("half_thickness endpoints, peak and linearity") {
    CHECK(half_thickness(0.0, 0.12) == 0.0);
    CHECK(std::abs(half_thickness(1.0, 0.12)) <= 1e-12);
    const auto [arg, peak] = oracle::thickness_grid_max(0.12, 100000);
    CHECK(std::abs(peak - 0.06) <= 1e-3);
    CHECK(std::abs(arg - 0.30) <= 0.02);
    for (int i = 0; i <= 200; ++i) {
        const double x = i / 200.0;
        CHECK(half_thickness(x, 0.24) == doctest::Approx(2.0 * half_thickness(x, 0.12)).epsilon(1e-14));
        CHECK(half_thickness(x, 0.12) == doctest::Approx(oracle::naca_thickness(x, 0.12)).epsilon(1e-13));
        CHECK(half_thickness(x, 0.12) >= 0.0);
    }
    CHECK_THROWS_AS(half_thickness(-0.01, 0.12), DomainError);
    CHECK_THROWS_AS(half_thickness(1.01, 0.12), DomainError);
}

TEST_CASE("camber_line values, continuity and slope") {
    const AirfoilParams sym = parse_naca_code("0012");
    for (double x : {0.0, 0.3, 0.77, 1.0}) {
        CHECK(camber_line(x, sym).y == 0.0);
        CHECK(camber_line(x, sym).slope == 0.0);
    }
    const AirfoilParams a = parse_naca_code("2412");
    CHECK(camber_line(0.4, a).y == doctest::Approx(0.02).epsilon(1e-14));
    CHECK(camber_line(0.1, a).y == doctest::Approx(oracle::naca_camber(0.1, 0.02, 0.4)).epsilon(1e-14));
    // Continuity and C1 at x = p.
    const double h = 1e-9;
    CHECK(std::abs(camber_line(0.4 - h, a).y - camber_line(0.4 + h, a).y) < 1e-10);
    CHECK(std::abs(camber_line(0.4 - h, a).slope - camber_line(0.4 + h, a).slope) < 1e-8);
    for (const char* code : {"2412", "4415", "6409", "9912"}) {
        const AirfoilParams q = parse_naca_code(code);
        for (int i = 1; i < 100; ++i) {
            const double x = i / 100.0;
            if (std::abs(x - q.p) < 0.02) continue;
            const double fd = (camber_line(x + 1e-6, q).y - camber_line(x - 1e-6, q).y) / 2e-6;
            CHECK(std::abs(fd - camber_line(x, q).slope) <= 1e-6);
            CHECK(camber_line(x, q).y == doctest::Approx(oracle::naca_camber(x, q.m, q.p)).epsilon(1e-13));
        }
    }
}

TEST_CASE("surface_polyline: closed, cosine stations, symmetric for 00XX") {
    const Polyline poly = surface_polyline(parse_naca_code("0012"), 100);
    REQUIRE(poly.size() == 201);
    CHECK(std::abs(poly[0].x - poly[200].x) <= 1e-12);
    CHECK(std::abs(poly[0].y - poly[200].y) <= 1e-12);
    double ymax = 0.0;
    for (std::size_t i = 0; i <= 100; ++i) {
        const Vec2 up = poly[i];
        const Vec2 lo = poly[200 - i];
        CHECK(up.x == lo.x);
        CHECK(up.y == -lo.y);
        CHECK(up.x == doctest::Approx(cosine_station(static_cast<int>(i), 100)).epsilon(1e-14));
        ymax = std::max(ymax, std::abs(up.y));
    }
    CHECK(std::abs(ymax - oracle::thickness_grid_max(0.12, 100000).second) <= 2e-3);
    CHECK(std::abs(ymax - 0.06) <= 2e-3);
    CHECK_THROWS_AS(surface_polyline(parse_naca_code("0012"), 3), DomainError);
}

TEST_CASE("surface_polyline: upper above lower, perpendicular thickness") {
    const AirfoilParams a = parse_naca_code("2412");
    const Polyline poly = surface_polyline(a, 100);
    for (std::size_t i = 0; i <= 100; ++i) {
        CHECK(poly[i].y >= poly[200 - i].y);
        // Upper and lower vertices of a station are mirror images about the
        // camber point, offset along the camber normal.
        const double x = cosine_station(static_cast<int>(i), 100);
        const CamberPoint c = camber_line(x, a);
        const double th = std::atan(c.slope);
        const double yt = oracle::naca_thickness(x, a.t);
        CHECK(poly[i].x == doctest::Approx(x - yt * std::sin(th)).epsilon(1e-12));
        CHECK(poly[i].y == doctest::Approx(c.y + yt * std::cos(th)).epsilon(1e-12));
    }
}

TEST_CASE("surface_polyline is simple and inside the unit box for all codes") {
    for (int m : {0, 2, 4, 6, 9}) {
        for (int p : {1, 4, 9}) {
            for (int xx : {1, 12, 24, 40}) {
                const std::string code = code_of(m, m == 0 ? 0 : p, xx);
                const Polyline poly = surface_polyline(parse_naca_code(code), 40);
                const auto v = poly.vertices();
                for (const Vec2 q : v) {
                    CHECK(q.x >= -0.1);
                    CHECK(q.x <= 1.01);
                    CHECK(std::abs(q.y) <= 0.5);
                }
                bool simple = true;
                for (std::size_t i = 0; i + 1 < v.size(); ++i) {
                    for (std::size_t j = i + 2; j + 1 < v.size(); ++j) {
                        if (i == 0 && j + 2 == v.size()) continue;
                        if (segments_cross(v[i], v[i + 1], v[j], v[j + 1])) simple = false;
                    }
                }
                CHECK_MESSAGE(simple, code);
            }
        }
    }
}

TEST_CASE("rotated: rigid, nose up for positive angles") {
    const Polyline poly = surface_polyline(parse_naca_code("2412"), 50);
    const Polyline same = rotated(poly, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) CHECK(same[i] == poly[i]);
    const Polyline up = rotated(poly, 10.0);
    CHECK(up[0].y > 0.0);
    CHECK(up.perimeter() == doctest::Approx(poly.perimeter()).epsilon(1e-12));
    const Polyline back = rotated(up, -10.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
        CHECK(back[i].x == doctest::Approx(poly[i].x).epsilon(1e-12));
        CHECK(std::abs(back[i].y - poly[i].y) < 1e-14);
    }
}
