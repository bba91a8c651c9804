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

#include <cstdint>
#include <string_view>
#include <vector>

#include "foil/geometry.hpp"
#include "foil/sdf.hpp"

namespace foil {

/// Rectangular flow domain in chord units.
struct Domain {
    double x_min = -2.0;
    double x_max = 4.0;
    double y_min = -2.0;
    double y_max = 2.0;

    /// Throws DomainError unless the box clears the airfoil by >= 0.5 chord.
    void validate_against(const Polyline& poly) const;
};

enum class PointRole { interior, surface, inlet, outlet, side };

std::string_view to_string(PointRole role);
PointRole parse_point_role(std::string_view text);

struct InteriorSamples {
    std::vector<Vec2> points;
    std::vector<double> sdf;
};

/// n exterior points (sdf > 0), of which at least ceil(near_fraction * n)
/// lie in the band 0 < sdf < near_band. 60% of the band points are drawn
/// aft of mid-chord to populate the wake.
InteriorSamples sample_interior(const Domain& domain, const SegmentSet& segments, int n,
                                double near_fraction, double near_band, std::uint64_t seed);
InteriorSamples sample_interior(const Domain& domain, const Polyline& poly, int n,
                                double near_fraction, double near_band, std::uint64_t seed);

/// Arc-length stratified surface points. Strata are centred on the
/// perimeter stations s_j = j L / n, so the first stratum sits on the
/// leading edge. The leading-edge sample is always pinned at s = 0; the
/// other samples are jittered inside their stratum unless `midpoints`.
std::vector<Vec2> sample_surface(const Polyline& poly, int n, std::uint64_t seed,
                                 bool midpoints = false);

struct ZoneMasks {
    std::vector<bool> near;
    std::vector<bool> far;
};

/// near <=> 0 <= sdf < threshold; far <=> sdf >= threshold. Negative sdf
/// (interior) is in neither zone.
ZoneMasks zone_split(std::span<const double> sdf, double threshold);

struct CollocationSet {
    std::vector<Vec2> interior;
    std::vector<double> interior_sdf;
    std::vector<Vec2> surface;
    std::vector<Vec2> inlet;
    std::vector<Vec2> outlet;
    std::vector<Vec2> sides;
    std::uint64_t seed = 0;
};

struct CollocationConfig {
    int interior_n = 5000;
    double near_fraction = 0.4;
    double near_band = 0.1;
    /// Per-boundary count; <= 0 selects interior_n / 10.
    int boundary_n = 0;
};

CollocationSet build_collocation(const Domain& domain, const Polyline& poly,
                                 const CollocationConfig& config, std::uint64_t seed);

// Boundary samplers, uniform along each edge of the domain box.
std::vector<Vec2> sample_inlet(const Domain& domain, int n, std::uint64_t seed);
std::vector<Vec2> sample_outlet(const Domain& domain, int n, std::uint64_t seed);
/// Alternates between the bottom (even index) and top (odd index) walls.
std::vector<Vec2> sample_sides(const Domain& domain, int n, std::uint64_t seed);

}  // namespace foil
