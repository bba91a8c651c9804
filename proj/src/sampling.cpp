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

#include "foil/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include "foil/error.hpp"
#include "foil/rng.hpp"

namespace foil {

namespace {

constexpr std::uint64_t kInteriorStream = 1;
constexpr std::uint64_t kSurfaceStream = 2;
constexpr std::uint64_t kInletStream = 3;
constexpr std::uint64_t kOutletStream = 4;
constexpr std::uint64_t kSideStream = 5;

// Per-point attempt budget; total rejections are therefore capped at 1e4 * n.
constexpr std::uint64_t kMaxAttempts = 10000;

struct Box {
    double xmin, xmax, ymin, ymax;
};

Box bounding_box(const Polyline& poly) {
    Box b{poly[0].x, poly[0].x, poly[0].y, poly[0].y};
    for (const Vec2 v : poly.vertices()) {
        b.xmin = std::min(b.xmin, v.x);
        b.xmax = std::max(b.xmax, v.x);
        b.ymin = std::min(b.ymin, v.y);
        b.ymax = std::max(b.ymax, v.y);
    }
    return b;
}

}  // namespace

void Domain::validate_against(const Polyline& poly) const {
    const Box b = bounding_box(poly);
    constexpr double kMargin = 0.5;
    if (!(x_min <= b.xmin - kMargin && x_max >= b.xmax + kMargin && y_min <= b.ymin - kMargin &&
          y_max >= b.ymax + kMargin)) {
        throw DomainError("domain must contain the airfoil with a margin of 0.5 chord");
    }
}

std::string_view to_string(PointRole role) {
    switch (role) {
        case PointRole::interior: return "interior";
        case PointRole::surface: return "surface";
        case PointRole::inlet: return "inlet";
        case PointRole::outlet: return "outlet";
        case PointRole::side: return "side";
    }
    return "interior";
}

PointRole parse_point_role(std::string_view text) {
    for (PointRole r : {PointRole::interior, PointRole::surface, PointRole::inlet,
                        PointRole::outlet, PointRole::side}) {
        if (to_string(r) == text) return r;
    }
    throw ParseError("role", "unknown point role '" + std::string(text) + "'");
}

InteriorSamples sample_interior(const Domain& domain, const SegmentSet& segments, int n,
                                double near_fraction, double near_band, std::uint64_t seed) {
    if (n < 1) throw ContractError("sample_interior: n must be >= 1");
    if (!(near_band > 0.0)) throw ContractError("sample_interior: near_band must be > 0");
    if (!(near_fraction >= 0.0 && near_fraction <= 1.0)) {
        throw ContractError("sample_interior: near_fraction must lie in [0, 1]");
    }
    const int n_near = static_cast<int>(std::ceil(near_fraction * n - 1e-9));
    const int n_wake = static_cast<int>(std::ceil(0.6 * n_near - 1e-9));

    // The section's bounding box inflated by the band, clipped to the domain.
    const auto b = segments.bounds();
    const double xlo = std::max(domain.x_min, b.xmin - near_band);
    const double xhi = std::min(domain.x_max, b.xmax + near_band);
    const double ylo = std::max(domain.y_min, b.ymin - near_band);
    const double yhi = std::min(domain.y_max, b.ymax + near_band);

    const CounterRng rng = CounterRng(seed, kInteriorStream);
    InteriorSamples out;
    out.points.resize(static_cast<std::size_t>(n));
    out.sdf.resize(static_cast<std::size_t>(n));
    std::atomic<bool> failed{false};

#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const CounterRng r = rng.substream(static_cast<std::uint64_t>(i));
        const bool near = i < n_near;
        const bool wake = i < n_wake;
        bool placed = false;
        for (std::uint64_t attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
            Vec2 p;
            if (near) {
                p.x = wake ? r.uniform(2 * attempt, 0.5, xhi) : r.uniform(2 * attempt, xlo, 0.5);
                p.y = r.uniform(2 * attempt + 1, ylo, yhi);
            } else {
                p.x = r.uniform(2 * attempt, domain.x_min, domain.x_max);
                p.y = r.uniform(2 * attempt + 1, domain.y_min, domain.y_max);
            }
            const double d = segments.signed_distance(p);
            if (d > 0.0 && (!near || d < near_band)) {
                out.points[static_cast<std::size_t>(i)] = p;
                out.sdf[static_cast<std::size_t>(i)] = d;
                placed = true;
            }
        }
        if (!placed) failed = true;
    }
    if (failed) {
        throw SamplingError("sample_interior: rejection budget exhausted (degenerate geometry?)");
    }
    return out;
}

InteriorSamples sample_interior(const Domain& domain, const Polyline& poly, int n,
                                double near_fraction, double near_band, std::uint64_t seed) {
    return sample_interior(domain, SegmentSet(poly), n, near_fraction, near_band, seed);
}

std::vector<Vec2> sample_surface(const Polyline& poly, int n, std::uint64_t seed, bool midpoints) {
    if (n < 8) throw ContractError("sample_surface: n must be >= 8");
    const auto verts = poly.vertices();
    std::vector<double> cumulative(verts.size(), 0.0);
    for (std::size_t i = 1; i < verts.size(); ++i) {
        cumulative[i] = cumulative[i - 1] + std::hypot(verts[i].x - verts[i - 1].x,
                                                       verts[i].y - verts[i - 1].y);
    }
    const double total = cumulative.back();
    const double stratum = total / n;
    const CounterRng rng(seed, kSurfaceStream);

    auto point_at = [&](double s) {
        // Walk backwards for s > total / 2 so mirror-image arc positions on a
        // symmetric section are resolved with mirrored arithmetic.
        s = std::fmod(s + total, total);
        if (s <= 0.5 * total) {
            const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), s);
            const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()),
                                                         verts.size() - 1);
            const std::size_t j = k - 1;
            const double len = cumulative[k] - cumulative[j];
            const double t = len > 0.0 ? (s - cumulative[j]) / len : 0.0;
            return verts[j] + t * (verts[k] - verts[j]);
        }
        const double back = total - s;
        std::size_t j = verts.size() - 1;
        double acc = 0.0;
        while (j > 0) {
            const double len = cumulative[j] - cumulative[j - 1];
            if (acc + len >= back) {
                const double t = len > 0.0 ? (back - acc) / len : 0.0;
                return verts[j] + t * (verts[j - 1] - verts[j]);
            }
            acc += len;
            --j;
        }
        return verts[0];
    };

    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double jitter = (midpoints || j == 0) ? 0.0 : rng.uniform(static_cast<std::uint64_t>(j)) - 0.5;
        out.push_back(point_at((j + jitter) * stratum));
    }
    return out;
}

ZoneMasks zone_split(std::span<const double> sdf, double threshold) {
    if (!(threshold > 0.0)) throw ContractError("zone_split: threshold must be > 0");
    ZoneMasks masks;
    masks.near.resize(sdf.size());
    masks.far.resize(sdf.size());
    for (std::size_t i = 0; i < sdf.size(); ++i) {
        masks.near[i] = sdf[i] >= 0.0 && sdf[i] < threshold;
        masks.far[i] = sdf[i] >= threshold;
    }
    return masks;
}

std::vector<Vec2> sample_inlet(const Domain& domain, int n, std::uint64_t seed) {
    const CounterRng rng(seed, kInletStream);
    std::vector<Vec2> out;
    for (int i = 0; i < n; ++i) {
        out.push_back({domain.x_min, rng.uniform(static_cast<std::uint64_t>(i), domain.y_min, domain.y_max)});
    }
    return out;
}

std::vector<Vec2> sample_outlet(const Domain& domain, int n, std::uint64_t seed) {
    const CounterRng rng(seed, kOutletStream);
    std::vector<Vec2> out;
    for (int i = 0; i < n; ++i) {
        out.push_back({domain.x_max, rng.uniform(static_cast<std::uint64_t>(i), domain.y_min, domain.y_max)});
    }
    return out;
}

std::vector<Vec2> sample_sides(const Domain& domain, int n, std::uint64_t seed) {
    const CounterRng rng(seed, kSideStream);
    std::vector<Vec2> out;
    for (int i = 0; i < n; ++i) {
        const double x = rng.uniform(static_cast<std::uint64_t>(i), domain.x_min, domain.x_max);
        out.push_back({x, i % 2 == 0 ? domain.y_min : domain.y_max});
    }
    return out;
}

CollocationSet build_collocation(const Domain& domain, const Polyline& poly,
                                 const CollocationConfig& config, std::uint64_t seed) {
    domain.validate_against(poly);
    const SegmentSet segments(poly);
    CollocationSet set;
    set.seed = seed;
    auto interior = sample_interior(domain, segments, config.interior_n, config.near_fraction,
                                    config.near_band, seed);
    set.interior = std::move(interior.points);
    set.interior_sdf = std::move(interior.sdf);
    const int nb = config.boundary_n > 0 ? config.boundary_n : std::max(8, config.interior_n / 10);
    set.surface = sample_surface(poly, nb, seed);
    set.inlet = sample_inlet(domain, nb, seed);
    set.outlet = sample_outlet(domain, nb, seed);
    set.sides = sample_sides(domain, nb, seed);
    return set;
}

}  // namespace foil
