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

#include "foil/data.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>

#include "foil/error.hpp"
#include "foil/io.hpp"
#include "foil/rng.hpp"
#include "foil/sdf.hpp"

namespace foil {

namespace {

constexpr int kCaseStations = 200;

}  // namespace

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::cfd: return "cfd";
        case Provenance::synthetic: return "synthetic";
        case Provenance::manufactured: return "manufactured";
    }
    return "cfd";
}

Provenance parse_provenance(std::string_view text) {
    if (text == "cfd") return Provenance::cfd;
    if (text == "synthetic") return Provenance::synthetic;
    if (text == "manufactured") return Provenance::manufactured;
    throw ParseError("provenance", "unknown provenance '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// CSV case files

CaseDataset load_case_csv(const std::filesystem::path& path, std::optional<std::string> naca_code,
                          std::optional<double> u_in) {
    const CsvTable table = read_csv(path);
    ArtifactHeader header;
    for (const auto& c : table.comments) {
        header = parse_artifact_header(c);
        if (header.kind == "case") break;
    }
    if (!header.kind.empty() && header.kind != "case") header = {};
    if (header.kind == "case" && header.version != 1) {
        throw LoadError("unsupported case file version " + std::to_string(header.version));
    }

    CaseDataset data;
    if (naca_code) {
        data.naca_code = *naca_code;
    } else if (header.fields.count("naca")) {
        data.naca_code = header.fields.at("naca");
    } else {
        throw LoadError("case file names no airfoil (header naca=... or an explicit code is required)");
    }
    if (u_in) {
        data.u_in = *u_in;
    } else if (header.fields.count("u_in")) {
        if (!parse_double(header.fields.at("u_in"), data.u_in)) throw LoadError("header u_in is not a number");
    } else {
        throw LoadError("case file has no inlet speed (header u_in=... or an explicit value is required)");
    }
    if (!(data.u_in > 0.0)) throw LoadError("inlet speed must be positive");
    if (header.fields.count("provenance")) data.provenance = parse_provenance(header.fields.at("provenance"));
    data.extrapolation = data.u_in < kMinInletSpeed || data.u_in > kMaxInletSpeed;

    const AirfoilParams airfoil = parse_naca_code(data.naca_code);
    const SegmentSet segments(surface_polyline(airfoil, kCaseStations));

    const char* required[] = {"x", "y", "u", "v", "p"};
    int idx[5];
    for (int i = 0; i < 5; ++i) {
        idx[i] = table.column(required[i]);
        if (idx[i] < 0) throw LoadError(std::string("missing required column '") + required[i] + "'");
    }
    const int ik = table.column("k");
    const int ie = table.column("eps");
    if ((ik < 0) != (ie < 0)) throw LoadError("columns 'k' and 'eps' must appear together");
    data.has_turbulence = ik >= 0;
    const int isdf = table.column("sdf");
    if (isdf >= 0) data.sdf.emplace();

    data.samples.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const long row_index = static_cast<long>(r);
        auto get = [&](int col, const char* name) {
            double v = 0.0;
            if (!parse_double(row[static_cast<std::size_t>(col)], v)) {
                throw LoadError(std::string("column '") + name + "' is not a number", row_index);
            }
            if (!std::isfinite(v)) throw LoadError(std::string("non-finite value in column '") + name + "'", row_index);
            return v;
        };
        FieldSample s;
        s.x = get(idx[0], "x");
        s.y = get(idx[1], "y");
        s.u = get(idx[2], "u");
        s.v = get(idx[3], "v");
        s.p = get(idx[4], "p");
        if (data.has_turbulence) {
            s.k = get(ik, "k");
            s.eps = get(ie, "eps");
            if (!(s.k > 0.0 && s.eps > 0.0)) throw LoadError("k and eps must be positive", row_index);
        } else {
            s.k = s.eps = std::nan("");
        }
        const double d = segments.signed_distance({s.x, s.y});
        if (d < 0.0) throw LoadError("point lies inside airfoil " + data.naca_code, row_index);
        if (data.sdf) data.sdf->push_back(get(isdf, "sdf"));
        data.samples.push_back(s);
    }
    return data;
}

std::vector<double> case_sdf(const CaseDataset& data, bool* recomputed) {
    if (data.sdf && data.sdf->size() == data.samples.size()) {
        if (recomputed) *recomputed = false;
        return *data.sdf;
    }
    if (recomputed) *recomputed = true;
    std::vector<Vec2> points;
    points.reserve(data.samples.size());
    for (const auto& s : data.samples) points.push_back({s.x, s.y});
    return sdf_field(points, surface_polyline(parse_naca_code(data.naca_code), kCaseStations)).values;
}

std::string case_csv_text(const CaseDataset& data, const std::string& config_hash) {
    std::vector<std::pair<std::string, std::string>> fields = {
        {"naca", data.naca_code}, {"u_in", format_double(data.u_in)}, {"provenance", std::string(to_string(data.provenance))}};
    if (!config_hash.empty()) fields.emplace_back("config", config_hash);
    std::ostringstream os;
    os << artifact_header("case", 1, fields) << '\n';
    os << "x,y,u,v,p";
    if (data.has_turbulence) os << ",k,eps";
    if (data.sdf) os << ",sdf";
    os << '\n';
    for (std::size_t i = 0; i < data.samples.size(); ++i) {
        const FieldSample& s = data.samples[i];
        os << format_double(s.x) << ',' << format_double(s.y) << ',' << format_double(s.u) << ','
           << format_double(s.v) << ',' << format_double(s.p);
        if (data.has_turbulence) os << ',' << format_double(s.k) << ',' << format_double(s.eps);
        if (data.sdf) os << ',' << format_double((*data.sdf)[i]);
        os << '\n';
    }
    return os.str();
}

void write_case_csv(const std::filesystem::path& path, const CaseDataset& data, const std::string& config_hash) {
    write_file_atomic(path, case_csv_text(data, config_hash));
}

// ---------------------------------------------------------------------------
// Joukowski stand-in flow

namespace {

using cplx = std::complex<double>;

struct JoukowskiBody {
    double a = 1.0;
    cplx center;
    double radius = 0.0;
    double beta = 0.0;
    cplx z_le;
    double chord = 0.0;
    double theta = 0.0;

    cplx map(double phi) const {
        const cplx zeta = center + radius * std::exp(cplx(0.0, phi));
        return zeta + a * a / zeta;
    }
};

JoukowskiBody make_body(double thickness_param, double camber_param) {
    JoukowskiBody b;
    b.center = cplx(-thickness_param, camber_param) * b.a;
    b.radius = std::abs(cplx(b.a, 0.0) - b.center);
    b.beta = std::atan2(camber_param * b.a, (1.0 + thickness_param) * b.a);
    const cplx z_te(2.0 * b.a, 0.0);

    // Leading edge: the outline point farthest from the trailing edge.
    constexpr int kSamples = 2048;
    double best_phi = 0.0;
    double best = -1.0;
    for (int i = 0; i < kSamples; ++i) {
        const double phi = -b.beta + 2.0 * std::numbers::pi * i / kSamples;
        const double d = std::abs(b.map(phi) - z_te);
        if (d > best) {
            best = d;
            best_phi = phi;
        }
    }
    const double step = 2.0 * std::numbers::pi / kSamples;
    double lo = best_phi - step;
    double hi = best_phi + step;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 80; ++it) {
        const double m1 = hi - g * (hi - lo);
        const double m2 = lo + g * (hi - lo);
        if (std::abs(b.map(m1) - z_te) > std::abs(b.map(m2) - z_te)) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    b.z_le = b.map(0.5 * (lo + hi));
    b.chord = std::abs(z_te - b.z_le);
    b.theta = std::arg(z_te - b.z_le);
    return b;
}

Vec2 chord_frame(const JoukowskiBody& b, cplx z) {
    const cplx X = (z - b.z_le) * std::exp(cplx(0.0, -b.theta)) / b.chord;
    return {X.real(), X.imag()};
}

// Maximum vertical thickness of the body in its chord frame.
double measured_thickness(const JoukowskiBody& b) {
    constexpr int kSamples = 4000;
    const cplx z_te(2.0 * b.a, 0.0);
    // Parameter of the leading edge: invert numerically by nearest sample.
    double phi_le = 0.0;
    double best = 1e300;
    for (int i = 0; i < kSamples; ++i) {
        const double phi = -b.beta + 2.0 * std::numbers::pi * i / kSamples;
        const double d = std::abs(b.map(phi) - b.z_le);
        if (d < best) {
            best = d;
            phi_le = phi;
        }
    }
    std::vector<Vec2> upper;
    std::vector<Vec2> lower;
    for (int i = 0; i <= kSamples; ++i) {
        const double f = static_cast<double>(i) / kSamples;
        upper.push_back(chord_frame(b, b.map(-b.beta + f * (phi_le + b.beta))));
        lower.push_back(chord_frame(b, b.map(2.0 * std::numbers::pi - b.beta - f * (2.0 * std::numbers::pi - b.beta - phi_le))));
    }
    // upper runs TE -> LE (x decreasing), lower runs TE -> LE as well.
    std::reverse(upper.begin(), upper.end());
    std::reverse(lower.begin(), lower.end());
    double thickest = 0.0;
    std::size_t j = 0;
    for (const Vec2 pu : upper) {
        while (j + 1 < lower.size() && lower[j + 1].x < pu.x) ++j;
        if (j + 1 >= lower.size()) break;
        const Vec2 l0 = lower[j];
        const Vec2 l1 = lower[j + 1];
        if (l1.x == l0.x || pu.x < l0.x) continue;
        const double yl = l0.y + (pu.x - l0.x) * (l1.y - l0.y) / (l1.x - l0.x);
        thickest = std::max(thickest, pu.y - yl);
    }
    return thickest;
}

}  // namespace

SyntheticFlow::SyntheticFlow(const AirfoilParams& airfoil, double u_in, SyntheticTurbulence turbulence,
                             TurbulenceConstants constants)
    : airfoil_(airfoil), u_in_(u_in), turbulence_(turbulence), constants_(constants) {
    if (!(u_in > 0.0)) throw DomainError("SyntheticFlow: u_in must be positive");
    // Thin-arc relation: a circle through +-a with centre height h maps to an
    // arc of camber ratio h / (2a).
    const double camber_param = 2.0 * airfoil.m;
    double lo = 1e-6;
    double hi = 1.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (measured_thickness(make_body(mid, camber_param)) < airfoil.t) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const JoukowskiBody body = make_body(0.5 * (lo + hi), camber_param);
    fitted_thickness_ = measured_thickness(body);
    a_ = body.a;
    center_ = body.center;
    radius_ = body.radius;
    beta_ = body.beta;
    z_le_ = body.z_le;
    chord_ = body.chord;
    theta_ = body.theta;
    stream_speed_ = u_in / chord_;
    // Kutta condition with the free stream aligned to the chord line.
    circulation_ = 4.0 * std::numbers::pi * stream_speed_ * radius_ * std::sin(theta_ + beta_);
}

SyntheticFlow::cplx SyntheticFlow::chord_to_z(Vec2 p) const {
    return z_le_ + chord_ * std::exp(cplx(0.0, theta_)) * cplx(p.x, p.y);
}

Vec2 SyntheticFlow::z_to_chord(cplx z) const {
    const cplx X = (z - z_le_) * std::exp(cplx(0.0, -theta_)) / chord_;
    return {X.real(), X.imag()};
}

SyntheticFlow::cplx SyntheticFlow::to_circle_plane(Vec2 p) const {
    const cplx z = chord_to_z(p);
    const cplx root = std::sqrt(z * z - 4.0 * a_ * a_);
    const cplx z1 = 0.5 * (z + root);
    const cplx z2 = 0.5 * (z - root);
    return std::abs(z1 - center_) >= std::abs(z2 - center_) ? z1 : z2;
}

bool SyntheticFlow::inside_body(Vec2 p) const {
    return std::abs(to_circle_plane(p) - center_) < radius_ * (1.0 - 1e-12);
}

SyntheticFlow::cplx SyntheticFlow::complex_velocity_chord(cplx zeta) const {
    const double alpha = theta_;
    const cplx w = zeta - center_;
    const cplx dw = stream_speed_ * (std::exp(cplx(0.0, -alpha)) - radius_ * radius_ * std::exp(cplx(0.0, alpha)) / (w * w)) +
                    cplx(0.0, circulation_ / (2.0 * std::numbers::pi)) / w;
    const cplx dz = 1.0 - a_ * a_ / (zeta * zeta);
    return dw / dz * chord_ * std::exp(cplx(0.0, theta_));
}

std::optional<Vec2> SyntheticFlow::velocity(Vec2 p) const {
    const cplx zeta = to_circle_plane(p);
    if (std::abs(zeta - center_) < radius_ * (1.0 - 1e-12)) return std::nullopt;
    const cplx uv = complex_velocity_chord(zeta);
    return Vec2{uv.real(), -uv.imag()};
}

std::optional<FieldSample> SyntheticFlow::sample(Vec2 p, double sdf) const {
    const auto vel = velocity(p);
    if (!vel) return std::nullopt;
    FieldSample s;
    s.x = p.x;
    s.y = p.y;
    s.u = vel->x;
    s.v = vel->y;
    s.p = 0.5 * (u_in_ * u_in_ - (s.u * s.u + s.v * s.v));
    const double k_far = 1.5 * (turbulence_.intensity * u_in_) * (turbulence_.intensity * u_in_);
    const double k_wall = turbulence_.wall_ratio * k_far;
    s.k = k_far + (k_wall - k_far) * std::exp(-std::max(sdf, 0.0) / turbulence_.decay_length);
    s.eps = std::pow(constants_.C_mu, 0.75) * std::pow(s.k, 1.5) / turbulence_.mixing_length;
    return s;
}

Vec2 SyntheticFlow::stagnation_point() const {
    const double phi = std::numbers::pi + 2.0 * theta_ + beta_;
    const cplx zeta = center_ + radius_ * std::exp(cplx(0.0, phi));
    return z_to_chord(zeta + a_ * a_ / zeta);
}

std::vector<Vec2> SyntheticFlow::body_outline(int n) const {
    std::vector<Vec2> out;
    for (int i = 0; i <= n; ++i) {
        const double phi = -beta_ + 2.0 * std::numbers::pi * i / n;
        const cplx zeta = center_ + radius_ * std::exp(cplx(0.0, phi));
        out.push_back(z_to_chord(zeta + a_ * a_ / zeta));
    }
    return out;
}

CaseDataset synthetic_case(std::string_view naca_code, double u_in, int n_points, std::uint64_t seed,
                           const SyntheticOptions& options, const TurbulenceConstants& constants) {
    if (!(u_in >= kMinInletSpeed && u_in <= kMaxInletSpeed)) {
        throw DomainError("synthetic_case: u_in must lie in [2, 7] m/s");
    }
    if (n_points < 1) throw DomainError("synthetic_case: n_points must be >= 1");
    const AirfoilParams airfoil = parse_naca_code(naca_code);
    const Polyline poly = surface_polyline(airfoil, kCaseStations);
    options.domain.validate_against(poly);
    const SegmentSet segments(poly);
    const SyntheticFlow flow(airfoil, u_in, options.turbulence, constants);
    const auto bounds = segments.bounds();
    const Domain& dom = options.domain;
    const double band = options.near_band;
    const int n_near = static_cast<int>(std::ceil(options.near_fraction * n_points - 1e-9));

    CaseDataset data;
    data.naca_code = airfoil.code;
    data.u_in = u_in;
    data.provenance = Provenance::synthetic;
    data.has_turbulence = true;
    data.samples.resize(static_cast<std::size_t>(n_points));
    data.sdf.emplace(static_cast<std::size_t>(n_points), 0.0);
    const CounterRng rng(seed, 11);
    std::atomic<bool> failed{false};

#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_points; ++i) {
        const CounterRng r = rng.substream(static_cast<std::uint64_t>(i));
        const bool near = i < n_near;
        bool placed = false;
        for (std::uint64_t attempt = 0; attempt < 10000 && !placed; ++attempt) {
            Vec2 p;
            if (near) {
                p = {r.uniform(2 * attempt, bounds.xmin - band, bounds.xmax + band),
                     r.uniform(2 * attempt + 1, bounds.ymin - band, bounds.ymax + band)};
            } else {
                p = {r.uniform(2 * attempt, dom.x_min, dom.x_max), r.uniform(2 * attempt + 1, dom.y_min, dom.y_max)};
            }
            const double d = segments.signed_distance(p);
            if (!(d > 0.0) || (near && d >= band)) continue;
            const auto s = flow.sample(p, d);
            if (!s) continue;
            data.samples[static_cast<std::size_t>(i)] = *s;
            (*data.sdf)[static_cast<std::size_t>(i)] = d;
            placed = true;
        }
        if (!placed) failed = true;
    }
    if (failed) throw SamplingError("synthetic_case: could not place sample points");
    return data;
}

// ---------------------------------------------------------------------------
// Manufactured solutions

namespace {

constexpr double kUniformSpeed = 3.0;
constexpr double kUniformK = 0.02;
constexpr double kUniformEps = 0.01;
constexpr double kFrozenEps = 0.0;
constexpr double kTgK = 0.5;
constexpr double kTgEps = 0.3;
constexpr double kDecayK = 0.05;
constexpr double kDecayEps = 0.02;

std::string canonical_id(std::string_view id) {
    if (id == "taylor-green-like") return "taylor-green";
    for (const char* known : {"uniform", "couette", "taylor-green", "k-eps-balance"}) {
        if (id == known) return known;
    }
    throw ValidationError("unknown manufactured case '" + std::string(id) + "'");
}

Jet constant(double v) { return {v, 0.0, 0.0, 0.0, 0.0}; }

}  // namespace

ManufacturedCase::ManufacturedCase(std::string_view id, TurbulenceConstants constants)
    : id_(canonical_id(id)), c_(constants) {}

std::vector<std::string> ManufacturedCase::ids() { return {"uniform", "couette", "taylor-green", "k-eps-balance"}; }

FlowJet ManufacturedCase::fields(Vec2 pt) const {
    const double x = pt.x;
    const double y = pt.y;
    FlowJet f;
    if (id_ == "uniform") {
        f.u = constant(kUniformSpeed);
        f.v = constant(0.0);
        f.p = constant(0.0);
        f.k = constant(kUniformK);
        f.eps = constant(kFrozenEps);
    } else if (id_ == "couette") {
        f.u = {y, 0.0, 1.0, 0.0, 0.0};
        f.v = constant(0.0);
        f.p = constant(0.0);
        f.k = constant(kUniformK);
        f.eps = constant(kUniformEps);
    } else if (id_ == "taylor-green") {
        const double sx = std::sin(x), cx = std::cos(x), sy = std::sin(y), cy = std::cos(y);
        f.u = {sx * cy, cx * cy, -sx * sy, -sx * cy, -sx * cy};
        f.v = {-cx * sy, sx * sy, -cx * cy, cx * sy, cx * sy};
        f.p = {0.25 * (std::cos(2 * x) + std::cos(2 * y)), -0.5 * std::sin(2 * x), -0.5 * std::sin(2 * y),
               -std::cos(2 * x), -std::cos(2 * y)};
        f.k = {kTgK * (1.0 + 0.5 * cx * cy), -0.5 * kTgK * sx * cy, -0.5 * kTgK * cx * sy, -0.5 * kTgK * cx * cy,
               -0.5 * kTgK * cx * cy};
        f.eps = constant(kTgEps);
    } else {
        // Decaying grid turbulence in a uniform stream: convection balances
        // the sink terms exactly, leaving only the diffusion terms.
        const double n = 1.0 / (c_.C2 - 1.0);
        const double x0 = n * kUniformSpeed * kDecayK / kDecayEps;
        const double s = 1.0 + x / x0;
        f.u = constant(kUniformSpeed);
        f.v = constant(0.0);
        f.p = constant(0.0);
        f.k = {kDecayK * std::pow(s, -n), -n * kDecayK * std::pow(s, -n - 1) / x0, 0.0,
               n * (n + 1) * kDecayK * std::pow(s, -n - 2) / (x0 * x0), 0.0};
        f.eps = {kDecayEps * std::pow(s, -n - 1), -(n + 1) * kDecayEps * std::pow(s, -n - 2) / x0, 0.0,
                 (n + 1) * (n + 2) * kDecayEps * std::pow(s, -n - 3) / (x0 * x0), 0.0};
    }
    return f;
}

double ManufacturedCase::expected_production(Vec2 pt) const {
    if (id_ == "couette") return c_.C_mu * kUniformK * kUniformK / kUniformEps;
    if (id_ == "taylor-green") {
        const double cx = std::cos(pt.x), cy = std::cos(pt.y);
        const double k = kTgK * (1.0 + 0.5 * cx * cy);
        return 4.0 * c_.C_mu * k * k / kTgEps * cx * cx * cy * cy;
    }
    return 0.0;
}

ResidualVector ManufacturedCase::expected_residuals(Vec2 pt, bool standard_sign) const {
    const double sign = standard_sign ? -1.0 : 1.0;  // multiplies C2 eps in the source
    ResidualVector r;
    if (id_ == "uniform") {
        r.k = kFrozenEps;
        r.eps = -sign * c_.C2 * kFrozenEps * kFrozenEps / kUniformK;
    } else if (id_ == "couette") {
        const double mu_t = c_.C_mu * kUniformK * kUniformK / kUniformEps;
        r.k = kUniformEps - mu_t;
        r.eps = -(c_.C1 * mu_t + sign * c_.C2 * kUniformEps) * kUniformEps / kUniformK;
    } else if (id_ == "taylor-green") {
        const double sx = std::sin(pt.x), cx = std::cos(pt.x), sy = std::sin(pt.y), cy = std::cos(pt.y);
        const double k = kTgK * (1.0 + 0.5 * cx * cy);
        const double mu_t = c_.C_mu * k * k / kTgEps;
        const double mu_eff = c_.mu + mu_t;
        const double pk = 4.0 * mu_t * cx * cx * cy * cy;
        r.mom_x = 2.0 * mu_eff * sx * cy;
        r.mom_y = -2.0 * mu_eff * cx * sy;
        r.k = 0.5 * kTgK * (cx * cx - cy * cy) + (c_.mu + mu_t / c_.sigma_k) * kTgK * cx * cy - pk + kTgEps;
        r.eps = -(c_.C1 * pk + sign * c_.C2 * kTgEps) * kTgEps / k;
    } else {
        const FlowJet f = fields(pt);
        const double k = f.k.val;
        const double eps = f.eps.val;
        const double mu_t = c_.C_mu * k * k / eps;
        r.k = -(c_.mu + mu_t / c_.sigma_k) * f.k.dxx;
        r.eps = -(c_.mu + mu_t / c_.sigma_eps) * f.eps.dxx;
        if (!standard_sign) r.eps -= 2.0 * c_.C2 * eps * eps / k;
    }
    return r;
}

CaseDataset ManufacturedCase::dataset(int n_points, std::uint64_t seed) const {
    const AirfoilParams airfoil = parse_naca_code("0012");
    const SegmentSet segments(surface_polyline(airfoil, kCaseStations));
    const Domain dom;
    const CounterRng rng(seed, 12);
    CaseDataset data;
    data.naca_code = airfoil.code;
    data.u_in = kUniformSpeed;
    data.provenance = Provenance::manufactured;
    data.has_turbulence = id_ != "uniform";
    std::uint64_t counter = 0;
    while (static_cast<int>(data.samples.size()) < n_points) {
        const Vec2 p{rng.uniform(counter, dom.x_min, dom.x_max), rng.uniform(counter + 1, dom.y_min, dom.y_max)};
        counter += 2;
        if (!(segments.signed_distance(p) > 0.0)) continue;
        const FlowJet f = fields(p);
        if (data.has_turbulence) {
            data.samples.push_back({p.x, p.y, f.u.val, f.v.val, f.p.val, f.k.val, f.eps.val});
        } else {
            data.samples.push_back({p.x, p.y, f.u.val, f.v.val, f.p.val, std::nan(""), std::nan("")});
        }
    }
    return data;
}

}  // namespace foil
