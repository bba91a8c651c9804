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

#include "foil/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "foil/error.hpp"
#include "foil/io.hpp"
#include "foil/network_kernels.hpp"
#include "foil/sdf.hpp"
#include "foil/training.hpp"

namespace foil {

double velocity_error(double pred_magnitude, double truth_magnitude, double u_in) {
    if (!(u_in > 0.0)) throw DomainError("velocity_error: u_in must be positive");
    return (pred_magnitude - truth_magnitude) / u_in;
}

double pressure_error(double pred, double truth, double u_in) {
    if (!(u_in > 0.0)) throw DomainError("pressure_error: u_in must be positive");
    return (pred - truth) / (0.5 * u_in * u_in);
}

Summary summarize(std::span<const double> values) {
    if (values.empty()) throw ContractError("summarize: no values");
    std::vector<double> a;
    a.reserve(values.size());
    double sum = 0.0;
    for (double v : values) {
        a.push_back(std::abs(v));
        sum += std::abs(v);
    }
    std::sort(a.begin(), a.end());
    const std::size_t n = a.size();
    const double median = n % 2 ? a[n / 2] : 0.5 * (a[n / 2 - 1] + a[n / 2]);
    return {sum / static_cast<double>(n), median};
}

ZoneReport zone_report(std::span<const double> values, std::span<const double> sdf, double threshold) {
    if (values.size() != sdf.size()) throw ContractError("zone_report: values and sdf differ in length");
    if (values.empty()) throw ContractError("zone_report: no values");
    const ZoneMasks masks = zone_split(sdf, threshold);
    ZoneReport r;
    r.threshold = threshold;
    double near = 0.0;
    double far = 0.0;
    double all = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double a = std::abs(values[i]);
        all += a;
        if (masks.near[i]) {
            near += a;
            ++r.near_count;
        } else if (masks.far[i]) {
            far += a;
            ++r.far_count;
        }
    }
    r.overall = all / static_cast<double>(values.size());
    if (r.near_count) r.near = near / static_cast<double>(r.near_count);
    if (r.far_count) r.far = far / static_cast<double>(r.far_count);
    return r;
}

namespace {

std::vector<FlowState> predict(const MlpParams& params, const AirfoilParams& airfoil, std::span<const Vec2> points,
                               std::span<const double> sdf, double u_in) {
    std::vector<ModelInput> inputs;
    inputs.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        PointQuery q;
        q.x = points[i].x;
        q.y = points[i].y;
        q.sdf = std::max(sdf[i], 0.0);
        q.airfoil = &airfoil;
        q.u_in = u_in;
        inputs.push_back(build_input(params.config(), q));
    }
    std::vector<FlowState> out = forward_batch(params, stack_inputs(inputs));
    for (auto& s : out) s = to_physical(s, u_in);
    return out;
}

nlohmann::json zones_json(const ZoneReport& z) {
    nlohmann::json j;
    j["near"] = z.near ? nlohmann::json(*z.near) : nlohmann::json(nullptr);
    j["far"] = z.far ? nlohmann::json(*z.far) : nlohmann::json(nullptr);
    j["overall"] = z.overall;
    j["near_count"] = z.near_count;
    j["far_count"] = z.far_count;
    return j;
}

}  // namespace

ErrorReport evaluate_case(const MlpParams& params, const CaseDataset& data, double threshold,
                          const TurbulenceConstants& constants) {
    if (data.samples.empty()) throw ValidationError("evaluate_case: case has no samples");
    ErrorReport r;
    r.naca_code = data.naca_code;
    r.u_in = data.u_in;
    r.reynolds = reynolds(data.u_in, 1.0, constants);
    r.threshold = threshold;
    r.sdf = case_sdf(data, &r.sdf_recomputed);
    const AirfoilParams airfoil = parse_naca_code(data.naca_code);
    std::vector<Vec2> points;
    points.reserve(data.samples.size());
    for (const auto& s : data.samples) points.push_back({s.x, s.y});
    const auto pred = predict(params, airfoil, points, r.sdf, data.u_in);
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const FieldSample& t = data.samples[i];
        r.velocity_errors.push_back(
            velocity_error(std::hypot(pred[i].u, pred[i].v), std::hypot(t.u, t.v), data.u_in));
        r.pressure_errors.push_back(pressure_error(pred[i].p, t.p, data.u_in));
    }
    std::vector<double> vp;
    std::vector<double> pp;
    for (double e : r.velocity_errors) vp.push_back(100.0 * e);
    for (double e : r.pressure_errors) pp.push_back(100.0 * e);
    r.velocity = summarize(vp);
    r.pressure = summarize(pp);
    r.velocity_zones = zone_report(vp, r.sdf, threshold);
    r.pressure_zones = zone_report(pp, r.sdf, threshold);
    return r;
}

nlohmann::json to_json(const ErrorReport& r, bool include_points) {
    nlohmann::json j;
    j["naca"] = r.naca_code;
    j["u_in"] = r.u_in;
    j["reynolds"] = r.reynolds;
    j["points"] = r.velocity_errors.size();
    j["zone_threshold"] = r.threshold;
    j["sdf_recomputed"] = r.sdf_recomputed;
    j["velocity_percent"] = {{"mean", r.velocity.mean}, {"median", r.velocity.median}, {"zones", zones_json(r.velocity_zones)}};
    j["pressure_percent"] = {{"mean", r.pressure.mean}, {"median", r.pressure.median}, {"zones", zones_json(r.pressure_zones)}};
    if (include_points) {
        j["velocity_errors"] = r.velocity_errors;
        j["pressure_errors"] = r.pressure_errors;
        j["sdf"] = r.sdf;
    }
    return j;
}

TruthFn nearest_sample_truth(const CaseDataset& data) {
    return [&data](Vec2 p, double) -> std::optional<FlowState> {
        if (data.samples.empty()) return std::nullopt;
        std::size_t best = 0;
        double bd = INFINITY;
        for (std::size_t i = 0; i < data.samples.size(); ++i) {
            const double dx = data.samples[i].x - p.x;
            const double dy = data.samples[i].y - p.y;
            const double d = dx * dx + dy * dy;
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        const FieldSample& s = data.samples[best];
        return FlowState{s.u, s.v, s.p, s.k, s.eps};
    };
}

FieldGrid export_grid(const MlpParams& params, const AirfoilParams& airfoil, double u_in, const Domain& domain,
                      int resolution, const TruthFn& truth) {
    if (resolution < 16) throw DomainError("export_grid: resolution must be >= 16 per axis");
    FieldGrid g;
    g.nx = g.ny = resolution;
    const auto n = static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution);
    std::vector<Vec2> points(n);
    for (int r = 0; r < resolution; ++r) {
        const double y = domain.y_max - (domain.y_max - domain.y_min) * r / (resolution - 1);
        for (int c = 0; c < resolution; ++c) {
            const double x = domain.x_min + (domain.x_max - domain.x_min) * c / (resolution - 1);
            points[static_cast<std::size_t>(r) * static_cast<std::size_t>(resolution) + static_cast<std::size_t>(c)] = {x, y};
        }
    }
    g.sdf = sdf_field(points, surface_polyline(airfoil, 200)).values;
    g.predicted = predict(params, airfoil, points, g.sdf, u_in);
    g.velocity_error.assign(n, std::nan(""));
    for (std::size_t i = 0; i < n; ++i) {
        g.x.push_back(points[i].x);
        g.y.push_back(points[i].y);
        if (g.masked(i)) {
            g.predicted[i] = {NAN, NAN, NAN, NAN, NAN};
            continue;
        }
        if (!truth) continue;
        const auto t = truth(points[i], g.sdf[i]);
        if (!t) continue;
        g.velocity_error[i] = velocity_error(std::hypot(g.predicted[i].u, g.predicted[i].v), std::hypot(t->u, t->v), u_in);
    }
    return g;
}

std::string grid_csv_text(const FieldGrid& g, const std::string& config_hash) {
    std::vector<std::pair<std::string, std::string>> fields = {{"nx", std::to_string(g.nx)}, {"ny", std::to_string(g.ny)}};
    if (!config_hash.empty()) fields.emplace_back("config", config_hash);
    std::ostringstream os;
    os << artifact_header("grid", 1, fields) << '\n';
    os << "x,y,sdf,u,v,p,k,eps,velocity_error\n";
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        const FlowState& s = g.predicted[i];
        os << format_double(g.x[i]) << ',' << format_double(g.y[i]) << ',' << format_double(g.sdf[i]) << ','
           << format_double(s.u) << ',' << format_double(s.v) << ',' << format_double(s.p) << ','
           << format_double(s.k) << ',' << format_double(s.eps) << ',' << format_double(g.velocity_error[i]) << '\n';
    }
    return os.str();
}

FieldGrid load_grid_csv(const std::filesystem::path& path) {
    const CsvTable t = read_csv(path);
    ArtifactHeader h;
    for (const auto& c : t.comments) {
        h = parse_artifact_header(c);
        if (h.kind == "grid") break;
    }
    if (h.kind != "grid" || !h.fields.count("nx") || !h.fields.count("ny")) throw LoadError("not a grid file");
    FieldGrid g;
    g.nx = std::stoi(h.fields.at("nx"));
    g.ny = std::stoi(h.fields.at("ny"));
    const char* names[] = {"x", "y", "sdf", "u", "v", "p", "k", "eps", "velocity_error"};
    int col[9];
    for (int i = 0; i < 9; ++i) {
        col[i] = t.column(names[i]);
        if (col[i] < 0) throw LoadError(std::string("missing column '") + names[i] + "'");
    }
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        double v[9];
        for (int i = 0; i < 9; ++i) {
            if (!parse_double(t.rows[r][static_cast<std::size_t>(col[i])], v[i])) {
                throw LoadError(std::string("column '") + names[i] + "' is not a number", static_cast<long>(r));
            }
        }
        g.x.push_back(v[0]);
        g.y.push_back(v[1]);
        g.sdf.push_back(v[2]);
        g.predicted.push_back({v[3], v[4], v[5], v[6], v[7]});
        g.velocity_error.push_back(v[8]);
    }
    if (g.x.size() != static_cast<std::size_t>(g.nx) * static_cast<std::size_t>(g.ny)) {
        throw LoadError("grid row count does not match nx * ny");
    }
    return g;
}

std::string error_image_pgm(const FieldGrid& g, double clip) {
    std::ostringstream os;
    os << "P2\n# foil-pinn errimage v1, clip=" << format_double(clip) << ", scale=linear\n"
       << g.nx << ' ' << g.ny << "\n255\n";
    for (int r = 0; r < g.ny; ++r) {
        for (int c = 0; c < g.nx; ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * static_cast<std::size_t>(g.nx) + static_cast<std::size_t>(c);
            int px = 0;
            const double e = g.velocity_error[i];
            if (!g.masked(i) && std::isfinite(e)) {
                px = static_cast<int>(std::lround(255.0 * std::min(std::abs(e) / clip, 1.0)));
            }
            os << px << (c + 1 < g.nx ? ' ' : '\n');
        }
    }
    return os.str();
}

std::string ablation_table(const std::vector<std::pair<std::string, ErrorReport>>& columns) {
    auto cell = [](const std::optional<double>& v) {
        if (!v) return std::string("-");
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", *v);
        return std::string(buf);
    };
    std::ostringstream os;
    const double threshold = columns.empty() ? kDefaultZoneThreshold : columns.front().second.threshold;
    os << "Normalized validation errors (%), zone threshold sdf = " << cell(threshold) << "\n";
    os << "| Quantity |";
    for (const auto& [name, r] : columns) os << ' ' << name << " |";
    os << "\n|---|";
    for (std::size_t i = 0; i < columns.size(); ++i) os << "---|";
    os << '\n';
    struct Row {
        const char* label;
        std::optional<double> (*get)(const ErrorReport&);
    };
    const Row rows[] = {
        {"Velocity (Near)", [](const ErrorReport& r) { return r.velocity_zones.near; }},
        {"Velocity (Far)", [](const ErrorReport& r) { return r.velocity_zones.far; }},
        {"Velocity (Overall)", [](const ErrorReport& r) { return std::optional<double>(r.velocity_zones.overall); }},
        {"Pressure (Near)", [](const ErrorReport& r) { return r.pressure_zones.near; }},
        {"Pressure (Far)", [](const ErrorReport& r) { return r.pressure_zones.far; }},
        {"Pressure (Overall)", [](const ErrorReport& r) { return std::optional<double>(r.pressure_zones.overall); }},
    };
    for (const Row& row : rows) {
        os << "| " << row.label << " |";
        for (const auto& [name, r] : columns) os << ' ' << cell(row.get(r)) << " |";
        os << '\n';
    }
    const ErrorReport* l = nullptr;
    const ErrorReport* g = nullptr;
    for (const auto& [name, r] : columns) {
        if (name == "L") l = &r;
        if (name == "G") g = &r;
    }
    if (l && g) {
        const bool ok = l->velocity_zones.near && g->velocity_zones.near && *l->velocity_zones.near <= *g->velocity_zones.near;
        os << "L <= G in near zone (velocity): " << (ok ? "yes" : "no") << '\n';
    }
    return os.str();
}

}  // namespace foil
