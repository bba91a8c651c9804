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

// foil-pinn: command-line entry point.
//
// Exit codes: 0 success, 1 validation error (bad flags, inputs, schema),
// 2 numeric failure (divergence, non-finite values, sampling exhaustion).

#include <omp.h>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "foil/data.hpp"
#include "foil/error.hpp"
#include "foil/evaluation.hpp"
#include "foil/geometry.hpp"
#include "foil/io.hpp"
#include "foil/network.hpp"
#include "foil/run_config.hpp"
#include "foil/sampling.hpp"
#include "foil/sdf.hpp"
#include "foil/training.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace foil;

namespace {

struct Globals {
    int threads = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string config;
    std::string out;
};

/// Logs the resolved arguments and returns their hash.
std::string announce(const std::string& command, const json& resolved) {
    const json j = {{"command", command}, {"args", resolved}};
    std::cerr << "resolved config: " << j.dump() << '\n';
    return fnv1a_hex(j.dump());
}

std::string require_out(const Globals& g) {
    if (g.out.empty()) throw ParseError("--out", "an output path is required");
    return g.out;
}

std::string header(std::string_view kind, const std::string& hash, std::vector<std::pair<std::string, std::string>> extra = {}) {
    extra.emplace_back("config", hash);
    return artifact_header(kind, 1, extra) + "\n";
}

std::string row(std::initializer_list<double> values) {
    std::string s;
    for (double v : values) {
        if (!s.empty()) s += ',';
        s += format_double(v);
    }
    return s + "\n";
}

// ---------------------------------------------------------------------------

struct GeomArgs {
    std::string naca;
    int n = 100;
    double aoa = 0.0;
};

void run_geom(const Globals& g, const GeomArgs& a) {
    const AirfoilParams airfoil = parse_naca_code(a.naca);
    Polyline poly = surface_polyline(airfoil, a.n);
    if (a.aoa != 0.0) poly = rotated(poly, a.aoa);
    const std::string hash = announce("geom", {{"naca", airfoil.code}, {"n", a.n}, {"aoa", a.aoa}});
    std::string text = header("surface", hash, {{"naca", airfoil.code}, {"n", std::to_string(a.n)}});
    text += "x,y\n";
    for (const Vec2 v : poly.vertices()) text += row({v.x, v.y});
    write_file_atomic(require_out(g), text);
}

struct SdfArgs {
    std::string naca;
    std::string points;
    int grid = 0;
    int stations = 200;
};

void run_sdf(const Globals& g, const SdfArgs& a) {
    const AirfoilParams airfoil = parse_naca_code(a.naca);
    const Polyline poly = surface_polyline(airfoil, a.stations);
    std::vector<Vec2> pts;
    CsvTable t;
    if (!a.points.empty()) {
        t = read_csv(a.points);
        const int ix = t.column("x");
        const int iy = t.column("y");
        if (ix < 0 || iy < 0) throw LoadError("points file needs columns x and y");
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            double x = 0.0;
            double y = 0.0;
            if (!parse_double(t.rows[r][static_cast<std::size_t>(ix)], x) ||
                !parse_double(t.rows[r][static_cast<std::size_t>(iy)], y) || !std::isfinite(x) || !std::isfinite(y)) {
                throw LoadError("x and y must be finite numbers", static_cast<long>(r));
            }
            pts.push_back({x, y});
        }
    } else if (a.grid >= 2) {
        const Domain d;
        for (int r = 0; r < a.grid; ++r) {
            for (int c = 0; c < a.grid; ++c) {
                pts.push_back({d.x_min + (d.x_max - d.x_min) * c / (a.grid - 1), d.y_max - (d.y_max - d.y_min) * r / (a.grid - 1)});
            }
        }
    } else {
        throw ParseError("--points", "give --points FILE or --grid N (N >= 2)");
    }
    const std::string hash = announce("sdf", {{"naca", airfoil.code}, {"points", a.points}, {"grid", a.grid}, {"stations", a.stations}});
    const SdfField f = sdf_field(pts, poly);
    std::string text = header("sdf", hash, {{"naca", airfoil.code}});
    if (a.points.empty()) {
        text += "x,y,sdf\n";
        for (std::size_t i = 0; i < pts.size(); ++i) text += row({pts[i].x, pts[i].y, f.values[i]});
    } else {
        // Input columns pass through unchanged; sdf is appended.
        for (std::size_t c = 0; c < t.columns.size(); ++c) text += t.columns[c] + ",";
        text += "sdf\n";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (const auto& cell : t.rows[i]) text += cell + ",";
            text += format_double(f.values[i]) + "\n";
        }
    }
    write_file_atomic(require_out(g), text);
}

struct SampleArgs {
    std::string naca;
    int n = 5000;
    double near_fraction = 0.4;
    double near_band = 0.1;
    int boundary_n = 0;
    int stations = 200;
};

void run_sample(const Globals& g, const SampleArgs& a) {
    const AirfoilParams airfoil = parse_naca_code(a.naca);
    const Polyline poly = surface_polyline(airfoil, a.stations);
    CollocationConfig cc;
    cc.interior_n = a.n;
    cc.near_fraction = a.near_fraction;
    cc.near_band = a.near_band;
    cc.boundary_n = a.boundary_n;
    const std::string hash = announce("sample", {{"naca", airfoil.code}, {"n", a.n}, {"near_fraction", a.near_fraction},
                                                 {"near_band", a.near_band}, {"boundary_n", a.boundary_n},
                                                 {"stations", a.stations}, {"seed", g.seed}});
    const CollocationSet set = build_collocation(Domain{}, poly, cc, g.seed);
    const SegmentSet seg(poly);
    std::ostringstream os;
    os << header("collocation", hash, {{"naca", airfoil.code}, {"seed", std::to_string(g.seed)}});
    os << "x,y,sdf,role\n";
    auto emit = [&](const std::vector<Vec2>& pts, PointRole role, const std::vector<double>* sdf) {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double d = sdf ? (*sdf)[i] : (role == PointRole::surface ? 0.0 : seg.signed_distance(pts[i]));
            os << format_double(pts[i].x) << ',' << format_double(pts[i].y) << ',' << format_double(d) << ','
               << to_string(role) << '\n';
        }
    };
    emit(set.interior, PointRole::interior, &set.interior_sdf);
    emit(set.surface, PointRole::surface, nullptr);
    emit(set.inlet, PointRole::inlet, nullptr);
    emit(set.outlet, PointRole::outlet, nullptr);
    emit(set.sides, PointRole::side, nullptr);
    write_file_atomic(require_out(g), os.str());
}

struct SynthArgs {
    std::string naca;
    double u_in = 0.0;
    int n = 2000;
    std::string manufactured;
};

void run_synth(const Globals& g, const SynthArgs& a) {
    CaseDataset data;
    json resolved = {{"n", a.n}, {"seed", g.seed}};
    if (!a.manufactured.empty()) {
        resolved["manufactured"] = a.manufactured;
        const std::string hash = announce("synth", resolved);
        data = ManufacturedCase(a.manufactured).dataset(a.n, g.seed);
        write_case_csv(require_out(g), data, hash);
        return;
    }
    if (a.naca.empty()) throw ParseError("--naca", "required unless --manufactured is given");
    if (a.u_in <= 0.0) throw ParseError("--u-in", "required and must be positive");
    resolved["naca"] = a.naca;
    resolved["u_in"] = a.u_in;
    const std::string hash = announce("synth", resolved);
    data = synthetic_case(a.naca, a.u_in, a.n, g.seed);
    write_case_csv(require_out(g), data, hash);
}

RunConfig resolve_config(const Globals& g) {
    if (g.config.empty()) throw ParseError("--config", "a run config is required");
    RunConfig rc = load_run_config(g.config);
    if (g.seed_set) {
        rc.train.schedule.seed = g.seed;
        rc.train.config_hash = config_hash(rc);
    }
    if (rc.cases.empty()) throw ParseError("cases", "at least one training case is required");
    return rc;
}

/// Trains one configuration into dir; returns the final params. Throws
/// NumericError (after writing the log) when training aborts.
MlpParams train_into(const fs::path& dir, RunConfig rc) {
    fs::create_directories(dir);
    rc.train.checkpoint_dir = dir / "checkpoints";
    std::cerr << "resolved config: " << to_json(rc).dump() << '\n';
    write_file_atomic(dir / "config.json", to_json(rc).dump(2) + "\n");
    const auto cases = load_cases(rc.cases, rc.train.physics.constants);
    const TrainResult result = train(rc.train, cases);
    write_file_atomic(dir / "train_log.csv", training_log_csv(result.history, rc.train.config_hash));
    save_checkpoint(dir / "model.ckpt", result.params, {{"config", rc.train.config_hash}, {"status", std::string(to_string(result.status))}});
    if (result.status != TrainStatus::completed) throw NumericError("training aborted: " + result.message);
    return result.params;
}

void run_train(const Globals& g) { train_into(require_out(g), resolve_config(g)); }

struct EvalArgs {
    std::string checkpoint;
    std::string case_path;
    double threshold = kDefaultZoneThreshold;
    int grid = 0;
    std::string image;
    std::string grid_csv;
    bool points = false;
};

void run_eval(const Globals& g, const EvalArgs& a) {
    const Checkpoint ck = load_checkpoint(a.checkpoint);
    const CaseDataset data = load_case_csv(a.case_path);
    json resolved = {{"checkpoint", a.checkpoint}, {"case", a.case_path}, {"threshold", a.threshold}, {"grid", a.grid},
                     {"image", a.image}, {"grid_csv", a.grid_csv}};
    const std::string hash = announce("eval", resolved);
    const ErrorReport report = evaluate_case(ck.params, data, a.threshold);
    json j = to_json(report, a.points);
    j["version"] = 1;
    j["kind"] = "foil-pinn eval report";
    j["config_hash"] = hash;
    j["config"] = resolved;
    j["model"] = {{"variant", to_string(ck.params.config().variant)}, {"checkpoint_config", ck.metadata.count("config") ? ck.metadata.at("config") : ""}};
    if (report.sdf_recomputed) j["notes"] = json::array({"case file has no sdf column; sdf recomputed from the NACA surface"});
    write_file_atomic(require_out(g), j.dump(2) + "\n");
    if (a.grid > 0) {
        const AirfoilParams airfoil = parse_naca_code(data.naca_code);
        TruthFn truth;
        std::optional<SyntheticFlow> flow;
        if (data.provenance == Provenance::synthetic) {
            flow.emplace(airfoil, data.u_in);
            truth = [&flow](Vec2 p, double sdf) -> std::optional<FlowState> {
                const auto s = flow->sample(p, sdf);
                if (!s) return std::nullopt;
                return FlowState{s->u, s->v, s->p, s->k, s->eps};
            };
        } else {
            truth = nearest_sample_truth(data);
        }
        const FieldGrid grid = export_grid(ck.params, airfoil, data.u_in, Domain{}, a.grid, truth);
        if (!a.grid_csv.empty()) write_file_atomic(a.grid_csv, grid_csv_text(grid, hash));
        if (!a.image.empty()) write_file_atomic(a.image, error_image_pgm(grid));
    }
}

struct ReportArgs {
    std::string variants = "L,G,LG";
};

void run_report(const Globals& g, const ReportArgs& a) {
    const RunConfig base = resolve_config(g);
    if (base.holdout.empty()) throw ParseError("holdout", "report needs at least one holdout case");
    const fs::path out = require_out(g);
    std::vector<std::string> names;
    std::stringstream ss(a.variants);
    for (std::string v; std::getline(ss, v, ',');) {
        parse_variant(v);
        names.push_back(v);
    }
    if (names.empty()) throw ParseError("--variants", "no variants given");
    const auto holdout = load_cases(base.holdout, base.train.physics.constants);
    json summary = {{"version", 1}, {"kind", "foil-pinn ablation report"}, {"variants", json::object()}};
    std::string tables;
    for (std::size_t h = 0; h < holdout.size(); ++h) {
        std::vector<std::pair<std::string, ErrorReport>> columns;
        for (const auto& name : names) {
            RunConfig rc = base;
            rc.train.model.variant = parse_variant(name);
            rc.train.config_hash = config_hash(rc);
            const fs::path dir = out / name;
            MlpParams params = h == 0 ? train_into(dir, rc) : load_checkpoint(dir / "model.ckpt").params;
            ErrorReport r = evaluate_case(params, holdout[h], base.zone_threshold, base.train.physics.constants);
            summary["variants"][name][holdout[h].naca_code + "@" + format_double(holdout[h].u_in)] = to_json(r);
            summary["variants"][name]["config_hash"] = rc.train.config_hash;
            columns.emplace_back(name, std::move(r));
        }
        tables += "Holdout NACA " + holdout[h].naca_code + ", u_in = " + format_double(holdout[h].u_in) + " m/s\n";
        tables += ablation_table(columns) + "\n";
    }
    summary["config_hash"] = config_hash(base);
    write_file_atomic(out / "ablation.md", "<!-- foil-pinn ablation v1, config=" + config_hash(base) + " -->\n" + tables);
    write_file_atomic(out / "report.json", summary.dump(2) + "\n");
    std::cout << tables;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"foil-pinn: geometry-aware RANS k-epsilon PINN surrogate for NACA 4-digit airfoils"};
    app.require_subcommand(1);
    Globals g;
    auto add_globals = [&](CLI::App* sub) {
        sub->add_option("--threads", g.threads, "Worker thread cap (0 = runtime default)")->check(CLI::NonNegativeNumber);
        sub->add_option("--seed", g.seed, "Random seed");
        sub->add_option("--config", g.config, "Run config (JSON)");
        sub->add_option("--out", g.out, "Output file or directory");
    };

    GeomArgs geom;
    auto* c_geom = app.add_subcommand("geom", "Write the closed surface polyline of a NACA section");
    c_geom->add_option("--naca", geom.naca, "4-digit code")->required();
    c_geom->add_option("--n", geom.n, "Stations per side (polyline has 2n+1 vertices)");
    c_geom->add_option("--aoa", geom.aoa, "Angle of attack, degrees");
    add_globals(c_geom);

    SdfArgs sdf;
    auto* c_sdf = app.add_subcommand("sdf", "Signed distance to a NACA section at given points");
    c_sdf->add_option("--naca", sdf.naca, "4-digit code")->required();
    c_sdf->add_option("--points", sdf.points, "CSV with x,y columns")->check(CLI::ExistingFile);
    c_sdf->add_option("--grid", sdf.grid, "Regular N x N grid over the domain instead of --points");
    c_sdf->add_option("--stations", sdf.stations, "Surface stations per side");
    add_globals(c_sdf);

    SampleArgs sample;
    auto* c_sample = app.add_subcommand("sample", "Collocation and boundary point sets");
    c_sample->add_option("--naca", sample.naca, "4-digit code")->required();
    c_sample->add_option("--n", sample.n, "Interior points");
    c_sample->add_option("--near-frac,--near-fraction", sample.near_fraction, "Fraction of interior points in the near band");
    c_sample->add_option("--near-band", sample.near_band, "Near band width, chord");
    c_sample->add_option("--boundary-n", sample.boundary_n, "Points per boundary (0 = n/10)");
    c_sample->add_option("--stations", sample.stations, "Surface stations per side");
    add_globals(c_sample);

    SynthArgs synth;
    auto* c_synth = app.add_subcommand("synth", "Synthetic stand-in case or manufactured solution as case CSV");
    c_synth->add_option("--naca", synth.naca, "4-digit code");
    c_synth->add_option("--u-in", synth.u_in, "Inlet speed, m/s (2..7)");
    c_synth->add_option("--n", synth.n, "Number of samples");
    c_synth->add_option("--manufactured", synth.manufactured, "uniform | couette | taylor-green | k-eps-balance");
    add_globals(c_synth);

    auto* c_train = app.add_subcommand("train", "Train a surrogate from a run config");
    add_globals(c_train);

    EvalArgs ev;
    auto* c_eval = app.add_subcommand("eval", "Error report of a checkpoint on a case");
    c_eval->add_option("--checkpoint", ev.checkpoint, "Checkpoint file")->required()->check(CLI::ExistingFile);
    c_eval->add_option("--case", ev.case_path, "Case CSV")->required()->check(CLI::ExistingFile);
    c_eval->add_option("--threshold", ev.threshold, "Near/far sdf threshold, chord");
    c_eval->add_option("--grid", ev.grid, "Export an N x N field grid (N >= 16)");
    c_eval->add_option("--image", ev.image, "Grey-scale |velocity error| image (PGM)");
    c_eval->add_option("--grid-csv", ev.grid_csv, "Field grid CSV");
    c_eval->add_flag("--points", ev.points, "Include per-point errors in the report");
    add_globals(c_eval);

    ReportArgs rep;
    auto* c_report = app.add_subcommand("report", "Train and evaluate several variants; ablation table");
    c_report->add_option("--variants", rep.variants, "Comma-separated variants");
    add_globals(c_report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        for (auto* sub : app.get_subcommands()) {
            if (sub->count("--seed")) g.seed_set = true;
        }
        if (g.threads > 0) omp_set_num_threads(g.threads);
        if (*c_geom) run_geom(g, geom);
        if (*c_sdf) run_sdf(g, sdf);
        if (*c_sample) run_sample(g, sample);
        if (*c_synth) run_synth(g, synth);
        if (*c_train) run_train(g);
        if (*c_eval) run_eval(g, ev);
        if (*c_report) run_report(g, rep);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 2;
    } catch (const SamplingError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
