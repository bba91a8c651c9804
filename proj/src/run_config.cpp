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

#include "foil/run_config.hpp"

#include <set>

#include "foil/error.hpp"
#include "foil/io.hpp"

namespace foil {

namespace {

using nlohmann::json;

class Reader {
public:
    Reader(const json& j, std::string prefix) : j_(j), prefix_(std::move(prefix)) {
        if (!j_.is_object()) throw ParseError(prefix_.empty() ? "config" : prefix_, "must be an object");
    }

    ~Reader() = default;

    void finish(std::set<std::string> extra = {}) const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key()) && !extra.count(it.key())) {
                throw ParseError(path(it.key()), "unknown field");
            }
        }
    }

    std::string path(const std::string& key) const { return prefix_.empty() ? key : prefix_ + "." + key; }

    const json* find(const std::string& key) {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    void number(const std::string& key, double& out) {
        if (const json* v = find(key)) {
            if (!v->is_number()) throw ParseError(path(key), "must be a number");
            out = v->get<double>();
        }
    }

    template <class Int>
    void integer(const std::string& key, Int& out) {
        if (const json* v = find(key)) {
            if (!v->is_number_integer()) throw ParseError(path(key), "must be an integer");
            if constexpr (std::is_unsigned_v<Int>) {
                if (v->is_number_unsigned()) {
                    out = v->get<Int>();
                } else if (v->get<long long>() < 0) {
                    throw ParseError(path(key), "must be >= 0");
                } else {
                    out = static_cast<Int>(v->get<long long>());
                }
            } else {
                out = v->get<Int>();
            }
        }
    }

    void boolean(const std::string& key, bool& out) {
        if (const json* v = find(key)) {
            if (!v->is_boolean()) throw ParseError(path(key), "must be true or false");
            out = v->get<bool>();
        }
    }

    void string(const std::string& key, std::string& out) {
        if (const json* v = find(key)) {
            if (!v->is_string()) throw ParseError(path(key), "must be a string");
            out = v->get<std::string>();
        }
    }

private:
    const json& j_;
    std::string prefix_;
    std::set<std::string> seen_;
};

std::vector<CaseSpec> parse_cases(const json& arr, const std::string& name, const std::filesystem::path& base) {
    if (!arr.is_array()) throw ParseError(name, "must be an array");
    std::vector<CaseSpec> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        Reader r(arr[i], name + "[" + std::to_string(i) + "]");
        CaseSpec c;
        std::string csv;
        r.string("csv", csv);
        r.string("naca", c.naca);
        r.number("u_in", c.u_in);
        r.integer("points", c.points);
        r.integer("seed", c.seed);
        r.finish();
        if (!csv.empty()) {
            c.kind = CaseSpec::Kind::csv;
            c.path = std::filesystem::path(csv).is_absolute() || base.empty() ? std::filesystem::path(csv) : base / csv;
        } else {
            if (c.naca.empty()) throw ParseError(r.path("naca"), "required for synthetic cases");
            parse_naca_code(c.naca);
            if (!(c.u_in > 0.0)) throw ParseError(r.path("u_in"), "required and must be positive");
            if (c.points < 1) throw ParseError(r.path("points"), "must be >= 1");
        }
        out.push_back(c);
    }
    return out;
}

json cases_json(const std::vector<CaseSpec>& cases) {
    json arr = json::array();
    for (const auto& c : cases) {
        if (c.kind == CaseSpec::Kind::csv) {
            json j = {{"csv", c.path.string()}};
            if (!c.naca.empty()) j["naca"] = c.naca;
            if (c.u_in > 0.0) j["u_in"] = c.u_in;
            arr.push_back(j);
        } else {
            arr.push_back({{"naca", c.naca}, {"u_in", c.u_in}, {"points", c.points}, {"seed", c.seed}});
        }
    }
    return arr;
}

}  // namespace

RunConfig parse_run_config(const json& j, const std::filesystem::path& base_dir) {
    RunConfig rc;
    TrainConfig& t = rc.train;
    Reader top(j, "");
    top.integer("seed", t.schedule.seed);
    if (const json* m = top.find("model")) {
        Reader r(*m, "model");
        std::string variant(to_string(t.model.variant));
        std::string activation(to_string(t.model.activation));
        r.string("variant", variant);
        r.string("activation", activation);
        r.integer("hidden_layers", t.model.hidden_layers);
        r.integer("width", t.model.width);
        r.finish();
        try {
            t.model.variant = parse_variant(variant);
        } catch (const ValidationError& e) {
            throw ParseError("model.variant", e.what());
        }
        try {
            t.model.activation = parse_activation(activation);
        } catch (const ValidationError& e) {
            throw ParseError("model.activation", e.what());
        }
    }
    if (const json* s = top.find("schedule")) {
        Reader r(*s, "schedule");
        bool has_warm = r.find("warmstart_steps") != nullptr;
        r.integer("total_steps", t.schedule.total_steps);
        if (!has_warm) t.schedule.warmstart_steps = t.schedule.total_steps / 5;
        r.integer("warmstart_steps", t.schedule.warmstart_steps);
        r.number("learning_rate", t.schedule.learning_rate);
        r.number("lr_decay", t.schedule.lr_decay);
        r.integer("plateau_steps", t.schedule.plateau_steps);
        if (const json* b = r.find("batch")) {
            Reader rb(*b, "schedule.batch");
            rb.integer("data", t.schedule.batch.data);
            rb.integer("colloc", t.schedule.batch.colloc);
            rb.integer("surface", t.schedule.batch.surface);
            rb.integer("inlet", t.schedule.batch.inlet);
            rb.integer("outlet", t.schedule.batch.outlet);
            rb.integer("side", t.schedule.batch.side);
            rb.finish();
        }
        r.finish();
    }
    if (const json* w = top.find("weights")) {
        Reader r(*w, "weights");
        r.number("data", t.weights.data);
        r.number("cont", t.weights.cont);
        r.number("mom", t.weights.mom);
        r.number("k", t.weights.k);
        r.number("eps", t.weights.eps);
        r.number("bc_surface", t.weights.bc_surface);
        r.number("bc_inlet", t.weights.bc_inlet);
        r.number("bc_outlet", t.weights.bc_outlet);
        r.number("bc_side", t.weights.bc_side);
        r.finish();
    }
    if (const json* p = top.find("physics")) {
        Reader r(*p, "physics");
        TurbulenceConstants& c = t.physics.constants;
        r.boolean("standard_sign", t.physics.residual.standard_sign);
        r.boolean("conservative_diffusion", t.physics.residual.conservative_diffusion);
        r.number("C1", c.C1);
        r.number("C2", c.C2);
        r.number("sigma_k", c.sigma_k);
        r.number("sigma_eps", c.sigma_eps);
        r.number("C_mu", c.C_mu);
        r.number("mu", c.mu);
        r.number("rho", c.rho);
        r.number("eps_floor", c.eps_floor);
        r.finish();
    }
    if (const json* d = top.find("domain")) {
        Reader r(*d, "domain");
        r.number("x_min", t.domain.x_min);
        r.number("x_max", t.domain.x_max);
        r.number("y_min", t.domain.y_min);
        r.number("y_max", t.domain.y_max);
        r.finish();
    }
    if (const json* c = top.find("collocation")) {
        Reader r(*c, "collocation");
        r.number("near_fraction", t.collocation.near_fraction);
        r.number("near_band", t.collocation.near_band);
        r.finish();
    }
    top.number("inlet_intensity", t.inlet_intensity);
    top.integer("surface_stations", t.surface_stations);
    top.number("angle_of_attack", t.angle_of_attack);
    top.integer("checkpoint_every", t.checkpoint_every);
    top.number("zone_threshold", rc.zone_threshold);
    if (const json* c = top.find("cases")) rc.cases = parse_cases(*c, "cases", base_dir);
    if (const json* c = top.find("holdout")) rc.holdout = parse_cases(*c, "holdout", base_dir);
    top.finish();

    t.model.input = InputNormalization::from_domain(t.domain);
    t.model.validate();
    t.schedule.validate();
    t.weights.validate();
    t.physics.constants.validate();
    if (t.surface_stations < 4) throw ParseError("surface_stations", "must be >= 4");
    if (!(t.inlet_intensity > 0.0)) throw ParseError("inlet_intensity", "must be positive");
    if (t.checkpoint_every < 0) throw ParseError("checkpoint_every", "must be >= 0");
    if (!(t.collocation.near_fraction >= 0.0 && t.collocation.near_fraction <= 1.0)) {
        throw ParseError("collocation.near_fraction", "must lie in [0, 1]");
    }
    if (!(t.collocation.near_band > 0.0)) throw ParseError("collocation.near_band", "must be positive");
    if (!(rc.zone_threshold > 0.0)) throw ParseError("zone_threshold", "must be positive");
    t.config_hash = config_hash(rc);
    return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("config", std::string("invalid JSON: ") + e.what());
    }
    return parse_run_config(j, path.parent_path());
}

json to_json(const RunConfig& rc) {
    const TrainConfig& t = rc.train;
    const TurbulenceConstants& c = t.physics.constants;
    const BatchSizes& b = t.schedule.batch;
    json j;
    j["seed"] = t.schedule.seed;
    j["model"] = {{"variant", to_string(t.model.variant)},
                  {"activation", to_string(t.model.activation)},
                  {"hidden_layers", t.model.hidden_layers},
                  {"width", t.model.width}};
    j["schedule"] = {{"total_steps", t.schedule.total_steps},
                     {"warmstart_steps", t.schedule.warmstart_steps},
                     {"learning_rate", t.schedule.learning_rate},
                     {"lr_decay", t.schedule.lr_decay},
                     {"plateau_steps", t.schedule.plateau_steps},
                     {"batch",
                      {{"data", b.data},
                       {"colloc", b.colloc},
                       {"surface", b.surface},
                       {"inlet", b.inlet},
                       {"outlet", b.outlet},
                       {"side", b.side}}}};
    j["weights"] = {{"data", t.weights.data},         {"cont", t.weights.cont},
                    {"mom", t.weights.mom},           {"k", t.weights.k},
                    {"eps", t.weights.eps},           {"bc_surface", t.weights.bc_surface},
                    {"bc_inlet", t.weights.bc_inlet}, {"bc_outlet", t.weights.bc_outlet},
                    {"bc_side", t.weights.bc_side}};
    j["physics"] = {{"standard_sign", t.physics.residual.standard_sign},
                    {"conservative_diffusion", t.physics.residual.conservative_diffusion},
                    {"C1", c.C1},
                    {"C2", c.C2},
                    {"sigma_k", c.sigma_k},
                    {"sigma_eps", c.sigma_eps},
                    {"C_mu", c.C_mu},
                    {"mu", c.mu},
                    {"rho", c.rho},
                    {"eps_floor", c.eps_floor}};
    j["domain"] = {{"x_min", t.domain.x_min}, {"x_max", t.domain.x_max}, {"y_min", t.domain.y_min}, {"y_max", t.domain.y_max}};
    j["collocation"] = {{"near_fraction", t.collocation.near_fraction}, {"near_band", t.collocation.near_band}};
    j["inlet_intensity"] = t.inlet_intensity;
    j["surface_stations"] = t.surface_stations;
    j["angle_of_attack"] = t.angle_of_attack;
    j["checkpoint_every"] = t.checkpoint_every;
    j["zone_threshold"] = rc.zone_threshold;
    j["cases"] = cases_json(rc.cases);
    j["holdout"] = cases_json(rc.holdout);
    return j;
}

std::string config_hash(const RunConfig& config) { return fnv1a_hex(to_json(config).dump()); }

std::vector<CaseDataset> load_cases(const std::vector<CaseSpec>& specs, const TurbulenceConstants& constants) {
    std::vector<CaseDataset> out;
    for (const auto& s : specs) {
        if (s.kind == CaseSpec::Kind::csv) {
            std::optional<std::string> naca;
            std::optional<double> u;
            if (!s.naca.empty()) naca = s.naca;
            if (s.u_in > 0.0) u = s.u_in;
            out.push_back(load_case_csv(s.path, naca, u));
        } else {
            out.push_back(synthetic_case(s.naca, s.u_in, s.points, s.seed, {}, constants));
        }
    }
    return out;
}

}  // namespace foil
