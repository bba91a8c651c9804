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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "foil/data.hpp"
#include "foil/training.hpp"

namespace foil {

/// Source of one case: a synthetic stand-in or a CSV file.
struct CaseSpec {
    enum class Kind { synthetic, csv } kind = Kind::synthetic;
    std::string naca;
    double u_in = 0.0;
    int points = 2000;
    std::uint64_t seed = 0;
    std::filesystem::path path;
};

/// Resolved run configuration. Every field has a default; parsing rejects
/// unknown keys and wrong types, naming the offending field.
struct RunConfig {
    TrainConfig train;
    std::vector<CaseSpec> cases;
    std::vector<CaseSpec> holdout;
    double zone_threshold = 0.25;
};

/// Schema (all keys optional):
///   seed, model{variant, hidden_layers, width, activation},
///   schedule{total_steps, warmstart_steps, learning_rate, lr_decay,
///            plateau_steps, batch{data, colloc, surface, inlet, outlet, side}},
///   weights{data, cont, mom, k, eps, bc_surface, bc_inlet, bc_outlet, bc_side},
///   physics{standard_sign, conservative_diffusion, C1, C2, sigma_k,
///           sigma_eps, C_mu, mu, rho, eps_floor},
///   domain{x_min, x_max, y_min, y_max}, collocation{near_fraction, near_band},
///   inlet_intensity, surface_stations, angle_of_attack, checkpoint_every,
///   zone_threshold,
///   cases[{naca, u_in, points, seed} | {csv, naca?, u_in?}], holdout[...].
/// Relative csv paths resolve against base_dir.
RunConfig parse_run_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

/// Fully resolved config, defaults included.
nlohmann::json to_json(const RunConfig& config);
/// FNV-1a of the canonical dump of to_json.
std::string config_hash(const RunConfig& config);

std::vector<CaseDataset> load_cases(const std::vector<CaseSpec>& specs, const TurbulenceConstants& constants = {});

}  // namespace foil
