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

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "foil/data.hpp"
#include "foil/network.hpp"
#include "foil/physics.hpp"
#include "foil/sampling.hpp"

namespace foil {

/// (pred - truth) / u_in, on velocity magnitudes. Throws DomainError unless u_in > 0.
double velocity_error(double pred_magnitude, double truth_magnitude, double u_in);
/// (pred - truth) / (0.5 u_in^2).
double pressure_error(double pred, double truth, double u_in);

struct Summary {
    double mean = 0.0;
    double median = 0.0;
};

/// Mean and median of |values|. The median of an even count is the midpoint
/// of the two central order statistics. Throws ContractError when empty.
Summary summarize(std::span<const double> values);

struct ZoneReport {
    std::optional<double> near;  ///< absent when the zone is empty
    std::optional<double> far;
    double overall = 0.0;
    std::size_t near_count = 0;
    std::size_t far_count = 0;
    double threshold = 0.0;
};

/// Mean |value| per zone of zone_split(sdf, threshold).
ZoneReport zone_report(std::span<const double> values, std::span<const double> sdf, double threshold);

/// Default near/far sdf threshold, chord units.
inline constexpr double kDefaultZoneThreshold = 0.25;

struct ErrorReport {
    std::string naca_code;
    double u_in = 0.0;
    double reynolds = 0.0;
    double threshold = kDefaultZoneThreshold;
    bool sdf_recomputed = false;
    std::vector<double> sdf;
    /// Signed per-point errors as fractions (multiply by 100 for percent).
    std::vector<double> velocity_errors;
    std::vector<double> pressure_errors;
    /// Summaries in percent.
    Summary velocity;
    Summary pressure;
    ZoneReport velocity_zones;
    ZoneReport pressure_zones;
};

ErrorReport evaluate_case(const MlpParams& params, const CaseDataset& data, double threshold = kDefaultZoneThreshold,
                          const TurbulenceConstants& constants = {});

nlohmann::json to_json(const ErrorReport& report, bool include_points = false);

/// Ground truth at a point, or nullopt where none is defined.
using TruthFn = std::function<std::optional<FlowState>(Vec2, double sdf)>;

/// Nearest-sample truth over a case's scattered points.
TruthFn nearest_sample_truth(const CaseDataset& data);

struct FieldGrid {
    int nx = 0;
    int ny = 0;
    std::vector<double> x;  ///< row-major, row 0 at y_max
    std::vector<double> y;
    std::vector<double> sdf;
    std::vector<FlowState> predicted;  ///< physical units
    std::vector<double> velocity_error;  ///< signed fraction; NaN when masked or no truth
    bool masked(std::size_t i) const { return sdf[i] < 0.0; }
};

/// Regular resolution x resolution grid over the domain (nodes include the
/// edges). Throws DomainError when resolution < 16.
FieldGrid export_grid(const MlpParams& params, const AirfoilParams& airfoil, double u_in, const Domain& domain,
                      int resolution, const TruthFn& truth = {});

/// Linear grey scale: 255 * min(|error| / clip, 1), rounded; masked cells 0.
inline constexpr double kImageClip = 0.2;

std::string grid_csv_text(const FieldGrid& grid, const std::string& config_hash = "");
FieldGrid load_grid_csv(const std::filesystem::path& path);
/// Plain (P2) portable graymap of |velocity error|.
std::string error_image_pgm(const FieldGrid& grid, double clip = kImageClip);

/// Near/far/overall velocity and pressure means per variant, one column per
/// variant, plus whether L <= G in the near zone.
std::string ablation_table(const std::vector<std::pair<std::string, ErrorReport>>& columns);

}  // namespace foil
