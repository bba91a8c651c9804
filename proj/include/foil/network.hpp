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

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "foil/geometry.hpp"
#include "foil/jet.hpp"
#include "foil/sampling.hpp"

namespace foil {

/// Input layout of the surrogate.
///   L  : x, y, sdf, u_in
///   G  : x, y, m, p, t, u_in
///   LG : x, y, sdf, m, p, t, u_in
enum class ModelVariant { L, G, LG };

constexpr int input_dimension(ModelVariant v) {
    switch (v) {
        case ModelVariant::L: return 4;
        case ModelVariant::G: return 6;
        case ModelVariant::LG: return 7;
    }
    return 0;
}
constexpr bool uses_sdf(ModelVariant v) { return v != ModelVariant::G; }
constexpr bool uses_digits(ModelVariant v) { return v != ModelVariant::L; }

std::string_view to_string(ModelVariant v);
ModelVariant parse_variant(std::string_view text);

enum class Activation { tanh, sine };

std::string_view to_string(Activation a);
/// Only C2 (here: C-infinity) activations are accepted.
Activation parse_activation(std::string_view text);

/// Affine maps taking raw inputs to O(1) network inputs.
struct InputNormalization {
    double x_center = 1.0;
    double x_half_range = 3.0;
    double y_center = 0.0;
    double y_half_range = 2.0;
    double sdf_scale = 1.0;
    double u_lo = 2.0;
    double u_hi = 7.0;

    static InputNormalization from_domain(const Domain& domain);
};

struct MlpConfig {
    int hidden_layers = 6;
    int width = 64;
    Activation activation = Activation::tanh;
    ModelVariant variant = ModelVariant::L;
    InputNormalization input;
    double k_floor = 1e-8;
    double eps_floor = 1e-10;

    int input_dim() const { return input_dimension(variant); }
    void validate() const;
};

struct LayerShape {
    int rows = 0;  ///< fan_out
    int cols = 0;  ///< fan_in
    std::size_t weight_offset = 0;  ///< column-major rows x cols block
    std::size_t bias_offset = 0;
};

inline constexpr int kOutputHeads = 5;

/// Weights and biases of all layers in one flat array. The layout is fully
/// determined by the config: hidden layers first, output layer last.
class MlpParams {
public:
    explicit MlpParams(MlpConfig config);

    const MlpConfig& config() const { return config_; }
    const std::vector<LayerShape>& layout() const { return layout_; }
    std::span<const double> flat() const { return values_; }
    std::span<double> flat() { return values_; }
    std::size_t size() const { return values_.size(); }
    int layer_count() const { return static_cast<int>(layout_.size()); }

    double weight(int layer, int row, int col) const {
        const LayerShape& s = layout_[static_cast<std::size_t>(layer)];
        return values_[s.weight_offset + static_cast<std::size_t>(col) * static_cast<std::size_t>(s.rows) +
                       static_cast<std::size_t>(row)];
    }
    double bias(int layer, int row) const {
        return values_[layout_[static_cast<std::size_t>(layer)].bias_offset + static_cast<std::size_t>(row)];
    }

    bool all_finite() const;
    friend bool operator==(const MlpParams& a, const MlpParams& b);

private:
    MlpConfig config_;
    std::vector<LayerShape> layout_;
    std::vector<double> values_;
};

/// Glorot-uniform weights, zero biases; deterministic in seed.
MlpParams init_params(const MlpConfig& config, std::uint64_t seed);

/// Raw description of a query point.
struct PointQuery {
    double x = 0.0;
    double y = 0.0;
    std::optional<double> sdf;
    const AirfoilParams* airfoil = nullptr;
    double u_in = 0.0;
};

/// Normalized network input, tagged with the layout that produced it.
class ModelInput {
public:
    ModelVariant variant() const { return variant_; }
    std::span<const double> values() const { return {values_.data(), static_cast<std::size_t>(size_)}; }
    int size() const { return size_; }

private:
    friend ModelInput build_input(const MlpConfig&, const PointQuery&);
    friend ModelInput make_raw_input(ModelVariant, std::span<const double>);
    ModelVariant variant_ = ModelVariant::L;
    std::array<double, 7> values_{};
    int size_ = 0;
};

/// Throws ContractError when the variant needs a field the query lacks.
ModelInput build_input(const MlpConfig& config, const PointQuery& query);

/// Wrap an already-normalized vector (tests, perturbation studies).
ModelInput make_raw_input(ModelVariant variant, std::span<const double> values);

/// Surrogate outputs. In normalized form velocities are divided by u_in,
/// pressure by 0.5 u_in^2, k by u_in^2 and eps by u_in^3 (chord = 1).
struct FlowState {
    double u = 0.0;
    double v = 0.0;
    double p = 0.0;
    double k = 0.0;
    double eps = 0.0;
};

struct OutputScale {
    double velocity = 1.0;
    double pressure = 1.0;
    double k = 1.0;
    double eps = 1.0;

    static OutputScale for_inlet(double u_in) {
        return {u_in, 0.5 * u_in * u_in, u_in * u_in, u_in * u_in * u_in};
    }
};

FlowState to_physical(const FlowState& normalized, double u_in);
FlowState to_normalized(const FlowState& physical, double u_in);
FlowJet to_physical(const FlowJet& normalized, double u_in);

double softplus(double z);
double sigmoid(double z);

/// Single-point evaluation. Throws NumericError carrying the layer index on
/// non-finite activations.
FlowState forward(const MlpParams& params, const ModelInput& input);

/// Values plus exact first and pure second derivatives of all five outputs
/// with respect to the physical coordinates x and y. The sdf input is held
/// fixed.
FlowJet spatial_derivatives(const MlpParams& params, const ModelInput& input);

/// Text checkpoint: header with the full config, then the flat weights as
/// hexadecimal floats so a load reproduces every bit.
void save_checkpoint(const std::filesystem::path& path, const MlpParams& params,
                     const std::map<std::string, std::string>& metadata = {});
struct Checkpoint {
    MlpParams params;
    std::map<std::string, std::string> metadata;
};
Checkpoint load_checkpoint(const std::filesystem::path& path);
std::string checkpoint_text(const MlpParams& params, const std::map<std::string, std::string>& metadata);

}  // namespace foil
