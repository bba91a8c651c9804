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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "foil/data.hpp"
#include "foil/network.hpp"
#include "foil/physics.hpp"
#include "foil/sampling.hpp"

namespace foil {

enum class LossComponent { data, cont, mom, k, eps, bc_surface, bc_inlet, bc_outlet, bc_side };
inline constexpr int kLossComponents = 9;
std::string_view to_string(LossComponent c);

/// Unweighted mean-squared value of each component.
using LossBreakdown = std::array<double, kLossComponents>;

struct LossWeights {
    double data = 1.0;
    double cont = 0.1;
    double mom = 0.1;
    double k = 0.1;
    double eps = 0.1;
    double bc_surface = 1.0;
    double bc_inlet = 1.0;
    double bc_outlet = 1.0;
    double bc_side = 1.0;

    double operator[](LossComponent c) const;
    /// Throws ValidationError on a negative or non-finite weight, or when all are zero.
    void validate() const;
};

enum class Phase { warmstart, full };
std::string_view to_string(Phase p);

/// Loss family a component belongs to.
enum class LossFamily { data, pde, bc };
LossFamily family_of(LossComponent c);

/// Weight actually applied in a phase (PDE and BC weights vanish in warmstart).
double effective_weight(const LossWeights& w, LossComponent c, Phase phase);

struct BatchSizes {
    int data = 256;
    int colloc = 128;
    int surface = 32;
    int inlet = 16;
    int outlet = 16;
    int side = 16;
};

struct Schedule {
    int warmstart_steps = 2000;
    int total_steps = 10000;
    double learning_rate = 1e-3;
    double lr_decay = 0.5;
    int plateau_steps = 500;
    BatchSizes batch;
    std::uint64_t seed = 0;

    /// warmstart = 20% of total.
    static Schedule with_total(int total_steps);
    void validate() const;
};

/// One labelled data point (targets normalized by the point's u_in).
struct DataPoint {
    ModelInput input;
    FlowState target;
    bool has_turbulence = true;
};

struct CollocationPoint {
    ModelInput input;
    double u_in = 0.0;
};

enum class BoundaryKind { surface, inlet, outlet, side };

struct BoundaryPoint {
    ModelInput input;
    BoundaryKind kind = BoundaryKind::inlet;
    /// Normalized inlet k and eps targets (inlet only).
    double k_target = 0.0;
    double eps_target = 0.0;
};

/// Everything one loss evaluation needs.
struct LossBatch {
    std::vector<DataPoint> data;
    std::vector<CollocationPoint> colloc;
    std::vector<BoundaryPoint> boundary;
};

struct GradientNorms {
    double data = 0.0;
    double pde = 0.0;
    double bc = 0.0;
};

struct LossResult {
    double total = 0.0;
    LossBreakdown components{};
    std::vector<double> gradient;  ///< empty unless requested
    GradientNorms grad_norms;
    std::size_t eps_clamped = 0;
};

struct LossOptions {
    TurbulenceConstants constants;
    ResidualOptions residual;
};

/// Weighted loss over a batch. Data: mean over points of the squared misfit
/// summed over outputs (u, v, p and, when available, k, eps). PDE: mean
/// squared nondimensional residual per equation (mom sums x and y). BC:
/// mean squared residual per boundary kind, on normalized outputs.
/// In warmstart the PDE and BC passes are skipped entirely. Throws
/// ContractError on a variant mismatch and NumericError naming the
/// component on a non-finite loss.
LossResult total_loss(const MlpParams& params, const LossBatch& batch, const LossWeights& weights, Phase phase,
                      const LossOptions& options = {}, bool want_gradient = true);

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    long t = 0;
};

/// One Adam update (beta1 0.9, beta2 0.999, eps 1e-8). Throws NumericError
/// on a non-finite gradient, leaving params untouched.
void adam_step(std::span<double> params, std::span<const double> gradient, AdamState& state, double lr);

/// rho u_in L / mu. Throws DomainError unless all inputs are positive.
double reynolds(double u_in, double chord, const TurbulenceConstants& c);

struct TrainRecord {
    int step = 0;  ///< 1-based
    Phase phase = Phase::warmstart;
    LossBreakdown components{};
    double total = 0.0;
    double learning_rate = 0.0;
    GradientNorms grad_norms;
    std::size_t eps_clamped = 0;
};

struct TrainConfig {
    MlpConfig model;
    Schedule schedule;
    LossWeights weights;
    LossOptions physics;
    Domain domain;
    CollocationConfig collocation;
    double inlet_intensity = 0.05;
    int surface_stations = 200;
    /// Rigid rotation of every section, degrees, nose up positive.
    double angle_of_attack = 0.0;
    /// Write a checkpoint every N steps (0: only the final one) when
    /// checkpoint_dir is set.
    int checkpoint_every = 0;
    std::filesystem::path checkpoint_dir;
    /// Stored in checkpoint metadata.
    std::string config_hash;
};

enum class TrainStatus { completed, diverged, non_finite };
std::string_view to_string(TrainStatus s);

struct TrainResult {
    MlpParams params;  ///< final, or last good state on abort
    std::vector<TrainRecord> history;
    TrainStatus status = TrainStatus::completed;
    std::string message;
};

/// Training cases with their per-sample sdf resolved.
struct PreparedCase {
    CaseDataset data;
    AirfoilParams airfoil;
    std::vector<double> sdf;
};

std::vector<PreparedCase> prepare_cases(std::span<const CaseDataset> cases);

/// Batch for a 1-based step; a pure function of (config, cases, step).
LossBatch assemble_batch(const TrainConfig& config, std::span<const PreparedCase> cases, int step);

TrainResult train(const TrainConfig& config, std::span<const CaseDataset> cases);

/// CSV training log, one row per step, preceded by a versioned header.
std::string training_log_csv(std::span<const TrainRecord> history, const std::string& config_hash);

}  // namespace foil
