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

// Batched surrogate evaluation with parameter gradients.
//
// Points are processed in fixed chunks of kChunkSize columns. Chunks run in
// parallel (OpenMP); per-chunk partial sums are reduced in chunk order, so
// results do not depend on the number of threads. The `reference` namespace
// holds a per-point scalar implementation of the same maths, kept as the
// test oracle and benchmark baseline.

#include <array>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "foil/jet.hpp"
#include "foil/network.hpp"

namespace foil {

inline constexpr int kChunkSize = 64;
inline constexpr int kLossParts = 6;
using LossParts = std::array<double, kLossParts>;

/// Per-point loss callback for value-only batches. Receives the point index
/// and the (normalized) outputs, writes d(loss)/d(outputs) into `adjoint`
/// and returns the point's loss parts. Called concurrently from several
/// threads; must not touch shared state.
using ValueAdjointFn = std::function<LossParts(std::size_t, const FlowState&, FlowState& adjoint)>;

/// Same for jet batches; the adjoint covers every jet component.
using JetAdjointFn = std::function<LossParts(std::size_t, const FlowJet&, FlowJet& adjoint)>;

struct BatchGradient {
    LossParts parts{};              ///< summed over points
    std::vector<double> gradient;   ///< empty when not requested
};

/// Columns of `inputs` are normalized input vectors (see build_input).
Eigen::MatrixXd stack_inputs(std::span<const ModelInput> inputs);

std::vector<FlowState> forward_batch(const MlpParams& params, const Eigen::MatrixXd& inputs);
std::vector<FlowJet> jet_batch(const MlpParams& params, const Eigen::MatrixXd& inputs);

BatchGradient value_loss_gradient(const MlpParams& params, const Eigen::MatrixXd& inputs,
                                  const ValueAdjointFn& adjoint, bool want_gradient = true);
BatchGradient jet_loss_gradient(const MlpParams& params, const Eigen::MatrixXd& inputs,
                                const JetAdjointFn& adjoint, bool want_gradient = true);

namespace reference {

FlowState forward_point(const MlpParams& params, std::span<const double> input);
FlowJet jet_point(const MlpParams& params, std::span<const double> input);

BatchGradient value_loss_gradient(const MlpParams& params, const Eigen::MatrixXd& inputs,
                                  const ValueAdjointFn& adjoint, bool want_gradient = true);
BatchGradient jet_loss_gradient(const MlpParams& params, const Eigen::MatrixXd& inputs,
                                const JetAdjointFn& adjoint, bool want_gradient = true);

}  // namespace reference

namespace detail {

/// Activation value and its first three derivatives at z.
struct ActivationTaylor {
    double s0, s1, s2, s3;
};

inline ActivationTaylor activation_taylor(Activation act, double z) {
    if (act == Activation::sine) {
        const double s = std::sin(z);
        const double c = std::cos(z);
        return {s, c, -s, -c};
    }
    const double s = std::tanh(z);
    const double s1 = 1.0 - s * s;
    const double s2 = -2.0 * s * s1;
    return {s, s1, s2, -2.0 * (s1 * s1 + s * s2)};
}

/// softplus(z) + floor and its derivatives.
inline ActivationTaylor softplus_taylor(double z, double floor) {
    const double sg = sigmoid(z);
    const double g2 = sg * (1.0 - sg);
    return {softplus(z) + floor, sg, g2, g2 * (1.0 - 2.0 * sg)};
}

/// Push a jet (v, x, y, xx, yy) through a scalar function with Taylor
/// coefficients t, in place.
inline void jet_apply(const ActivationTaylor& t, double& v, double& x, double& y, double& xx,
                      double& yy) {
    const double zx = x;
    const double zy = y;
    v = t.s0;
    x = t.s1 * zx;
    y = t.s1 * zy;
    xx = t.s2 * zx * zx + t.s1 * xx;
    yy = t.s2 * zy * zy + t.s1 * yy;
}

/// Adjoint of jet_apply: given the pre-image jet z and the adjoint of the
/// image, overwrite the adjoint with the adjoint of z.
inline void jet_adjoint(const ActivationTaylor& t, double zx, double zy, double zxx, double zyy,
                        double& av, double& ax, double& ay, double& axx, double& ayy) {
    const double bv = t.s1 * av + t.s2 * (zx * ax + zy * ay) + t.s3 * (zx * zx * axx + zy * zy * ayy) +
                      t.s2 * (zxx * axx + zyy * ayy);
    const double bx = t.s1 * ax + 2.0 * t.s2 * zx * axx;
    const double by = t.s1 * ay + 2.0 * t.s2 * zy * ayy;
    av = bv;
    ax = bx;
    ay = by;
    axx = t.s1 * axx;
    ayy = t.s1 * ayy;
}

}  // namespace detail

}  // namespace foil
