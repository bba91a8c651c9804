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

// Per-point scalar evaluation of the surrogate and its parameter gradient.
// Deliberately written with plain loops and no shared code path with the
// batched Eigen kernels beyond the activation Taylor helpers.

#include <cmath>
#include <vector>

#include "foil/error.hpp"
#include "foil/network_kernels.hpp"

namespace foil::reference {

namespace {

// Jet blocks: 0 value, 1 d/dx, 2 d/dy, 3 d2/dx2, 4 d2/dy2.
struct Tape {
    int blocks = 1;
    std::vector<std::vector<double>> a;  // a[l]: input to layer l, blocks x cols
    std::vector<std::vector<double>> z;  // z[l]: pre-activation of layer l, blocks x rows
};

Tape run_forward(const MlpParams& params, std::span<const double> input, int blocks) {
    const MlpConfig& cfg = params.config();
    if (static_cast<int>(input.size()) != cfg.input_dim()) {
        throw ContractError("input dimension does not match the model");
    }
    const int layers = params.layer_count();
    Tape tape;
    tape.blocks = blocks;
    tape.a.resize(static_cast<std::size_t>(layers));
    tape.z.resize(static_cast<std::size_t>(layers));

    const int in_dim = cfg.input_dim();
    auto& a0 = tape.a[0];
    a0.assign(static_cast<std::size_t>(blocks * in_dim), 0.0);
    for (int c = 0; c < in_dim; ++c) a0[static_cast<std::size_t>(c)] = input[static_cast<std::size_t>(c)];
    if (blocks == 5) {
        a0[static_cast<std::size_t>(1 * in_dim + 0)] = 1.0 / cfg.input.x_half_range;
        a0[static_cast<std::size_t>(2 * in_dim + 1)] = 1.0 / cfg.input.y_half_range;
    }

    for (int l = 0; l < layers; ++l) {
        const LayerShape& s = params.layout()[static_cast<std::size_t>(l)];
        const auto& a = tape.a[static_cast<std::size_t>(l)];
        auto& z = tape.z[static_cast<std::size_t>(l)];
        z.assign(static_cast<std::size_t>(blocks * s.rows), 0.0);
        for (int b = 0; b < blocks; ++b) {
            for (int r = 0; r < s.rows; ++r) {
                double sum = b == 0 ? params.bias(l, r) : 0.0;
                for (int c = 0; c < s.cols; ++c) {
                    sum += params.weight(l, r, c) * a[static_cast<std::size_t>(b * s.cols + c)];
                }
                z[static_cast<std::size_t>(b * s.rows + r)] = sum;
            }
        }
        for (double v : z) {
            if (!std::isfinite(v)) throw NumericError("non-finite activation", l);
        }
        if (l + 1 == layers) break;
        auto& next = tape.a[static_cast<std::size_t>(l + 1)];
        next = z;
        const int R = s.rows;
        for (int r = 0; r < R; ++r) {
            const auto t = detail::activation_taylor(cfg.activation, z[static_cast<std::size_t>(r)]);
            if (blocks == 1) {
                next[static_cast<std::size_t>(r)] = t.s0;
                continue;
            }
            detail::jet_apply(t, next[static_cast<std::size_t>(r)], next[static_cast<std::size_t>(R + r)],
                              next[static_cast<std::size_t>(2 * R + r)], next[static_cast<std::size_t>(3 * R + r)],
                              next[static_cast<std::size_t>(4 * R + r)]);
        }
    }
    return tape;
}

detail::ActivationTaylor head_taylor(const MlpConfig& cfg, int head, double raw) {
    if (head == 3) return detail::softplus_taylor(raw, cfg.k_floor);
    if (head == 4) return detail::softplus_taylor(raw, cfg.eps_floor);
    return {raw, 1.0, 0.0, 0.0};
}

// Transformed output jets, [head][block].
std::array<std::array<double, 5>, 5> heads(const MlpParams& params, const Tape& tape) {
    const auto& y = tape.z.back();
    std::array<std::array<double, 5>, 5> out{};
    for (int h = 0; h < kOutputHeads; ++h) {
        std::array<double, 5> j{};
        for (int b = 0; b < tape.blocks; ++b) j[static_cast<std::size_t>(b)] = y[static_cast<std::size_t>(b * kOutputHeads + h)];
        const auto t = head_taylor(params.config(), h, j[0]);
        detail::jet_apply(t, j[0], j[1], j[2], j[3], j[4]);
        out[static_cast<std::size_t>(h)] = j;
    }
    return out;
}

// Accumulate d(loss)/d(params) given the adjoint of the transformed heads.
void run_backward(const MlpParams& params, const Tape& tape,
                  const std::array<std::array<double, 5>, 5>& head_adjoint, std::span<double> grad) {
    const MlpConfig& cfg = params.config();
    const int layers = params.layer_count();
    const int B = tape.blocks;

    // Adjoint of the raw output layer.
    std::vector<double> dz(static_cast<std::size_t>(B * kOutputHeads), 0.0);
    const auto& y = tape.z.back();
    for (int h = 0; h < kOutputHeads; ++h) {
        std::array<double, 5> zj{};
        std::array<double, 5> adj = head_adjoint[static_cast<std::size_t>(h)];
        for (int b = 0; b < B; ++b) zj[static_cast<std::size_t>(b)] = y[static_cast<std::size_t>(b * kOutputHeads + h)];
        const auto t = head_taylor(cfg, h, zj[0]);
        detail::jet_adjoint(t, zj[1], zj[2], zj[3], zj[4], adj[0], adj[1], adj[2], adj[3], adj[4]);
        for (int b = 0; b < B; ++b) dz[static_cast<std::size_t>(b * kOutputHeads + h)] = adj[static_cast<std::size_t>(b)];
    }

    for (int l = layers - 1; l >= 0; --l) {
        const LayerShape& s = params.layout()[static_cast<std::size_t>(l)];
        const auto& a = tape.a[static_cast<std::size_t>(l)];
        for (int r = 0; r < s.rows; ++r) {
            grad[s.bias_offset + static_cast<std::size_t>(r)] += dz[static_cast<std::size_t>(r)];
            for (int c = 0; c < s.cols; ++c) {
                double acc = 0.0;
                for (int b = 0; b < B; ++b) {
                    acc += dz[static_cast<std::size_t>(b * s.rows + r)] * a[static_cast<std::size_t>(b * s.cols + c)];
                }
                grad[s.weight_offset + static_cast<std::size_t>(c) * static_cast<std::size_t>(s.rows) +
                     static_cast<std::size_t>(r)] += acc;
            }
        }
        if (l == 0) break;

        // Adjoint of this layer's input activations.
        std::vector<double> da(static_cast<std::size_t>(B * s.cols), 0.0);
        for (int b = 0; b < B; ++b) {
            for (int c = 0; c < s.cols; ++c) {
                double acc = 0.0;
                for (int r = 0; r < s.rows; ++r) {
                    acc += params.weight(l, r, c) * dz[static_cast<std::size_t>(b * s.rows + r)];
                }
                da[static_cast<std::size_t>(b * s.cols + c)] = acc;
            }
        }
        // Through the activation of the previous layer.
        const auto& zp = tape.z[static_cast<std::size_t>(l - 1)];
        const int R = s.cols;
        dz.assign(static_cast<std::size_t>(B * R), 0.0);
        for (int r = 0; r < R; ++r) {
            const auto t = detail::activation_taylor(cfg.activation, zp[static_cast<std::size_t>(r)]);
            if (B == 1) {
                dz[static_cast<std::size_t>(r)] = t.s1 * da[static_cast<std::size_t>(r)];
                continue;
            }
            double av = da[static_cast<std::size_t>(r)];
            double ax = da[static_cast<std::size_t>(R + r)];
            double ay = da[static_cast<std::size_t>(2 * R + r)];
            double axx = da[static_cast<std::size_t>(3 * R + r)];
            double ayy = da[static_cast<std::size_t>(4 * R + r)];
            detail::jet_adjoint(t, zp[static_cast<std::size_t>(R + r)], zp[static_cast<std::size_t>(2 * R + r)],
                                zp[static_cast<std::size_t>(3 * R + r)], zp[static_cast<std::size_t>(4 * R + r)], av, ax,
                                ay, axx, ayy);
            dz[static_cast<std::size_t>(r)] = av;
            dz[static_cast<std::size_t>(R + r)] = ax;
            dz[static_cast<std::size_t>(2 * R + r)] = ay;
            dz[static_cast<std::size_t>(3 * R + r)] = axx;
            dz[static_cast<std::size_t>(4 * R + r)] = ayy;
        }
    }
}

FlowJet to_flow_jet(const std::array<std::array<double, 5>, 5>& h) {
    auto jet = [](const std::array<double, 5>& a) { return Jet{a[0], a[1], a[2], a[3], a[4]}; };
    return {jet(h[0]), jet(h[1]), jet(h[2]), jet(h[3]), jet(h[4])};
}

std::array<std::array<double, 5>, 5> from_flow_jet(const FlowJet& j) {
    auto arr = [](const Jet& a) { return std::array<double, 5>{a.val, a.dx, a.dy, a.dxx, a.dyy}; };
    return {arr(j.u), arr(j.v), arr(j.p), arr(j.k), arr(j.eps)};
}

std::span<const double> column(const Eigen::MatrixXd& m, Eigen::Index j) {
    return {m.data() + j * m.rows(), static_cast<std::size_t>(m.rows())};
}

void add(LossParts& acc, const LossParts& x) {
    for (int i = 0; i < kLossParts; ++i) acc[static_cast<std::size_t>(i)] += x[static_cast<std::size_t>(i)];
}

}  // namespace

FlowState forward_point(const MlpParams& params, std::span<const double> input) {
    const Tape tape = run_forward(params, input, 1);
    const auto h = heads(params, tape);
    return {h[0][0], h[1][0], h[2][0], h[3][0], h[4][0]};
}

FlowJet jet_point(const MlpParams& params, std::span<const double> input) {
    const Tape tape = run_forward(params, input, 5);
    return to_flow_jet(heads(params, tape));
}

BatchGradient value_loss_gradient(const MlpParams& params, const Eigen::MatrixXd& inputs,
                                  const ValueAdjointFn& adjoint, bool want_gradient) {
    BatchGradient out;
    if (want_gradient) out.gradient.assign(params.size(), 0.0);
    for (Eigen::Index j = 0; j < inputs.cols(); ++j) {
        const Tape tape = run_forward(params, column(inputs, j), 1);
        const auto h = heads(params, tape);
        const FlowState state{h[0][0], h[1][0], h[2][0], h[3][0], h[4][0]};
        FlowState adj;
        add(out.parts, adjoint(static_cast<std::size_t>(j), state, adj));
        if (!want_gradient) continue;
        std::array<std::array<double, 5>, 5> ha{};
        ha[0][0] = adj.u;
        ha[1][0] = adj.v;
        ha[2][0] = adj.p;
        ha[3][0] = adj.k;
        ha[4][0] = adj.eps;
        run_backward(params, tape, ha, out.gradient);
    }
    return out;
}

BatchGradient jet_loss_gradient(const MlpParams& params, const Eigen::MatrixXd& inputs,
                                const JetAdjointFn& adjoint, bool want_gradient) {
    BatchGradient out;
    if (want_gradient) out.gradient.assign(params.size(), 0.0);
    for (Eigen::Index j = 0; j < inputs.cols(); ++j) {
        const Tape tape = run_forward(params, column(inputs, j), 5);
        const FlowJet jet = to_flow_jet(heads(params, tape));
        FlowJet adj;
        add(out.parts, adjoint(static_cast<std::size_t>(j), jet, adj));
        if (want_gradient) run_backward(params, tape, from_flow_jet(adj), out.gradient);
    }
    return out;
}

}  // namespace foil::reference
