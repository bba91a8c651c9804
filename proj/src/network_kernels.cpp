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

#include "foil/network_kernels.hpp"

#include <algorithm>
#include <exception>
#include <mutex>

#include "foil/error.hpp"

namespace foil {

namespace {

using Eigen::ArrayXXd;
using Eigen::Index;
using Eigen::Map;
using Eigen::MatrixXd;

Map<const MatrixXd> weight_map(const MlpParams& p, int l) {
    const LayerShape& s = p.layout()[static_cast<std::size_t>(l)];
    return {p.flat().data() + s.weight_offset, s.rows, s.cols};
}

Map<const Eigen::VectorXd> bias_map(const MlpParams& p, int l) {
    const LayerShape& s = p.layout()[static_cast<std::size_t>(l)];
    return {p.flat().data() + s.bias_offset, s.rows};
}

// Forward state of one chunk. Column block b of every matrix holds jet
// component b (value, d/dx, d/dy, d2/dx2, d2/dy2) of the chunk's points.
struct ChunkTape {
    int blocks = 1;
    Index n = 0;
    std::vector<MatrixXd> a;  // inputs of each layer
    std::vector<MatrixXd> z;  // pre-activations of each layer
    std::vector<ArrayXXd> s1, s2, s3;  // activation derivatives at the value block
};

void forward_chunk(const MlpParams& params, const MatrixXd& inputs, Index start, Index n, int blocks,
                   ChunkTape& tape) {
    const MlpConfig& cfg = params.config();
    const int layers = params.layer_count();
    tape.blocks = blocks;
    tape.n = n;
    tape.a.resize(static_cast<std::size_t>(layers));
    tape.z.resize(static_cast<std::size_t>(layers));
    tape.s1.resize(static_cast<std::size_t>(layers));
    tape.s2.resize(static_cast<std::size_t>(layers));
    tape.s3.resize(static_cast<std::size_t>(layers));

    MatrixXd& a0 = tape.a[0];
    a0.setZero(inputs.rows(), blocks * n);
    a0.leftCols(n) = inputs.middleCols(start, n);
    if (blocks == 5) {
        a0.row(0).segment(n, n).setConstant(1.0 / cfg.input.x_half_range);
        a0.row(1).segment(2 * n, n).setConstant(1.0 / cfg.input.y_half_range);
    }

    for (int l = 0; l < layers; ++l) {
        const auto W = weight_map(params, l);
        MatrixXd& z = tape.z[static_cast<std::size_t>(l)];
        z.noalias() = W * tape.a[static_cast<std::size_t>(l)];
        z.leftCols(n).colwise() += bias_map(params, l);
        if (!z.allFinite()) throw NumericError("non-finite activation", l);
        if (l + 1 == layers) break;

        const Index R = z.rows();
        ArrayXXd s0(R, n);
        ArrayXXd& s1 = tape.s1[static_cast<std::size_t>(l)];
        ArrayXXd& s2 = tape.s2[static_cast<std::size_t>(l)];
        ArrayXXd& s3 = tape.s3[static_cast<std::size_t>(l)];
        s1.resize(R, n);
        s2.resize(R, n);
        s3.resize(R, n);
        const auto zv = z.leftCols(n).array();
        if (cfg.activation == Activation::sine) {
            s0 = zv.sin();
            s1 = zv.cos();
            s2 = -s0;
            s3 = -s1;
        } else {
            s0 = zv.tanh();
            s1 = 1.0 - s0.square();
            s2 = -2.0 * s0 * s1;
            s3 = -2.0 * (s1.square() + s0 * s2);
        }
        MatrixXd& next = tape.a[static_cast<std::size_t>(l + 1)];
        next.resize(R, blocks * n);
        next.leftCols(n) = s0.matrix();
        if (blocks == 5) {
            const auto zx = z.middleCols(n, n).array();
            const auto zy = z.middleCols(2 * n, n).array();
            next.middleCols(n, n) = (s1 * zx).matrix();
            next.middleCols(2 * n, n) = (s1 * zy).matrix();
            next.middleCols(3 * n, n) = (s2 * zx.square() + s1 * z.middleCols(3 * n, n).array()).matrix();
            next.middleCols(4 * n, n) = (s2 * zy.square() + s1 * z.middleCols(4 * n, n).array()).matrix();
        }
    }
}

detail::ActivationTaylor head_taylor(const MlpConfig& cfg, int head, double raw) {
    if (head == 3) return detail::softplus_taylor(raw, cfg.k_floor);
    if (head == 4) return detail::softplus_taylor(raw, cfg.eps_floor);
    return {raw, 1.0, 0.0, 0.0};
}

// Transformed head jet of point j, as [head][block].
std::array<std::array<double, 5>, 5> point_heads(const MlpConfig& cfg, const ChunkTape& tape, Index j) {
    const MatrixXd& y = tape.z.back();
    std::array<std::array<double, 5>, 5> out{};
    for (int h = 0; h < kOutputHeads; ++h) {
        std::array<double, 5> v{};
        for (int b = 0; b < tape.blocks; ++b) v[static_cast<std::size_t>(b)] = y(h, b * tape.n + j);
        detail::jet_apply(head_taylor(cfg, h, v[0]), v[0], v[1], v[2], v[3], v[4]);
        out[static_cast<std::size_t>(h)] = v;
    }
    return out;
}

void backward_chunk(const MlpParams& params, const ChunkTape& tape, MatrixXd dz, std::span<double> grad) {
    const int layers = params.layer_count();
    const Index n = tape.n;
    for (int l = layers - 1; l >= 0; --l) {
        const LayerShape& s = params.layout()[static_cast<std::size_t>(l)];
        Map<MatrixXd> gW(grad.data() + s.weight_offset, s.rows, s.cols);
        Map<Eigen::VectorXd> gb(grad.data() + s.bias_offset, s.rows);
        gW.noalias() += dz * tape.a[static_cast<std::size_t>(l)].transpose();
        gb += dz.leftCols(n).rowwise().sum();
        if (l == 0) break;

        const MatrixXd da = weight_map(params, l).transpose() * dz;
        const auto& zp = tape.z[static_cast<std::size_t>(l - 1)];
        const ArrayXXd& s1 = tape.s1[static_cast<std::size_t>(l - 1)];
        const ArrayXXd& s2 = tape.s2[static_cast<std::size_t>(l - 1)];
        const ArrayXXd& s3 = tape.s3[static_cast<std::size_t>(l - 1)];
        dz.resize(da.rows(), da.cols());
        if (tape.blocks == 1) {
            dz = (s1 * da.array()).matrix();
            continue;
        }
        const auto av = da.leftCols(n).array();
        const auto ax = da.middleCols(n, n).array();
        const auto ay = da.middleCols(2 * n, n).array();
        const auto axx = da.middleCols(3 * n, n).array();
        const auto ayy = da.middleCols(4 * n, n).array();
        const auto zx = zp.middleCols(n, n).array();
        const auto zy = zp.middleCols(2 * n, n).array();
        const auto zxx = zp.middleCols(3 * n, n).array();
        const auto zyy = zp.middleCols(4 * n, n).array();
        dz.leftCols(n) = (s1 * av + s2 * (zx * ax + zy * ay) + s3 * (zx.square() * axx + zy.square() * ayy) +
                          s2 * (zxx * axx + zyy * ayy))
                             .matrix();
        dz.middleCols(n, n) = (s1 * ax + 2.0 * s2 * zx * axx).matrix();
        dz.middleCols(2 * n, n) = (s1 * ay + 2.0 * s2 * zy * ayy).matrix();
        dz.middleCols(3 * n, n) = (s1 * axx).matrix();
        dz.middleCols(4 * n, n) = (s1 * ayy).matrix();
    }
}

// Adjoint of the output transform for point j, written into dz (raw heads).
void head_adjoint(const MlpConfig& cfg, const ChunkTape& tape, Index j,
                  const std::array<std::array<double, 5>, 5>& adj, MatrixXd& dz) {
    const MatrixXd& y = tape.z.back();
    for (int h = 0; h < kOutputHeads; ++h) {
        std::array<double, 5> zj{};
        std::array<double, 5> a = adj[static_cast<std::size_t>(h)];
        for (int b = 0; b < tape.blocks; ++b) zj[static_cast<std::size_t>(b)] = y(h, b * tape.n + j);
        detail::jet_adjoint(head_taylor(cfg, h, zj[0]), zj[1], zj[2], zj[3], zj[4], a[0], a[1], a[2], a[3], a[4]);
        for (int b = 0; b < tape.blocks; ++b) dz(h, b * tape.n + j) = a[static_cast<std::size_t>(b)];
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

// Callback adapter: (tape, point-in-chunk, global index, head jets) -> parts,
// filling the head adjoint.
using ChunkCallback = std::function<LossParts(std::size_t, const std::array<std::array<double, 5>, 5>&,
                                              std::array<std::array<double, 5>, 5>&)>;

BatchGradient run_batched(const MlpParams& params, const MatrixXd& inputs, int blocks,
                          const ChunkCallback& callback, bool want_gradient) {
    const MlpConfig& cfg = params.config();
    if (inputs.rows() != cfg.input_dim()) throw ContractError("input dimension does not match the model");
    const Index total = inputs.cols();
    const Index chunks = (total + kChunkSize - 1) / kChunkSize;
    std::vector<LossParts> parts(static_cast<std::size_t>(chunks));
    std::vector<std::vector<double>> grads(want_gradient ? static_cast<std::size_t>(chunks) : 0);
    std::exception_ptr error;
    Index error_chunk = chunks;
    std::mutex error_mutex;

#pragma omp parallel for schedule(static)
    for (Index c = 0; c < chunks; ++c) {
        try {
            const Index start = c * kChunkSize;
            const Index n = std::min<Index>(kChunkSize, total - start);
            ChunkTape tape;
            forward_chunk(params, inputs, start, n, blocks, tape);
            MatrixXd dz = MatrixXd::Zero(kOutputHeads, blocks * n);
            LossParts acc{};
            for (Index j = 0; j < n; ++j) {
                std::array<std::array<double, 5>, 5> adj{};
                const LossParts p = callback(static_cast<std::size_t>(start + j), point_heads(cfg, tape, j), adj);
                for (int i = 0; i < kLossParts; ++i) acc[static_cast<std::size_t>(i)] += p[static_cast<std::size_t>(i)];
                if (want_gradient) head_adjoint(cfg, tape, j, adj, dz);
            }
            parts[static_cast<std::size_t>(c)] = acc;
            if (want_gradient) {
                auto& g = grads[static_cast<std::size_t>(c)];
                g.assign(params.size(), 0.0);
                backward_chunk(params, tape, std::move(dz), g);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (c < error_chunk) {
                error_chunk = c;
                error = std::current_exception();
            }
        }
    }
    if (error) std::rethrow_exception(error);

    BatchGradient out;
    for (const LossParts& p : parts) {
        for (int i = 0; i < kLossParts; ++i) out.parts[static_cast<std::size_t>(i)] += p[static_cast<std::size_t>(i)];
    }
    if (want_gradient) {
        out.gradient.assign(params.size(), 0.0);
        for (const auto& g : grads) {
            for (std::size_t i = 0; i < g.size(); ++i) out.gradient[i] += g[i];
        }
    }
    return out;
}

}  // namespace

Eigen::MatrixXd stack_inputs(std::span<const ModelInput> inputs) {
    if (inputs.empty()) return {};
    MatrixXd m(inputs.front().size(), static_cast<Index>(inputs.size()));
    for (std::size_t j = 0; j < inputs.size(); ++j) {
        if (inputs[j].size() != m.rows()) throw ContractError("stack_inputs: mixed input layouts");
        for (int i = 0; i < m.rows(); ++i) m(i, static_cast<Index>(j)) = inputs[j].values()[static_cast<std::size_t>(i)];
    }
    return m;
}

std::vector<FlowState> forward_batch(const MlpParams& params, const Eigen::MatrixXd& inputs) {
    std::vector<FlowState> out(static_cast<std::size_t>(inputs.cols()));
    run_batched(
        params, inputs, 1,
        [&](std::size_t i, const auto& h, auto&) {
            out[i] = {h[0][0], h[1][0], h[2][0], h[3][0], h[4][0]};
            return LossParts{};
        },
        false);
    return out;
}

std::vector<FlowJet> jet_batch(const MlpParams& params, const Eigen::MatrixXd& inputs) {
    std::vector<FlowJet> out(static_cast<std::size_t>(inputs.cols()));
    run_batched(
        params, inputs, 5,
        [&](std::size_t i, const auto& h, auto&) {
            out[i] = to_flow_jet(h);
            return LossParts{};
        },
        false);
    return out;
}

BatchGradient value_loss_gradient(const MlpParams& params, const Eigen::MatrixXd& inputs,
                                  const ValueAdjointFn& adjoint, bool want_gradient) {
    return run_batched(
        params, inputs, 1,
        [&](std::size_t i, const auto& h, auto& adj) {
            FlowState a;
            const LossParts parts = adjoint(i, FlowState{h[0][0], h[1][0], h[2][0], h[3][0], h[4][0]}, a);
            adj[0][0] = a.u;
            adj[1][0] = a.v;
            adj[2][0] = a.p;
            adj[3][0] = a.k;
            adj[4][0] = a.eps;
            return parts;
        },
        want_gradient);
}

BatchGradient jet_loss_gradient(const MlpParams& params, const Eigen::MatrixXd& inputs,
                                const JetAdjointFn& adjoint, bool want_gradient) {
    return run_batched(
        params, inputs, 5,
        [&](std::size_t i, const auto& h, auto& adj) {
            FlowJet a;
            const LossParts parts = adjoint(i, to_flow_jet(h), a);
            adj = from_flow_jet(a);
            return parts;
        },
        want_gradient);
}

}  // namespace foil
