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

// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <vector>

#include "foil/geometry.hpp"
#include "foil/network.hpp"
#include "foil/network_kernels.hpp"
#include "foil/rng.hpp"
#include "foil/sdf.hpp"

namespace {

using namespace foil;

std::vector<Vec2> random_points(int n) {
    const CounterRng rng(7);
    std::vector<Vec2> pts;
    for (int i = 0; i < n; ++i) {
        pts.push_back({rng.uniform(2 * static_cast<std::uint64_t>(i), -2.0, 4.0),
                       rng.uniform(2 * static_cast<std::uint64_t>(i) + 1, -2.0, 2.0)});
    }
    return pts;
}

void BM_SdfParallel(benchmark::State& state) {
    const Polyline poly = surface_polyline(parse_naca_code("2412"), 200);
    const auto pts = random_points(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(sdf_field(pts, poly));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SdfParallel)->Arg(4096);

void BM_SdfSerial(benchmark::State& state) {
    const Polyline poly = surface_polyline(parse_naca_code("2412"), 200);
    const auto pts = random_points(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(reference::sdf_field_serial(pts, poly));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SdfSerial)->Arg(4096);

struct NetFixture {
    MlpConfig config;
    MlpParams params;
    Eigen::MatrixXd inputs;

    explicit NetFixture(int n) : params(MlpConfig{}) {
        config.hidden_layers = 6;
        config.width = 64;
        params = init_params(config, 3);
        const CounterRng rng(11);
        inputs.resize(config.input_dim(), n);
        for (int c = 0; c < n; ++c) {
            for (int r = 0; r < inputs.rows(); ++r) {
                inputs(r, c) = rng.uniform(static_cast<std::uint64_t>(c * inputs.rows() + r), -1.0, 1.0);
            }
        }
    }
};

LossParts jet_square(std::size_t, const FlowJet& j, FlowJet& adj) {
    const auto f = flatten(j);
    std::array<double, kFlowJetSize> a{};
    double s = 0.0;
    for (int i = 0; i < kFlowJetSize; ++i) {
        a[static_cast<std::size_t>(i)] = 2.0 * f[static_cast<std::size_t>(i)];
        s += f[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(i)];
    }
    adj = unflatten(a);
    return {s, 0, 0, 0, 0, 0};
}

void BM_JetGradientBatched(benchmark::State& state) {
    NetFixture f(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(jet_loss_gradient(f.params, f.inputs, jet_square));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_JetGradientBatched)->Arg(128);

void BM_JetGradientReference(benchmark::State& state) {
    NetFixture f(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(reference::jet_loss_gradient(f.params, f.inputs, jet_square));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_JetGradientReference)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
