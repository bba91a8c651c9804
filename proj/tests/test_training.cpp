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

#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <filesystem>
#include <set>

#include "foil/data.hpp"
#include "foil/error.hpp"
#include "foil/io.hpp"
#include "foil/network.hpp"
#include "foil/rng.hpp"
#include "foil/training.hpp"

using namespace foil;
namespace fs = std::filesystem;

namespace {

MlpConfig tiny_model(ModelVariant v = ModelVariant::L, int layers = 2, int width = 12) {
    MlpConfig c;
    c.variant = v;
    c.hidden_layers = layers;
    c.width = width;
    return c;
}

TrainConfig tiny_train(int total, int warm) {
    TrainConfig t;
    t.model = tiny_model();
    t.schedule.total_steps = total;
    t.schedule.warmstart_steps = warm;
    t.schedule.batch = {32, 16, 8, 4, 4, 4};
    t.schedule.seed = 3;
    return t;
}

ModelInput input_at(const MlpConfig& c, double x, double y, double sdf, double u_in) {
    static const AirfoilParams airfoil = parse_naca_code("2412");
    PointQuery q;
    q.x = x;
    q.y = y;
    q.sdf = sdf;
    q.airfoil = &airfoil;
    q.u_in = u_in;
    return build_input(c, q);
}

/// Mixed batch over random exterior-looking points; targets are arbitrary.
LossBatch random_batch(const MlpConfig& c, std::uint64_t seed) {
    const CounterRng rng(seed);
    LossBatch b;
    std::uint64_t k = 0;
    auto u = [&](double lo, double hi) { return rng.uniform(k++, lo, hi); };
    for (int i = 0; i < 20; ++i) {
        b.data.push_back({input_at(c, u(-2, 4), u(-2, 2), u(0.01, 1), u(2, 7)),
                          {u(0.5, 1.2), u(-0.2, 0.2), u(-1, 1), u(0.001, 0.01), u(1e-4, 1e-3)}, i % 3 != 0});
    }
    for (int i = 0; i < 16; ++i) {
        const double ui = u(2, 7);
        b.colloc.push_back({input_at(c, u(-2, 4), u(-2, 2), u(0.01, 1), ui), ui});
    }
    const BoundaryKind kinds[] = {BoundaryKind::surface, BoundaryKind::inlet, BoundaryKind::outlet, BoundaryKind::side};
    for (BoundaryKind kind : kinds) {
        for (int i = 0; i < 4; ++i) {
            BoundaryPoint p{input_at(c, u(-2, 4), u(-2, 2), kind == BoundaryKind::surface ? 0.0 : u(0.5, 1), u(2, 7)), kind};
            p.k_target = u(0.001, 0.01);
            p.eps_target = u(1e-5, 1e-4);
            b.boundary.push_back(p);
        }
    }
    return b;
}

MlpParams random_params(const MlpConfig& c, std::uint64_t seed) {
    MlpParams p = init_params(c, seed);
    const CounterRng rng(seed, 5);
    for (const LayerShape& s : p.layout()) {
        for (int r = 0; r < s.rows; ++r) p.flat()[s.bias_offset + static_cast<std::size_t>(r)] = rng.uniform(s.bias_offset + static_cast<std::size_t>(r), -0.3, 0.3);
    }
    return p;
}

}  // namespace

TEST_CASE("weights and schedule validation") {
    LossWeights w;
    CHECK_NOTHROW(w.validate());
    CHECK(w[LossComponent::data] == 1.0);
    CHECK(w[LossComponent::cont] == 0.1);
    CHECK(w[LossComponent::bc_outlet] == 1.0);
    w.k = -1.0;
    CHECK_THROWS_AS(w.validate(), ValidationError);
    LossWeights zero{0, 0, 0, 0, 0, 0, 0, 0, 0};
    CHECK_THROWS_AS(zero.validate(), ValidationError);

    CHECK(effective_weight(LossWeights{}, LossComponent::mom, Phase::warmstart) == 0.0);
    CHECK(effective_weight(LossWeights{}, LossComponent::bc_side, Phase::warmstart) == 0.0);
    CHECK(effective_weight(LossWeights{}, LossComponent::data, Phase::warmstart) == 1.0);
    CHECK(effective_weight(LossWeights{}, LossComponent::mom, Phase::full) == 0.1);
    CHECK(family_of(LossComponent::eps) == LossFamily::pde);
    CHECK(family_of(LossComponent::bc_inlet) == LossFamily::bc);

    const Schedule s = Schedule::with_total(1000);
    CHECK(s.warmstart_steps == 200);
    CHECK_NOTHROW(s.validate());
    Schedule bad = s;
    bad.warmstart_steps = 1001;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = s;
    bad.learning_rate = 0.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = s;
    bad.batch.surface = 4;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("Reynolds number across the training range") {
    const TurbulenceConstants c;
    CHECK(reynolds(2.0, 1.0, c) == doctest::Approx(200000.0).epsilon(1e-12));
    CHECK(reynolds(7.0, 1.0, c) == doctest::Approx(700000.0).epsilon(1e-12));
    CHECK_THROWS_AS(reynolds(0.0, 1.0, c), DomainError);
}

TEST_CASE("Adam step") {
    std::vector<double> theta = {1.0, -2.0, 3.0};
    const std::vector<double> zero(3, 0.0);
    AdamState st;
    adam_step(theta, zero, st, 1e-2);
    CHECK(theta == std::vector<double>{1.0, -2.0, 3.0});

    std::vector<double> x = {1.0};
    AdamState s1;
    for (int i = 0; i < 5000; ++i) {
        const std::vector<double> g = {2.0 * x[0]};
        adam_step(x, g, s1, 1e-2);
    }
    CHECK(std::abs(x[0]) < 1e-3);

    const std::vector<double> bad = {0.0, std::nan(""), 0.0};
    const std::vector<double> before = theta;
    CHECK_THROWS_AS(adam_step(theta, bad, st, 1e-2), NumericError);
    CHECK(theta == before);
}

TEST_CASE("exact interpolant has zero warmstart loss") {
    const MlpConfig c = tiny_model();
    const MlpParams zero(c);
    LossBatch b;
    const double floor_k = std::log(2.0) + c.k_floor;
    const double floor_eps = std::log(2.0) + c.eps_floor;
    for (int i = 0; i < 10; ++i) {
        b.data.push_back({input_at(c, -1.0 + 0.3 * i, 0.5, 0.4, 3.0), {0, 0, 0, floor_k, floor_eps}, true});
    }
    const LossResult r = total_loss(zero, b, LossWeights{}, Phase::warmstart);
    CHECK(r.total == 0.0);
    CHECK(r.components[0] == 0.0);
    for (double g : r.gradient) CHECK(g == 0.0);
}

TEST_CASE("degenerate weights reduce the total to the data MSE") {
    const MlpConfig c = tiny_model();
    const MlpParams p = random_params(c, 1);
    const LossBatch b = random_batch(c, 2);
    LossWeights only_data{1, 0, 0, 0, 0, 0, 0, 0, 0};
    for (Phase ph : {Phase::warmstart, Phase::full}) {
        const LossResult r = total_loss(p, b, only_data, ph, {}, false);
        // Independent data MSE from forward().
        double sum = 0.0;
        for (const DataPoint& d : b.data) {
            const FlowState s = forward(p, d.input);
            double e = (s.u - d.target.u) * (s.u - d.target.u) + (s.v - d.target.v) * (s.v - d.target.v) +
                       (s.p - d.target.p) * (s.p - d.target.p);
            if (d.has_turbulence) e += (s.k - d.target.k) * (s.k - d.target.k) + (s.eps - d.target.eps) * (s.eps - d.target.eps);
            sum += e;
        }
        CHECK(r.total == doctest::Approx(sum / static_cast<double>(b.data.size())).epsilon(1e-13));
    }
}

TEST_CASE("uniform free-stream network zeroes every component but the inlet turbulence") {
    const MlpConfig c = tiny_model();
    MlpParams p(c);
    const LayerShape& out = p.layout().back();
    const double k_hat = 0.004;
    const double kappa = std::log(std::expm1(k_hat - c.k_floor));
    p.flat()[out.bias_offset + 0] = 1.0;
    p.flat()[out.bias_offset + 3] = kappa;
    p.flat()[out.bias_offset + 4] = -40.0;  // eps at its floor
    const FlowState s = forward(p, input_at(c, 0.0, 1.0, 1.0, 3.0));
    REQUIRE(s.u == 1.0);

    LossBatch b;
    for (int i = 0; i < 10; ++i) {
        b.data.push_back({input_at(c, -1.5 + 0.5 * i, 1.0, 0.8, 2.0 + 0.5 * i), s, true});
        b.colloc.push_back({input_at(c, -1.5 + 0.5 * i, -1.0, 0.8, 2.0 + 0.5 * i), 2.0 + 0.5 * i});
    }
    for (BoundaryKind kind : {BoundaryKind::inlet, BoundaryKind::outlet, BoundaryKind::side}) {
        for (int i = 0; i < 4; ++i) {
            BoundaryPoint bp{input_at(c, -2.0, -1.5 + i, 2.0, 4.0), kind};
            bp.k_target = s.k;
            bp.eps_target = s.eps;
            b.boundary.push_back(bp);
        }
    }
    LossResult r = total_loss(p, b, LossWeights{}, Phase::full);
    for (int i = 0; i < kLossComponents; ++i) {
        CAPTURE(i);
        CHECK(r.components[static_cast<std::size_t>(i)] <= 1e-18);
    }
    // A mismatched inlet turbulence target shows up in the inlet component only.
    for (auto& bp : b.boundary) bp.k_target = 2 * s.k;
    r = total_loss(p, b, LossWeights{}, Phase::full);
    CHECK(r.components[static_cast<std::size_t>(LossComponent::bc_inlet)] == doctest::Approx(s.k * s.k));
    CHECK(r.components[static_cast<std::size_t>(LossComponent::bc_side)] <= 1e-18);
}

TEST_CASE("total equals the weighted sum of components") {
    const MlpConfig c = tiny_model(ModelVariant::LG);
    const MlpParams p = random_params(c, 4);
    const LossBatch b = random_batch(c, 9);
    LossWeights w{1.5, 0.2, 0.3, 0.05, 0.07, 2.0, 0.5, 0.25, 1.25};
    for (Phase ph : {Phase::warmstart, Phase::full}) {
        const LossResult r = total_loss(p, b, w, ph, {}, false);
        double sum = 0.0;
        for (int i = 0; i < kLossComponents; ++i) {
            const auto comp = static_cast<LossComponent>(i);
            sum += effective_weight(w, comp, ph) * r.components[static_cast<std::size_t>(i)];
            if (ph == Phase::warmstart && family_of(comp) != LossFamily::data) CHECK(r.components[static_cast<std::size_t>(i)] == 0.0);
            if (ph == Phase::full) CHECK(r.components[static_cast<std::size_t>(i)] > 0.0);
        }
        CHECK(r.total == doctest::Approx(sum).epsilon(1e-14));
    }
}

TEST_CASE("warmstart gradient depends on the data only") {
    const MlpConfig c = tiny_model();
    const MlpParams p = random_params(c, 6);
    const LossBatch full = random_batch(c, 1);
    LossBatch data_only;
    data_only.data = full.data;
    const LossResult a = total_loss(p, full, LossWeights{}, Phase::warmstart);
    const LossResult b = total_loss(p, data_only, LossWeights{}, Phase::full);
    CHECK(a.gradient == b.gradient);
    CHECK(a.grad_norms.pde == 0.0);
    CHECK(a.grad_norms.bc == 0.0);
    CHECK(a.grad_norms.data > 0.0);
}

TEST_CASE("loss gradient matches finite differences") {
    for (ModelVariant v : {ModelVariant::L, ModelVariant::G}) {
        const MlpConfig c = tiny_model(v);
        MlpParams p = random_params(c, 11);
        const LossBatch b = random_batch(c, 12);
        const LossWeights w;
        const LossResult r = total_loss(p, b, w, Phase::full);
        double gmax = 0.0;
        for (double g : r.gradient) gmax = std::max(gmax, std::abs(g));
        const CounterRng rng(5);
        for (std::uint64_t t = 0; t < 32; ++t) {
            const std::size_t k = static_cast<std::size_t>(rng.below(t, p.size()));
            const double saved = p.flat()[k];
            const double h = 1e-6;
            p.flat()[k] = saved + h;
            const double lp = total_loss(p, b, w, Phase::full, {}, false).total;
            p.flat()[k] = saved - h;
            const double lm = total_loss(p, b, w, Phase::full, {}, false).total;
            p.flat()[k] = saved;
            const double fd = (lp - lm) / (2 * h);
            CHECK(std::abs(fd - r.gradient[k]) <= 1e-4 * std::max(std::abs(r.gradient[k]), 1e-3 * gmax));
        }
    }
}

TEST_CASE("variant mismatch is a contract error") {
    const MlpParams p = random_params(tiny_model(ModelVariant::G), 1);
    const LossBatch b = random_batch(tiny_model(ModelVariant::L), 1);
    CHECK_THROWS_AS(total_loss(p, b, LossWeights{}, Phase::full), ContractError);
}

TEST_CASE("zero steps returns the initial parameters") {
    const CaseDataset d = synthetic_case("0012", 3.0, 50, 1);
    TrainConfig t = tiny_train(0, 0);
    const TrainResult r = train(t, std::span<const CaseDataset>(&d, 1));
    CHECK(r.history.empty());
    CHECK(r.status == TrainStatus::completed);
    CHECK(r.params == init_params(t.model, t.schedule.seed));
}

TEST_CASE("warmstart fits a tiny case") {
    const CaseDataset d = synthetic_case("2412", 4.0, 16, 2);
    // warmstart_steps < total_steps is required; inspect the last warmstart record.
    TrainConfig t = tiny_train(3001, 3000);
    t.model = tiny_model(ModelVariant::L, 2, 32);
    t.schedule.batch.data = 16;
    t.schedule.learning_rate = 3e-3;
    t.schedule.plateau_steps = 200;
    const TrainResult r = train(t, std::span<const CaseDataset>(&d, 1));
    REQUIRE(r.status == TrainStatus::completed);
    const TrainRecord& last_warm = r.history[2999];
    REQUIRE(last_warm.phase == Phase::warmstart);
    CHECK(last_warm.components[0] < 1e-4);
}

TEST_CASE("phase transition and determinism") {
    const std::vector<CaseDataset> cases = {synthetic_case("0012", 3.0, 60, 1), synthetic_case("2412", 5.0, 60, 2)};
    TrainConfig t = tiny_train(12, 5);
    const TrainResult a = train(t, cases);
    REQUIRE(a.history.size() == 12);
    for (int s = 0; s < 5; ++s) {
        const TrainRecord& rec = a.history[static_cast<std::size_t>(s)];
        CHECK(rec.step == s + 1);
        CHECK(rec.phase == Phase::warmstart);
        for (int i = 1; i < kLossComponents; ++i) CHECK(rec.components[static_cast<std::size_t>(i)] == 0.0);
    }
    const TrainRecord& first_full = a.history[5];
    CHECK(first_full.step == 6);
    CHECK(first_full.phase == Phase::full);
    for (int i = 1; i < kLossComponents; ++i) CHECK(first_full.components[static_cast<std::size_t>(i)] > 0.0);

    const int saved = omp_get_max_threads();
    omp_set_num_threads(3);
    const TrainResult b = train(t, cases);
    omp_set_num_threads(saved);
    CHECK(b.params == a.params);
    CHECK(training_log_csv(a.history, "x") == training_log_csv(b.history, "x"));

    t.schedule.seed = 4;
    CHECK_FALSE(train(t, cases).params == a.params);
}

TEST_CASE("divergence aborts with the last good state") {
    const fs::path dir = fs::temp_directory_path() / "foil_pinn_diverge";
    fs::remove_all(dir);
    const CaseDataset d = synthetic_case("0012", 3.0, 60, 1);
    TrainConfig t = tiny_train(50, 2);
    t.schedule.learning_rate = 1e6;
    t.checkpoint_dir = dir;
    const TrainResult r = train(t, std::span<const CaseDataset>(&d, 1));
    CHECK(r.status != TrainStatus::completed);
    CHECK_FALSE(r.message.empty());
    CHECK(r.params.all_finite());
    CHECK(r.history.size() < 50);
    CHECK(fs::exists(dir / "last_good.txt"));
    CHECK(load_checkpoint(dir / "last_good.txt").params == r.params);
    fs::remove_all(dir);
}

TEST_CASE("checkpoints and the training log") {
    const fs::path dir = fs::temp_directory_path() / "foil_pinn_ckpts";
    fs::remove_all(dir);
    const CaseDataset d = synthetic_case("0012", 3.0, 60, 1);
    TrainConfig t = tiny_train(6, 2);
    t.checkpoint_dir = dir;
    t.checkpoint_every = 2;
    t.config_hash = "feedface";
    const TrainResult r = train(t, std::span<const CaseDataset>(&d, 1));
    CHECK(fs::exists(dir / "checkpoint_000002.txt"));
    CHECK(fs::exists(dir / "checkpoint_000004.txt"));
    const Checkpoint fin = load_checkpoint(dir / "final.txt");
    CHECK(fin.params == r.params);
    CHECK(fin.metadata.at("config") == "feedface");
    CHECK(fin.metadata.at("step") == "6");

    const std::string log = training_log_csv(r.history, "feedface");
    const CsvTable table = parse_csv(log);
    REQUIRE(table.rows.size() == 6);
    CHECK(parse_artifact_header(table.comments.at(0)).kind == "trainlog");
    CHECK(table.column("bc_surface") >= 0);
    CHECK(table.column("lr") >= 0);
    CHECK(table.rows[2][1] == "full");
    fs::remove_all(dir);
}

TEST_CASE("assembled batches are pure functions of the step") {
    const std::vector<CaseDataset> raw = {synthetic_case("0012", 3.0, 40, 1), synthetic_case("4412", 6.0, 40, 2)};
    const auto cases = prepare_cases(raw);
    TrainConfig t = tiny_train(10, 2);
    const LossBatch a = assemble_batch(t, cases, 3);
    const LossBatch b = assemble_batch(t, cases, 3);
    const LossBatch c = assemble_batch(t, cases, 4);
    REQUIRE(a.data.size() == 32);
    REQUIRE(a.colloc.size() == 16);
    CHECK(a.boundary.size() == 8 + 4 + 4 + 4);
    bool differs = false;
    for (std::size_t i = 0; i < a.colloc.size(); ++i) {
        const auto x = a.colloc[i].input.values();
        const auto y = b.colloc[i].input.values();
        CHECK(std::equal(x.begin(), x.end(), y.begin()));
        CHECK(a.colloc[i].u_in >= 2.0);
        CHECK(a.colloc[i].u_in <= 7.0);
        differs = differs || x[0] != c.colloc[i].input.values()[0];
    }
    CHECK(differs);
    // 80 samples in 32-point batches: steps 1..2 visit 64 distinct samples.
    std::set<std::pair<double, double>> seen;
    for (int step = 1; step <= 2; ++step) {
        for (const DataPoint& dp : assemble_batch(t, cases, step).data) seen.insert({dp.input.values()[0], dp.input.values()[1]});
    }
    CHECK(seen.size() == 64);
}
