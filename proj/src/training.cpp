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

#include "foil/training.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>

#include "foil/error.hpp"
#include "foil/io.hpp"
#include "foil/network_kernels.hpp"
#include "foil/rng.hpp"
#include "foil/sdf.hpp"

namespace foil {

namespace {

constexpr std::array<std::string_view, kLossComponents> kComponentNames = {
    "data", "cont", "mom", "k", "eps", "bc_surface", "bc_inlet", "bc_outlet", "bc_side"};

constexpr std::size_t idx(LossComponent c) { return static_cast<std::size_t>(c); }

double norm2(const std::vector<double>& g) {
    double s = 0.0;
    for (double x : g) s += x * x;
    return std::sqrt(s);
}

void accumulate(std::vector<double>& into, const std::vector<double>& g) {
    if (g.empty()) return;
    if (into.empty()) into.assign(g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) into[i] += g[i];
}

}  // namespace

std::string_view to_string(LossComponent c) { return kComponentNames[idx(c)]; }

std::string_view to_string(Phase p) { return p == Phase::warmstart ? "warmstart" : "full"; }

std::string_view to_string(TrainStatus s) {
    switch (s) {
        case TrainStatus::completed: return "completed";
        case TrainStatus::diverged: return "diverged";
        case TrainStatus::non_finite: return "non_finite";
    }
    return "completed";
}

double LossWeights::operator[](LossComponent c) const {
    switch (c) {
        case LossComponent::data: return data;
        case LossComponent::cont: return cont;
        case LossComponent::mom: return mom;
        case LossComponent::k: return k;
        case LossComponent::eps: return eps;
        case LossComponent::bc_surface: return bc_surface;
        case LossComponent::bc_inlet: return bc_inlet;
        case LossComponent::bc_outlet: return bc_outlet;
        case LossComponent::bc_side: return bc_side;
    }
    return 0.0;
}

void LossWeights::validate() const {
    bool any = false;
    for (int i = 0; i < kLossComponents; ++i) {
        const auto c = static_cast<LossComponent>(i);
        const double w = (*this)[c];
        if (!std::isfinite(w) || w < 0.0) {
            throw ParseError("weights." + std::string(to_string(c)), "must be finite and >= 0");
        }
        any = any || w > 0.0;
    }
    if (!any) throw ValidationError("weights: at least one weight must be positive");
}

LossFamily family_of(LossComponent c) {
    switch (c) {
        case LossComponent::data: return LossFamily::data;
        case LossComponent::cont:
        case LossComponent::mom:
        case LossComponent::k:
        case LossComponent::eps: return LossFamily::pde;
        default: return LossFamily::bc;
    }
}

double effective_weight(const LossWeights& w, LossComponent c, Phase phase) {
    if (phase == Phase::warmstart && family_of(c) != LossFamily::data) return 0.0;
    return w[c];
}

Schedule Schedule::with_total(int total_steps) {
    Schedule s;
    s.total_steps = total_steps;
    s.warmstart_steps = total_steps / 5;
    return s;
}

void Schedule::validate() const {
    if (total_steps < 0) throw ParseError("schedule.total_steps", "must be >= 0");
    if (warmstart_steps < 0 || (total_steps > 0 && warmstart_steps >= total_steps)) {
        throw ParseError("schedule.warmstart_steps", "must satisfy 0 <= warmstart_steps < total_steps");
    }
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw ParseError("schedule.learning_rate", "must be positive");
    }
    if (!(lr_decay > 0.0 && lr_decay <= 1.0)) throw ParseError("schedule.lr_decay", "must lie in (0, 1]");
    if (plateau_steps < 1) throw ParseError("schedule.plateau_steps", "must be >= 1");
    const std::pair<const char*, int> sizes[] = {{"data", batch.data},     {"colloc", batch.colloc},
                                                 {"surface", batch.surface}, {"inlet", batch.inlet},
                                                 {"outlet", batch.outlet}, {"side", batch.side}};
    for (const auto& [name, n] : sizes) {
        if (n < 0) throw ParseError(std::string("schedule.batch.") + name, "must be >= 0");
    }
    if (batch.surface > 0 && batch.surface < 8) throw ParseError("schedule.batch.surface", "must be 0 or >= 8");
}

// ---------------------------------------------------------------------------
// Loss

LossResult total_loss(const MlpParams& params, const LossBatch& batch, const LossWeights& weights, Phase phase,
                      const LossOptions& options, bool want_gradient) {
    const ModelVariant variant = params.config().variant;
    auto check = [&](const ModelInput& in) {
        if (in.variant() != variant) throw ContractError("total_loss: input variant does not match the model");
    };
    for (const auto& d : batch.data) check(d.input);
    for (const auto& c : batch.colloc) check(c.input);
    for (const auto& b : batch.boundary) check(b.input);

    auto w = [&](LossComponent c) { return effective_weight(weights, c, phase); };
    LossResult result;
    std::vector<double> total_grad;

    if (!batch.data.empty()) {
        std::vector<ModelInput> inputs;
        inputs.reserve(batch.data.size());
        for (const auto& d : batch.data) inputs.push_back(d.input);
        const double scale = 2.0 * w(LossComponent::data) / static_cast<double>(batch.data.size());
        const ValueAdjointFn fn = [&](std::size_t i, const FlowState& out, FlowState& adj) {
            const DataPoint& d = batch.data[i];
            const double du = out.u - d.target.u;
            const double dv = out.v - d.target.v;
            const double dp = out.p - d.target.p;
            double s = du * du + dv * dv + dp * dp;
            adj = {scale * du, scale * dv, scale * dp, 0.0, 0.0};
            if (d.has_turbulence) {
                const double dk = out.k - d.target.k;
                const double de = out.eps - d.target.eps;
                s += dk * dk + de * de;
                adj.k = scale * dk;
                adj.eps = scale * de;
            }
            return LossParts{s, 0, 0, 0, 0, 0};
        };
        const bool grad = want_gradient && w(LossComponent::data) > 0.0;
        BatchGradient g = value_loss_gradient(params, stack_inputs(inputs), fn, grad);
        result.components[idx(LossComponent::data)] = g.parts[0] / static_cast<double>(batch.data.size());
        result.grad_norms.data = norm2(g.gradient);
        accumulate(total_grad, g.gradient);
    }

    if (phase == Phase::full && !batch.colloc.empty()) {
        using D = Dual<kFlowJetSize>;
        std::vector<ModelInput> inputs;
        inputs.reserve(batch.colloc.size());
        for (const auto& c : batch.colloc) inputs.push_back(c.input);
        std::vector<unsigned char> clamped(batch.colloc.size(), 0);
        const double n = static_cast<double>(batch.colloc.size());
        const double wc = 2.0 * w(LossComponent::cont) / n;
        const double wm = 2.0 * w(LossComponent::mom) / n;
        const double wk = 2.0 * w(LossComponent::k) / n;
        const double we = 2.0 * w(LossComponent::eps) / n;
        const JetAdjointFn fn = [&](std::size_t i, const FlowJet& out, FlowJet& adj) {
            const double u = batch.colloc[i].u_in;
            const double scales[5] = {u, u, 0.5 * u * u, u * u, u * u * u};
            const auto flat = flatten(out);
            BasicFlowJet<D> f;
            BasicJet<D>* fields[] = {&f.u, &f.v, &f.p, &f.k, &f.eps};
            for (int q = 0; q < 5; ++q) {
                D* comp[] = {&fields[q]->val, &fields[q]->dx, &fields[q]->dy, &fields[q]->dxx, &fields[q]->dyy};
                for (int c = 0; c < kJetComponents; ++c) {
                    const int j = q * kJetComponents + c;
                    *comp[c] = D::variable(flat[static_cast<std::size_t>(j)], j) * D(scales[q]);
                }
            }
            PhysicsDiagnostics diag;
            const auto r = nondimensionalize(residuals(f, options.constants, options.residual, &diag), u);
            clamped[i] = diag.eps_clamped > 0 ? 1 : 0;
            std::array<double, kFlowJetSize> a{};
            for (int j = 0; j < kFlowJetSize; ++j) {
                a[static_cast<std::size_t>(j)] =
                    wc * r.cont.v * r.cont.d[static_cast<std::size_t>(j)] +
                    wm * (r.mom_x.v * r.mom_x.d[static_cast<std::size_t>(j)] +
                          r.mom_y.v * r.mom_y.d[static_cast<std::size_t>(j)]) +
                    wk * r.k.v * r.k.d[static_cast<std::size_t>(j)] + we * r.eps.v * r.eps.d[static_cast<std::size_t>(j)];
            }
            adj = unflatten(a);
            return LossParts{r.cont.v * r.cont.v, r.mom_x.v * r.mom_x.v + r.mom_y.v * r.mom_y.v, r.k.v * r.k.v,
                             r.eps.v * r.eps.v, 0.0, 0.0};
        };
        BatchGradient g = jet_loss_gradient(params, stack_inputs(inputs), fn, want_gradient);
        result.components[idx(LossComponent::cont)] = g.parts[0] / n;
        result.components[idx(LossComponent::mom)] = g.parts[1] / n;
        result.components[idx(LossComponent::k)] = g.parts[2] / n;
        result.components[idx(LossComponent::eps)] = g.parts[3] / n;
        for (unsigned char c : clamped) result.eps_clamped += c;
        result.grad_norms.pde = norm2(g.gradient);
        accumulate(total_grad, g.gradient);
    }

    if (phase == Phase::full && !batch.boundary.empty()) {
        std::array<double, 4> counts{};
        for (const auto& b : batch.boundary) counts[static_cast<std::size_t>(b.kind)] += 1.0;
        const LossComponent comp[] = {LossComponent::bc_surface, LossComponent::bc_inlet, LossComponent::bc_outlet,
                                      LossComponent::bc_side};
        std::array<double, 4> scale{};
        for (std::size_t q = 0; q < 4; ++q) scale[q] = counts[q] > 0 ? 2.0 * w(comp[q]) / counts[q] : 0.0;
        std::vector<ModelInput> inputs;
        inputs.reserve(batch.boundary.size());
        for (const auto& b : batch.boundary) inputs.push_back(b.input);
        const ValueAdjointFn fn = [&](std::size_t i, const FlowState& out, FlowState& adj) {
            const BoundaryPoint& b = batch.boundary[i];
            const auto q = static_cast<std::size_t>(b.kind);
            const double s = scale[q];
            LossParts parts{};
            adj = {};
            switch (b.kind) {
                case BoundaryKind::surface:
                    parts[q] = out.u * out.u + out.v * out.v;
                    adj.u = s * out.u;
                    adj.v = s * out.v;
                    break;
                case BoundaryKind::inlet: {
                    const double du = out.u - 1.0;
                    const double dk = out.k - b.k_target;
                    const double de = out.eps - b.eps_target;
                    parts[q] = du * du + out.v * out.v + dk * dk + de * de;
                    adj = {s * du, s * out.v, 0.0, s * dk, s * de};
                    break;
                }
                case BoundaryKind::outlet:
                    parts[q] = out.p * out.p;
                    adj.p = s * out.p;
                    break;
                case BoundaryKind::side: {
                    const double du = out.u - 1.0;
                    parts[q] = du * du + out.v * out.v;
                    adj.u = s * du;
                    adj.v = s * out.v;
                    break;
                }
            }
            return parts;
        };
        BatchGradient g = value_loss_gradient(params, stack_inputs(inputs), fn, want_gradient);
        for (std::size_t q = 0; q < 4; ++q) {
            result.components[idx(comp[q])] = counts[q] > 0 ? g.parts[q] / counts[q] : 0.0;
        }
        result.grad_norms.bc = norm2(g.gradient);
        accumulate(total_grad, g.gradient);
    }

    for (int i = 0; i < kLossComponents; ++i) {
        const auto c = static_cast<LossComponent>(i);
        const double v = result.components[static_cast<std::size_t>(i)];
        if (!std::isfinite(v)) throw NumericError("non-finite loss component '" + std::string(to_string(c)) + "'");
        result.total += w(c) * v;
    }
    if (want_gradient) {
        if (total_grad.empty()) total_grad.assign(params.size(), 0.0);
        result.gradient = std::move(total_grad);
    }
    return result;
}

void adam_step(std::span<double> params, std::span<const double> gradient, AdamState& state, double lr) {
    if (gradient.size() != params.size()) throw ContractError("adam_step: gradient size mismatch");
    for (double g : gradient) {
        if (!std::isfinite(g)) throw NumericError("adam_step: non-finite gradient");
    }
    constexpr double b1 = 0.9;
    constexpr double b2 = 0.999;
    constexpr double eps = 1e-8;
    if (state.m.size() != params.size()) {
        state.m.assign(params.size(), 0.0);
        state.v.assign(params.size(), 0.0);
        state.t = 0;
    }
    ++state.t;
    const double c1 = 1.0 - std::pow(b1, static_cast<double>(state.t));
    const double c2 = 1.0 - std::pow(b2, static_cast<double>(state.t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = b1 * state.m[i] + (1.0 - b1) * gradient[i];
        state.v[i] = b2 * state.v[i] + (1.0 - b2) * gradient[i] * gradient[i];
        const double mh = state.m[i] / c1;
        const double vh = state.v[i] / c2;
        params[i] -= lr * mh / (std::sqrt(vh) + eps);
    }
}

double reynolds(double u_in, double chord, const TurbulenceConstants& c) {
    if (!(u_in > 0.0) || !(chord > 0.0) || !(c.rho > 0.0) || !(c.mu > 0.0)) {
        throw DomainError("reynolds: u_in, chord, rho and mu must be positive");
    }
    return c.rho * u_in * chord / c.mu;
}

// ---------------------------------------------------------------------------
// Batches

namespace {

/// Keyed bijection on [0, n) (Feistel network with cycle walking); one
/// permutation per epoch without materializing it.
std::uint64_t permute(std::uint64_t i, std::uint64_t n, const CounterRng& key) {
    if (n <= 1) return 0;
    int bits = std::bit_width(n - 1);
    if (bits % 2) ++bits;
    const int half = bits / 2;
    const std::uint64_t mask = (std::uint64_t{1} << half) - 1;
    std::uint64_t x = i;
    do {
        std::uint64_t l = x >> half;
        std::uint64_t r = x & mask;
        for (std::uint64_t round = 0; round < 4; ++round) {
            const std::uint64_t f = key.bits(round * 0x100000000ULL + r) & mask;
            const std::uint64_t nl = r;
            r = l ^ f;
            l = nl;
        }
        x = (l << half) | r;
    } while (x >= n);
    return x;
}

struct Geometry {
    AirfoilParams airfoil;
    Polyline poly;
    SegmentSet segments;
};

PointQuery query(Vec2 p, double sdf, const AirfoilParams& airfoil, double u_in) {
    PointQuery q;
    q.x = p.x;
    q.y = p.y;
    q.sdf = sdf;
    q.airfoil = &airfoil;
    q.u_in = u_in;
    return q;
}

std::vector<Geometry> distinct_geometries(const TrainConfig& config, std::span<const PreparedCase> cases) {
    std::vector<Geometry> out;
    for (const auto& c : cases) {
        const bool seen = std::any_of(out.begin(), out.end(), [&](const Geometry& g) { return g.airfoil.code == c.airfoil.code; });
        if (seen) continue;
        Polyline poly = surface_polyline(c.airfoil, config.surface_stations);
        if (config.angle_of_attack != 0.0) poly = rotated(poly, config.angle_of_attack);
        SegmentSet seg(poly);
        out.push_back({c.airfoil, std::move(poly), std::move(seg)});
    }
    return out;
}

LossBatch assemble(const TrainConfig& config, std::span<const PreparedCase> cases, const std::vector<Geometry>& geoms,
                   std::span<const std::size_t> case_offsets, int step) {
    const Schedule& sch = config.schedule;
    const MlpConfig& model = config.model;
    LossBatch batch;
    const auto s = static_cast<std::uint64_t>(step);

    // Shuffled epochs over all samples of all cases.
    const std::uint64_t total = case_offsets.back();
    if (total > 0) {
        for (int j = 0; j < sch.batch.data; ++j) {
            const std::uint64_t g = (s - 1) * static_cast<std::uint64_t>(sch.batch.data) + static_cast<std::uint64_t>(j);
            const std::uint64_t epoch = g / total;
            const std::uint64_t pos = permute(g % total, total, CounterRng(sch.seed, 200).substream(epoch));
            const auto it = std::upper_bound(case_offsets.begin(), case_offsets.end(), pos);
            const auto ci = static_cast<std::size_t>(it - case_offsets.begin() - 1);
            const PreparedCase& pc = cases[ci];
            const std::size_t si = pos - case_offsets[ci];
            const FieldSample& fs = pc.data.samples[si];
            const FlowState target = to_normalized({fs.u, fs.v, fs.p, fs.k, fs.eps}, pc.data.u_in);
            batch.data.push_back({build_input(model, query({fs.x, fs.y}, pc.sdf[si], pc.airfoil, pc.data.u_in)),
                                  target, pc.data.has_turbulence});
        }
    }

    if (geoms.empty()) return batch;
    const CounterRng rng = CounterRng(sch.seed, 300).substream(s);
    const std::size_t n_geom = geoms.size();
    auto speed = [&](std::uint64_t counter) { return rng.uniform(counter, kMinInletSpeed, kMaxInletSpeed); };

    // Interior collocation, round-robin over airfoils.
    std::vector<std::vector<std::size_t>> owners(n_geom);
    for (int j = 0; j < sch.batch.colloc; ++j) {
        owners[(static_cast<std::size_t>(j) + static_cast<std::size_t>(step)) % n_geom].push_back(static_cast<std::size_t>(j));
    }
    batch.colloc.resize(static_cast<std::size_t>(sch.batch.colloc));
    for (std::size_t a = 0; a < n_geom; ++a) {
        if (owners[a].empty()) continue;
        const InteriorSamples pts =
            sample_interior(config.domain, geoms[a].segments, static_cast<int>(owners[a].size()),
                            config.collocation.near_fraction, config.collocation.near_band, rng.bits(1000 + a));
        for (std::size_t q = 0; q < owners[a].size(); ++q) {
            const std::size_t j = owners[a][q];
            const double u = speed(2000 + j);
            batch.colloc[j] = {build_input(model, query(pts.points[q], pts.sdf[q], geoms[a].airfoil, u)), u};
        }
    }

    // Surface: one airfoil per step.
    if (sch.batch.surface > 0) {
        const Geometry& g = geoms[static_cast<std::size_t>(step) % n_geom];
        const auto pts = sample_surface(g.poly, sch.batch.surface, rng.bits(3000));
        for (std::size_t q = 0; q < pts.size(); ++q) {
            const double u = speed(4000 + q);
            batch.boundary.push_back({build_input(model, query(pts[q], 0.0, g.airfoil, u)), BoundaryKind::surface});
        }
    }

    auto add_edge = [&](const std::vector<Vec2>& pts, BoundaryKind kind, std::uint64_t base) {
        for (std::size_t q = 0; q < pts.size(); ++q) {
            const Geometry& g = geoms[(q + static_cast<std::size_t>(step)) % n_geom];
            const double u = speed(base + q);
            BoundaryPoint b{build_input(model, query(pts[q], g.segments.signed_distance(pts[q]), g.airfoil, u)), kind};
            if (kind == BoundaryKind::inlet) {
                const InletTurbulence t = inlet_turbulence(u, config.inlet_intensity, config.physics.constants);
                b.k_target = t.k / (u * u);
                b.eps_target = t.eps / (u * u * u);
            }
            batch.boundary.push_back(b);
        }
    };
    if (sch.batch.inlet > 0) add_edge(sample_inlet(config.domain, sch.batch.inlet, rng.bits(5000)), BoundaryKind::inlet, 6000);
    if (sch.batch.outlet > 0) add_edge(sample_outlet(config.domain, sch.batch.outlet, rng.bits(7000)), BoundaryKind::outlet, 8000);
    if (sch.batch.side > 0) add_edge(sample_sides(config.domain, sch.batch.side, rng.bits(9000)), BoundaryKind::side, 10000);
    return batch;
}

std::vector<std::size_t> offsets_of(std::span<const PreparedCase> cases) {
    std::vector<std::size_t> off{0};
    for (const auto& c : cases) off.push_back(off.back() + c.data.samples.size());
    return off;
}

std::string checkpoint_name(int step) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "checkpoint_%06d.txt", step);
    return buf;
}

}  // namespace

std::vector<PreparedCase> prepare_cases(std::span<const CaseDataset> cases) {
    std::vector<PreparedCase> out;
    out.reserve(cases.size());
    for (const auto& c : cases) {
        PreparedCase p{c, parse_naca_code(c.naca_code), case_sdf(c)};
        out.push_back(std::move(p));
    }
    return out;
}

LossBatch assemble_batch(const TrainConfig& config, std::span<const PreparedCase> cases, int step) {
    if (step < 1) throw ContractError("assemble_batch: steps are 1-based");
    const auto geoms = distinct_geometries(config, cases);
    const auto offsets = offsets_of(cases);
    return assemble(config, cases, geoms, offsets, step);
}

TrainResult train(const TrainConfig& config, std::span<const CaseDataset> raw_cases) {
    if (raw_cases.empty()) throw ValidationError("train: at least one case is required");
    config.model.validate();
    config.schedule.validate();
    config.weights.validate();
    config.physics.constants.validate();

    const std::vector<PreparedCase> cases = prepare_cases(raw_cases);
    for (const auto& c : cases) {
        const Polyline poly = surface_polyline(c.airfoil, config.surface_stations);
        config.domain.validate_against(config.angle_of_attack != 0.0 ? rotated(poly, config.angle_of_attack) : poly);
    }
    const auto geoms = distinct_geometries(config, cases);
    const auto offsets = offsets_of(cases);
    const Schedule& sch = config.schedule;

    TrainResult result{init_params(config.model, sch.seed), {}, TrainStatus::completed, {}};
    MlpParams good = result.params;
    AdamState adam;
    double lr = sch.learning_rate;
    double initial_loss = -1.0;
    double ema = 0.0;
    double best = 0.0;
    int last_improvement = 0;
    Phase previous = Phase::warmstart;

    std::map<std::string, std::string> meta = {{"config", config.config_hash}};
    auto write_checkpoint = [&](const MlpParams& p, const std::string& name, int step) {
        if (config.checkpoint_dir.empty()) return;
        std::filesystem::create_directories(config.checkpoint_dir);
        auto m = meta;
        m["step"] = std::to_string(step);
        save_checkpoint(config.checkpoint_dir / name, p, m);
    };

    for (int step = 1; step <= sch.total_steps; ++step) {
        const Phase phase = step <= sch.warmstart_steps ? Phase::warmstart : Phase::full;
        LossResult loss;
        try {
            const LossBatch batch = assemble(config, cases, geoms, offsets, step);
            loss = total_loss(result.params, batch, config.weights, phase, config.physics, true);
            if (initial_loss < 0.0) initial_loss = loss.total;
            if (loss.total > 1e6 * initial_loss && initial_loss > 0.0) {
                result.status = TrainStatus::diverged;
                result.message = "loss " + format_double(loss.total) + " exceeds 1e6 x initial at step " +
                                 std::to_string(step);
            } else {
                good = result.params;
                adam_step(result.params.flat(), loss.gradient, adam, lr);
                if (!result.params.all_finite()) throw NumericError("parameters became non-finite");
            }
        } catch (const NumericError& e) {
            result.status = TrainStatus::non_finite;
            result.message = std::string(e.what()) + " at step " + std::to_string(step);
        }
        if (result.status != TrainStatus::completed) {
            result.params = good;
            write_checkpoint(good, "last_good.txt", step - 1);
            return result;
        }

        TrainRecord rec;
        rec.step = step;
        rec.phase = phase;
        rec.components = loss.components;
        rec.total = loss.total;
        rec.learning_rate = lr;
        rec.grad_norms = loss.grad_norms;
        rec.eps_clamped = loss.eps_clamped;
        result.history.push_back(rec);

        // Plateau decay on an exponential average; restarts at the phase change.
        if (phase != previous || step == 1) {
            ema = loss.total;
            best = ema;
            last_improvement = step;
            previous = phase;
        } else {
            ema = 0.99 * ema + 0.01 * loss.total;
            if (ema < best * (1.0 - 1e-3)) {
                best = ema;
                last_improvement = step;
            } else if (step - last_improvement >= sch.plateau_steps) {
                lr *= sch.lr_decay;
                best = ema;
                last_improvement = step;
            }
        }

        if (config.checkpoint_every > 0 && step % config.checkpoint_every == 0 && step != sch.total_steps) {
            write_checkpoint(result.params, checkpoint_name(step), step);
        }
    }
    write_checkpoint(result.params, "final.txt", sch.total_steps);
    return result;
}

std::string training_log_csv(std::span<const TrainRecord> history, const std::string& config_hash) {
    std::ostringstream os;
    os << artifact_header("trainlog", 1, {{"config", config_hash}}) << '\n';
    os << "step,phase,total";
    for (auto name : kComponentNames) os << ',' << name;
    os << ",lr,grad_data,grad_pde,grad_bc,eps_clamped\n";
    for (const auto& r : history) {
        os << r.step << ',' << to_string(r.phase) << ',' << format_double(r.total);
        for (double c : r.components) os << ',' << format_double(c);
        os << ',' << format_double(r.learning_rate) << ',' << format_double(r.grad_norms.data) << ','
           << format_double(r.grad_norms.pde) << ',' << format_double(r.grad_norms.bc) << ',' << r.eps_clamped << '\n';
    }
    return os.str();
}

}  // namespace foil
