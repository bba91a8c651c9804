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

#include <cmath>
#include <functional>

#include "foil/data.hpp"
#include "foil/error.hpp"
#include "foil/physics.hpp"
#include "foil/rng.hpp"

using namespace foil;

namespace {

Jet constant(double v) { return {v, 0, 0, 0, 0}; }

FlowJet uniform_flow(double u0, double k, double eps) {
    FlowJet f;
    f.u = constant(u0);
    f.v = constant(0.0);
    f.p = constant(1.7);
    f.k = constant(k);
    f.eps = constant(eps);
    return f;
}

bool close(double a, double b, double rel = 1e-6, double abs = 1e-14) {
    return std::abs(a - b) <= rel * std::abs(b) + abs;
}

/// Primitive fields as plain functions of (x, y).
using FieldFn = std::function<std::array<double, 5>(double, double)>;

/// Residuals of the steady k-eps RANS system built from finite differences
/// of the primitive fields, written directly from the textbook form.
ResidualVector fd_residuals(const FieldFn& f, double x, double y, const TurbulenceConstants& c, bool standard) {
    const double h = 1e-3;
    const auto f0 = f(x, y);
    const auto xp = f(x + h, y), xm = f(x - h, y), yp = f(x, y + h), ym = f(x, y - h);
    const auto xp2 = f(x + 2 * h, y), xm2 = f(x - 2 * h, y), yp2 = f(x, y + 2 * h), ym2 = f(x, y - 2 * h);
    auto d1 = [&](const auto& p, const auto& m, const auto& p2, const auto& m2, int i) {
        return (-p2[i] + 8 * p[i] - 8 * m[i] + m2[i]) / (12 * h);
    };
    auto d2 = [&](const auto& p, const auto& m, const auto& p2, const auto& m2, int i) {
        return (-p2[i] + 16 * p[i] - 30 * f0[i] + 16 * m[i] - m2[i]) / (12 * h * h);
    };
    double gx[5], gy[5], lap[5];
    for (int i = 0; i < 5; ++i) {
        gx[i] = d1(xp, xm, xp2, xm2, i);
        gy[i] = d1(yp, ym, yp2, ym2, i);
        lap[i] = d2(xp, xm, xp2, xm2, i) + d2(yp, ym, yp2, ym2, i);
    }
    const double u = f0[0], v = f0[1], k = f0[3], e = f0[4];
    const double nut = c.C_mu * k * k / e;
    const double nu = c.mu + nut;
    const double pk = nut * (2 * gx[0] * gx[0] + 2 * gy[1] * gy[1] + (gy[0] + gx[1]) * (gy[0] + gx[1]));
    const double div = gx[0] + gy[1];
    ResidualVector r;
    r.cont = div;
    r.mom_x = u * gx[0] + v * gy[0] + gx[2] - nu * lap[0];
    r.mom_y = u * gx[1] + v * gy[1] + gy[2] - nu * lap[1];
    r.k = u * gx[3] + v * gy[3] + k * div - (c.mu + nut / c.sigma_k) * lap[3] - pk + e;
    const double c2 = standard ? -c.C2 : c.C2;
    r.eps = u * gx[4] + v * gy[4] + e * div - (c.mu + nut / c.sigma_eps) * lap[4] - (c.C1 * pk + c2 * e) * e / k;
    return r;
}

}  // namespace

TEST_CASE("default constants") {
    const TurbulenceConstants c;
    CHECK(c.C1 == 1.44);
    CHECK(c.C2 == 1.92);
    CHECK(c.sigma_k == 1.0);
    CHECK(c.sigma_eps == 1.3);
    CHECK(c.C_mu == 0.09);
    CHECK(c.mu == 1e-5);
    CHECK_NOTHROW(c.validate());
    TurbulenceConstants bad;
    bad.C_mu = 0.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("effective viscosity examples") {
    const TurbulenceConstants c;
    CHECK(effective_viscosity(0.0, 1.0, c) == c.mu);
    CHECK(effective_viscosity(1.0, 1.0, c) == doctest::Approx(1e-5 + 0.09).epsilon(1e-15));
    CHECK(effective_viscosity(2.0, 4.0, c) == doctest::Approx(c.mu + 0.09).epsilon(1e-15));
    PhysicsDiagnostics d;
    const double clamped = effective_viscosity(1.0, 0.0, c, &d);
    CHECK(d.eps_clamped == 1);
    CHECK(clamped == doctest::Approx(c.mu + 0.09 / c.eps_floor));
    CHECK(std::isfinite(clamped));
}

TEST_CASE("continuity examples") {
    FlowJet f = uniform_flow(1, 1, 1);
    f.u = {0.3, 1, 0, 0, 0};
    f.v = {0.2, 0, -1, 0, 0};
    CHECK(continuity_residual(f) == 0.0);
    f.v.dy = 1.0;
    CHECK(continuity_residual(f) == 2.0);
    // psi = sin x sin y
    const CounterRng rng(3);
    for (std::uint64_t i = 0; i < 100; ++i) {
        const double x = rng.uniform(2 * i, -3, 3), y = rng.uniform(2 * i + 1, -3, 3);
        f.u = {std::sin(x) * std::cos(y), std::cos(x) * std::cos(y), -std::sin(x) * std::sin(y), 0, 0};
        f.v = {-std::cos(x) * std::sin(y), std::sin(x) * std::sin(y), -std::cos(x) * std::cos(y), 0, 0};
        CHECK(std::abs(continuity_residual(f)) <= 1e-15);
    }
}

TEST_CASE("momentum examples") {
    const TurbulenceConstants c;
    const auto [rx, ry] = momentum_residual(uniform_flow(5.0, 0.3, 0.7), c);
    CHECK(rx == 0.0);
    CHECK(ry == 0.0);
    FlowJet couette = uniform_flow(0, 0.02, 0.01);
    couette.u = {0.4, 0, 1, 0, 0};
    couette.p = constant(0.0);
    const auto [cx, cy] = momentum_residual(couette, c);
    CHECK(cx == 0.0);
    CHECK(cy == 0.0);
}

TEST_CASE("production examples") {
    FlowJet f = uniform_flow(2, 1, 1);
    CHECK(production_term(f, 1.0) == 0.0);
    f.u.dy = 1.0;
    CHECK(production_term(f, 1.0) == 1.0);
    f = uniform_flow(2, 1, 1);
    f.u.dx = 1.0;
    f.v.dy = -1.0;
    CHECK(production_term(f, 0.5) == 2.0);
}

TEST_CASE("k and eps examples") {
    const TurbulenceConstants c;
    const FlowJet f = uniform_flow(4.0, 0.3, 0.05);
    CHECK(k_residual(f, c) == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(eps_residual(f, c) == doctest::Approx(c.C2 * 0.05 * 0.05 / 0.3).epsilon(1e-14));
    ResidualOptions flipped;
    flipped.standard_sign = false;
    CHECK(eps_residual(f, c, flipped) == doctest::Approx(-c.C2 * 0.05 * 0.05 / 0.3).epsilon(1e-14));

    // Constant state with P_k = eps imposed through a uniform shear.
    const double k = 0.2, eps = 0.1;
    const double mu_t = c.C_mu * k * k / eps;
    FlowJet s = uniform_flow(1.0, k, eps);
    s.u.dy = std::sqrt(eps / mu_t);
    CHECK(std::abs(k_residual(s, c)) <= 1e-15);

    // P_k = (C2/C1) eps makes the eps source vanish.
    s.u.dy = std::sqrt(c.C2 / c.C1 * eps / mu_t);
    CHECK(std::abs(eps_residual(s, c)) <= 1e-15);
}

TEST_CASE("manufactured fields: residual operators match the hand-derived residuals") {
    for (const std::string& id : {std::string("couette"), std::string("taylor-green"), std::string("k-eps-balance")}) {
        CAPTURE(id);
        const ManufacturedCase mc(id);
        const TurbulenceConstants c;
        const CounterRng rng(17);
        for (bool standard : {true, false}) {
            ResidualOptions opt;
            opt.standard_sign = standard;
            for (std::uint64_t i = 0; i < 100; ++i) {
                const Vec2 p{rng.uniform(2 * i, -2, 4), rng.uniform(2 * i + 1, -2, 2)};
                const ResidualVector got = residuals(mc.fields(p), c, opt);
                const ResidualVector want = mc.expected_residuals(p, standard);
                CHECK(close(got.cont, want.cont));
                CHECK(close(got.mom_x, want.mom_x));
                CHECK(close(got.mom_y, want.mom_y));
                CHECK(close(got.k, want.k));
                CHECK(close(got.eps, want.eps));
            }
        }
    }
}

TEST_CASE("manufactured fields: residual operators match finite-difference RANS") {
    const TurbulenceConstants c;
    for (const std::string& id : {std::string("couette"), std::string("taylor-green"), std::string("k-eps-balance")}) {
        CAPTURE(id);
        const ManufacturedCase mc(id);
        const FieldFn f = [&](double x, double y) {
            const FlowJet j = mc.fields({x, y});
            return std::array<double, 5>{j.u.val, j.v.val, j.p.val, j.k.val, j.eps.val};
        };
        const CounterRng rng(5);
        for (std::uint64_t i = 0; i < 40; ++i) {
            const Vec2 p{rng.uniform(2 * i, -2, 4), rng.uniform(2 * i + 1, -2, 2)};
            for (bool standard : {true, false}) {
                ResidualOptions opt;
                opt.standard_sign = standard;
                const ResidualVector got = residuals(mc.fields(p), c, opt);
                const ResidualVector fd = fd_residuals(f, p.x, p.y, c, standard);
                CHECK(close(got.cont, fd.cont, 1e-6, 1e-8));
                CHECK(close(got.mom_x, fd.mom_x, 1e-6, 1e-8));
                CHECK(close(got.mom_y, fd.mom_y, 1e-6, 1e-8));
                CHECK(close(got.k, fd.k, 1e-6, 1e-8));
                CHECK(close(got.eps, fd.eps, 1e-6, 1e-8));
            }
        }
    }
}

TEST_CASE("uniform manufactured case has identically zero residuals") {
    const ManufacturedCase mc("uniform");
    const TurbulenceConstants c;
    const CounterRng rng(1);
    for (std::uint64_t i = 0; i < 100; ++i) {
        const Vec2 p{rng.uniform(2 * i, -2, 4), rng.uniform(2 * i + 1, -2, 2)};
        for (bool standard : {true, false}) {
            ResidualOptions opt;
            opt.standard_sign = standard;
            const ResidualVector r = residuals(mc.fields(p), c, opt);
            CHECK(r.cont == 0.0);
            CHECK(r.mom_x == 0.0);
            CHECK(r.mom_y == 0.0);
            CHECK(r.k == 0.0);
            CHECK(r.eps == 0.0);
        }
    }
}

TEST_CASE("couette production equals mu_t") {
    const ManufacturedCase mc("couette");
    const TurbulenceConstants c;
    const FlowJet f = mc.fields({0.3, 0.7});
    const double mu_t = turbulent_viscosity(f.k.val, f.eps.val, c);
    CHECK(production_term(f, mu_t) == doctest::Approx(mu_t).epsilon(1e-15));
    CHECK(mc.expected_production({0.3, 0.7}) == doctest::Approx(mu_t).epsilon(1e-15));
}

TEST_CASE("Galilean invariance of the momentum residual for uniform shifts") {
    const TurbulenceConstants c;
    const ManufacturedCase mc("couette");
    const FlowJet base = mc.fields({0.1, 0.4});
    FlowJet shifted = base;
    shifted.u.val += 2.5;  // u_x = 0 here
    const auto [ax, ay] = momentum_residual(base, c);
    const auto [bx, by] = momentum_residual(shifted, c);
    CHECK(ax == bx);
    CHECK(ay == by);
}

TEST_CASE("conservative diffusion adds grad(mu_t) . grad(phi)") {
    const TurbulenceConstants c;
    FlowJet f = uniform_flow(1.0, 0.2, 0.1);
    f.u = {1.0, 0.3, -0.2, 0.1, 0.05};
    f.k = {0.2, 0.01, 0.02, 0, 0};
    f.eps = {0.1, -0.01, 0.005, 0, 0};
    ResidualOptions cons;
    cons.conservative_diffusion = true;
    const auto [plain_x, plain_y] = momentum_residual(f, c);
    const auto [cons_x, cons_y] = momentum_residual(f, c, cons);
    // grad(mu_t) by finite differences of C_mu k^2 / eps along the jet.
    auto mut = [&](double k, double e) { return c.C_mu * k * k / e; };
    const double h = 1e-6;
    const double gx = (mut(f.k.val + h * f.k.dx, f.eps.val + h * f.eps.dx) - mut(f.k.val - h * f.k.dx, f.eps.val - h * f.eps.dx)) / (2 * h);
    const double gy = (mut(f.k.val + h * f.k.dy, f.eps.val + h * f.eps.dy) - mut(f.k.val - h * f.k.dy, f.eps.val - h * f.eps.dy)) / (2 * h);
    CHECK(plain_x - cons_x == doctest::Approx(gx * f.u.dx + gy * f.u.dy).epsilon(1e-7));
    CHECK(plain_y - cons_y == doctest::Approx(gx * f.v.dx + gy * f.v.dy).epsilon(1e-7));
}

TEST_CASE("dual-number residual derivatives match finite differences") {
    const TurbulenceConstants c;
    const ManufacturedCase mc("taylor-green");
    const FlowJet f = mc.fields({0.4, -0.3});
    const auto flat = flatten(f);
    using D = Dual<kFlowJetSize>;
    BasicFlowJet<D> d;
    BasicJet<D>* fields[] = {&d.u, &d.v, &d.p, &d.k, &d.eps};
    for (int o = 0; o < 5; ++o) {
        D* comps[] = {&fields[o]->val, &fields[o]->dx, &fields[o]->dy, &fields[o]->dxx, &fields[o]->dyy};
        for (int k = 0; k < 5; ++k) *comps[k] = D::variable(flat[static_cast<std::size_t>(5 * o + k)], 5 * o + k);
    }
    const auto rd = residuals(d, c);
    const D* outs[] = {&rd.cont, &rd.mom_x, &rd.mom_y, &rd.k, &rd.eps};
    for (std::size_t i = 0; i < flat.size(); ++i) {
        auto shifted = flat;
        const double h = 1e-6 * std::max(1.0, std::abs(flat[i]));
        shifted[i] = flat[i] + h;
        const ResidualVector rp = residuals(unflatten(shifted), c);
        shifted[i] = flat[i] - h;
        const ResidualVector rm = residuals(unflatten(shifted), c);
        const double fd[] = {(rp.cont - rm.cont) / (2 * h), (rp.mom_x - rm.mom_x) / (2 * h), (rp.mom_y - rm.mom_y) / (2 * h),
                             (rp.k - rm.k) / (2 * h), (rp.eps - rm.eps) / (2 * h)};
        for (int r = 0; r < 5; ++r) {
            CHECK(std::abs(outs[r]->d[i] - fd[r]) <= 1e-6 * std::max(1.0, std::abs(fd[r])));
        }
    }
}

TEST_CASE("boundary residuals") {
    FlowState s;
    CHECK(surface_bc_residual(s, 0.0) == std::pair<double, double>(0.0, 0.0));
    s.u = 0.3;
    s.v = -0.1;
    CHECK(surface_bc_residual(s, 0.0) == std::pair<double, double>(0.3, -0.1));
    CHECK_THROWS_AS(surface_bc_residual(s, 1e-3), ContractError);
    FlowState in{4.0, 0.0, 0, 0, 0};
    CHECK(inlet_bc_residual(in, 4.0) == std::pair<double, double>(0.0, 0.0));
    in.u = 0.0;
    CHECK(inlet_bc_residual(in, 4.0) == std::pair<double, double>(-4.0, 0.0));
    CHECK(side_bc_residual(in, 4.0) == std::pair<double, double>(-4.0, 0.0));
    in.p = 0.7;
    CHECK(outlet_bc_residual(in) == 0.7);
}

TEST_CASE("inlet turbulence from intensity") {
    const TurbulenceConstants c;
    const InletTurbulence t = inlet_turbulence(4.0, 0.05, c);
    CHECK(t.k == doctest::Approx(1.5 * 0.04).epsilon(1e-15));
    CHECK(t.eps == doctest::Approx(std::pow(0.09, 0.75) * std::pow(0.06, 1.5) / 0.1).epsilon(1e-14));
}

TEST_CASE("nondimensional residual scales") {
    ResidualVector r{2.0, 8.0, 8.0, 16.0, 32.0};
    const ResidualVector n = nondimensionalize(r, 2.0);
    CHECK(n.cont == 1.0);
    CHECK(n.mom_x == 2.0);
    CHECK(n.k == 2.0);
    CHECK(n.eps == 2.0);
}
