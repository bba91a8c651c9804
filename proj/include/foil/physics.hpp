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

// Incompressible RANS with a standard k-epsilon closure, written pointwise in
// terms of output jets. All operators are templates over the scalar type so
// the training loss can differentiate them with Dual numbers.

#include <cmath>
#include <cstddef>
#include <utility>

#include "foil/jet.hpp"
#include "foil/network.hpp"

namespace foil {

struct TurbulenceConstants {
    double C1 = 1.44;
    double C2 = 1.92;
    double sigma_k = 1.0;
    double sigma_eps = 1.3;
    double C_mu = 0.09;
    double mu = 1e-5;   ///< molecular viscosity, m^2/s at rho = 1
    double rho = 1.0;
    double eps_floor = 1e-10;

    void validate() const;
};

struct ResidualOptions {
    /// true: epsilon source (C1 Pk - C2 eps) eps / k. false: the
    /// "(C1 Pk + C2 eps) eps / k" form.
    bool standard_sign = true;
    /// Adds grad(mu_eff) . grad(phi) to every diffusion term.
    bool conservative_diffusion = false;
};

struct PhysicsDiagnostics {
    std::size_t eps_clamped = 0;
};

template <class T>
struct BasicResidualVector {
    T cont{};
    T mom_x{};
    T mom_y{};
    T k{};
    T eps{};
};
using ResidualVector = BasicResidualVector<double>;

/// The floor only guards the division in mu_t; sink and source terms use
/// the raw eps, so a frozen free stream (eps = 0) has zero residuals.
template <class T>
T clamp_eps(const T& eps, const TurbulenceConstants& c, PhysicsDiagnostics* diag) {
    if (value_of(eps) < c.eps_floor) {
        if (diag) ++diag->eps_clamped;
        return T(c.eps_floor);
    }
    return eps;
}

template <class T>
T turbulent_viscosity(const T& k, const T& eps, const TurbulenceConstants& c,
                      PhysicsDiagnostics* diag = nullptr) {
    return T(c.C_mu) * k * k / clamp_eps(eps, c, diag);
}

/// mu + C_mu k^2 / eps.
template <class T>
T effective_viscosity(const T& k, const T& eps, const TurbulenceConstants& c,
                      PhysicsDiagnostics* diag = nullptr) {
    return T(c.mu) + turbulent_viscosity(k, eps, c, diag);
}

/// Gradient of mu_t from the k and eps jets (used by conservative diffusion).
template <class T>
std::pair<T, T> turbulent_viscosity_gradient(const BasicFlowJet<T>& f, const TurbulenceConstants& c,
                                             PhysicsDiagnostics* diag = nullptr) {
    const T eps = clamp_eps(f.eps.val, c, diag);
    const T a = T(2.0 * c.C_mu) * f.k.val / eps;
    const T b = T(c.C_mu) * f.k.val * f.k.val / (eps * eps);
    return {a * f.k.dx - b * f.eps.dx, a * f.k.dy - b * f.eps.dy};
}

template <class T>
T continuity_residual(const BasicFlowJet<T>& f) {
    return f.u.dx + f.v.dy;
}

template <class T>
std::pair<T, T> momentum_residual(const BasicFlowJet<T>& f, const TurbulenceConstants& c,
                                  const ResidualOptions& opt = {}, PhysicsDiagnostics* diag = nullptr) {
    const T mu_eff = effective_viscosity(f.k.val, f.eps.val, c, diag);
    T rx = f.u.val * f.u.dx + f.v.val * f.u.dy + f.p.dx - mu_eff * f.u.laplacian();
    T ry = f.u.val * f.v.dx + f.v.val * f.v.dy + f.p.dy - mu_eff * f.v.laplacian();
    if (opt.conservative_diffusion) {
        const auto [gx, gy] = turbulent_viscosity_gradient(f, c, diag);
        rx -= gx * f.u.dx + gy * f.u.dy;
        ry -= gx * f.v.dx + gy * f.v.dy;
    }
    return {rx, ry};
}

/// mu_t (2 u_x^2 + 2 v_y^2 + (u_y + v_x)^2).
template <class T>
T production_term(const BasicFlowJet<T>& f, const T& mu_t) {
    const T shear = f.u.dy + f.v.dx;
    return mu_t * (T(2.0) * f.u.dx * f.u.dx + T(2.0) * f.v.dy * f.v.dy + shear * shear);
}

template <class T>
T k_residual(const BasicFlowJet<T>& f, const TurbulenceConstants& c, const ResidualOptions& opt = {},
             PhysicsDiagnostics* diag = nullptr) {
    const T mu_t = turbulent_viscosity(f.k.val, f.eps.val, c, diag);
    const T& eps = f.eps.val;
    const T convection = f.u.val * f.k.dx + f.v.val * f.k.dy + f.k.val * continuity_residual(f);
    T diffusion = (T(c.mu) + mu_t / T(c.sigma_k)) * f.k.laplacian();
    if (opt.conservative_diffusion) {
        const auto [gx, gy] = turbulent_viscosity_gradient(f, c, nullptr);
        diffusion += (gx * f.k.dx + gy * f.k.dy) / T(c.sigma_k);
    }
    return convection - diffusion - production_term(f, mu_t) + eps;
}

template <class T>
T eps_residual(const BasicFlowJet<T>& f, const TurbulenceConstants& c, const ResidualOptions& opt = {},
               PhysicsDiagnostics* diag = nullptr) {
    const T mu_t = turbulent_viscosity(f.k.val, f.eps.val, c, diag);
    const T& eps = f.eps.val;
    const T convection = f.u.val * f.eps.dx + f.v.val * f.eps.dy + f.eps.val * continuity_residual(f);
    T diffusion = (T(c.mu) + mu_t / T(c.sigma_eps)) * f.eps.laplacian();
    if (opt.conservative_diffusion) {
        const auto [gx, gy] = turbulent_viscosity_gradient(f, c, nullptr);
        diffusion += (gx * f.eps.dx + gy * f.eps.dy) / T(c.sigma_eps);
    }
    const T pk = production_term(f, mu_t);
    const T destruction = opt.standard_sign ? -(T(c.C2) * eps) : T(c.C2) * eps;
    const T source = (T(c.C1) * pk + destruction) * eps / f.k.val;
    return convection - diffusion - source;
}

template <class T>
BasicResidualVector<T> residuals(const BasicFlowJet<T>& f, const TurbulenceConstants& c,
                                 const ResidualOptions& opt = {}, PhysicsDiagnostics* diag = nullptr) {
    BasicResidualVector<T> r;
    r.cont = continuity_residual(f);
    std::tie(r.mom_x, r.mom_y) = momentum_residual(f, c, opt, diag);
    r.k = k_residual(f, c, opt, nullptr);
    r.eps = eps_residual(f, c, opt, nullptr);
    return r;
}

/// No-slip residual (u, v) at a surface point. Throws ContractError when
/// |sdf| exceeds the surface tolerance.
std::pair<double, double> surface_bc_residual(const FlowState& state, double sdf);

inline constexpr double kSurfaceTolerance = 1e-12;

/// (u - u_in, v).
std::pair<double, double> inlet_bc_residual(const FlowState& state, double u_in);

/// p - 0 (the outlet is the pressure reference).
double outlet_bc_residual(const FlowState& state);

/// Free-stream side walls: (u - u_in, v).
std::pair<double, double> side_bc_residual(const FlowState& state, double u_in);

/// Inlet turbulence from an intensity estimate:
/// k = 1.5 (I u_in)^2, eps = C_mu^0.75 k^1.5 / (0.1 chord).
struct InletTurbulence {
    double k = 0.0;
    double eps = 0.0;
};
InletTurbulence inlet_turbulence(double u_in, double intensity, const TurbulenceConstants& c,
                                 double chord = 1.0);

/// Residuals in the physical units of each equation.
ResidualVector point_residuals(const FlowJet& physical, const TurbulenceConstants& c,
                               const ResidualOptions& opt = {}, PhysicsDiagnostics* diag = nullptr);

/// Divide each residual by its natural scale (U/L, U^2/L, U^3/L, U^4/L^2
/// with L = 1) so the equations are comparable across inlet speeds.
template <class T>
BasicResidualVector<T> nondimensionalize(BasicResidualVector<T> r, double u_in) {
    const double u2 = u_in * u_in;
    r.cont = r.cont / T(u_in);
    r.mom_x = r.mom_x / T(u2);
    r.mom_y = r.mom_y / T(u2);
    r.k = r.k / T(u2 * u_in);
    r.eps = r.eps / T(u2 * u2);
    return r;
}

}  // namespace foil
