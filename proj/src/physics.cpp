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

#include "foil/physics.hpp"

#include <cmath>
#include <string>

#include "foil/error.hpp"

namespace foil {

void TurbulenceConstants::validate() const {
    if (!(C1 > 0 && C2 > 0 && sigma_k > 0 && sigma_eps > 0 && C_mu > 0 && mu > 0 && rho > 0 && eps_floor > 0)) {
        throw ValidationError("turbulence constants must all be positive");
    }
}

std::pair<double, double> surface_bc_residual(const FlowState& state, double sdf) {
    if (std::abs(sdf) > kSurfaceTolerance) {
        throw ContractError("surface_bc_residual: point is not on the surface (sdf = " + std::to_string(sdf) + ")");
    }
    return {state.u, state.v};
}

std::pair<double, double> inlet_bc_residual(const FlowState& state, double u_in) {
    return {state.u - u_in, state.v};
}

double outlet_bc_residual(const FlowState& state) { return state.p; }

std::pair<double, double> side_bc_residual(const FlowState& state, double u_in) {
    return {state.u - u_in, state.v};
}

InletTurbulence inlet_turbulence(double u_in, double intensity, const TurbulenceConstants& c, double chord) {
    const double k = 1.5 * (intensity * u_in) * (intensity * u_in);
    return {k, std::pow(c.C_mu, 0.75) * std::pow(k, 1.5) / (0.1 * chord)};
}

ResidualVector point_residuals(const FlowJet& physical, const TurbulenceConstants& c, const ResidualOptions& opt,
                               PhysicsDiagnostics* diag) {
    return residuals(physical, c, opt, diag);
}

}  // namespace foil
