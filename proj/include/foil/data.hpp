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

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "foil/geometry.hpp"
#include "foil/jet.hpp"
#include "foil/physics.hpp"
#include "foil/sampling.hpp"

namespace foil {

/// One flow sample in physical units. k and eps are NaN when the source
/// has no turbulence columns.
struct FieldSample {
    double x = 0.0;
    double y = 0.0;
    double u = 0.0;
    double v = 0.0;
    double p = 0.0;
    double k = 0.0;
    double eps = 0.0;
};

enum class Provenance { cfd, synthetic, manufactured };

std::string_view to_string(Provenance p);
Provenance parse_provenance(std::string_view text);

struct CaseDataset {
    std::string naca_code;
    double u_in = 0.0;
    std::vector<FieldSample> samples;
    Provenance provenance = Provenance::cfd;
    bool has_turbulence = false;
    /// Per-sample signed distance when the file carried an sdf column.
    std::optional<std::vector<double>> sdf;
    /// u_in lies outside the configured training range.
    bool extrapolation = false;
};

/// Training range of inlet speeds, m/s.
inline constexpr double kMinInletSpeed = 2.0;
inline constexpr double kMaxInletSpeed = 7.0;

/// Reads the versioned case CSV. naca_code / u_in override the header
/// values when given; one of the two sources must provide them. Throws
/// LoadError with the row index for missing columns, non-finite values and
/// points inside the airfoil.
CaseDataset load_case_csv(const std::filesystem::path& path, std::optional<std::string> naca_code = {},
                          std::optional<double> u_in = {});

/// Per-sample sdf for the case airfoil: the file's sdf column when present,
/// otherwise computed from the surface polyline. `recomputed` reports which.
std::vector<double> case_sdf(const CaseDataset& data, bool* recomputed = nullptr);

std::string case_csv_text(const CaseDataset& data, const std::string& config_hash = "");
void write_case_csv(const std::filesystem::path& path, const CaseDataset& data,
                    const std::string& config_hash = "");

/// Smooth wall-to-far-field turbulence profile used by synthetic cases.
struct SyntheticTurbulence {
    double intensity = 0.05;    ///< far-field k = 1.5 (I u_in)^2
    double wall_ratio = 4.0;    ///< k_wall / k_far
    double decay_length = 0.05; ///< delta, chord units
    double mixing_length = 0.05;///< l in eps = C_mu^0.75 k^1.5 / l
};

/// Potential flow past a Joukowski section fitted to a NACA code: the
/// thickness parameter is solved so the mapped body's maximum thickness
/// equals t, camber follows the thin-arc relation, and the body is placed
/// with its leading edge at the origin and trailing edge at (1, 0).
/// The Kutta condition fixes the circulation.
class SyntheticFlow {
public:
    SyntheticFlow(const AirfoilParams& airfoil, double u_in, SyntheticTurbulence turbulence = {},
                  TurbulenceConstants constants = {});

    /// Velocity (u, v) at a chord-frame point, or nullopt inside the body.
    std::optional<Vec2> velocity(Vec2 point) const;
    bool inside_body(Vec2 point) const;

    /// Full sample; sdf is the distance to the NACA surface and drives k/eps.
    std::optional<FieldSample> sample(Vec2 point, double sdf) const;

    /// Leading-edge stagnation point on the mapped body.
    Vec2 stagnation_point() const;
    /// Thickness/chord of the fitted body (should equal airfoil.t).
    double fitted_thickness() const { return fitted_thickness_; }
    /// Outline of the mapped body in chord frame.
    std::vector<Vec2> body_outline(int n) const;
    double u_in() const { return u_in_; }

private:
    using cplx = std::complex<double>;
    cplx to_circle_plane(Vec2 point) const;  // physical root, may lie inside the circle
    cplx chord_to_z(Vec2 point) const;
    Vec2 z_to_chord(cplx z) const;
    cplx complex_velocity_chord(cplx zeta) const;

    AirfoilParams airfoil_;
    double u_in_;
    SyntheticTurbulence turbulence_;
    TurbulenceConstants constants_;
    double a_ = 1.0;
    cplx center_;
    double radius_ = 0.0;
    double beta_ = 0.0;
    cplx z_le_;
    double chord_ = 1.0;
    double theta_ = 0.0;
    double circulation_ = 0.0;
    double stream_speed_ = 0.0;
    double fitted_thickness_ = 0.0;
};

struct SyntheticOptions {
    double near_fraction = 0.3;
    double near_band = 0.1;
    Domain domain{};
    SyntheticTurbulence turbulence{};
};

/// n_points exterior samples of the synthetic flow (outside both the NACA
/// section and the mapped body), tagged `synthetic`.
CaseDataset synthetic_case(std::string_view naca_code, double u_in, int n_points, std::uint64_t seed,
                           const SyntheticOptions& options = {}, const TurbulenceConstants& constants = {});

/// Analytic field with closed-form derivatives and hand-derived residuals,
/// for verifying the residual operators.
class ManufacturedCase {
public:
    /// id in {uniform, couette, taylor-green, k-eps-balance}.
    ManufacturedCase(std::string_view id, TurbulenceConstants constants = {});

    const std::string& id() const { return id_; }
    FlowJet fields(Vec2 p) const;
    /// Expected residuals (non-conservative diffusion form).
    ResidualVector expected_residuals(Vec2 p, bool standard_sign = true) const;
    /// Expected P_k.
    double expected_production(Vec2 p) const;
    /// Samples of the analytic field on exterior points of NACA 0012. The
    /// uniform case is a frozen free stream (eps = 0), so its dataset
    /// carries no k/eps columns.
    CaseDataset dataset(int n_points, std::uint64_t seed) const;

    static std::vector<std::string> ids();

private:
    std::string id_;
    TurbulenceConstants c_;
};

}  // namespace foil
