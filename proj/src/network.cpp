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

#include "foil/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "foil/error.hpp"
#include "foil/io.hpp"
#include "foil/network_kernels.hpp"
#include "foil/rng.hpp"

namespace foil {

std::string_view to_string(ModelVariant v) {
    switch (v) {
        case ModelVariant::L: return "L";
        case ModelVariant::G: return "G";
        case ModelVariant::LG: return "LG";
    }
    return "L";
}

ModelVariant parse_variant(std::string_view text) {
    if (text == "L") return ModelVariant::L;
    if (text == "G") return ModelVariant::G;
    if (text == "LG" || text == "L+G") return ModelVariant::LG;
    throw ParseError("variant", "unknown model variant '" + std::string(text) + "' (expected L, G or LG)");
}

std::string_view to_string(Activation a) { return a == Activation::sine ? "sine" : "tanh"; }

Activation parse_activation(std::string_view text) {
    if (text == "tanh") return Activation::tanh;
    if (text == "sine" || text == "sin") return Activation::sine;
    throw ParseError("activation", "'" + std::string(text) +
                                       "' is not a supported C2 activation (tanh, sine)");
}

InputNormalization InputNormalization::from_domain(const Domain& domain) {
    InputNormalization n;
    n.x_center = 0.5 * (domain.x_min + domain.x_max);
    n.x_half_range = 0.5 * (domain.x_max - domain.x_min);
    n.y_center = 0.5 * (domain.y_min + domain.y_max);
    n.y_half_range = 0.5 * (domain.y_max - domain.y_min);
    return n;
}

void MlpConfig::validate() const {
    if (hidden_layers < 1) throw ValidationError("network: hidden_layers must be >= 1");
    if (width < 4) throw ValidationError("network: width must be >= 4");
    if (!(input.x_half_range > 0.0 && input.y_half_range > 0.0 && input.sdf_scale > 0.0 &&
          input.u_hi > input.u_lo)) {
        throw ValidationError("network: invalid input normalization");
    }
    if (!(k_floor > 0.0 && eps_floor > 0.0)) throw ValidationError("network: floors must be > 0");
}

MlpParams::MlpParams(MlpConfig config) : config_(std::move(config)) {
    config_.validate();
    std::size_t offset = 0;
    int fan_in = config_.input_dim();
    for (int l = 0; l <= config_.hidden_layers; ++l) {
        const int fan_out = l == config_.hidden_layers ? kOutputHeads : config_.width;
        LayerShape s;
        s.rows = fan_out;
        s.cols = fan_in;
        s.weight_offset = offset;
        offset += static_cast<std::size_t>(fan_out) * static_cast<std::size_t>(fan_in);
        s.bias_offset = offset;
        offset += static_cast<std::size_t>(fan_out);
        layout_.push_back(s);
        fan_in = fan_out;
    }
    values_.assign(offset, 0.0);
}

bool MlpParams::all_finite() const {
    for (double v : values_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

bool operator==(const MlpParams& a, const MlpParams& b) {
    const MlpConfig& x = a.config_;
    const MlpConfig& y = b.config_;
    const bool same_config =
        x.hidden_layers == y.hidden_layers && x.width == y.width && x.activation == y.activation &&
        x.variant == y.variant && x.input.x_center == y.input.x_center &&
        x.input.x_half_range == y.input.x_half_range && x.input.y_center == y.input.y_center &&
        x.input.y_half_range == y.input.y_half_range && x.input.sdf_scale == y.input.sdf_scale &&
        x.input.u_lo == y.input.u_lo && x.input.u_hi == y.input.u_hi && x.k_floor == y.k_floor &&
        x.eps_floor == y.eps_floor;
    return same_config && a.values_ == b.values_;
}

MlpParams init_params(const MlpConfig& config, std::uint64_t seed) {
    MlpParams params(config);
    auto flat = params.flat();
    for (std::size_t l = 0; l < params.layout().size(); ++l) {
        const LayerShape& s = params.layout()[l];
        const double bound = std::sqrt(6.0 / (s.rows + s.cols));
        const CounterRng rng(seed, 100 + l);
        const std::size_t count = static_cast<std::size_t>(s.rows) * static_cast<std::size_t>(s.cols);
        for (std::size_t i = 0; i < count; ++i) flat[s.weight_offset + i] = rng.uniform(i, -bound, bound);
    }
    return params;
}

ModelInput make_raw_input(ModelVariant variant, std::span<const double> values) {
    if (static_cast<int>(values.size()) != input_dimension(variant)) {
        throw ContractError("make_raw_input: dimension does not match variant " +
                            std::string(to_string(variant)));
    }
    ModelInput in;
    in.variant_ = variant;
    in.size_ = static_cast<int>(values.size());
    std::copy(values.begin(), values.end(), in.values_.begin());
    return in;
}

ModelInput build_input(const MlpConfig& config, const PointQuery& q) {
    const ModelVariant variant = config.variant;
    const InputNormalization& n = config.input;
    if (!(q.u_in > 0.0)) throw ContractError("build_input: u_in must be > 0");
    if (uses_sdf(variant)) {
        if (!q.sdf) throw ContractError("build_input: variant " + std::string(to_string(variant)) + " needs an sdf value");
        if (*q.sdf < 0.0) throw ContractError("build_input: sdf must be >= 0 (point inside the airfoil)");
    }
    if (uses_digits(variant) && q.airfoil == nullptr) {
        throw ContractError("build_input: variant " + std::string(to_string(variant)) + " needs airfoil parameters");
    }
    ModelInput in;
    in.variant_ = variant;
    int i = 0;
    in.values_[i++] = (q.x - n.x_center) / n.x_half_range;
    in.values_[i++] = (q.y - n.y_center) / n.y_half_range;
    if (uses_sdf(variant)) in.values_[i++] = *q.sdf / n.sdf_scale;
    if (uses_digits(variant)) {
        in.values_[i++] = q.airfoil->m;
        in.values_[i++] = q.airfoil->p;
        in.values_[i++] = q.airfoil->t;
    }
    in.values_[i++] = 2.0 * (q.u_in - n.u_lo) / (n.u_hi - n.u_lo) - 1.0;
    in.size_ = i;
    return in;
}

FlowState to_physical(const FlowState& s, double u_in) {
    const OutputScale c = OutputScale::for_inlet(u_in);
    return {s.u * c.velocity, s.v * c.velocity, s.p * c.pressure, s.k * c.k, s.eps * c.eps};
}

FlowState to_normalized(const FlowState& s, double u_in) {
    const OutputScale c = OutputScale::for_inlet(u_in);
    return {s.u / c.velocity, s.v / c.velocity, s.p / c.pressure, s.k / c.k, s.eps / c.eps};
}

FlowJet to_physical(const FlowJet& j, double u_in) {
    const OutputScale c = OutputScale::for_inlet(u_in);
    auto scale = [](Jet a, double s) {
        return Jet{a.val * s, a.dx * s, a.dy * s, a.dxx * s, a.dyy * s};
    };
    return {scale(j.u, c.velocity), scale(j.v, c.velocity), scale(j.p, c.pressure), scale(j.k, c.k),
            scale(j.eps, c.eps)};
}

double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

namespace {

void check_input(const MlpParams& params, const ModelInput& input) {
    if (input.variant() != params.config().variant) {
        throw ContractError("input built for variant " + std::string(to_string(input.variant())) +
                            " fed to a " + std::string(to_string(params.config().variant)) + " model");
    }
}

}  // namespace

FlowState forward(const MlpParams& params, const ModelInput& input) {
    check_input(params, input);
    return reference::forward_point(params, input.values());
}

FlowJet spatial_derivatives(const MlpParams& params, const ModelInput& input) {
    check_input(params, input);
    return reference::jet_point(params, input.values());
}

std::string checkpoint_text(const MlpParams& params, const std::map<std::string, std::string>& metadata) {
    const MlpConfig& c = params.config();
    std::ostringstream os;
    os << "# foil-pinn checkpoint v1\n";
    os << "version 1\n";
    for (const auto& [key, value] : metadata) os << "meta " << key << ' ' << value << '\n';
    os << "variant " << to_string(c.variant) << '\n';
    os << "hidden_layers " << c.hidden_layers << '\n';
    os << "width " << c.width << '\n';
    os << "activation " << to_string(c.activation) << '\n';
    os << std::hexfloat;
    os << "x_center " << c.input.x_center << '\n';
    os << "x_half_range " << c.input.x_half_range << '\n';
    os << "y_center " << c.input.y_center << '\n';
    os << "y_half_range " << c.input.y_half_range << '\n';
    os << "sdf_scale " << c.input.sdf_scale << '\n';
    os << "u_lo " << c.input.u_lo << '\n';
    os << "u_hi " << c.input.u_hi << '\n';
    os << "k_floor " << c.k_floor << '\n';
    os << "eps_floor " << c.eps_floor << '\n';
    os << "weights " << params.size() << '\n';
    for (double w : params.flat()) os << w << '\n';
    return os.str();
}

void save_checkpoint(const std::filesystem::path& path, const MlpParams& params,
                     const std::map<std::string, std::string>& metadata) {
    write_file_atomic(path, checkpoint_text(params, metadata));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open checkpoint '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line) || line.rfind("# foil-pinn checkpoint", 0) != 0) {
        throw LoadError("not a foil-pinn checkpoint: '" + path.string() + "'");
    }
    MlpConfig c;
    std::map<std::string, std::string> meta;
    bool have_version = false;
    std::size_t n_weights = 0;
    auto number = [&](const std::string& key, const std::string& text) {
        try {
            std::size_t used = 0;
            const double v = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return v;
        } catch (const std::exception&) {
            throw LoadError("checkpoint field '" + key + "' is not a number");
        }
    };
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto space = line.find(' ');
        const std::string key = line.substr(0, space);
        const std::string value = space == std::string::npos ? "" : line.substr(space + 1);
        if (key == "version") {
            if (value != "1") throw LoadError("unsupported checkpoint version '" + value + "'");
            have_version = true;
        } else if (key == "meta") {
            const auto sp = value.find(' ');
            meta[value.substr(0, sp)] = sp == std::string::npos ? "" : value.substr(sp + 1);
        } else if (key == "variant") {
            c.variant = parse_variant(value);
        } else if (key == "hidden_layers") {
            c.hidden_layers = static_cast<int>(number(key, value));
        } else if (key == "width") {
            c.width = static_cast<int>(number(key, value));
        } else if (key == "activation") {
            c.activation = parse_activation(value);
        } else if (key == "x_center") {
            c.input.x_center = number(key, value);
        } else if (key == "x_half_range") {
            c.input.x_half_range = number(key, value);
        } else if (key == "y_center") {
            c.input.y_center = number(key, value);
        } else if (key == "y_half_range") {
            c.input.y_half_range = number(key, value);
        } else if (key == "sdf_scale") {
            c.input.sdf_scale = number(key, value);
        } else if (key == "u_lo") {
            c.input.u_lo = number(key, value);
        } else if (key == "u_hi") {
            c.input.u_hi = number(key, value);
        } else if (key == "k_floor") {
            c.k_floor = number(key, value);
        } else if (key == "eps_floor") {
            c.eps_floor = number(key, value);
        } else if (key == "weights") {
            n_weights = static_cast<std::size_t>(number(key, value));
            break;
        } else {
            throw LoadError("unknown checkpoint field '" + key + "'");
        }
    }
    if (!have_version) throw LoadError("checkpoint lacks a version field");
    MlpParams params(c);
    if (n_weights != params.size()) {
        throw LoadError("checkpoint has " + std::to_string(n_weights) + " weights, config implies " +
                        std::to_string(params.size()));
    }
    auto flat = params.flat();
    for (std::size_t i = 0; i < n_weights; ++i) {
        if (!std::getline(in, line)) throw LoadError("checkpoint truncated at weight " + std::to_string(i));
        flat[i] = number("weights", line);
    }
    return {std::move(params), std::move(meta)};
}

}  // namespace foil
