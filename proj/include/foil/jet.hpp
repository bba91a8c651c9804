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

#include <array>
#include <cmath>

namespace foil {

/// Value plus first and pure second spatial derivatives of one field.
template <class T>
struct BasicJet {
    T val{};
    T dx{};
    T dy{};
    T dxx{};
    T dyy{};

    T laplacian() const { return dxx + dyy; }
};

/// Jets of the five surrogate outputs.
template <class T>
struct BasicFlowJet {
    BasicJet<T> u, v, p, k, eps;
};

using Jet = BasicJet<double>;
using FlowJet = BasicFlowJet<double>;

inline constexpr int kJetComponents = 5;
inline constexpr int kFlowJetSize = 5 * kJetComponents;

/// Flat view used by the kernels: output-major, component-minor
/// (u.val, u.dx, u.dy, u.dxx, u.dyy, v.val, ...).
inline std::array<double, kFlowJetSize> flatten(const FlowJet& j) {
    std::array<double, kFlowJetSize> out{};
    const Jet* fields[] = {&j.u, &j.v, &j.p, &j.k, &j.eps};
    for (int f = 0; f < 5; ++f) {
        out[5 * f + 0] = fields[f]->val;
        out[5 * f + 1] = fields[f]->dx;
        out[5 * f + 2] = fields[f]->dy;
        out[5 * f + 3] = fields[f]->dxx;
        out[5 * f + 4] = fields[f]->dyy;
    }
    return out;
}

inline FlowJet unflatten(const std::array<double, kFlowJetSize>& a) {
    FlowJet j;
    Jet* fields[] = {&j.u, &j.v, &j.p, &j.k, &j.eps};
    for (int f = 0; f < 5; ++f) {
        *fields[f] = {a[5 * f + 0], a[5 * f + 1], a[5 * f + 2], a[5 * f + 3], a[5 * f + 4]};
    }
    return j;
}

/// Forward-mode dual number carrying N directional derivatives. Used to
/// differentiate the pointwise residual operators with respect to the
/// network's output jets.
template <int N>
struct Dual {
    double v = 0.0;
    std::array<double, N> d{};

    constexpr Dual() = default;
    constexpr Dual(double value) : v(value) {}  // NOLINT: implicit constants

    static Dual variable(double value, int index) {
        Dual x(value);
        x.d[static_cast<std::size_t>(index)] = 1.0;
        return x;
    }

    Dual& operator+=(const Dual& o) {
        v += o.v;
        for (int i = 0; i < N; ++i) d[i] += o.d[i];
        return *this;
    }
    Dual& operator-=(const Dual& o) {
        v -= o.v;
        for (int i = 0; i < N; ++i) d[i] -= o.d[i];
        return *this;
    }
    Dual& operator*=(const Dual& o) {
        for (int i = 0; i < N; ++i) d[i] = d[i] * o.v + v * o.d[i];
        v *= o.v;
        return *this;
    }
    Dual& operator/=(const Dual& o) {
        const double inv = 1.0 / o.v;
        for (int i = 0; i < N; ++i) d[i] = (d[i] - v * inv * o.d[i]) * inv;
        v *= inv;
        return *this;
    }

    friend Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
    friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
    friend Dual operator-(Dual a) {
        a.v = -a.v;
        for (int i = 0; i < N; ++i) a.d[i] = -a.d[i];
        return a;
    }
};

inline double value_of(double x) { return x; }
template <int N>
double value_of(const Dual<N>& x) {
    return x.v;
}

}  // namespace foil
