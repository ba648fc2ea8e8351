// Copyright 2026 The lindho Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <string>

namespace lindho {

using cplx = std::complex<double>;

/// |mu - omega| below this fraction of omega is treated as critical damping.
inline constexpr double kCriticalTolerance = 1e-9;
/// Relative slack applied to the uncertainty constraint.
inline constexpr double kConstraintSlack = 1e-12;

/// Raw physical and dissipative constants, not yet checked.
struct ParamValues {
    double hbar = 1.0;
    double mass = 1.0;
    double omega = 1.0;
    double lambda = 0.0;  // friction rate
    double mu = 0.0;      // drift asymmetry
    double d_pp = 0.0;    // momentum diffusion
    double d_qq = 0.0;    // position diffusion
    double d_pq = 0.0;    // cross diffusion
};

struct ConstraintCheck {
    bool ok = false;
    double margin = 0.0;  // value minus bound; negative when violated
};

/// Outcome of the three complete-positivity conditions on the diffusion
/// coefficients: d_pp > 0, d_qq > 0 and d_pp d_qq - d_pq^2 >= (lambda hbar)^2 / 4.
struct ValidationReport {
    ConstraintCheck momentum_diffusion;
    ConstraintCheck position_diffusion;
    ConstraintCheck uncertainty;

    bool pass() const {
        return momentum_diffusion.ok && position_diffusion.ok && uncertainty.ok;
    }
    /// Human-readable list of violated constraints, empty when pass().
    std::string failures() const;
};

/// Throws Error(kInvalidInput) when any field is NaN or infinite.
ValidationReport validate(const ParamValues& values);

/// Validated parameter set. Construction through make() is the only way to
/// obtain an instance, so every holder can rely on the constraints.
class OscillatorParams {
   public:
    /// Rejects non-positive hbar/mass/omega/lambda, negative mu and any
    /// violation reported by validate().
    static OscillatorParams make(const ParamValues& values);

    double hbar() const { return v_.hbar; }
    double mass() const { return v_.mass; }
    double omega() const { return v_.omega; }
    double lambda() const { return v_.lambda; }
    double mu() const { return v_.mu; }
    double d_pp() const { return v_.d_pp; }
    double d_qq() const { return v_.d_qq; }
    double d_pq() const { return v_.d_pq; }
    const ParamValues& values() const { return v_; }

    /// lambda^2 + omega^2 - mu^2; positive iff a stationary state exists.
    double stability_gap() const {
        return v_.lambda * v_.lambda + v_.omega * v_.omega - v_.mu * v_.mu;
    }

   private:
    explicit OscillatorParams(const ParamValues& v) : v_(v) {}
    ParamValues v_;
};

struct DiffusionCoefficients {
    double d_pp = 0.0;
    double d_qq = 0.0;
    double d_pq = 0.0;
};

/// Diffusion coefficients for which the asymptotic state is the Gibbs state
/// of the bare oscillator at temperature kT (Boltzmann constant folded in).
/// Requires kT > 0 and lambda > mu >= 0.
DiffusionCoefficients thermal_coefficients(double lambda, double mu, double mass,
                                           double omega, double hbar, double kT);

/// Amplitudes of the two Lindblad operators V_j = a_j p + b_j q.
struct LindbladMicroParams {
    cplx a1{0.0, 0.0};
    cplx b1{0.0, 0.0};
    cplx a2{0.0, 0.0};
    cplx b2{0.0, 0.0};
};

struct MicroCoefficients {
    double d_pp = 0.0;
    double d_qq = 0.0;
    double d_pq = 0.0;
    double lambda = 0.0;
};

/// Coefficients induced by the Lindblad amplitudes, with no sign policy on
/// lambda. Useful for checking the constraint structure on arbitrary draws.
MicroCoefficients micro_coefficients(const LindbladMicroParams& micro, double hbar);

/// As micro_coefficients(), but rejects all-zero amplitudes and lambda <= 0
/// with Error(kDegenerateInput).
MicroCoefficients from_micro(const LindbladMicroParams& micro, double hbar);

enum class Regime { kOverdamped, kUnderdamped, kCritical };

std::string_view regime_name(Regime regime) noexcept;

struct DerivedCoefficients {
    cplx d1;          // (m w D_qq - D_pp / m w + 2i D_pq) / hbar
    double d2 = 0.0;  // (m w D_qq + D_pp / m w) / hbar
    Regime regime = Regime::kUnderdamped;
    double nu = 0.0;         // sqrt(mu^2 - w^2), overdamped only
    double big_omega = 0.0;  // sqrt(w^2 - mu^2), underdamped only
    double d_const = 0.0;    // source of the symmetric second-moment equation
};

DerivedCoefficients derive(const OscillatorParams& params);

/// The two regime-dependent kernels of the free damped motion, without the
/// exp(-lambda t) envelope:
///   even = cos(W t)      | cosh(nu t)      | 1
///   odd  = sin(W t) / W  | sinh(nu t) / nu | t
struct Oscillation {
    double even = 1.0;
    double odd = 0.0;
};

Oscillation oscillation(const DerivedCoefficients& derived, double t);

}  // namespace lindho
