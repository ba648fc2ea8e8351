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

#include "lindho/params.hpp"

namespace lindho {

/// First and second moments of the annihilation/creation operators at one
/// instant. exp_adag and exp_adag2 are the conjugates of exp_a and exp_a2 for
/// any physical state; they are carried explicitly so the symmetry can be
/// checked rather than assumed.
struct MomentState {
    cplx exp_a;
    cplx exp_adag;
    cplx exp_a2;
    cplx exp_adag2;
    double exp_n = 0.0;  // <a^dagger a>
    double time = 0.0;

    static MomentState coherent(cplx alpha);
    static MomentState thermal(double nbar);
};

struct FirstMoments {
    cplx exp_a;
    cplx exp_adag;
};

/// Damped rotation of <a>, <a^dagger> over time t >= 0 in any regime.
FirstMoments evolve_first(const FirstMoments& initial, double t, const OscillatorParams& params);

/// Constants of the homogeneous second-moment solution. In the oscillating
/// and hyperbolic regimes these are the real constants multiplying the
/// closed-form basis functions; in the critical regime they hold the initial
/// deviation from the stationary offset (Re, Im of <a^2> and <a^dagger a>),
/// which the nilpotent-limit propagator consumes directly.
struct IntegrationConstants {
    cplx c1;
    cplx c2;
    cplx c3;
    Regime regime = Regime::kUnderdamped;
};

/// Solves the 3x3 real system obtained by evaluating the closed forms at t = 0.
/// Throws kInvalidInput if initial.time != 0 and kDegenerateRegime if the
/// system is singular.
IntegrationConstants solve_constants(const MomentState& initial, const OscillatorParams& params);

struct SecondMoments {
    cplx exp_a2;
    cplx exp_adag2;
    double exp_n = 0.0;
};

SecondMoments evolve_second(const IntegrationConstants& constants, double t,
                            const OscillatorParams& params);

/// Convenience wrapper: first and second moments at time t from an initial
/// state given at t = 0.
MomentState evolve(const MomentState& initial, double t, const OscillatorParams& params);

/// Stationary <a^dagger a>. Throws kNoStationaryState unless
/// lambda^2 + omega^2 - mu^2 > 0.
double asymptotic_number(const OscillatorParams& params);

struct QuadratureStats {
    double mean_q = 0.0;
    double mean_p = 0.0;
    double var_q = 0.0;
    double var_p = 0.0;
    double cov_qp = 0.0;  // symmetrized <qp + pq>/2 - <q><p>
};

/// Position/momentum statistics with q = sqrt(hbar/2mw)(a^dagger + a) and
/// p = i sqrt(hbar m w/2)(a^dagger - a).
QuadratureStats quadratures(const MomentState& state, const OscillatorParams& params);

}  // namespace lindho
