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

#include "lindho/moments.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "lindho/errors.hpp"

namespace lindho {

namespace {

constexpr cplx kI{0.0, 1.0};

struct StationaryOffsets {
    cplx a2;
    double n = 0.0;
};

StationaryOffsets stationary_offsets(const OscillatorParams& p, const DerivedCoefficients& d) {
    const double gap = p.stability_gap();
    if (gap == 0.0) {
        throw Error(ErrorCode::kDegenerateRegime,
                    "lambda^2 + omega^2 - mu^2 = 0: second moments have no constant offset");
    }
    const double lam = p.lambda();
    StationaryOffsets s;
    s.a2 = d.d_const * cplx(lam, -p.omega()) / (2.0 * lam * gap) + kI * p.d_pq() / (p.hbar() * lam);
    s.n = (d.d_const * p.mu() / gap + d.d2 - lam) / (2.0 * lam);
    return s;
}

// Homogeneous part of the hyperbolic/oscillating closed forms at time t for
// real constants (c1, c2, c3).
struct Homogeneous {
    cplx a2;
    cplx adag2;
    double n = 0.0;
};

Homogeneous homogeneous(const OscillatorParams& p, const DerivedCoefficients& d, double c1,
                        double c2, double c3, double t) {
    const double w = p.omega();
    const double mu = p.mu();
    const double lam = p.lambda();
    Homogeneous h;
    if (d.regime == Regime::kUnderdamped) {
        const double W = d.big_omega;
        const double env = std::exp(-2.0 * lam * t);
        const double co = std::cos(2.0 * W * t);
        const double si = std::sin(2.0 * W * t);
        h.a2 = env * ((c1 + kI * c2 * w / W) * co + (c2 - kI * c1 * w / W) * si - kI * mu / w * c3);
        h.adag2 = env * ((c1 - kI * c2 * w / W) * co + (c2 + kI * c1 * w / W) * si + kI * mu / w * c3);
        h.n = env * (mu / W * (c1 * si - c2 * co) + c3);
    } else {
        const double nu = d.nu;
        const double grow = std::exp(-2.0 * (lam - nu) * t);
        const double decay = std::exp(-2.0 * (lam + nu) * t);
        const double env = std::exp(-2.0 * lam * t);
        h.a2 = (1.0 - kI * w / nu) * c1 * grow + (1.0 + kI * w / nu) * c2 * decay -
               kI * mu / w * c3 * env;
        h.adag2 = (1.0 + kI * w / nu) * c1 * grow + (1.0 - kI * w / nu) * c2 * decay +
                  kI * mu / w * c3 * env;
        h.n = mu / nu * (c1 * grow - c2 * decay) + c3 * env;
    }
    return h;
}

// Critical damping: the homogeneous generator is -2 lambda + N with N^3 = 0,
// so the propagator is a quadratic polynomial in t.
Homogeneous critical_homogeneous(const OscillatorParams& p, cplx dev_a2, double dev_n, double t) {
    const double w = p.omega();
    const double mu = p.mu();
    Eigen::Matrix3cd n;
    n << -2.0 * kI * w, 0.0, 2.0 * mu,
         0.0, 2.0 * kI * w, 2.0 * mu,
         mu, mu, 0.0;
    const Eigen::Vector3cd y0(dev_a2, std::conj(dev_a2), dev_n);
    const Eigen::Vector3cd ny = n * y0;
    const Eigen::Vector3cd y =
        std::exp(-2.0 * p.lambda() * t) * (y0 + t * ny + 0.5 * t * t * (n * ny));
    return {y(0), y(1), y(2).real()};
}

}  // namespace

MomentState MomentState::coherent(cplx alpha) {
    MomentState s;
    s.exp_a = alpha;
    s.exp_adag = std::conj(alpha);
    s.exp_a2 = alpha * alpha;
    s.exp_adag2 = std::conj(s.exp_a2);
    s.exp_n = std::norm(alpha);
    return s;
}

MomentState MomentState::thermal(double nbar) {
    MomentState s;
    s.exp_n = nbar;
    return s;
}

FirstMoments evolve_first(const FirstMoments& x, double t, const OscillatorParams& p) {
    const DerivedCoefficients d = derive(p);
    const Oscillation osc = oscillation(d, t);
    const double env = std::exp(-p.lambda() * t);
    const double w = p.omega();
    const double mu = p.mu();
    FirstMoments out;
    out.exp_a = env * (x.exp_a * (osc.even - kI * w * osc.odd) + mu * osc.odd * x.exp_adag);
    out.exp_adag = env * (x.exp_adag * (osc.even + kI * w * osc.odd) + mu * osc.odd * x.exp_a);
    return out;
}

IntegrationConstants solve_constants(const MomentState& initial, const OscillatorParams& p) {
    if (initial.time != 0.0) {
        throw Error(ErrorCode::kInvalidInput, "integration constants need the state at t = 0");
    }
    const DerivedCoefficients d = derive(p);
    const StationaryOffsets off = stationary_offsets(p, d);
    const cplx dev_a2 = initial.exp_a2 - off.a2;
    const double dev_n = initial.exp_n - off.n;

    IntegrationConstants c;
    c.regime = d.regime;
    if (d.regime == Regime::kCritical) {
        c.c1 = dev_a2.real();
        c.c2 = dev_a2.imag();
        c.c3 = dev_n;
        return c;
    }

    // Column k holds (Re a2, Im a2, n) of the homogeneous solution at t = 0
    // with unit constant k.
    Eigen::Matrix3d m;
    for (int k = 0; k < 3; ++k) {
        const Homogeneous h = homogeneous(p, d, k == 0, k == 1, k == 2, 0.0);
        m(0, k) = h.a2.real();
        m(1, k) = h.a2.imag();
        m(2, k) = h.n;
    }
    const Eigen::FullPivLU<Eigen::Matrix3d> lu(m);
    if (!lu.isInvertible()) {
        throw Error(ErrorCode::kDegenerateRegime, "integration-constant system is singular");
    }
    const Eigen::Vector3d sol = lu.solve(Eigen::Vector3d(dev_a2.real(), dev_a2.imag(), dev_n));
    c.c1 = sol(0);
    c.c2 = sol(1);
    c.c3 = sol(2);
    return c;
}

SecondMoments evolve_second(const IntegrationConstants& c, double t, const OscillatorParams& p) {
    const DerivedCoefficients d = derive(p);
    if (d.regime != c.regime) {
        throw Error(ErrorCode::kInvalidInput, "integration constants belong to another regime");
    }
    const StationaryOffsets off = stationary_offsets(p, d);
    const Homogeneous h =
        d.regime == Regime::kCritical
            ? critical_homogeneous(p, cplx(c.c1.real(), c.c2.real()), c.c3.real(), t)
            : homogeneous(p, d, c.c1.real(), c.c2.real(), c.c3.real(), t);
    SecondMoments s;
    s.exp_a2 = h.a2 + off.a2;
    s.exp_adag2 = h.adag2 + std::conj(off.a2);
    s.exp_n = h.n + off.n;
    return s;
}

MomentState evolve(const MomentState& initial, double t, const OscillatorParams& p) {
    const FirstMoments first = evolve_first({initial.exp_a, initial.exp_adag}, t, p);
    const SecondMoments second = evolve_second(solve_constants(initial, p), t, p);
    MomentState out;
    out.exp_a = first.exp_a;
    out.exp_adag = first.exp_adag;
    out.exp_a2 = second.exp_a2;
    out.exp_adag2 = second.exp_adag2;
    out.exp_n = second.exp_n;
    out.time = t;
    return out;
}

double asymptotic_number(const OscillatorParams& p) {
    const double gap = p.stability_gap();
    if (!(gap > 0.0)) {
        throw Error(ErrorCode::kNoStationaryState,
                    "lambda^2 + omega^2 - mu^2 <= 0: no stationary state");
    }
    const DerivedCoefficients d = derive(p);
    return (d.d_const * p.mu() / gap + d.d2 - p.lambda()) / (2.0 * p.lambda());
}

QuadratureStats quadratures(const MomentState& s, const OscillatorParams& p) {
    const double q_scale = std::sqrt(p.hbar() / (2.0 * p.mass() * p.omega()));
    const double p_scale = std::sqrt(0.5 * p.hbar() * p.mass() * p.omega());
    const double re_a2 = 0.5 * (s.exp_a2 + s.exp_adag2).real();
    const double im_a2 = s.exp_a2.imag();

    QuadratureStats out;
    out.mean_q = q_scale * (s.exp_a + s.exp_adag).real();
    out.mean_p = (kI * p_scale * (s.exp_adag - s.exp_a)).real();
    const double q2 = q_scale * q_scale * (2.0 * re_a2 + 2.0 * s.exp_n + 1.0);
    const double p2 = p_scale * p_scale * (2.0 * s.exp_n + 1.0 - 2.0 * re_a2);
    const double qp_sym = p.hbar() * im_a2;
    out.var_q = q2 - out.mean_q * out.mean_q;
    out.var_p = p2 - out.mean_p * out.mean_p;
    out.cov_qp = qp_sym - out.mean_q * out.mean_p;
    return out;
}

}  // namespace lindho
