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

#include <Eigen/Dense>
#include <vector>

#include "lindho/params.hpp"

namespace lindho {

// All Wigner functions live in the dimensionless phase-space coordinates
// alpha = x1 + i x2 and are normalized to unit mass over dx1 dx2.

/// Drift A and diffusion Q^W of the real Ornstein-Uhlenbeck form
/// dW/dt = A_ij d_i (x_j W) + Q^W_ij d_i d_j W / 2.
struct RealDriftDiffusionW {
    Eigen::Matrix2d a_matrix;
    Eigen::Matrix2d qw_matrix;
};

RealDriftDiffusionW drift_diffusion_w(const OscillatorParams& params);

/// Coordinates z = a x1 + x2 that diagonalize the drift (oscillating regime
/// only), with their decay rates and diffusion coefficients.
struct TransformedSystem {
    cplx a_coef;  // (mu - i W) / w
    cplx nu1;     // -lambda - i W
    cplx nu2;     // conj(nu1)
    cplx d11;
    cplx d22;     // conj(d11)
    double d12 = 0.0;
    cplx q;       // mu (mu + i W) / 2 w^2, the initial wave-packet coefficient
};

/// Throws kUnsupportedRegime unless omega > mu.
TransformedSystem transform(const OscillatorParams& params);

struct PhasePoint {
    double x1 = 0.0;
    double x2 = 0.0;
};

/// Mean of the distribution at time t from the initial point (x10, x20).
/// Any regime.
PhasePoint mean_trajectory(double x10, double x20, double t, const OscillatorParams& params);

enum class WignerKind { kWavePacket, kDelta, kSteady };

/// Coefficient of the |z - z_bar|^2 term in the exponent. kStandard ships
/// (g3 with B_w = |g1|^2 - g3^2 / 4 for the wave packet, 2 f3 with
/// B = |f1|^2 - f3^2 for the delta solution). kSwapped exchanges the two
/// conventions and is kept for the adjudication report only.
enum class CrossTerm { kStandard, kSwapped };

/// kNormalized fixes the prefactor by unit mass in (x1, x2);
/// kHbarScaled uses W / (pi hbar w sqrt|B|) for both solutions.
enum class Prefactor { kNormalized, kHbarScaled };

struct WignerConvention {
    CrossTerm cross = CrossTerm::kStandard;
    Prefactor prefactor = Prefactor::kNormalized;
};

/// Two-dimensional Gaussian
///   W = norm * exp(-(phi dx1^2 + psi dx2^2 + chi dx1 dx2) / divisor),
/// dx = x - mean. phi, psi, chi are real for every solution built here; the
/// complex type mirrors the complex intermediate algebra.
struct GaussianWigner {
    WignerKind kind = WignerKind::kSteady;
    double time = 0.0;
    double mean_x1 = 0.0;
    double mean_x2 = 0.0;
    cplx phi;
    cplx psi;
    cplx chi;
    double b_norm = 0.0;   // B_w, B, or det(sigma) for the steady state
    double divisor = 1.0;  // 2 B_w, B, or 2 det(sigma)
    double norm = 0.0;

    double operator()(double x1, double x2) const;
    /// Matrix M with exponent -dx^T M dx / 2.
    Eigen::Matrix2d precision() const;
    Eigen::Matrix2d covariance() const;
};

/// Solution for the Gaussian initial condition (2/pi) exp(-2|x - x0|^2), the
/// Wigner function of the coherent state alpha0 = x10 + i x20.
GaussianWigner wavepacket_solution(double x10, double x20, double t, const OscillatorParams& params,
                                   WignerConvention convention = {});

/// Green function for a point initial condition at (x10, x20). Throws
/// kSingularInitialCondition for t <= 0.
GaussianWigner delta_solution(double x10, double x20, double t, const OscillatorParams& params,
                              WignerConvention convention = {});

struct SteadyCovarianceW {
    double s11 = 0.0;
    double s22 = 0.0;
    double s12 = 0.0;

    Eigen::Matrix2d matrix() const {
        Eigen::Matrix2d m;
        m << s11, s12, s12, s22;
        return m;
    }
};

/// Closed-form stationary covariance solving A s + s A^T = Q^W.
SteadyCovarianceW steady_covariance(const OscillatorParams& params);

/// General 2x2 Lyapunov solve A s + s A^T = q via the Kronecker system.
/// Independent of the closed form; used to cross-check it.
SteadyCovarianceW lyapunov_solve(const Eigen::Matrix2d& a, const Eigen::Matrix2d& q);

double lyapunov_residual(const Eigen::Matrix2d& a, const Eigen::Matrix2d& sigma,
                         const Eigen::Matrix2d& q);

struct SteadyState {
    SteadyCovarianceW closed_form;
    SteadyCovarianceW lyapunov;
    double agreement = 0.0;  // max abs difference of the two routes
    double residual = 0.0;   // Lyapunov residual of the closed form
    GaussianWigner wigner;
};

/// Throws kNoStationaryState when lambda (lambda^2 + w^2 - mu^2) <= 0.
SteadyState steady_state(const OscillatorParams& params);

struct WignerGrid {
    double x1_min = -3.0;
    double x1_max = 3.0;
    double x2_min = -3.0;
    double x2_max = 3.0;
    int n1 = 61;
    int n2 = 61;
};

struct GridValues {
    int n1 = 0;
    int n2 = 0;
    std::vector<double> values;  // row-major, row index along x1
    double mass = 0.0;           // trapezoid estimate

    double x1(const WignerGrid& g, int i) const;
    double x2(const WignerGrid& g, int j) const;
};

/// Throws kInvalidInput for fewer than two points per axis or non-finite or
/// empty bounds.
GridValues evaluate_grid(const GaussianWigner& w, const WignerGrid& grid);

/// Total mass by trapezoid quadrature on a box around the mean that is
/// widened (and refined) until successive estimates change by less than tol.
double adaptive_mass(const GaussianWigner& w, double tol = 1e-8);

}  // namespace lindho
