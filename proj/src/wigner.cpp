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

#include "lindho/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lindho/errors.hpp"

namespace lindho {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

// Assembles phi, psi, chi from the (z, conj z) coefficients of
//   k2 (z - zb)^2 + k1 (conj z - conj zb)^2 - kc |z - zb|^2
// with z = a x1 + x2.
void assemble(GaussianWigner& w, cplx a, cplx k1, cplx k2, double kc) {
    const cplx ac = std::conj(a);
    w.phi = k1 * ac * ac + k2 * a * a - kc;
    w.psi = k1 + k2 - kc;
    w.chi = 2.0 * (k1 * ac + k2 * a) - kc * (a + ac);
}

}  // namespace

RealDriftDiffusionW drift_diffusion_w(const OscillatorParams& p) {
    const double lam = p.lambda();
    const double mu = p.mu();
    const double w = p.omega();
    const double mw = p.mass() * w;
    RealDriftDiffusionW dd;
    dd.a_matrix << lam - mu, -w, w, lam + mu;
    dd.qw_matrix << mw * p.d_qq(), p.d_pq(), p.d_pq(), p.d_pp() / mw;
    dd.qw_matrix /= p.hbar();
    return dd;
}

TransformedSystem transform(const OscillatorParams& p) {
    const DerivedCoefficients d = derive(p);
    if (d.regime != Regime::kUnderdamped) {
        throw Error(ErrorCode::kUnsupportedRegime,
                    "diagonalizing coordinates need omega > mu (regime is " +
                        std::string(regime_name(d.regime)) + ")");
    }
    const double w = p.omega();
    const double mu = p.mu();
    const double W = d.big_omega;
    const double m = p.mass();
    const cplx shift(mu, -W);

    TransformedSystem s;
    s.a_coef = shift / w;
    s.nu1 = cplx(-p.lambda(), -W);
    s.nu2 = std::conj(s.nu1);
    s.d11 = (shift * shift * m * p.d_qq() + 2.0 * shift * p.d_pq() + p.d_pp() / m) / (p.hbar() * w);
    s.d22 = std::conj(s.d11);
    s.d12 = (m * w * p.d_qq() + 2.0 * mu / w * p.d_pq() + p.d_pp() / (m * w)) / p.hbar();
    s.q = mu * cplx(mu, W) / (2.0 * w * w);
    return s;
}

PhasePoint mean_trajectory(double x10, double x20, double t, const OscillatorParams& p) {
    const Oscillation osc = oscillation(derive(p), t);
    const double env = std::exp(-p.lambda() * t);
    const double mu = p.mu();
    const double w = p.omega();
    return {env * (x10 * (osc.even + mu * osc.odd) + x20 * w * osc.odd),
            env * (x20 * (osc.even - mu * osc.odd) - x10 * w * osc.odd)};
}

double GaussianWigner::operator()(double x1, double x2) const {
    const double dx1 = x1 - mean_x1;
    const double dx2 = x2 - mean_x2;
    const double quad = (phi * dx1 * dx1 + psi * dx2 * dx2 + chi * dx1 * dx2).real();
    return norm * std::exp(-quad / divisor);
}

Eigen::Matrix2d GaussianWigner::precision() const {
    Eigen::Matrix2d m;
    m << phi.real(), 0.5 * chi.real(), 0.5 * chi.real(), psi.real();
    return (2.0 / divisor) * m;
}

Eigen::Matrix2d GaussianWigner::covariance() const { return precision().inverse(); }

GaussianWigner wavepacket_solution(double x10, double x20, double t, const OscillatorParams& p,
                                   WignerConvention conv) {
    const TransformedSystem s = transform(p);
    const cplx e1 = std::exp(2.0 * s.nu1 * t);
    const double e_lam = std::exp(-2.0 * p.lambda() * t);

    const cplx g1 = std::conj(s.q) * e1 + s.d11 / (2.0 * s.nu1) * (e1 - 1.0);
    const cplx g2 = std::conj(g1);
    const double g3 = e_lam + s.d12 / p.lambda() * (1.0 - e_lam);

    GaussianWigner w;
    w.kind = WignerKind::kWavePacket;
    w.time = t;
    const PhasePoint mean = mean_trajectory(x10, x20, t, p);
    w.mean_x1 = mean.x1;
    w.mean_x2 = mean.x2;

    const double cross = conv.cross == CrossTerm::kStandard ? g3 : 2.0 * g3;
    w.b_norm = std::norm(g1) - 0.25 * cross * cross;
    w.divisor = 2.0 * w.b_norm;
    assemble(w, s.a_coef, g1, g2, cross);

    const double big_w = derive(p).big_omega;
    const double root = std::sqrt(std::abs(w.b_norm));
    w.norm = conv.prefactor == Prefactor::kNormalized
                 ? big_w / (kPi * p.omega() * root)
                 : big_w / (kPi * p.hbar() * p.omega() * root);
    return w;
}

GaussianWigner delta_solution(double x10, double x20, double t, const OscillatorParams& p,
                              WignerConvention conv) {
    if (!(t > 0.0)) {
        throw Error(ErrorCode::kSingularInitialCondition,
                    "point-source Wigner function is singular at t = 0");
    }
    const TransformedSystem s = transform(p);
    const cplx e1 = std::exp(2.0 * s.nu1 * t);
    const double e_lam = std::exp(-2.0 * p.lambda() * t);

    const cplx f1 = s.d11 / s.nu1 * (e1 - 1.0);
    const cplx f2 = std::conj(f1);
    const double f3 = s.d12 / p.lambda() * (1.0 - e_lam);

    GaussianWigner w;
    w.kind = WignerKind::kDelta;
    w.time = t;
    const PhasePoint mean = mean_trajectory(x10, x20, t, p);
    w.mean_x1 = mean.x1;
    w.mean_x2 = mean.x2;

    const double cross = conv.cross == CrossTerm::kStandard ? 2.0 * f3 : f3;
    w.b_norm = std::norm(f1) - 0.25 * cross * cross;
    w.divisor = w.b_norm;
    assemble(w, s.a_coef, f1, f2, cross);

    const double big_w = derive(p).big_omega;
    const double root = std::sqrt(std::abs(w.b_norm));
    w.norm = conv.prefactor == Prefactor::kNormalized
                 ? 2.0 * big_w / (kPi * p.omega() * root)
                 : big_w / (kPi * p.hbar() * p.omega() * root);
    return w;
}

SteadyCovarianceW steady_covariance(const OscillatorParams& p) {
    const double lam = p.lambda();
    const double mu = p.mu();
    const double w = p.omega();
    const double den = 4.0 * lam * p.stability_gap();
    if (!(den > 0.0)) {
        throw Error(ErrorCode::kNoStationaryState,
                    "lambda (lambda^2 + omega^2 - mu^2) <= 0: no stationary Wigner function");
    }
    const Eigen::Matrix2d q = drift_diffusion_w(p).qw_matrix;
    const double q11 = q(0, 0);
    const double q22 = q(1, 1);
    const double q12 = q(0, 1);
    SteadyCovarianceW s;
    s.s11 = ((2.0 * lam * (lam + mu) + w * w) * q11 + w * w * q22 + 2.0 * w * (lam + mu) * q12) / den;
    s.s22 = (w * w * q11 + (2.0 * lam * (lam - mu) + w * w) * q22 - 2.0 * w * (lam - mu) * q12) / den;
    s.s12 = (-w * (lam + mu) * q11 + w * (lam - mu) * q22 + 2.0 * (lam * lam - mu * mu) * q12) / den;
    return s;
}

SteadyCovarianceW lyapunov_solve(const Eigen::Matrix2d& a, const Eigen::Matrix2d& q) {
    const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
    Eigen::Matrix4d k;
    // vec(A S + S A^T) = (I (x) A + A (x) I) vec(S), column-major vec.
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            k.block<2, 2>(2 * i, 2 * j) = id(i, j) * a + a(i, j) * id;
        }
    }
    const Eigen::Vector4d rhs(q(0, 0), q(1, 0), q(0, 1), q(1, 1));
    const Eigen::FullPivLU<Eigen::Matrix4d> lu(k);
    if (!lu.isInvertible()) {
        throw Error(ErrorCode::kNoStationaryState, "Lyapunov operator is singular");
    }
    const Eigen::Vector4d v = lu.solve(rhs);
    SteadyCovarianceW s;
    s.s11 = v(0);
    s.s22 = v(3);
    s.s12 = 0.5 * (v(1) + v(2));
    return s;
}

double lyapunov_residual(const Eigen::Matrix2d& a, const Eigen::Matrix2d& sigma,
                         const Eigen::Matrix2d& q) {
    return (a * sigma + sigma * a.transpose() - q).cwiseAbs().maxCoeff();
}

SteadyState steady_state(const OscillatorParams& p) {
    const RealDriftDiffusionW dd = drift_diffusion_w(p);
    SteadyState out;
    out.closed_form = steady_covariance(p);
    out.lyapunov = lyapunov_solve(dd.a_matrix, dd.qw_matrix);
    out.agreement = (out.closed_form.matrix() - out.lyapunov.matrix()).cwiseAbs().maxCoeff();
    out.residual = lyapunov_residual(dd.a_matrix, out.closed_form.matrix(), dd.qw_matrix);

    const SteadyCovarianceW& s = out.closed_form;
    const double det = s.s11 * s.s22 - s.s12 * s.s12;
    GaussianWigner& w = out.wigner;
    w.kind = WignerKind::kSteady;
    w.time = std::numeric_limits<double>::infinity();
    w.phi = s.s22;
    w.psi = s.s11;
    w.chi = -2.0 * s.s12;
    w.b_norm = det;
    w.divisor = 2.0 * det;
    w.norm = 1.0 / (2.0 * kPi * std::sqrt(det));
    return out;
}

double GridValues::x1(const WignerGrid& g, int i) const {
    return g.x1_min + (g.x1_max - g.x1_min) * i / (g.n1 - 1);
}

double GridValues::x2(const WignerGrid& g, int j) const {
    return g.x2_min + (g.x2_max - g.x2_min) * j / (g.n2 - 1);
}

GridValues evaluate_grid(const GaussianWigner& w, const WignerGrid& g) {
    const bool finite = std::isfinite(g.x1_min) && std::isfinite(g.x1_max) &&
                        std::isfinite(g.x2_min) && std::isfinite(g.x2_max);
    if (g.n1 < 2 || g.n2 < 2 || !finite || !(g.x1_max > g.x1_min) || !(g.x2_max > g.x2_min)) {
        throw Error(ErrorCode::kInvalidInput, "degenerate Wigner grid");
    }
    GridValues out;
    out.n1 = g.n1;
    out.n2 = g.n2;
    out.values.resize(static_cast<std::size_t>(g.n1) * g.n2);
    const double h1 = (g.x1_max - g.x1_min) / (g.n1 - 1);
    const double h2 = (g.x2_max - g.x2_min) / (g.n2 - 1);
    double mass = 0.0;
    for (int i = 0; i < g.n1; ++i) {
        const double wi = (i == 0 || i == g.n1 - 1) ? 0.5 : 1.0;
        for (int j = 0; j < g.n2; ++j) {
            const double wj = (j == 0 || j == g.n2 - 1) ? 0.5 : 1.0;
            const double v = w(out.x1(g, i), out.x2(g, j));
            out.values[static_cast<std::size_t>(i) * g.n2 + j] = v;
            mass += wi * wj * v;
        }
    }
    out.mass = mass * h1 * h2;
    return out;
}

double adaptive_mass(const GaussianWigner& w, double tol) {
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(w.covariance());
    const double s_min = std::sqrt(std::max(eig.eigenvalues()(0), 1e-300));
    const double s_max = std::sqrt(std::max(eig.eigenvalues()(1), 1e-300));

    double half = 4.0 * s_max;
    double previous = std::numeric_limits<double>::quiet_NaN();
    double mass = 0.0;
    for (int iter = 0; iter < 12; ++iter) {
        const int n = std::clamp(static_cast<int>(std::ceil(2.0 * half / (0.5 * s_min))) + 1, 41, 4001);
        const WignerGrid g{w.mean_x1 - half, w.mean_x1 + half, w.mean_x2 - half, w.mean_x2 + half, n, n};
        mass = evaluate_grid(w, g).mass;
        if (std::abs(mass - previous) < tol) break;
        previous = mass;
        half *= 1.5;
    }
    return mass;
}

}  // namespace lindho
