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

#include "lindho/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lindho/errors.hpp"

namespace lindho {

FockOperators FockOperators::build(int dim, const OscillatorParams& params) {
    if (dim < 2) throw Error(ErrorCode::kInvalidInput, "Fock dimension must be at least 2");
    FockOperators ops;
    ops.dim = dim;
    ops.annihilate = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 1; k < dim; ++k) ops.annihilate(k - 1, k) = std::sqrt(static_cast<double>(k));
    ops.create = ops.annihilate.adjoint();
    const double hbar = params.hbar();
    const double mw = params.mass() * params.omega();
    ops.position = std::sqrt(hbar / (2.0 * mw)) * (ops.annihilate + ops.create);
    ops.momentum = cplx(0.0, std::sqrt(hbar * mw / 2.0)) * (ops.create - ops.annihilate);
    ops.bare_hamiltonian = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) ops.bare_hamiltonian(k, k) = hbar * params.omega() * (k + 0.5);
    ops.hamiltonian = ops.bare_hamiltonian +
                      0.5 * params.mu() *
                          (ops.momentum * ops.position + ops.position * ops.momentum);
    return ops;
}

InitialState InitialState::coherent(cplx alpha0) {
    InitialState s;
    s.kind = InitialKind::kCoherent;
    s.alpha0 = alpha0;
    return s;
}

InitialState InitialState::thermal(double nbar) {
    if (!(nbar >= 0.0) || !std::isfinite(nbar))
        throw Error(ErrorCode::kInvalidInput, "thermal occupation must be finite and >= 0");
    InitialState s;
    s.kind = InitialKind::kThermal;
    s.mean = nbar;
    return s;
}

InitialState InitialState::fock(int phonons) {
    if (phonons < 0) throw Error(ErrorCode::kInvalidInput, "Fock index must be >= 0");
    InitialState s;
    s.kind = InitialKind::kFock;
    s.phonons = phonons;
    return s;
}

InitialState InitialState::poisson_diagonal(double n) {
    if (!(n >= 0.0) || !std::isfinite(n))
        throw Error(ErrorCode::kInvalidInput, "Poisson mean must be finite and >= 0");
    InitialState s;
    s.kind = InitialKind::kPoissonDiagonal;
    s.mean = n;
    return s;
}

namespace {

Eigen::VectorXcd coherent_amplitudes(cplx alpha, int dim) {
    Eigen::VectorXcd c(dim);
    c(0) = std::exp(-0.5 * std::norm(alpha));
    for (int m = 1; m < dim; ++m) c(m) = c(m - 1) * alpha / std::sqrt(static_cast<double>(m));
    return c;
}

}  // namespace

Eigen::MatrixXcd InitialState::density(int dim) const {
    if (dim < 2) throw Error(ErrorCode::kInvalidInput, "Fock dimension must be at least 2");
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    switch (kind) {
        case InitialKind::kCoherent: {
            const Eigen::VectorXcd c = coherent_amplitudes(alpha0, dim);
            rho = c * c.adjoint();
            break;
        }
        case InitialKind::kThermal: {
            const double r = mean / (1.0 + mean);
            double p = 1.0 / (1.0 + mean);
            for (int k = 0; k < dim; ++k, p *= r) rho(k, k) = p;
            break;
        }
        case InitialKind::kFock:
            if (phonons >= dim)
                throw Error(ErrorCode::kInvalidInput, "Fock index outside the truncated basis");
            rho(phonons, phonons) = 1.0;
            break;
        case InitialKind::kPoissonDiagonal: {
            for (int k = 0; k < dim; ++k) {
                const double logp = -mean + (k > 0 ? k * std::log(mean) : 0.0) - std::lgamma(k + 1.0);
                rho(k, k) = (mean == 0.0) ? (k == 0 ? 1.0 : 0.0) : std::exp(logp);
            }
            break;
        }
    }
    return rho;
}

IntegratorConfig IntegratorConfig::defaults(const OscillatorParams& params, double t_final,
                                            int dim) {
    const DerivedCoefficients d = derive(params);
    IntegratorConfig cfg;
    cfg.dt = std::min(1e-3 / std::max({params.omega(), params.lambda(), d.d2}),
                      kDefaultStability / generator_bound(params, dim));
    cfg.t_final = t_final;
    cfg.dim = dim;
    return cfg;
}

int IntegratorConfig::suggested_dim(double alpha0_abs2, double nbar) {
    const double n = 6.0 * (alpha0_abs2 + nbar) + 20.0;
    return std::max(60, static_cast<int>(std::ceil(n)));
}

void IntegratorConfig::check(const OscillatorParams& params) const {
    if (dim < 2) throw Error(ErrorCode::kInvalidInput, "Fock dimension must be at least 2");
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw Error(ErrorCode::kInvalidInput, "time step must be positive");
    if (!(t_final >= 0.0) || !std::isfinite(t_final))
        throw Error(ErrorCode::kInvalidInput, "final time must be finite and >= 0");
    const double rate = params.lambda() + params.omega() + derive(params).d2;
    if (dt * rate >= 0.1)
        throw Error(ErrorCode::kInvalidInput,
                    "time step too large: dt (lambda + omega + D2) must stay below 0.1");
    const double bound = generator_bound(params, dim);
    if (dt * bound > kMaxStability)
        throw Error(ErrorCode::kInvalidInput,
                    "time step too large for dim " + std::to_string(dim) +
                        ": RK4 needs dt <= " + std::to_string(kMaxStability / bound));
}

// Each term of the generator shifts rho along rows and/or columns and scales
// it elementwise; the weights below already include the rate coefficient and
// are indexed by the destination element.
struct MasterEquationIntegrator::Kernel {
    int dim;
    Eigen::MatrixXcd diag;      // a+a rho and rho a a+
    Eigen::MatrixXcd up_left;   // a+a+ rho, from rho(r-2, c)
    Eigen::MatrixXcd up_mid;    // a+ rho a+, from rho(r-1, c+1)
    Eigen::MatrixXcd up_right;  // rho a+a+, from rho(r, c+2)
    Eigen::MatrixXcd down;      // a rho a+, from rho(r+1, c+1)
    Eigen::MatrixXcd heat;      // a+ rho a, from rho(r-1, c-1)

    Kernel(int n, const OscillatorParams& params)
        : dim(n),
          diag(n, n),
          up_left(n, n),
          up_mid(n, n),
          up_right(n, n),
          down(n, n),
          heat(n, n) {
        auto s = [](int k) { return std::sqrt(static_cast<double>(k)); };
        const DerivedCoefficients d = derive(params);
        const double mu = params.mu();
        const cplx plus = 0.5 * (d.d1 + mu);
        const cplx minus = 0.5 * (d.d1 - mu);
        const cplx loss(0.5 * (d.d2 + params.lambda()), 0.5 * params.omega());
        const cplx gain(0.5 * (d.d2 - params.lambda()), -0.5 * params.omega());
        for (int c = 0; c < n; ++c) {
            // a a+ acts as n + 1 even on the top level, so population pumped past
            // the cut leaves the basis and shows up as trace drift.
            const double edge = c + 1.0;
            for (int r = 0; r < n; ++r) {
                diag(r, c) = -loss * static_cast<double>(r) - gain * edge;
                up_left(r, c) = plus * (s(r) * s(r - 1 < 0 ? 0 : r - 1));
                up_mid(r, c) = -(plus + minus) * (s(r) * s(c + 1));
                up_right(r, c) = minus * (s(c + 1) * s(c + 2));
                down(r, c) = loss * (s(r + 1) * s(c + 1));
                heat(r, c) = gain * (s(r) * s(c));
            }
        }
    }

    // Half of the generator; the full right-hand side is X + X^dagger.
    void half(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& x) const {
        const int n = dim;
        x.noalias() = diag.cwiseProduct(rho);
        if (n > 2) {
            x.bottomRows(n - 2) += up_left.bottomRows(n - 2).cwiseProduct(rho.topRows(n - 2));
            x.leftCols(n - 2) += up_right.leftCols(n - 2).cwiseProduct(rho.rightCols(n - 2));
        }
        x.block(1, 0, n - 1, n - 1) +=
            up_mid.block(1, 0, n - 1, n - 1).cwiseProduct(rho.block(0, 1, n - 1, n - 1));
        x.topLeftCorner(n - 1, n - 1) +=
            down.topLeftCorner(n - 1, n - 1).cwiseProduct(rho.bottomRightCorner(n - 1, n - 1));
        x.bottomRightCorner(n - 1, n - 1) +=
            heat.bottomRightCorner(n - 1, n - 1).cwiseProduct(rho.topLeftCorner(n - 1, n - 1));
    }

    void apply(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out, Eigen::MatrixXcd& x) const {
        half(rho, x);
        out.noalias() = x + x.adjoint();
    }
};

double generator_bound(const OscillatorParams& params, int dim) {
    if (dim < 2) throw Error(ErrorCode::kInvalidInput, "Fock dimension must be at least 2");
    const MasterEquationIntegrator::Kernel k(dim, params);
    // Absolute stencil weight feeding element (r, c) through X.
    Eigen::MatrixXd w = k.diag.cwiseAbs() + k.up_left.cwiseAbs() + k.up_mid.cwiseAbs() +
                        k.up_right.cwiseAbs() + k.down.cwiseAbs() + k.heat.cwiseAbs();
    // X^dagger adds the mirrored stencil.
    return (w + w.transpose()).maxCoeff();
}

Eigen::MatrixXcd liouvillian_apply(const Eigen::MatrixXcd& rho, const OscillatorParams& params) {
    if (rho.rows() != rho.cols() || rho.rows() < 2)
        throw Error(ErrorCode::kInvalidInput, "density matrix must be square with dim >= 2");
    MasterEquationIntegrator::Kernel k(static_cast<int>(rho.rows()), params);
    Eigen::MatrixXcd out, x;
    k.apply(rho, out, x);
    return out;
}

MasterEquationIntegrator::MasterEquationIntegrator(const OscillatorParams& params,
                                                   const InitialState& initial,
                                                   const IntegratorConfig& config)
    : MasterEquationIntegrator(params, initial.density(config.dim), config) {}

MasterEquationIntegrator::MasterEquationIntegrator(const OscillatorParams& params,
                                                   Eigen::MatrixXcd rho0,
                                                   const IntegratorConfig& config)
    : params_(params), config_(config), rho_(std::move(rho0)) {
    config_.check(params_);
    if (rho_.rows() != config_.dim || rho_.cols() != config_.dim)
        throw Error(ErrorCode::kInvalidInput, "initial density matrix does not match dim");
    initial_trace_ = rho_.trace().real();
    kernel_ = std::make_shared<const Kernel>(config_.dim, params_);
}

void MasterEquationIntegrator::step(double h) {
    const Kernel& k = *kernel_;
    k.apply(rho_, k1_, half_);
    stage_.noalias() = rho_ + (0.5 * h) * k1_;
    k.apply(stage_, k2_, half_);
    stage_.noalias() = rho_ + (0.5 * h) * k2_;
    k.apply(stage_, k3_, half_);
    stage_.noalias() = rho_ + h * k3_;
    k.apply(stage_, k4_, half_);
    rho_.noalias() += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);

    double herm = 0.0;
    const auto n = rho_.rows();
    for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index r = c; r < n; ++r) {
            const cplx upper = rho_(r, c);
            const cplx lower = std::conj(rho_(c, r));
            herm = std::max(herm, std::abs(upper - lower));
            const cplx mid = 0.5 * (upper + lower);
            rho_(r, c) = mid;
            rho_(c, r) = std::conj(mid);
        }
    }
    health_.max_hermiticity_residual = std::max(health_.max_hermiticity_residual, herm);
    ++health_.steps;

    const double drift = std::abs(rho_.trace().real() - initial_trace_);
    health_.max_trace_drift = std::max(health_.max_trace_drift, drift);
    if (drift > kTruncationBreachDrift || !std::isfinite(drift))
        throw Error(ErrorCode::kTruncationBreach,
                    "trace drifted by " + std::to_string(drift) + " at t = " +
                        std::to_string(time_) + "; increase dim or reduce dt");
}

void MasterEquationIntegrator::advance_to(double t) {
    if (!std::isfinite(t) || t < time_)
        throw Error(ErrorCode::kInvalidInput, "cannot integrate backwards in time");
    const double span = t - time_;
    const double dt = config_.dt;
    const auto full = static_cast<long>(std::floor(span / dt + 1e-9));
    const double start = time_;
    for (long i = 0; i < full; ++i) {
        step(dt);
        time_ = start + static_cast<double>(i + 1) * dt;
    }
    const double rest = t - time_;
    if (rest > 1e-12 * std::max(1.0, t)) step(rest);
    time_ = t;
}

FockDensityMatrix MasterEquationIntegrator::snapshot() const {
    FockDensityMatrix out;
    out.dim = config_.dim;
    out.elements = rho_;
    out.time = time_;
    refresh_diagnostics(out);
    out.hermiticity_residual = health_.max_hermiticity_residual;
    return out;
}

std::vector<FockDensityMatrix> evolve(const InitialState& initial, const IntegratorConfig& config,
                                      const OscillatorParams& params,
                                      std::span<const double> sample_times) {
    MasterEquationIntegrator integ(params, initial, config);
    std::vector<FockDensityMatrix> out;
    out.reserve(sample_times.size());
    for (double t : sample_times) {
        integ.advance_to(t);
        out.push_back(integ.snapshot());
    }
    return out;
}

MomentState expectations(const Eigen::MatrixXcd& rho) {
    const auto dim = rho.rows();
    MomentState m;
    for (Eigen::Index k = 1; k < dim; ++k) {
        const double sk = std::sqrt(static_cast<double>(k));
        m.exp_a += sk * rho(k, k - 1);
        m.exp_adag += sk * rho(k - 1, k);
        m.exp_n += static_cast<double>(k) * rho(k, k).real();
        if (k >= 2) {
            const double s2 = sk * std::sqrt(static_cast<double>(k - 1));
            m.exp_a2 += s2 * rho(k, k - 2);
            m.exp_adag2 += s2 * rho(k - 2, k);
        }
    }
    return m;
}

namespace {

struct GaussHermite {
    std::vector<double> x;
    std::vector<double> w;  // weights for a standard normal variable
};

// Golub-Welsch on the Jacobi matrix of the probabilists' Hermite weight.
GaussHermite gauss_hermite(int n) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) j(k, k - 1) = j(k - 1, k) = std::sqrt(static_cast<double>(k));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    GaussHermite gh;
    gh.x.resize(n);
    gh.w.resize(n);
    for (int k = 0; k < n; ++k) {
        gh.x[k] = es.eigenvalues()(k);
        const double v = es.eigenvectors()(0, k);
        gh.w[k] = v * v;
    }
    return gh;
}

}  // namespace

FockDensityMatrix rho_from_p_quadrature(double t, cplx alpha0, const OscillatorParams& params,
                                        int dim, int nodes) {
    if (dim < 2) throw Error(ErrorCode::kInvalidInput, "Fock dimension must be at least 2");
    if (nodes < 1) throw Error(ErrorCode::kInvalidInput, "need at least one quadrature node");
    if (!(t >= 0.0)) throw Error(ErrorCode::kInvalidInput, "time must be >= 0");
    if (!p_diffusion_is_positive(drift_diffusion_p(params)))
        throw Error(ErrorCode::kPRepresentationUnavailable,
                    "P diffusion is not positive semidefinite; no Gaussian P function");

    const PropagatorB b = propagator(t, params);
    const cplx mean = b.b11 * alpha0 + b.b12 * std::conj(alpha0);

    FockDensityMatrix out;
    out.dim = dim;
    out.time = t;
    if (t == 0.0) {
        const Eigen::VectorXcd c = coherent_amplitudes(mean, dim);
        out.elements = c * c.adjoint();
        refresh_diagnostics(out);
        return out;
    }

    const SigmaCovariance s = sigma_t(t, params);
    Eigen::Matrix2d cov;
    cov(0, 0) = 0.5 * (s.s12 + s.s11.real());
    cov(1, 1) = 0.5 * (s.s12 - s.s11.real());
    cov(0, 1) = cov(1, 0) = 0.5 * s.s11.imag();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
    const Eigen::Vector2d sd = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::Matrix2d axes = es.eigenvectors();

    const GaussHermite gh = gauss_hermite(nodes);
    out.elements = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < nodes; ++i) {
        for (int j = 0; j < nodes; ++j) {
            const Eigen::Vector2d r = axes * Eigen::Vector2d(sd(0) * gh.x[i], sd(1) * gh.x[j]);
            const Eigen::VectorXcd c = coherent_amplitudes(mean + cplx(r(0), r(1)), dim);
            out.elements.noalias() += (gh.w[i] * gh.w[j]) * (c * c.adjoint());
        }
    }
    refresh_diagnostics(out);
    return out;
}

double min_eigenvalue(const Eigen::MatrixXcd& rho) {
    const Eigen::MatrixXcd h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

}  // namespace lindho
