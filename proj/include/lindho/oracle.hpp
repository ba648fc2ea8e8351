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
#include <memory>
#include <span>
#include <vector>

#include "lindho/density_matrix.hpp"
#include "lindho/moments.hpp"
#include "lindho/params.hpp"

namespace lindho {

// Brute-force reference: the master equation integrated directly on a
// truncated number basis. Nothing here uses the closed-form modules, so every
// analytic result can be checked against it.

/// Matrices of a, a^dagger, q, p and H = H0 + mu (pq + qp)/2 on the first
/// `dim` number states.
struct FockOperators {
    int dim = 0;
    Eigen::MatrixXcd annihilate;
    Eigen::MatrixXcd create;
    Eigen::MatrixXcd position;
    Eigen::MatrixXcd momentum;
    Eigen::MatrixXcd hamiltonian;
    Eigen::MatrixXcd bare_hamiltonian;  // H0

    static FockOperators build(int dim, const OscillatorParams& params);
};

enum class InitialKind { kCoherent, kThermal, kFock, kPoissonDiagonal };

struct InitialState {
    InitialKind kind = InitialKind::kCoherent;
    cplx alpha0;         // kCoherent
    double mean = 0.0;   // kThermal, kPoissonDiagonal
    int phonons = 0;     // kFock

    static InitialState coherent(cplx alpha0);
    static InitialState thermal(double nbar);
    static InitialState fock(int s);
    static InitialState poisson_diagonal(double n);

    /// Truncated density matrix; not renormalized, so 1 - trace is the
    /// truncation deficit.
    Eigen::MatrixXcd density(int dim) const;
};

// Explicit RK4 on the truncated generator stays stable while dt times the
// Gershgorin bound is below roughly 3.5 (found by scanning random parameter
// sets). Defaults keep a wide margin; check() rejects anything past 2.5.
inline constexpr double kDefaultStability = 1.5;
inline constexpr double kMaxStability = 2.5;

struct IntegratorConfig {
    double dt = 1e-3;
    double t_final = 1.0;
    int dim = 60;

    /// dt = 1e-3 / max(omega, lambda, D2), capped at
    /// kDefaultStability / generator_bound(params, dim).
    static IntegratorConfig defaults(const OscillatorParams& params, double t_final, int dim = 60);
    /// Truncation rule of thumb: 6 (|alpha0|^2 + nbar) + 20, at least 60 for
    /// small states.
    static int suggested_dim(double alpha0_abs2, double nbar);
    /// Throws kInvalidInput unless dim >= 2, dt > 0,
    /// dt (lambda + omega + D2) < 0.1 and dt generator_bound <= kMaxStability.
    void check(const OscillatorParams& params) const;
};

/// Gershgorin bound on the spectral radius of the truncated generator. It
/// grows roughly linearly with dim and sets the explicit-step stability limit.
double generator_bound(const OscillatorParams& params, int dim);

/// Right-hand side of the master equation, term by term on the truncated
/// basis, plus its Hermitian conjugate. The superoperator is never formed.
Eigen::MatrixXcd liouvillian_apply(const Eigen::MatrixXcd& rho, const OscillatorParams& params);

struct IntegratorHealth {
    double max_trace_drift = 0.0;
    double max_hermiticity_residual = 0.0;  // before each symmetrization
    long steps = 0;
};

/// Trace drift above which a run is aborted with kTruncationBreach.
inline constexpr double kTruncationBreachDrift = 1e-6;

/// Fixed-step RK4 propagation of a density matrix.
class MasterEquationIntegrator {
   public:
    MasterEquationIntegrator(const OscillatorParams& params, const InitialState& initial,
                             const IntegratorConfig& config);
    MasterEquationIntegrator(const OscillatorParams& params, Eigen::MatrixXcd rho0,
                             const IntegratorConfig& config);

    /// Steps forward to time t (>= time()); the last step is shortened when t
    /// is not on the dt lattice.
    void advance_to(double t);

    double time() const { return time_; }
    const Eigen::MatrixXcd& rho() const { return rho_; }
    FockDensityMatrix snapshot() const;
    const IntegratorHealth& health() const { return health_; }

    // Precomputed coefficients of the right-hand side.
    struct Kernel;

   private:
    void step(double h);

    OscillatorParams params_;
    IntegratorConfig config_;
    Eigen::MatrixXcd rho_;
    double initial_trace_ = 1.0;
    double time_ = 0.0;
    IntegratorHealth health_;
    std::shared_ptr<const Kernel> kernel_;
    // RK4 stage buffers, reused across steps.
    Eigen::MatrixXcd k1_, k2_, k3_, k4_, stage_, half_;
};

/// Density matrices at the requested (non-decreasing) sample times.
std::vector<FockDensityMatrix> evolve(const InitialState& initial, const IntegratorConfig& config,
                                      const OscillatorParams& params,
                                      std::span<const double> sample_times);

/// Moments by matrix traces Tr[rho A].
MomentState expectations(const Eigen::MatrixXcd& rho);

/// <m|rho(t)|n> from the coherent-state P function by tensor Gauss-Hermite
/// quadrature along the principal axes of its covariance. Throws
/// kPRepresentationUnavailable when the P diffusion is not positive.
FockDensityMatrix rho_from_p_quadrature(double t, cplx alpha0, const OscillatorParams& params,
                                        int dim, int nodes = 64);

/// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const Eigen::MatrixXcd& rho);

}  // namespace lindho
