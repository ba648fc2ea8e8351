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

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lindho/errors.hpp"
#include "lindho/moments.hpp"
#include "lindho/wigner.hpp"
#include "test_support.hpp"

using namespace lindho;
using lindho::testing::gibbs;
using lindho::testing::random_corpus;

namespace {

OscillatorParams make(double lambda, double mu, double omega, double d_pp, double d_qq,
                      double d_pq) {
    ParamValues v;
    v.lambda = lambda;
    v.mu = mu;
    v.omega = omega;
    v.d_pp = d_pp;
    v.d_qq = d_qq;
    v.d_pq = d_pq;
    return OscillatorParams::make(v);
}

// Symmetrically ordered covariance of (Re a, Im a).
Eigen::Matrix2d symmetric_covariance(const MomentState& m) {
    const double ra = m.exp_a.real(), ia = m.exp_a.imag();
    Eigen::Matrix2d c;
    c(0, 0) = (2 * m.exp_a2.real() + 2 * m.exp_n + 1) / 4 - ra * ra;
    c(1, 1) = (2 * m.exp_n + 1 - 2 * m.exp_a2.real()) / 4 - ia * ia;
    c(0, 1) = c(1, 0) = m.exp_a2.imag() / 2 - ra * ia;
    return c;
}

// Moments of the (improper) state whose Wigner function is a point at x0:
// its symmetric covariance vanishes.
MomentState point_state(double x10, double x20) {
    MomentState m;
    m.exp_a = {x10, x20};
    m.exp_adag = std::conj(m.exp_a);
    m.exp_a2 = m.exp_a * m.exp_a;
    m.exp_adag2 = std::conj(m.exp_a2);
    m.exp_n = std::norm(m.exp_a) - 0.5;
    return m;
}

const OscillatorParams& generic() {
    static const OscillatorParams p = make(0.7, 0.4, 1.1, 0.9, 0.5, 0.1);
    return p;
}

}  // namespace

TEST_CASE("transform without mu") {
    const auto p = make(0.8, 0.0, 1.3, 1.0, 1.0, 0.0);
    const TransformedSystem s = transform(p);
    CHECK(std::abs(s.a_coef - cplx(0.0, -1.0)) < 1e-15);
    CHECK(std::abs(s.nu1 - cplx(-0.8, -1.3)) < 1e-15);
}

TEST_CASE("transformed rates are minus the drift eigenvalues") {
    const auto& p = generic();
    const TransformedSystem s = transform(p);
    CHECK(std::abs(s.nu2 - std::conj(s.nu1)) < 1e-15);
    CHECK(std::abs(s.d22 - std::conj(s.d11)) < 1e-15);
    const Eigen::Matrix2d a = drift_diffusion_w(p).a_matrix;
    Eigen::EigenSolver<Eigen::Matrix2d> es(a);
    const double big_omega = std::sqrt(1.1 * 1.1 - 0.4 * 0.4);
    for (int k = 0; k < 2; ++k) {
        const cplx ev = es.eigenvalues()(k);
        CHECK(std::abs(ev.real() - 0.7) < 1e-12);
        CHECK(std::abs(std::abs(ev.imag()) - big_omega) < 1e-12);
    }
    // z = a x1 + x2 decays at rate nu1 along the mean flow.
    const PhasePoint x = mean_trajectory(0.6, -0.2, 1.3, p);
    const cplx z0 = s.a_coef * 0.6 - 0.2;
    const cplx z = s.a_coef * x.x1 + x.x2;
    CHECK(std::abs(z - z0 * std::exp(s.nu1 * 1.3)) < 1e-12);
}

TEST_CASE("transformed cross diffusion in natural units") {
    const auto p = make(0.5, 0.2, 1.0, 1.7, 0.9, 0.0);
    CHECK(transform(p).d12 == doctest::Approx(1.7 + 0.9));
}

TEST_CASE("transform needs an oscillating drift") {
    try {
        transform(make(1.6, 1.3, 1.0, 2.5, 0.9, -0.2));
        FAIL("expected UnsupportedRegime");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kUnsupportedRegime);
    }
}

TEST_CASE("mean trajectory agrees with the first moments in every regime") {
    const OscillatorParams cases[] = {generic(), make(1.6, 1.3, 1.0, 2.5, 0.9, -0.2),
                                      make(1.2, 1.0, 1.0, 1.9, 0.7, 0.05),
                                      make(0.9, 0.0, 1.2, 1.0, 1.0, 0.0)};
    for (const auto& p : cases) {
        const PhasePoint x0 = mean_trajectory(0.6, -0.2, 0.0, p);
        CHECK(x0.x1 == 0.6);
        CHECK(x0.x2 == -0.2);
        for (double t : {0.3, 2.0, 7.0}) {
            const PhasePoint x = mean_trajectory(0.6, -0.2, t, p);
            const FirstMoments f = evolve_first({{0.6, -0.2}, {0.6, 0.2}}, t, p);
            CHECK(std::abs(x.x1 - f.exp_a.real()) < 1e-12);
            CHECK(std::abs(x.x2 - f.exp_a.imag()) < 1e-12);
        }
    }
}

TEST_CASE("wave packet at t = 0 is the coherent-state Gaussian") {
    const auto& p = generic();
    const GaussianWigner w = wavepacket_solution(0.6, -0.3, 0.0, p);
    for (double x1 = -2.0; x1 <= 2.0; x1 += 0.25)
        for (double x2 = -2.0; x2 <= 2.0; x2 += 0.25) {
            const double d2 = (x1 - 0.6) * (x1 - 0.6) + (x2 + 0.3) * (x2 + 0.3);
            CHECK(std::abs(w(x1, x2) - 2.0 / std::numbers::pi * std::exp(-2.0 * d2)) < 1e-10);
        }
}

TEST_CASE("wave packet stays normalized") {
    const auto& p = generic();
    for (double t : {0.0, 0.5, 2.0}) {
        CHECK(std::abs(adaptive_mass(wavepacket_solution(0.6, -0.3, t, p)) - 1.0) < 1e-8);
    }
}

TEST_CASE("wave packet covariance follows the symmetrized moments") {
    for (const auto& e : random_corpus(10, 303)) {
        const auto p = OscillatorParams::make(e.values);
        if (e.overdamped) continue;
        const double x10 = e.alpha0.real(), x20 = e.alpha0.imag();
        const MomentState m = evolve(MomentState::coherent(e.alpha0), 1.0, p);
        const GaussianWigner w = wavepacket_solution(x10, x20, 1.0, p);
        CHECK((w.covariance() - symmetric_covariance(m)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(w.mean_x1 - m.exp_a.real()) < 1e-12);
        CHECK(std::abs(w.mean_x2 - m.exp_a.imag()) < 1e-12);
    }
}

TEST_CASE("delta solution is singular at t = 0") {
    try {
        delta_solution(0.1, 0.2, 0.0, generic());
        FAIL("expected SingularInitialCondition");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kSingularInitialCondition);
    }
}

TEST_CASE("delta solution: narrow early, normalized, steady late") {
    const auto& p = generic();
    CHECK(delta_solution(0.1, 0.2, 1e-6, p).covariance().cwiseAbs().maxCoeff() < 1e-5);
    CHECK(std::abs(adaptive_mass(delta_solution(0.1, 0.2, 1.0, p)) - 1.0) < 1e-8);
    const Eigen::Matrix2d late = delta_solution(0.1, 0.2, 30.0 / p.lambda(), p).covariance();
    CHECK((late - steady_covariance(p).matrix()).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("delta covariance follows the moments of a point state") {
    const auto& p = generic();
    for (double t : {0.2, 1.0, 3.0}) {
        const MomentState m = evolve(point_state(0.1, 0.2), t, p);
        const Eigen::Matrix2d c = delta_solution(0.1, 0.2, t, p).covariance();
        CHECK((c - symmetric_covariance(m)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("delta covariance obeys the Ornstein-Uhlenbeck flow") {
    const auto& p = generic();
    const RealDriftDiffusionW dd = drift_diffusion_w(p);
    const double h = 1e-5;
    for (double t : {0.3, 1.1, 4.0}) {
        const Eigen::Matrix2d s = delta_solution(0, 0, t, p).covariance();
        const Eigen::Matrix2d ds = (delta_solution(0, 0, t + h, p).covariance() -
                                    delta_solution(0, 0, t - h, p).covariance()) /
                                   (2 * h);
        const Eigen::Matrix2d rhs =
            -dd.a_matrix * s - s * dd.a_matrix.transpose() + dd.qw_matrix;
        CHECK((ds - rhs).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("wave packet and delta solutions share the mean") {
    const auto& p = generic();
    const GaussianWigner a = wavepacket_solution(0.5, 0.4, 1.7, p);
    const GaussianWigner b = delta_solution(0.5, 0.4, 1.7, p);
    CHECK(a.mean_x1 == b.mean_x1);
    CHECK(a.mean_x2 == b.mean_x2);
}

TEST_CASE("quadratic forms are positive definite and densities nonnegative") {
    for (const auto& e : random_corpus(10, 404)) {
        if (e.overdamped) continue;
        const auto p = OscillatorParams::make(e.values);
        for (double t : {0.1, 1.0, 5.0}) {
            for (const GaussianWigner& w :
                 {wavepacket_solution(0.3, -0.1, t, p), delta_solution(0.3, -0.1, t, p)}) {
                Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(w.precision());
                CHECK(es.eigenvalues().minCoeff() > 0.0);
                CHECK(std::abs(w.phi.imag()) < 1e-12);
                CHECK(std::abs(w.chi.imag()) < 1e-12);
                const GridValues g = evaluate_grid(w, {-4, 4, -4, 4, 41, 41});
                for (double v : g.values) CHECK(v >= 0.0);
            }
        }
    }
}

TEST_CASE("the swapped cross-term conventions miss the moments") {
    const auto& p = generic();
    const MomentState m = evolve(MomentState::coherent({0.6, -0.3}), 1.0, p);
    const WignerConvention alt{CrossTerm::kSwapped, Prefactor::kNormalized};
    const Eigen::Matrix2d c = wavepacket_solution(0.6, -0.3, 1.0, p, alt).covariance();
    CHECK((c - symmetric_covariance(m)).cwiseAbs().maxCoeff() > 1e-3);
    const MomentState md = evolve(point_state(0.6, -0.3), 1.0, p);
    const Eigen::Matrix2d cd = delta_solution(0.6, -0.3, 1.0, p, alt).covariance();
    CHECK((cd - symmetric_covariance(md)).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("hbar-scaled delta prefactor misses unit mass by a factor two") {
    const auto& p = generic();
    const WignerConvention scaled{CrossTerm::kStandard, Prefactor::kHbarScaled};
    CHECK(adaptive_mass(delta_solution(0.6, -0.3, 1.0, p, scaled)) ==
          doctest::Approx(0.5).epsilon(1e-8));
    CHECK(adaptive_mass(wavepacket_solution(0.6, -0.3, 1.0, p, scaled)) ==
          doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("steady covariance of a thermal bath without mu") {
    for (double kT : {0.2, 1.0, 5.0}) {
        const auto p = gibbs(0.9, 0.0, 1.0, kT);
        const SteadyCovarianceW s = steady_covariance(p);
        const double expect = 0.25 / std::tanh(1.0 / (2 * kT));
        CHECK(std::abs(s.s11 - expect) < 1e-12);
        CHECK(std::abs(s.s22 - expect) < 1e-12);
        CHECK(std::abs(s.s12) < 1e-12);
    }
    const SteadyCovarianceW cold = steady_covariance(gibbs(0.9, 0.0, 1.0, 1e-3));
    CHECK(std::abs(cold.s11 - 0.25) < 1e-12);
    CHECK(std::abs(cold.s22 - 0.25) < 1e-12);
}

TEST_CASE("steady covariance: closed form against the Lyapunov solve") {
    for (const auto& e : random_corpus(40, 505)) {
        const auto p = OscillatorParams::make(e.values);
        const SteadyState s = steady_state(p);
        CHECK(s.agreement < 1e-12);
        CHECK(s.residual < 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(s.closed_form.matrix());
        CHECK(es.eigenvalues().minCoeff() > 0.0);
        CHECK(std::abs(adaptive_mass(s.wigner) - 1.0) < 1e-8);
    }
}

TEST_CASE("no steady state for an unstable drift") {
    try {
        steady_state(make(1.0, 1.5, 1.0, 3.0, 3.0, 0.0));
        FAIL("expected NoStationaryState");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kNoStationaryState);
    }
}

TEST_CASE("thermal steady determinant grows with temperature from 1/16") {
    double prev = 0.0;
    for (double kT = 0.05; kT < 5.0; kT *= 1.3) {
        const double det = steady_covariance(gibbs(1.0, 0.0, 1.0, kT)).matrix().determinant();
        CHECK(det >= 1.0 / 16 - 1e-15);
        CHECK(det >= prev);
        prev = det;
    }
}

TEST_CASE("grid evaluation: parity, peak and convergence of the mass") {
    const auto& p = generic();
    const SteadyState s = steady_state(p);
    const WignerGrid grid{-3, 3, -3, 3, 61, 61};
    const GridValues g = evaluate_grid(s.wigner, grid);
    REQUIRE(g.values.size() == 61u * 61u);
    for (int i = 0; i < 61; ++i)
        for (int j = 0; j < 61; ++j)
            CHECK(std::abs(g.values[i * 61 + j] - g.values[(60 - i) * 61 + (60 - j)]) < 1e-15);

    const GaussianWigner w = wavepacket_solution(0.5, -0.5, 1.0, p);
    const GridValues h = evaluate_grid(w, {w.mean_x1 - 2, w.mean_x1 + 2, w.mean_x2 - 2,
                                           w.mean_x2 + 2, 81, 81});
    const auto peak = std::max_element(h.values.begin(), h.values.end()) - h.values.begin();
    CHECK(peak == 40 * 81 + 40);

    double prev_err = 1.0;
    for (double half : {1.0, 2.0, 3.0, 4.0}) {
        const GridValues m = evaluate_grid(s.wigner, {-half, half, -half, half, 201, 201});
        const double err = std::abs(m.mass - 1.0);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 1e-6);
}

TEST_CASE("degenerate grids are rejected") {
    const SteadyState s = steady_state(generic());
    CHECK_THROWS_AS(evaluate_grid(s.wigner, {-1, 1, -1, 1, 1, 5}), Error);
    CHECK_THROWS_AS(evaluate_grid(s.wigner, {1, 1, -1, 1, 5, 5}), Error);
    CHECK_THROWS_AS(evaluate_grid(s.wigner, {-1, NAN, -1, 1, 5, 5}), Error);
}
