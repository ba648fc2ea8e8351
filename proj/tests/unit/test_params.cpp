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

#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include "doctest.h"
#include "lindho/errors.hpp"
#include "lindho/params.hpp"
#include "test_support.hpp"

using namespace lindho;
using lindho::testing::gibbs_values;

namespace {

ParamValues direct(double lambda, double d_pp, double d_qq, double d_pq, double mu = 0.0) {
    ParamValues v;
    v.lambda = lambda;
    v.mu = mu;
    v.d_pp = d_pp;
    v.d_qq = d_qq;
    v.d_pq = d_pq;
    return v;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an exception");
    return ErrorCode::kInvalidInput;
}

}  // namespace

TEST_CASE("validate accepts a comfortable parameter set") {
    const ValidationReport r = validate(direct(1.0, 1.0, 1.0, 0.0));
    CHECK(r.pass());
    CHECK(r.uncertainty.margin == doctest::Approx(0.75));
}

TEST_CASE("validate names the violated uncertainty constraint") {
    const ValidationReport r = validate(direct(1.0, 0.1, 0.1, 0.0));
    CHECK_FALSE(r.pass());
    CHECK(r.momentum_diffusion.ok);
    CHECK(r.position_diffusion.ok);
    CHECK_FALSE(r.uncertainty.ok);
    CHECK(r.uncertainty.margin == doctest::Approx(0.01 - 0.25));
    CHECK(r.failures().find("d_pp*d_qq") != std::string::npos);
}

TEST_CASE("validate flags each diffusion sign separately") {
    const ValidationReport r = validate(direct(1.0, -1.0, 0.0, 0.0));
    CHECK_FALSE(r.momentum_diffusion.ok);
    CHECK_FALSE(r.position_diffusion.ok);
}

TEST_CASE("validate rejects non-finite values") {
    ParamValues v = direct(1.0, 1.0, 1.0, 0.0);
    v.d_pq = std::numeric_limits<double>::quiet_NaN();
    CHECK(code_of([&] { validate(v); }) == ErrorCode::kInvalidInput);
    v.d_pq = std::numeric_limits<double>::infinity();
    CHECK(code_of([&] { validate(v); }) == ErrorCode::kInvalidInput);
}

TEST_CASE("validate tolerates rounding at the uncertainty boundary") {
    // d_pp d_qq exactly at the bound up to one ulp of the product.
    ParamValues v = direct(1.0, 0.5, 0.5 * (1.0 - 1e-15), 0.0);
    CHECK(validate(v).uncertainty.ok);
    v.d_qq = 0.5 * (1.0 - 1e-9);
    CHECK_FALSE(validate(v).uncertainty.ok);
}

TEST_CASE("construction refuses invalid instances instead of clamping") {
    CHECK(code_of([] { OscillatorParams::make(direct(1.0, 0.1, 0.1, 0.0)); }) ==
          ErrorCode::kConstraintViolation);
    CHECK(code_of([] { OscillatorParams::make(direct(0.0, 1.0, 1.0, 0.0)); }) ==
          ErrorCode::kConstraintViolation);
    CHECK(code_of([] { OscillatorParams::make(direct(1.0, 1.0, 1.0, 0.0, -0.1)); }) ==
          ErrorCode::kConstraintViolation);
    ParamValues v = direct(1.0, 1.0, 1.0, 0.0);
    v.omega = 0.0;
    CHECK(code_of([&] { OscillatorParams::make(v); }) == ErrorCode::kInvalidInput);
    const OscillatorParams ok = OscillatorParams::make(direct(1.0, 1.0, 1.0, 0.2, 0.4));
    CHECK(ok.mu() == 0.4);
    CHECK(ok.d_pq() == 0.2);
}

TEST_CASE("thermal coefficients: zero-temperature limit") {
    const double lambda = 0.8, mu = 0.3, m = 1.7, w = 1.3, hbar = 0.9;
    const DiffusionCoefficients d = thermal_coefficients(lambda, mu, m, w, hbar, 1e-4);
    CHECK(d.d_pp == doctest::Approx((lambda + mu) * hbar * m * w / 2).epsilon(1e-14));
    CHECK(d.d_qq == doctest::Approx((lambda - mu) * hbar / (2 * m * w)).epsilon(1e-14));
    CHECK(d.d_pq == 0.0);
}

TEST_CASE("thermal coefficients at hbar w / 2kT = 1") {
    const DiffusionCoefficients d = thermal_coefficients(1.0, 0.0, 1.0, 1.0, 1.0, 0.5);
    CHECK(d.d_pp == doctest::Approx(0.656518).epsilon(1e-6));
    CHECK(d.d_qq == doctest::Approx(0.656518).epsilon(1e-6));
    CHECK(d.d_pp == doctest::Approx(0.5 / std::tanh(1.0)).epsilon(1e-15));
}

TEST_CASE("thermal coefficients need lambda > mu") {
    CHECK(code_of([] { thermal_coefficients(1.0, 1.0, 1.0, 1.0, 1.0, 1.0); }) ==
          ErrorCode::kInvalidRegime);
    CHECK(code_of([] { thermal_coefficients(1.0, 1.5, 1.0, 1.0, 1.0, 1.0); }) ==
          ErrorCode::kInvalidRegime);
    CHECK(code_of([] { thermal_coefficients(1.0, 0.5, 1.0, 1.0, 1.0, 0.0); }) ==
          ErrorCode::kInvalidInput);
}

TEST_CASE("thermal coefficients with lambda=1, mu=0.5, hbar w/2kT=1 pass validation") {
    CHECK(validate(gibbs_values(1.0, 0.5, 1.0, 0.5)).pass());
}

// The uncertainty constraint for thermal coefficients reduces to
// coth^2(hbar w / 2kT) >= lambda^2 / (lambda^2 - mu^2). It is automatic for
// mu = 0 but can fail at low temperature once mu > 0.
TEST_CASE("thermal coefficients pass validation exactly when coth^2 clears the bound") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int failures_seen = 0;
    for (int i = 0; i < 2000; ++i) {
        const double lambda = 0.1 + 2.0 * u(rng);
        const double mu = (i % 4 == 0) ? 0.0 : lambda * 0.999 * u(rng);
        const double omega = 0.2 + 2.0 * u(rng);
        const double kT = std::exp(-4.0 + 7.0 * u(rng));
        const ParamValues v = gibbs_values(lambda, mu, omega, kT);
        const double coth = 1.0 / std::tanh(omega / (2.0 * kT));
        const double need = lambda * lambda / (lambda * lambda - mu * mu);
        const double gap = coth * coth - need;
        if (std::abs(gap) < 1e-9 * need) continue;
        const bool expected = gap > 0.0;
        CHECK(validate(v).pass() == expected);
        if (mu == 0.0) CHECK(validate(v).pass());
        failures_seen += expected ? 0 : 1;
    }
    CHECK(failures_seen > 0);
}

TEST_CASE("micro amplitudes: sign of the friction") {
    LindbladMicroParams m;
    m.a1 = {1.0, 0.0};
    m.b1 = {0.0, 1.0};
    const MicroCoefficients raw = micro_coefficients(m, 1.0);
    CHECK(raw.lambda == doctest::Approx(-1.0));
    CHECK(raw.d_qq == doctest::Approx(0.5));
    CHECK(raw.d_pp == doctest::Approx(0.5));
    CHECK(code_of([&] { from_micro(m, 1.0); }) == ErrorCode::kDegenerateInput);

    m.b1 = {0.0, -1.0};
    const MicroCoefficients c = from_micro(m, 1.0);
    CHECK(c.lambda == doctest::Approx(1.0));
    CHECK(c.d_qq == doctest::Approx(0.5));
    CHECK(c.d_pp == doctest::Approx(0.5));
    CHECK(c.d_pq == doctest::Approx(0.0));
}

TEST_CASE("micro amplitudes all zero are degenerate") {
    CHECK(code_of([] { from_micro(LindbladMicroParams{}, 1.0); }) == ErrorCode::kDegenerateInput);
}

TEST_CASE("micro coefficients scale with |c|^2") {
    LindbladMicroParams m;
    m.a1 = {1.0, 0.0};
    m.b1 = {0.0, -1.0};
    const cplx c(0.7, -1.1);
    LindbladMicroParams s{m.a1 * c, m.b1 * c, {}, {}};
    const MicroCoefficients base = from_micro(m, 1.0);
    const MicroCoefficients scaled = from_micro(s, 1.0);
    const double k = std::norm(c);
    CHECK(scaled.d_pp == doctest::Approx(k * base.d_pp));
    CHECK(scaled.d_qq == doctest::Approx(k * base.d_qq));
    CHECK(scaled.lambda == doctest::Approx(k * base.lambda));
}

TEST_CASE("random micro amplitudes always satisfy the constraints") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 1.0);
    auto z = [&] { return cplx(g(rng), g(rng)); };
    for (int i = 0; i < 1000; ++i) {
        const LindbladMicroParams m{z(), z(), z(), z()};
        const double hbar = 0.5 + std::abs(g(rng));
        const MicroCoefficients c = micro_coefficients(m, hbar);
        ParamValues v;
        v.hbar = hbar;
        v.lambda = c.lambda;
        v.d_pp = c.d_pp;
        v.d_qq = c.d_qq;
        v.d_pq = c.d_pq;
        CHECK(validate(v).pass());
    }
}

TEST_CASE("micro amplitudes hit the uncertainty bound iff they are linearly dependent") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g(0.0, 1.0);
    auto z = [&] { return cplx(g(rng), g(rng)); };
    for (int i = 0; i < 200; ++i) {
        const cplx a1 = z(), a2 = z(), k = z();
        // Dependent: (b1, b2) = k (a1, a2).
        LindbladMicroParams dep{a1, k * a1, a2, k * a2};
        MicroCoefficients c = micro_coefficients(dep, 1.0);
        double lhs = c.d_pp * c.d_qq - c.d_pq * c.d_pq;
        double rhs = 0.25 * c.lambda * c.lambda;
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, lhs));

        LindbladMicroParams indep{a1, z(), a2, z()};
        c = micro_coefficients(indep, 1.0);
        lhs = c.d_pp * c.d_qq - c.d_pq * c.d_pq;
        rhs = 0.25 * c.lambda * c.lambda;
        CHECK(lhs - rhs > 1e-9);
    }
}

TEST_CASE("derive: D1 vanishes for balanced diffusion") {
    ParamValues v = direct(1.0, 2.0, 2.0, 0.0);
    const DerivedCoefficients d = derive(OscillatorParams::make(v));
    CHECK(std::abs(d.d1) == 0.0);
    CHECK(d.d2 == doctest::Approx(4.0));
}

TEST_CASE("derive: thermal D2 = lambda coth(hbar w / 2kT)") {
    const double lambda = 0.9, kT = 0.7;
    const auto p = OscillatorParams::make(gibbs_values(lambda, 0.4, 1.2, kT));
    CHECK(derive(p).d2 == doctest::Approx(lambda / std::tanh(1.2 / (2 * kT))).epsilon(1e-14));
}

TEST_CASE("derive: regime classification") {
    auto with_mu = [](double mu) {
        ParamValues v = direct(2.0, 3.0, 3.0, 0.0, mu);
        return derive(OscillatorParams::make(v));
    };
    const DerivedCoefficients under = with_mu(0.5);
    CHECK(under.regime == Regime::kUnderdamped);
    CHECK(under.big_omega == doctest::Approx(std::sqrt(0.75)));
    CHECK(under.nu == 0.0);

    const DerivedCoefficients over = with_mu(1.25);
    CHECK(over.regime == Regime::kOverdamped);
    CHECK(over.nu == doctest::Approx(0.75));
    CHECK(over.big_omega == 0.0);

    CHECK(with_mu(1.0).regime == Regime::kCritical);
    CHECK(with_mu(1.0 + 5e-10).regime == Regime::kCritical);
    CHECK(with_mu(1.0 + 5e-9).regime == Regime::kOverdamped);
}

TEST_CASE("derive is deterministic bit for bit") {
    const auto p = OscillatorParams::make(direct(1.3, 2.1, 0.9, 0.3, 0.7));
    const DerivedCoefficients a = derive(p);
    const DerivedCoefficients b = derive(p);
    CHECK(std::memcmp(&a.d1, &b.d1, sizeof a.d1) == 0);
    CHECK(std::memcmp(&a.d2, &b.d2, sizeof a.d2) == 0);
    CHECK(std::memcmp(&a.d_const, &b.d_const, sizeof a.d_const) == 0);
    CHECK(std::memcmp(&a.big_omega, &b.big_omega, sizeof a.big_omega) == 0);
}

TEST_CASE("oscillation factors per regime") {
    DerivedCoefficients d;
    d.regime = Regime::kCritical;
    CHECK(oscillation(d, 2.5).odd == 2.5);
    CHECK(oscillation(d, 2.5).even == 1.0);
    d.regime = Regime::kOverdamped;
    d.nu = 0.5;
    CHECK(oscillation(d, 2.0).even == doctest::Approx(std::cosh(1.0)));
    CHECK(oscillation(d, 2.0).odd == doctest::Approx(std::sinh(1.0) / 0.5));
}
