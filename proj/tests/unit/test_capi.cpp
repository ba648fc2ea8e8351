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

// Exercises the shared library strictly through its C interface.

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "lindho/lindho.h"

namespace {

const char* kThermal = R"({"omega":1,"lambda":1,"mu":0.3,"thermal":{"kT":1}})";

struct Params {
    lho_params* p = nullptr;
    explicit Params(const char* json) { REQUIRE(lho_params_from_json(json, &p) == LHO_OK); }
    ~Params() { lho_params_destroy(p); }
};

double cabs(lho_complex a, lho_complex b) { return std::hypot(a.re - b.re, a.im - b.im); }

}  // namespace

TEST_CASE("status names and version") {
    CHECK(std::string(lho_status_name(LHO_OK)) == "Ok");
    CHECK(std::string(lho_status_name(LHO_CONSTRAINT_VIOLATION)) == "ConstraintViolation");
    CHECK(std::string(lho_status_name(LHO_CONFIG_ERROR)) == "ConfigError");
    CHECK(std::string(lho_status_name(LHO_TRUNCATION_BREACH)) == "TruncationBreach");
    CHECK(std::strlen(lho_version()) > 0);
}

TEST_CASE("parameter handles") {
    Params params(kThermal);
    lho_param_values v{};
    REQUIRE(lho_params_values(params.p, &v) == LHO_OK);
    CHECK(v.lambda == 1.0);
    CHECK(v.d_pp == doctest::Approx(0.65 / std::tanh(0.5)));
    lho_derived d{};
    REQUIRE(lho_params_derived(params.p, &d) == LHO_OK);
    CHECK(d.regime == LHO_REGIME_UNDERDAMPED);
    CHECK(d.big_omega == doctest::Approx(std::sqrt(1.0 - 0.09)));

    lho_params* copy = nullptr;
    REQUIRE(lho_params_create(&v, &copy) == LHO_OK);
    lho_params_destroy(copy);
    lho_params_destroy(nullptr);
}

TEST_CASE("errors carry a status and a message") {
    lho_params* p = nullptr;
    CHECK(lho_params_from_json("{", &p) == LHO_CONFIG_ERROR);
    CHECK(p == nullptr);
    CHECK(std::strlen(lho_last_error()) > 0);

    lho_param_values v{1, 1, 1, 1, 0, 0.1, 0.1, 0};
    CHECK(lho_params_create(&v, &p) == LHO_CONSTRAINT_VIOLATION);
    CHECK(std::string(lho_last_error()).find("lambda") != std::string::npos);
    lho_validation val{};
    REQUIRE(lho_validate(&v, &val) == LHO_OK);
    CHECK(val.pass == 0);
    CHECK(val.uncertainty_ok == 0);
    CHECK(val.uncertainty_margin == doctest::Approx(0.01 - 0.25));

    CHECK(lho_params_create(nullptr, &p) == LHO_INVALID_INPUT);
    CHECK(lho_params_from_json(R"({"omega":1,"lambda":1,"mu":1,"thermal":{"kT":1}})", &p) ==
          LHO_INVALID_REGIME);
    double a = 0, b = 0, c = 0;
    CHECK(lho_thermal_coefficients(1, 0.3, 1, 1, 1, 1, &a, &b, &c) == LHO_OK);
    CHECK(a == doctest::Approx(0.65 / std::tanh(0.5)));
}

TEST_CASE("resolve reports the source") {
    lho_param_values v{};
    int source = -1;
    REQUIRE(lho_resolve_json(kThermal, &v, &source) == LHO_OK);
    CHECK(source == LHO_SOURCE_THERMAL);
    CHECK(lho_resolve_file("does/not/exist.json", &v, &source) == LHO_CONFIG_ERROR);
}

TEST_CASE("moments through the C boundary") {
    Params params(kThermal);
    lho_moments m0{}, m1{};
    REQUIRE(lho_moments_coherent({0.8, 0.0}, &m0) == LHO_OK);
    CHECK(m0.exp_n == doctest::Approx(0.64));
    REQUIRE(lho_moments_evolve(params.p, &m0, 60.0, &m1) == LHO_OK);
    double nbar = 0.0;
    REQUIRE(lho_asymptotic_number(params.p, &nbar) == LHO_OK);
    CHECK(m1.exp_n == doctest::Approx(nbar).epsilon(1e-12));
    CHECK(m1.time == 60.0);
    lho_quadratures q{};
    REQUIRE(lho_quadratures_of(params.p, &m0, &q) == LHO_OK);
    CHECK(q.mean_q == doctest::Approx(0.8 * std::sqrt(2.0)));
    CHECK(q.var_q == doctest::Approx(0.5));
    CHECK(lho_moments_evolve(params.p, nullptr, 1.0, &m1) == LHO_INVALID_INPUT);
}

TEST_CASE("density matrix through the C boundary") {
    Params params(kThermal);
    const int dim = 12;
    std::vector<lho_complex> rho(dim * dim);
    lho_rho_info info{};
    REQUIRE(lho_rho_matrix(params.p, dim, 0.5, {0.8, 0.1}, LHO_BRACKET_SYMMETRIC, rho.data(),
                           &info) == LHO_OK);
    CHECK(info.dim == dim);
    CHECK(info.hermiticity_residual < 1e-12);
    CHECK(info.trace_deficit > 0.0);
    CHECK(info.trace_deficit < 1e-5);
    lho_complex e{};
    REQUIRE(lho_rho_element(params.p, 3, 1, 0.5, {0.8, 0.1}, LHO_BRACKET_SYMMETRIC, &e) == LHO_OK);
    CHECK(cabs(e, rho[3 * dim + 1]) < 1e-15);
    lho_complex f{};
    REQUIRE(lho_generating_function(params.p, {0, 0}, {0, 0}, 0.5, {0.8, 0.1}, &f) == LHO_OK);
    CHECK(cabs(f, rho[0]) < 1e-14);
    lho_sigma s{};
    REQUIRE(lho_sigma_t(params.p, 1.0, &s) == LHO_OK);
    CHECK(s.det <= 0.0);
    CHECK(lho_rho_matrix(params.p, 0, 0.5, {0, 0}, 0, rho.data(), nullptr) == LHO_INVALID_INPUT);
}

TEST_CASE("Wigner functions through the C boundary") {
    Params params(kThermal);
    lho_wigner w{};
    REQUIRE(lho_wigner_solve(params.p, LHO_WIGNER_WAVEPACKET, 0.5, -0.2, 0.0, &w) == LHO_OK);
    CHECK(lho_wigner_value(&w, 0.5, -0.2) == doctest::Approx(2.0 / M_PI));
    CHECK(w.cov11 == doctest::Approx(0.25));
    double mass = 0.0;
    REQUIRE(lho_wigner_mass(&w, 1e-9, &mass) == LHO_OK);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-7));

    CHECK(lho_wigner_solve(params.p, LHO_WIGNER_DELTA, 0.0, 0.0, 0.0, &w) ==
          LHO_SINGULAR_INITIAL_CONDITION);
    CHECK(lho_wigner_solve(params.p, LHO_WIGNER_STEADY, 0.0, 0.0, 1.0, &w) == LHO_INVALID_INPUT);

    lho_steady st{};
    REQUIRE(lho_steady_state(params.p, &st) == LHO_OK);
    CHECK(st.agreement < 1e-12);
    CHECK(st.residual < 1e-12);
    lho_grid g{-3, 3, -3, 3, 5, 7};
    std::vector<double> values(35);
    REQUIRE(lho_wigner_grid(&st.wigner, &g, values.data(), &mass) == LHO_OK);
    CHECK(values[2 * 7 + 3] == doctest::Approx(lho_wigner_value(&st.wigner, 0.0, 0.0)));
    g.n1 = 1;
    CHECK(lho_wigner_grid(&st.wigner, &g, values.data(), nullptr) == LHO_INVALID_INPUT);
}

TEST_CASE("oracle handles") {
    Params params(kThermal);
    lho_integrator_config cfg{};
    REQUIRE(lho_integrator_defaults(params.p, 1.0, 30, &cfg) == LHO_OK);
    CHECK(cfg.dim == 30);
    cfg.dt = 2e-3;
    lho_initial_state init{};
    init.kind = LHO_INITIAL_COHERENT;
    init.alpha0 = {0.8, 0.0};
    lho_oracle* o = nullptr;
    REQUIRE(lho_oracle_create(params.p, &init, &cfg, &o) == LHO_OK);
    REQUIRE(lho_oracle_advance(o, 1.0) == LHO_OK);
    lho_moments mo{}, m0{}, ma{};
    REQUIRE(lho_oracle_moments(o, &mo) == LHO_OK);
    lho_moments_coherent({0.8, 0.0}, &m0);
    lho_moments_evolve(params.p, &m0, 1.0, &ma);
    CHECK(std::abs(mo.exp_n - ma.exp_n) < 1e-6);
    CHECK(cabs(mo.exp_a2, ma.exp_a2) < 1e-6);
    lho_oracle_health h{};
    REQUIRE(lho_oracle_health_of(o, &h) == LHO_OK);
    CHECK(h.time == 1.0);
    CHECK(h.steps == 500);
    CHECK(h.max_trace_drift < 1e-8);
    double min_eig = -1.0;
    REQUIRE(lho_oracle_min_eigenvalue(o, &min_eig) == LHO_OK);
    CHECK(min_eig > -1e-10);
    std::vector<lho_complex> rho(30 * 30);
    REQUIRE(lho_oracle_rho(o, rho.data(), nullptr) == LHO_OK);
    CHECK(lho_oracle_advance(o, 0.5) == LHO_INVALID_INPUT);
    lho_oracle_destroy(o);

    cfg.dim = 5;
    init.alpha0 = {1.5, 0.0};
    REQUIRE(lho_oracle_create(params.p, &init, &cfg, &o) == LHO_OK);
    CHECK(lho_oracle_advance(o, 1.0) == LHO_TRUNCATION_BREACH);
    lho_oracle_destroy(o);

    init.kind = 42;
    CHECK(lho_oracle_create(params.p, &init, &cfg, &o) == LHO_INVALID_INPUT);
}
