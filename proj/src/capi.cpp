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

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "lindho/config.hpp"
#include "lindho/density_matrix.hpp"
#include "lindho/errors.hpp"
#include "lindho/lindho.h"
#include "lindho/moments.hpp"
#include "lindho/oracle.hpp"
#include "lindho/params.hpp"
#include "lindho/wigner.hpp"

struct lho_params {
    lindho::OscillatorParams value;
};

struct lho_oracle {
    lindho::MasterEquationIntegrator integrator;
};

namespace {

using lindho::cplx;

thread_local std::string g_last_error;

int record(int status, std::string msg) {
    g_last_error = std::move(msg);
    return status;
}

template <class F>
int guard(F&& body) {
    try {
        body();
        g_last_error.clear();
        return LHO_OK;
    } catch (const lindho::Error& e) {
        return record(static_cast<int>(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return record(LHO_INTERNAL_ERROR, "out of memory");
    } catch (const std::exception& e) {
        return record(LHO_INTERNAL_ERROR, e.what());
    } catch (...) {
        return record(LHO_INTERNAL_ERROR, "unknown failure");
    }
}

void require(const void* p, const char* what) {
    if (p == nullptr)
        throw lindho::Error(lindho::ErrorCode::kInvalidInput, std::string(what) + " is NULL");
}

cplx to_cplx(lho_complex c) { return {c.re, c.im}; }
lho_complex to_c(cplx c) { return {c.real(), c.imag()}; }

lindho::ParamValues to_values(const lho_param_values& v) {
    lindho::ParamValues p;
    p.hbar = v.hbar;
    p.mass = v.mass;
    p.omega = v.omega;
    p.lambda = v.lambda;
    p.mu = v.mu;
    p.d_pp = v.d_pp;
    p.d_qq = v.d_qq;
    p.d_pq = v.d_pq;
    return p;
}

lho_param_values from_values(const lindho::ParamValues& p) {
    return {p.hbar, p.mass, p.omega, p.lambda, p.mu, p.d_pp, p.d_qq, p.d_pq};
}

lindho::MomentState to_state(const lho_moments& m) {
    lindho::MomentState s;
    s.exp_a = to_cplx(m.exp_a);
    s.exp_adag = to_cplx(m.exp_adag);
    s.exp_a2 = to_cplx(m.exp_a2);
    s.exp_adag2 = to_cplx(m.exp_adag2);
    s.exp_n = m.exp_n;
    s.time = m.time;
    return s;
}

lho_moments from_state(const lindho::MomentState& s) {
    return {to_c(s.exp_a), to_c(s.exp_adag), to_c(s.exp_a2), to_c(s.exp_adag2), s.exp_n, s.time};
}

lindho::BracketCoefficient to_bracket(int b) {
    switch (b) {
        case LHO_BRACKET_SYMMETRIC: return lindho::BracketCoefficient::kSymmetric;
        case LHO_BRACKET_ASYMMETRIC: return lindho::BracketCoefficient::kAsymmetric;
    }
    throw lindho::Error(lindho::ErrorCode::kInvalidInput, "unknown bracket variant");
}

void export_rho(const lindho::FockDensityMatrix& rho, lho_complex* elements, lho_rho_info* info) {
    for (int m = 0; m < rho.dim; ++m)
        for (int n = 0; n < rho.dim; ++n)
            elements[static_cast<size_t>(m) * rho.dim + n] = to_c(rho.elements(m, n));
    if (info != nullptr)
        *info = {rho.dim, rho.time, rho.trace_deficit, rho.hermiticity_residual,
                 rho.low_precision_count};
}

lho_wigner from_wigner(const lindho::GaussianWigner& w) {
    lho_wigner out{};
    out.kind = static_cast<int>(w.kind);
    out.time = w.time;
    out.mean_x1 = w.mean_x1;
    out.mean_x2 = w.mean_x2;
    out.phi = w.phi.real();
    out.psi = w.psi.real();
    out.chi = w.chi.real();
    out.b_norm = w.b_norm;
    out.divisor = w.divisor;
    out.norm = w.norm;
    const Eigen::Matrix2d c = w.covariance();
    out.cov11 = c(0, 0);
    out.cov12 = c(0, 1);
    out.cov22 = c(1, 1);
    return out;
}

lindho::GaussianWigner to_wigner(const lho_wigner& w) {
    lindho::GaussianWigner g;
    if (w.kind < 0 || w.kind > LHO_WIGNER_STEADY)
        throw lindho::Error(lindho::ErrorCode::kInvalidInput, "unknown Wigner kind");
    g.kind = static_cast<lindho::WignerKind>(w.kind);
    g.time = w.time;
    g.mean_x1 = w.mean_x1;
    g.mean_x2 = w.mean_x2;
    g.phi = w.phi;
    g.psi = w.psi;
    g.chi = w.chi;
    g.b_norm = w.b_norm;
    g.divisor = w.divisor;
    g.norm = w.norm;
    return g;
}

int resolve_config(const lindho::ParamsConfig& cfg, lho_param_values* out, int* source) {
    *out = from_values(lindho::resolve(cfg));
    if (source != nullptr) *source = static_cast<int>(cfg.source);
    return LHO_OK;
}

}  // namespace

extern "C" {

const char* lho_last_error(void) { return g_last_error.c_str(); }

const char* lho_status_name(int status) {
    if (status == LHO_OK) return "Ok";
    if (status >= 1 && status <= 12) {
        static std::string names[13];
        auto& slot = names[status];
        if (slot.empty())
            slot = std::string(lindho::error_code_name(static_cast<lindho::ErrorCode>(status)));
        return slot.c_str();
    }
    return "InternalError";
}

const char* lho_version(void) { return "0.1.0"; }

int lho_resolve_json(const char* json_text, lho_param_values* out, int* source) {
    return guard([&] {
        require(json_text, "json_text");
        require(out, "out");
        resolve_config(lindho::parse_params_config(json_text), out, source);
    });
}

int lho_resolve_file(const char* path, lho_param_values* out, int* source) {
    return guard([&] {
        require(path, "path");
        require(out, "out");
        resolve_config(lindho::load_params_config(path), out, source);
    });
}

int lho_validate(const lho_param_values* values, lho_validation* out) {
    return guard([&] {
        require(values, "values");
        require(out, "out");
        const lindho::ValidationReport r = lindho::validate(to_values(*values));
        out->momentum_diffusion_ok = r.momentum_diffusion.ok;
        out->position_diffusion_ok = r.position_diffusion.ok;
        out->uncertainty_ok = r.uncertainty.ok;
        out->momentum_diffusion_margin = r.momentum_diffusion.margin;
        out->position_diffusion_margin = r.position_diffusion.margin;
        out->uncertainty_margin = r.uncertainty.margin;
        out->pass = r.pass();
    });
}

int lho_params_create(const lho_param_values* values, lho_params** out) {
    return guard([&] {
        require(values, "values");
        require(out, "out");
        *out = new lho_params{lindho::OscillatorParams::make(to_values(*values))};
    });
}

int lho_params_from_json(const char* json_text, lho_params** out) {
    return guard([&] {
        require(json_text, "json_text");
        require(out, "out");
        const lindho::ParamValues v = lindho::resolve(lindho::parse_params_config(json_text));
        *out = new lho_params{lindho::OscillatorParams::make(v)};
    });
}

int lho_params_from_file(const char* path, lho_params** out) {
    return guard([&] {
        require(path, "path");
        require(out, "out");
        const lindho::ParamValues v = lindho::resolve(lindho::load_params_config(path));
        *out = new lho_params{lindho::OscillatorParams::make(v)};
    });
}

void lho_params_destroy(lho_params* params) { delete params; }

int lho_params_values(const lho_params* params, lho_param_values* out) {
    return guard([&] {
        require(params, "params");
        require(out, "out");
        *out = from_values(params->value.values());
    });
}

int lho_params_derived(const lho_params* params, lho_derived* out) {
    return guard([&] {
        require(params, "params");
        require(out, "out");
        const lindho::DerivedCoefficients d = lindho::derive(params->value);
        out->d1 = to_c(d.d1);
        out->d2 = d.d2;
        switch (d.regime) {
            case lindho::Regime::kOverdamped: out->regime = LHO_REGIME_OVERDAMPED; break;
            case lindho::Regime::kUnderdamped: out->regime = LHO_REGIME_UNDERDAMPED; break;
            case lindho::Regime::kCritical: out->regime = LHO_REGIME_CRITICAL; break;
        }
        out->nu = d.nu;
        out->big_omega = d.big_omega;
        out->d_const = d.d_const;
    });
}

int lho_thermal_coefficients(double lambda, double mu, double mass, double omega, double hbar,
                             double kT, double* d_pp, double* d_qq, double* d_pq) {
    return guard([&] {
        require(d_pp, "d_pp");
        require(d_qq, "d_qq");
        require(d_pq, "d_pq");
        const auto d = lindho::thermal_coefficients(lambda, mu, mass, omega, hbar, kT);
        *d_pp = d.d_pp;
        *d_qq = d.d_qq;
        *d_pq = d.d_pq;
    });
}

int lho_moments_coherent(lho_complex alpha, lho_moments* out) {
    return guard([&] {
        require(out, "out");
        *out = from_state(lindho::MomentState::coherent(to_cplx(alpha)));
    });
}

int lho_moments_evolve(const lho_params* params, const lho_moments* initial, double t,
                       lho_moments* out) {
    return guard([&] {
        require(params, "params");
        require(initial, "initial");
        require(out, "out");
        *out = from_state(lindho::evolve(to_state(*initial), t, params->value));
    });
}

int lho_quadratures_of(const lho_params* params, const lho_moments* state, lho_quadratures* out) {
    return guard([&] {
        require(params, "params");
        require(state, "state");
        require(out, "out");
        const auto q = lindho::quadratures(to_state(*state), params->value);
        *out = {q.mean_q, q.mean_p, q.var_q, q.var_p, q.cov_qp};
    });
}

int lho_asymptotic_number(const lho_params* params, double* out) {
    return guard([&] {
        require(params, "params");
        require(out, "out");
        *out = lindho::asymptotic_number(params->value);
    });
}

int lho_sigma_t(const lho_params* params, double t, lho_sigma* out) {
    return guard([&] {
        require(params, "params");
        require(out, "out");
        const auto s = lindho::sigma_t(t, params->value);
        *out = {to_c(s.s11), to_c(s.s22), s.s12, s.det, s.time};
    });
}

int lho_rho_matrix(const lho_params* params, int dim, double t, lho_complex alpha0, int bracket,
                   lho_complex* elements, lho_rho_info* info) {
    return guard([&] {
        require(params, "params");
        require(elements, "elements");
        const auto rho =
            lindho::rho_matrix(dim, t, to_cplx(alpha0), params->value, to_bracket(bracket));
        export_rho(rho, elements, info);
    });
}

int lho_rho_element(const lho_params* params, int m, int n, double t, lho_complex alpha0,
                    int bracket, lho_complex* out) {
    return guard([&] {
        require(params, "params");
        require(out, "out");
        *out = to_c(lindho::rho_element(m, n, t, to_cplx(alpha0), params->value,
                                        to_bracket(bracket)));
    });
}

int lho_generating_function(const lho_params* params, lho_complex x, lho_complex y, double t,
                            lho_complex alpha0, lho_complex* out) {
    return guard([&] {
        require(params, "params");
        require(out, "out");
        *out = to_c(lindho::generating_function(to_cplx(x), to_cplx(y), t, to_cplx(alpha0),
                                                params->value));
    });
}

int lho_wigner_solve(const lho_params* params, int kind, double x10, double x20, double t,
                     lho_wigner* out) {
    return guard([&] {
        require(params, "params");
        require(out, "out");
        if (kind == LHO_WIGNER_WAVEPACKET)
            *out = from_wigner(lindho::wavepacket_solution(x10, x20, t, params->value));
        else if (kind == LHO_WIGNER_DELTA)
            *out = from_wigner(lindho::delta_solution(x10, x20, t, params->value));
        else
            throw lindho::Error(lindho::ErrorCode::kInvalidInput,
                                "kind must be wave packet or delta");
    });
}

int lho_steady_state(const lho_params* params, lho_steady* out) {
    return guard([&] {
        require(params, "params");
        require(out, "out");
        const auto s = lindho::steady_state(params->value);
        out->s11 = s.closed_form.s11;
        out->s22 = s.closed_form.s22;
        out->s12 = s.closed_form.s12;
        out->lyapunov_s11 = s.lyapunov.s11;
        out->lyapunov_s22 = s.lyapunov.s22;
        out->lyapunov_s12 = s.lyapunov.s12;
        out->agreement = s.agreement;
        out->residual = s.residual;
        out->wigner = from_wigner(s.wigner);
    });
}

double lho_wigner_value(const lho_wigner* w, double x1, double x2) {
    if (w == nullptr) return std::nan("");
    try {
        return to_wigner(*w)(x1, x2);
    } catch (...) {
        return std::nan("");
    }
}

int lho_wigner_grid(const lho_wigner* w, const lho_grid* grid, double* values, double* mass) {
    return guard([&] {
        require(w, "w");
        require(grid, "grid");
        require(values, "values");
        const lindho::WignerGrid g{grid->x1_min, grid->x1_max, grid->x2_min,
                                   grid->x2_max, grid->n1,     grid->n2};
        const auto out = lindho::evaluate_grid(to_wigner(*w), g);
        std::copy(out.values.begin(), out.values.end(), values);
        if (mass != nullptr) *mass = out.mass;
    });
}

int lho_wigner_mass(const lho_wigner* w, double tol, double* mass) {
    return guard([&] {
        require(w, "w");
        require(mass, "mass");
        *mass = lindho::adaptive_mass(to_wigner(*w), tol);
    });
}

int lho_integrator_defaults(const lho_params* params, double t_final, int dim,
                            lho_integrator_config* out) {
    return guard([&] {
        require(params, "params");
        require(out, "out");
        const auto cfg = lindho::IntegratorConfig::defaults(params->value, t_final, dim);
        *out = {cfg.dt, cfg.t_final, cfg.dim};
    });
}

int lho_oracle_create(const lho_params* params, const lho_initial_state* initial,
                      const lho_integrator_config* config, lho_oracle** out) {
    return guard([&] {
        require(params, "params");
        require(initial, "initial");
        require(config, "config");
        require(out, "out");
        lindho::InitialState s;
        switch (initial->kind) {
            case LHO_INITIAL_COHERENT:
                s = lindho::InitialState::coherent(to_cplx(initial->alpha0));
                break;
            case LHO_INITIAL_THERMAL: s = lindho::InitialState::thermal(initial->mean); break;
            case LHO_INITIAL_FOCK: s = lindho::InitialState::fock(initial->phonons); break;
            case LHO_INITIAL_POISSON:
                s = lindho::InitialState::poisson_diagonal(initial->mean);
                break;
            default:
                throw lindho::Error(lindho::ErrorCode::kInvalidInput, "unknown initial state");
        }
        lindho::IntegratorConfig cfg;
        cfg.dt = config->dt;
        cfg.t_final = config->t_final;
        cfg.dim = config->dim;
        *out = new lho_oracle{lindho::MasterEquationIntegrator(params->value, s, cfg)};
    });
}

void lho_oracle_destroy(lho_oracle* oracle) { delete oracle; }

int lho_oracle_advance(lho_oracle* oracle, double t) {
    return guard([&] {
        require(oracle, "oracle");
        oracle->integrator.advance_to(t);
    });
}

int lho_oracle_moments(const lho_oracle* oracle, lho_moments* out) {
    return guard([&] {
        require(oracle, "oracle");
        require(out, "out");
        lindho::MomentState m = lindho::expectations(oracle->integrator.rho());
        m.time = oracle->integrator.time();
        *out = from_state(m);
    });
}

int lho_oracle_rho(const lho_oracle* oracle, lho_complex* elements, lho_rho_info* info) {
    return guard([&] {
        require(oracle, "oracle");
        require(elements, "elements");
        export_rho(oracle->integrator.snapshot(), elements, info);
    });
}

int lho_oracle_health_of(const lho_oracle* oracle, lho_oracle_health* out) {
    return guard([&] {
        require(oracle, "oracle");
        require(out, "out");
        const auto& h = oracle->integrator.health();
        *out = {oracle->integrator.time(), h.max_trace_drift, h.max_hermiticity_residual, h.steps};
    });
}

int lho_oracle_min_eigenvalue(const lho_oracle* oracle, double* out) {
    return guard([&] {
        require(oracle, "oracle");
        require(out, "out");
        *out = lindho::min_eigenvalue(oracle->integrator.rho());
    });
}

}  // extern "C"
