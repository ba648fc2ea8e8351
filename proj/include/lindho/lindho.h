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

#ifndef LINDHO_LINDHO_H_
#define LINDHO_LINDHO_H_

// C interface to the damped-oscillator library. Every function returns an
// lho_status; on failure lho_last_error() describes the problem. Handles are
// opaque and owned by the caller, who releases them with the matching
// *_destroy function. Matrices are dense and row-major.

#include <stddef.h>

#if defined(_WIN32)
#define LHO_API __declspec(dllexport)
#else
#define LHO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lho_status {
    LHO_OK = 0,
    LHO_INVALID_INPUT = 1,
    LHO_CONSTRAINT_VIOLATION = 2,
    LHO_INVALID_REGIME = 3,
    LHO_DEGENERATE_INPUT = 4,
    LHO_DEGENERATE_REGIME = 5,
    LHO_NO_STATIONARY_STATE = 6,
    LHO_UNSUPPORTED_REGIME = 7,
    LHO_P_REPRESENTATION_UNAVAILABLE = 8,
    LHO_GEN_FUNCTION_DIVERGED = 9,
    LHO_SINGULAR_INITIAL_CONDITION = 10,
    LHO_TRUNCATION_BREACH = 11,
    LHO_CONFIG_ERROR = 12,
    LHO_INTERNAL_ERROR = 99
} lho_status;

typedef struct lho_complex {
    double re;
    double im;
} lho_complex;

// Thread-local message for the most recent failure on this thread.
LHO_API const char* lho_last_error(void);
LHO_API const char* lho_status_name(int status);
LHO_API const char* lho_version(void);

// ---------------------------------------------------------------- params

typedef struct lho_param_values {
    double hbar;
    double mass;
    double omega;
    double lambda;
    double mu;
    double d_pp;
    double d_qq;
    double d_pq;
} lho_param_values;

typedef enum lho_param_source {
    LHO_SOURCE_DIRECT = 0,
    LHO_SOURCE_THERMAL = 1,
    LHO_SOURCE_MICRO = 2
} lho_param_source;

typedef struct lho_validation {
    int momentum_diffusion_ok;  // d_pp > 0
    int position_diffusion_ok;  // d_qq > 0
    int uncertainty_ok;         // d_pp d_qq - d_pq^2 >= lambda^2 hbar^2 / 4
    double momentum_diffusion_margin;
    double position_diffusion_margin;
    double uncertainty_margin;
    int pass;
} lho_validation;

typedef enum lho_regime {
    LHO_REGIME_OVERDAMPED = 0,
    LHO_REGIME_UNDERDAMPED = 1,
    LHO_REGIME_CRITICAL = 2
} lho_regime;

typedef struct lho_derived {
    lho_complex d1;
    double d2;
    int regime;  // lho_regime
    double nu;
    double big_omega;
    double d_const;
} lho_derived;

typedef struct lho_params lho_params;

// Parses a configuration document and fills in the diffusion coefficients
// without checking the constraints. `source` may be NULL.
LHO_API int lho_resolve_json(const char* json_text, lho_param_values* out, int* source);
LHO_API int lho_resolve_file(const char* path, lho_param_values* out, int* source);

// Raw constraint report; fails only for non-finite input.
LHO_API int lho_validate(const lho_param_values* values, lho_validation* out);

LHO_API int lho_params_create(const lho_param_values* values, lho_params** out);
LHO_API int lho_params_from_json(const char* json_text, lho_params** out);
LHO_API int lho_params_from_file(const char* path, lho_params** out);
LHO_API void lho_params_destroy(lho_params* params);
LHO_API int lho_params_values(const lho_params* params, lho_param_values* out);
LHO_API int lho_params_derived(const lho_params* params, lho_derived* out);

LHO_API int lho_thermal_coefficients(double lambda, double mu, double mass, double omega,
                                     double hbar, double kT, double* d_pp, double* d_qq,
                                     double* d_pq);

// --------------------------------------------------------------- moments

typedef struct lho_moments {
    lho_complex exp_a;
    lho_complex exp_adag;
    lho_complex exp_a2;
    lho_complex exp_adag2;
    double exp_n;
    double time;
} lho_moments;

typedef struct lho_quadratures {
    double mean_q;
    double mean_p;
    double var_q;
    double var_p;
    double cov_qp;
} lho_quadratures;

LHO_API int lho_moments_coherent(lho_complex alpha, lho_moments* out);
LHO_API int lho_moments_evolve(const lho_params* params, const lho_moments* initial, double t,
                               lho_moments* out);
LHO_API int lho_quadratures_of(const lho_params* params, const lho_moments* state,
                               lho_quadratures* out);
LHO_API int lho_asymptotic_number(const lho_params* params, double* out);

// -------------------------------------------------------- density matrix

typedef enum lho_bracket {
    LHO_BRACKET_SYMMETRIC = 0,
    LHO_BRACKET_ASYMMETRIC = 1
} lho_bracket;

typedef struct lho_rho_info {
    int dim;
    double time;
    double trace_deficit;
    double hermiticity_residual;
    int low_precision_count;
} lho_rho_info;

typedef struct lho_sigma {
    lho_complex s11;
    lho_complex s22;
    double s12;
    double det;
    double time;
} lho_sigma;

LHO_API int lho_sigma_t(const lho_params* params, double t, lho_sigma* out);

// `elements` must hold dim * dim values; `info` may be NULL.
LHO_API int lho_rho_matrix(const lho_params* params, int dim, double t, lho_complex alpha0,
                           int bracket, lho_complex* elements, lho_rho_info* info);
LHO_API int lho_rho_element(const lho_params* params, int m, int n, double t, lho_complex alpha0,
                            int bracket, lho_complex* out);
LHO_API int lho_generating_function(const lho_params* params, lho_complex x, lho_complex y,
                                    double t, lho_complex alpha0, lho_complex* out);

// ---------------------------------------------------------------- wigner

typedef enum lho_wigner_kind {
    LHO_WIGNER_WAVEPACKET = 0,
    LHO_WIGNER_DELTA = 1,
    LHO_WIGNER_STEADY = 2
} lho_wigner_kind;

// W = norm exp(-(phi dx1^2 + psi dx2^2 + chi dx1 dx2) / divisor).
typedef struct lho_wigner {
    int kind;
    double time;
    double mean_x1;
    double mean_x2;
    double phi;
    double psi;
    double chi;
    double b_norm;
    double divisor;
    double norm;
    double cov11;
    double cov12;
    double cov22;
} lho_wigner;

typedef struct lho_grid {
    double x1_min;
    double x1_max;
    double x2_min;
    double x2_max;
    int n1;
    int n2;
} lho_grid;

typedef struct lho_steady {
    double s11;
    double s22;
    double s12;
    double lyapunov_s11;
    double lyapunov_s22;
    double lyapunov_s12;
    double agreement;
    double residual;
    lho_wigner wigner;
} lho_steady;

// kind is LHO_WIGNER_WAVEPACKET or LHO_WIGNER_DELTA.
LHO_API int lho_wigner_solve(const lho_params* params, int kind, double x10, double x20, double t,
                             lho_wigner* out);
LHO_API int lho_steady_state(const lho_params* params, lho_steady* out);
LHO_API double lho_wigner_value(const lho_wigner* w, double x1, double x2);
// `values` must hold n1 * n2 entries (row index along x1); `mass` may be NULL.
LHO_API int lho_wigner_grid(const lho_wigner* w, const lho_grid* grid, double* values,
                            double* mass);
LHO_API int lho_wigner_mass(const lho_wigner* w, double tol, double* mass);

// ---------------------------------------------------------------- oracle

typedef enum lho_initial_kind {
    LHO_INITIAL_COHERENT = 0,
    LHO_INITIAL_THERMAL = 1,
    LHO_INITIAL_FOCK = 2,
    LHO_INITIAL_POISSON = 3
} lho_initial_kind;

typedef struct lho_initial_state {
    int kind;
    lho_complex alpha0;  // coherent
    double mean;         // thermal, Poisson
    int phonons;         // Fock
} lho_initial_state;

typedef struct lho_integrator_config {
    double dt;
    double t_final;
    int dim;
} lho_integrator_config;

typedef struct lho_oracle_health {
    double time;
    double max_trace_drift;
    double max_hermiticity_residual;
    long steps;
} lho_oracle_health;

typedef struct lho_oracle lho_oracle;

LHO_API int lho_integrator_defaults(const lho_params* params, double t_final, int dim,
                                    lho_integrator_config* out);
LHO_API int lho_oracle_create(const lho_params* params, const lho_initial_state* initial,
                              const lho_integrator_config* config, lho_oracle** out);
LHO_API void lho_oracle_destroy(lho_oracle* oracle);
LHO_API int lho_oracle_advance(lho_oracle* oracle, double t);
LHO_API int lho_oracle_moments(const lho_oracle* oracle, lho_moments* out);
LHO_API int lho_oracle_rho(const lho_oracle* oracle, lho_complex* elements, lho_rho_info* info);
LHO_API int lho_oracle_health_of(const lho_oracle* oracle, lho_oracle_health* out);
LHO_API int lho_oracle_min_eigenvalue(const lho_oracle* oracle, double* out);

#ifdef __cplusplus
}
#endif

#endif  // LINDHO_LINDHO_H_
