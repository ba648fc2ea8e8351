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

#include "lindho/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "lindho/errors.hpp"

namespace lindho {

namespace {

constexpr cplx kI{0.0, 1.0};

Eigen::Matrix2cd as_matrix(const PropagatorB& b) {
    Eigen::Matrix2cd m;
    m << b.b11, b.b12, b.b21, b.b22;
    return m;
}

SigmaCovariance from_matrix(const Eigen::Matrix2cd& s, double t) {
    SigmaCovariance out;
    out.s11 = s(0, 0);
    out.s22 = s(1, 1);
    out.s12 = 0.5 * (s(0, 1) + s(1, 0)).real();
    out.det = (out.s11 * out.s22).real() - out.s12 * out.s12;
    out.time = t;
    return out;
}

Eigen::Matrix2cd to_matrix(const SigmaCovariance& s) {
    Eigen::Matrix2cd m;
    m << s.s11, s.s12, s.s12, s.s22;
    return m;
}

// Neumaier-compensated complex accumulator.
class CompensatedSum {
   public:
    void add(long double re, long double im) {
        accumulate(re_sum_, re_comp_, re);
        accumulate(im_sum_, im_comp_, im);
        magnitude_ += std::hypot(re, im);
    }
    cplx value() const {
        return {static_cast<double>(re_sum_ + re_comp_), static_cast<double>(im_sum_ + im_comp_)};
    }
    long double magnitude() const { return magnitude_; }

   private:
    static void accumulate(long double& sum, long double& comp, long double x) {
        const long double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    long double re_sum_ = 0, re_comp_ = 0, im_sum_ = 0, im_comp_ = 0, magnitude_ = 0;
};

}  // namespace

PropagatorB propagator(double t, const OscillatorParams& p) {
    const DerivedCoefficients d = derive(p);
    const Oscillation osc = oscillation(d, t);
    const double env = std::exp(-p.lambda() * t);
    PropagatorB b;
    b.b11 = env * (osc.even - kI * p.omega() * osc.odd);
    b.b22 = std::conj(b.b11);
    b.b12 = p.mu() * osc.odd * env;
    b.b21 = b.b12;
    b.time = t;
    return b;
}

DriftDiffusionP drift_diffusion_p(const OscillatorParams& p) {
    const DerivedCoefficients d = derive(p);
    DriftDiffusionP dd;
    dd.c_matrix << cplx(p.lambda(), p.omega()), -p.mu(), -p.mu(), cplx(p.lambda(), -p.omega());
    dd.q_matrix << d.d1 + p.mu(), d.d2 - p.lambda(), d.d2 - p.lambda(), std::conj(d.d1) + p.mu();
    return dd;
}

bool p_diffusion_is_positive(const DriftDiffusionP& dd) {
    const double q12 = dd.q_matrix(0, 1).real();
    const double q11 = std::abs(dd.q_matrix(0, 0));
    return q12 >= q11 * (1.0 - 1e-12) && q12 >= 0.0;
}

SigmaCovariance sigma_infinity(const OscillatorParams& p) {
    const double gap = p.stability_gap();
    if (!(gap > 0.0)) {
        throw Error(ErrorCode::kNoStationaryState,
                    "unstable P drift (lambda^2 + omega^2 - mu^2 <= 0)");
    }
    const DriftDiffusionP dd = drift_diffusion_p(p);
    const cplx c1 = dd.c_matrix(0, 0);
    const cplx c2 = dd.c_matrix(1, 1);
    const cplx q11 = dd.q_matrix(0, 0);
    const cplx q22 = dd.q_matrix(1, 1);
    const double q12 = dd.q_matrix(0, 1).real();
    const double lam = p.lambda();
    const double mu = p.mu();
    const double rot = lam * lam + p.omega() * p.omega();

    // Diagonal entries of the Lyapunov equation give s11 and s22 in terms of
    // s12; the off-diagonal entry then closes on s12.
    const cplx source = q12 + 0.5 * mu * (q11 / c1 + q22 / c2);
    SigmaCovariance s;
    s.s12 = (source * rot / (2.0 * lam * gap)).real();
    s.s11 = (q11 + 2.0 * mu * s.s12) / (2.0 * c1);
    s.s22 = (q22 + 2.0 * mu * s.s12) / (2.0 * c2);
    s.det = (s.s11 * s.s22).real() - s.s12 * s.s12;
    s.time = std::numeric_limits<double>::infinity();
    return s;
}

SigmaCovariance sigma_t(double t, const OscillatorParams& p) {
    const Eigen::Matrix2cd inf = to_matrix(sigma_infinity(p));
    const Eigen::Matrix2cd b = as_matrix(propagator(t, p));
    const Eigen::Matrix2cd s = inf - b * inf * b.transpose();
    return from_matrix(s, t);
}

double p_green(cplx alpha, double t, cplx alpha0, const OscillatorParams& p) {
    if (!p_diffusion_is_positive(drift_diffusion_p(p))) {
        throw Error(ErrorCode::kPRepresentationUnavailable,
                    "P-representation diffusion is not positive semidefinite");
    }
    const SigmaCovariance s = sigma_t(t, p);
    // det(real covariance) = -det / 4
    if (!(-s.det > 1e-14 * std::max(1e-300, s.s12 * s.s12))) {
        throw Error(ErrorCode::kSingularInitialCondition,
                    "P function is singular (covariance not positive definite)");
    }
    const PropagatorB b = propagator(t, p);
    const cplx mean = b.b11 * alpha0 + b.b12 * std::conj(alpha0);
    const cplx delta = alpha - mean;
    const cplx quad = s.s22 * delta * delta + s.s11 * std::conj(delta) * std::conj(delta) -
                      2.0 * s.s12 * std::norm(delta);
    const double exponent = -(quad.real()) / (2.0 * s.det);
    return std::exp(exponent) / (std::numbers::pi * std::sqrt(-s.det));
}

GenFunctionParams gen_function_params(double t, cplx alpha0, const OscillatorParams& p) {
    const SigmaCovariance s = sigma_t(t, p);
    const PropagatorB b = propagator(t, p);

    // Convergence of the Gaussian integral with the induced coefficients of
    // -a|z|^2 + e z^2 + f conj(z)^2: requires Re a > |conj(e) + f|.
    const double scale = std::max(1.0, s.s12 * s.s12 + std::norm(s.s11));
    if (std::abs(s.det) > 1e-13 * scale) {
        const double a = 1.0 - s.s12 / s.det;
        const cplx e = -s.s22 / (2.0 * s.det);
        const cplx f = -s.s11 / (2.0 * s.det);
        const double rhs = std::abs(std::conj(e) + f);
        if (!(a > rhs)) {
            std::ostringstream msg;
            msg << "generating-function integral diverges: Re a = " << a
                << " <= |conj(e) + f| = " << rhs;
            throw Error(ErrorCode::kGenFunctionDiverged, msg.str());
        }
    }

    GenFunctionParams g;
    g.alpha_bar = b.b11 * alpha0 + b.b12 * std::conj(alpha0);
    g.sigma.s11 = 2.0 * s.s11;
    g.sigma.s22 = 2.0 * s.s22;
    g.sigma.s12 = 2.0 * s.s12;
    g.sigma.det = 4.0 * s.det;
    g.sigma.time = t;
    g.a_denom = g.sigma.det - 4.0 * (g.sigma.s12 + 1.0);
    if (!(g.a_denom < 0.0)) {
        std::ostringstream msg;
        msg << "generating-function denominator A = " << g.a_denom << " is not negative";
        throw Error(ErrorCode::kGenFunctionDiverged, msg.str());
    }
    return g;
}

cplx generating_function(cplx x, cplx y, const GenFunctionParams& g) {
    const SigmaCovariance& s = g.sigma;
    const cplx u = x - std::conj(g.alpha_bar);
    const cplx v = y - g.alpha_bar;
    const cplx bracket = s.s11 * u * u + s.s22 * v * v - 2.0 * (s.s12 + 2.0) * u * v;
    return 2.0 / std::sqrt(std::abs(g.a_denom)) * std::exp(x * y - bracket / g.a_denom);
}

cplx generating_function(cplx x, cplx y, double t, cplx alpha0, const OscillatorParams& p) {
    return generating_function(x, y, gen_function_params(t, alpha0, p));
}

RhoElement rho_element_detail(int m, int n, const GenFunctionParams& g, BracketCoefficient variant) {
    if (m < 0 || n < 0) {
        throw Error(ErrorCode::kInvalidInput, "Fock indices must be non-negative");
    }
    const SigmaCovariance& s = g.sigma;
    const double a = g.a_denom;
    const cplx ab = g.alpha_bar;
    const cplx abc = std::conj(ab);
    const double column_factor = variant == BracketCoefficient::kAsymmetric ? 2.0 : 1.0;

    // Taylor coefficients of the exponent of F in x^2, y^2, xy, x, y.
    const cplx bases[5] = {
        -s.s11 / a,
        -s.s22 / a,
        cplx(s.det - 2.0 * s.s12) / a,
        2.0 * (s.s11 * abc - (s.s12 + 2.0) * ab) / a,
        2.0 * (s.s22 * ab - column_factor * (s.s12 + 2.0) * abc) / a,
    };
    long double log_abs[5];
    long double phase[5];
    bool zero[5];
    for (int i = 0; i < 5; ++i) {
        zero[i] = bases[i] == cplx{};
        log_abs[i] = zero[i] ? 0.0L : std::log(static_cast<long double>(std::abs(bases[i])));
        phase[i] = zero[i] ? 0.0L : std::arg(bases[i]);
    }

    std::vector<long double> log_fact(static_cast<std::size_t>(std::max(m, n)) + 1);
    for (std::size_t k = 0; k < log_fact.size(); ++k) {
        log_fact[k] = std::lgamma(static_cast<long double>(k) + 1.0L);
    }

    const cplx c0 = -(s.s22 * ab * ab + s.s11 * abc * abc - 2.0 * (s.s12 + 2.0) * std::norm(ab)) / a;
    const long double log_pre = std::log(2.0L) - 0.5L * std::log(static_cast<long double>(-a)) +
                                c0.real() + 0.5L * (log_fact[m] + log_fact[n]);
    const long double phase_pre = c0.imag();

    CompensatedSum sum;
    for (int n1 = 0; 2 * n1 <= m; ++n1) {
        for (int n2 = 0; 2 * n2 <= n; ++n2) {
            const int n3_max = std::min(m - 2 * n1, n - 2 * n2);
            for (int n3 = 0; n3 <= n3_max; ++n3) {
                const int powers[5] = {n1, n2, n3, m - 2 * n1 - n3, n - 2 * n2 - n3};
                long double lmag = log_pre;
                long double ph = phase_pre;
                bool vanishes = false;
                for (int i = 0; i < 5; ++i) {
                    if (powers[i] == 0) continue;
                    if (zero[i]) {
                        vanishes = true;
                        break;
                    }
                    lmag += powers[i] * log_abs[i] - log_fact[static_cast<std::size_t>(powers[i])];
                    ph += powers[i] * phase[i];
                }
                if (vanishes) continue;
                const long double mag = std::exp(lmag);
                sum.add(mag * std::cos(ph), mag * std::sin(ph));
            }
        }
    }

    RhoElement out;
    out.value = sum.value();
    const double total = static_cast<double>(sum.magnitude());
    const double result = std::abs(out.value);
    if (total > 0.0) {
        out.cancellation = result > 0.0 ? total / result : std::numeric_limits<double>::infinity();
    }
    out.low_precision = out.cancellation > kLowPrecisionRatio;
    return out;
}

cplx rho_element(int m, int n, double t, cplx alpha0, const OscillatorParams& p,
                 BracketCoefficient variant) {
    return rho_element_detail(m, n, gen_function_params(t, alpha0, p), variant).value;
}

void refresh_diagnostics(FockDensityMatrix& rho) {
    rho.trace_deficit = 1.0 - rho.elements.trace().real();
    double residual = 0.0;
    for (int i = 0; i < rho.dim; ++i) {
        for (int j = i + 1; j < rho.dim; ++j) {
            residual = std::max(residual, std::abs(rho.elements(i, j) - std::conj(rho.elements(j, i))));
        }
        residual = std::max(residual, std::abs(rho.elements(i, i).imag()));
    }
    rho.hermiticity_residual = residual;
}

FockDensityMatrix rho_matrix(int dim, double t, cplx alpha0, const OscillatorParams& p,
                             BracketCoefficient variant) {
    if (dim < 1) {
        throw Error(ErrorCode::kInvalidInput, "dimension must be at least 1");
    }
    const GenFunctionParams g = gen_function_params(t, alpha0, p);
    FockDensityMatrix rho;
    rho.dim = dim;
    rho.time = t;
    rho.elements.resize(dim, dim);
    for (int m = 0; m < dim; ++m) {
        for (int n = 0; n < dim; ++n) {
            const RhoElement e = rho_element_detail(m, n, g, variant);
            rho.elements(m, n) = e.value;
            if (e.low_precision) ++rho.low_precision_count;
        }
    }
    refresh_diagnostics(rho);
    return rho;
}

}  // namespace lindho
