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

#include "lindho/params.hpp"

#include <cmath>
#include <sstream>

#include "lindho/errors.hpp"

namespace lindho {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::kInvalidInput: return "InvalidInput";
        case ErrorCode::kConstraintViolation: return "ConstraintViolation";
        case ErrorCode::kInvalidRegime: return "InvalidRegime";
        case ErrorCode::kDegenerateInput: return "DegenerateInput";
        case ErrorCode::kDegenerateRegime: return "DegenerateRegime";
        case ErrorCode::kNoStationaryState: return "NoStationaryState";
        case ErrorCode::kUnsupportedRegime: return "UnsupportedRegime";
        case ErrorCode::kPRepresentationUnavailable: return "PRepresentationUnavailable";
        case ErrorCode::kGenFunctionDiverged: return "GenFunctionDiverged";
        case ErrorCode::kSingularInitialCondition: return "SingularInitialCondition";
        case ErrorCode::kTruncationBreach: return "TruncationBreach";
        case ErrorCode::kConfigError: return "ConfigError";
    }
    return "Unknown";
}

std::string_view regime_name(Regime regime) noexcept {
    switch (regime) {
        case Regime::kOverdamped: return "overdamped";
        case Regime::kUnderdamped: return "underdamped";
        case Regime::kCritical: return "critical";
    }
    return "unknown";
}

namespace {

bool all_finite(const ParamValues& v) {
    for (double x : {v.hbar, v.mass, v.omega, v.lambda, v.mu, v.d_pp, v.d_qq, v.d_pq}) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

}  // namespace

std::string ValidationReport::failures() const {
    std::ostringstream out;
    const char* sep = "";
    if (!momentum_diffusion.ok) {
        out << sep << "d_pp > 0 violated (margin " << momentum_diffusion.margin << ")";
        sep = "; ";
    }
    if (!position_diffusion.ok) {
        out << sep << "d_qq > 0 violated (margin " << position_diffusion.margin << ")";
        sep = "; ";
    }
    if (!uncertainty.ok) {
        out << sep << "d_pp*d_qq - d_pq^2 >= (lambda*hbar)^2/4 violated (margin "
            << uncertainty.margin << ")";
    }
    return out.str();
}

ValidationReport validate(const ParamValues& v) {
    if (!all_finite(v)) {
        throw Error(ErrorCode::kInvalidInput, "parameter values must be finite");
    }
    ValidationReport report;
    report.momentum_diffusion = {v.d_pp > 0.0, v.d_pp};
    report.position_diffusion = {v.d_qq > 0.0, v.d_qq};

    const double lhs = v.d_pp * v.d_qq - v.d_pq * v.d_pq;
    const double bound = 0.25 * v.lambda * v.lambda * v.hbar * v.hbar;
    const double scale = std::max({std::abs(v.d_pp * v.d_qq), v.d_pq * v.d_pq, bound});
    report.uncertainty.margin = lhs - bound;
    report.uncertainty.ok = report.uncertainty.margin >= -kConstraintSlack * scale;
    return report;
}

OscillatorParams OscillatorParams::make(const ParamValues& v) {
    if (!all_finite(v)) {
        throw Error(ErrorCode::kInvalidInput, "parameter values must be finite");
    }
    if (!(v.hbar > 0.0) || !(v.mass > 0.0) || !(v.omega > 0.0)) {
        throw Error(ErrorCode::kInvalidInput, "hbar, mass and omega must be positive");
    }
    if (!(v.lambda > 0.0)) {
        throw Error(ErrorCode::kConstraintViolation, "friction rate lambda must be positive");
    }
    if (v.mu < 0.0) {
        throw Error(ErrorCode::kConstraintViolation, "mu must be non-negative");
    }
    const ValidationReport report = validate(v);
    if (!report.pass()) {
        throw Error(ErrorCode::kConstraintViolation, report.failures());
    }
    return OscillatorParams(v);
}

DiffusionCoefficients thermal_coefficients(double lambda, double mu, double mass,
                                           double omega, double hbar, double kT) {
    for (double x : {lambda, mu, mass, omega, hbar, kT}) {
        if (!std::isfinite(x)) {
            throw Error(ErrorCode::kInvalidInput, "thermal parameters must be finite");
        }
    }
    if (!(kT > 0.0) || !(mass > 0.0) || !(omega > 0.0) || !(hbar > 0.0)) {
        throw Error(ErrorCode::kInvalidInput, "kT, mass, omega and hbar must be positive");
    }
    if (mu < 0.0 || !(lambda > mu)) {
        throw Error(ErrorCode::kInvalidRegime,
                    "thermal coefficients need lambda > mu >= 0 (d_qq would not be positive)");
    }
    const double coth = 1.0 / std::tanh(hbar * omega / (2.0 * kT));
    DiffusionCoefficients d;
    d.d_pp = 0.5 * (lambda + mu) * hbar * mass * omega * coth;
    d.d_qq = 0.5 * (lambda - mu) * hbar / (mass * omega) * coth;
    d.d_pq = 0.0;
    return d;
}

MicroCoefficients micro_coefficients(const LindbladMicroParams& m, double hbar) {
    const cplx overlap = std::conj(m.a1) * m.b1 + std::conj(m.a2) * m.b2;
    MicroCoefficients c;
    c.d_qq = 0.5 * hbar * (std::norm(m.a1) + std::norm(m.a2));
    c.d_pp = 0.5 * hbar * (std::norm(m.b1) + std::norm(m.b2));
    c.d_pq = -0.5 * hbar * overlap.real();
    c.lambda = -overlap.imag();
    return c;
}

MicroCoefficients from_micro(const LindbladMicroParams& m, double hbar) {
    if (m.a1 == cplx{} && m.b1 == cplx{} && m.a2 == cplx{} && m.b2 == cplx{}) {
        throw Error(ErrorCode::kDegenerateInput, "all Lindblad amplitudes are zero");
    }
    const MicroCoefficients c = micro_coefficients(m, hbar);
    if (!(c.lambda > 0.0)) {
        throw Error(ErrorCode::kDegenerateInput,
                    "Lindblad amplitudes give non-positive friction lambda = " +
                        std::to_string(c.lambda));
    }
    return c;
}

DerivedCoefficients derive(const OscillatorParams& p) {
    const double mw = p.mass() * p.omega();
    DerivedCoefficients d;
    d.d1 = cplx(mw * p.d_qq() - p.d_pp() / mw, 2.0 * p.d_pq()) / p.hbar();
    d.d2 = (mw * p.d_qq() + p.d_pp() / mw) / p.hbar();
    d.d_const = ((p.lambda() + p.mu()) * mw * p.d_qq() -
                 (p.lambda() - p.mu()) * p.d_pp() / mw + 2.0 * p.omega() * p.d_pq()) /
                p.hbar();

    const double gap = p.mu() - p.omega();
    if (std::abs(gap) <= kCriticalTolerance * p.omega()) {
        d.regime = Regime::kCritical;
    } else if (gap > 0.0) {
        d.regime = Regime::kOverdamped;
        d.nu = std::sqrt(p.mu() * p.mu() - p.omega() * p.omega());
    } else {
        d.regime = Regime::kUnderdamped;
        d.big_omega = std::sqrt(p.omega() * p.omega() - p.mu() * p.mu());
    }
    return d;
}

Oscillation oscillation(const DerivedCoefficients& d, double t) {
    switch (d.regime) {
        case Regime::kUnderdamped:
            return {std::cos(d.big_omega * t), std::sin(d.big_omega * t) / d.big_omega};
        case Regime::kOverdamped:
            return {std::cosh(d.nu * t), std::sinh(d.nu * t) / d.nu};
        case Regime::kCritical:
            break;
    }
    return {1.0, t};
}

}  // namespace lindho
