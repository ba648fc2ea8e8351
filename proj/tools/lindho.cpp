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

// Command-line front end. Talks to the library only through the C API.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lindho/lindho.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kDefaultConfig =
    R"({"hbar": 1, "mass": 1, "omega": 1, "lambda": 1, "mu": 0.3, "thermal": {"kT": 1}})";

enum Exit { kOk = 0, kUsage = 2, kPhysics = 3, kNumerical = 4 };

int exit_for(int status) {
    switch (status) {
        case LHO_CONFIG_ERROR:
        case LHO_INVALID_INPUT:
            return kUsage;
        case LHO_CONSTRAINT_VIOLATION:
        case LHO_INVALID_REGIME:
        case LHO_DEGENERATE_INPUT:
        case LHO_DEGENERATE_REGIME:
        case LHO_NO_STATIONARY_STATE:
        case LHO_UNSUPPORTED_REGIME:
        case LHO_P_REPRESENTATION_UNAVAILABLE:
        case LHO_SINGULAR_INITIAL_CONDITION:
            return kPhysics;
        default:
            return kNumerical;
    }
}

struct Failure {
    int status;
    std::string message;
};

void check(int status) {
    if (status != LHO_OK) throw Failure{status, lho_last_error()};
}

std::string num(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// JSON writer that prints every float with 17 significant digits.
void write_json(std::ostream& os, const Json& j, int indent = 0) {
    const std::string pad(indent + 2, ' ');
    const std::string close(indent, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) os << ",\n";
                first = false;
                os << pad << Json(key).dump() << ": ";
                write_json(os, value, indent + 2);
            }
            os << "\n" << close << "}";
            return;
        }
        case Json::value_t::array: {
            // Arrays of scalars stay on one line.
            bool flat = true;
            for (const auto& v : j) flat = flat && !v.is_structured();
            if (flat) {
                os << "[";
                for (size_t i = 0; i < j.size(); ++i) {
                    if (i) os << ", ";
                    write_json(os, j[i], indent);
                }
                os << "]";
                return;
            }
            os << "[\n";
            for (size_t i = 0; i < j.size(); ++i) {
                if (i) os << ",\n";
                os << pad;
                write_json(os, j[i], indent + 2);
            }
            os << "\n" << close << "]";
            return;
        }
        case Json::value_t::number_float:
            os << num(j.get<double>());
            return;
        default:
            os << j.dump();
    }
}

std::string to_text(const Json& j) {
    std::ostringstream os;
    write_json(os, j);
    os << "\n";
    return os.str();
}

Json cjson(lho_complex c) { return Json::array({c.re, c.im}); }

struct Common {
    std::string config_path;
    std::string out_path;
    std::string format;
    std::string report_path;
};

struct Scenario {
    double t1 = 0.0;
    int steps = 0;
    int dim = 0;
    double alpha0_re = 0.8;
    double alpha0_im = 0.0;
    std::string grid;
    std::string kind = "wavepacket";
    std::string quantity = "all";
    std::string csv_path;
    std::string bracket = "symmetric";
    double dt = 0.0;
};

struct Warnings {
    long low_precision = 0;
    long truncation_breach = 0;
    long p_unavailable = 0;
};

struct Run {
    Common common;
    Scenario sc;
    Warnings warnings;
    std::vector<std::string> outputs;
    std::string config_text;

    lho_complex alpha0() const { return {sc.alpha0_re, sc.alpha0_im}; }

    void emit(const std::string& text, const std::string& path) {
        if (path.empty() || path == "-") {
            std::cout << text;
            std::cout.flush();
            outputs.push_back("-");
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Failure{LHO_CONFIG_ERROR, "cannot write " + path};
        f << text;
        outputs.push_back(path);
    }
    void emit(const std::string& text) { emit(text, common.out_path); }
};

std::string read_config(const std::string& path) {
    if (path.empty()) return kDefaultConfig;
    std::ifstream in(path);
    if (!in) throw Failure{LHO_CONFIG_ERROR, "cannot read configuration file " + path};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct ParamsHandle {
    lho_params* p = nullptr;
    explicit ParamsHandle(const std::string& text) { check(lho_params_from_json(text.c_str(), &p)); }
    ~ParamsHandle() { lho_params_destroy(p); }
    ParamsHandle(const ParamsHandle&) = delete;
    ParamsHandle& operator=(const ParamsHandle&) = delete;
};

struct OracleHandle {
    lho_oracle* o = nullptr;
    OracleHandle(const lho_params* p, const lho_initial_state& s, const lho_integrator_config& c) {
        check(lho_oracle_create(p, &s, &c, &o));
    }
    ~OracleHandle() { lho_oracle_destroy(o); }
    OracleHandle(const OracleHandle&) = delete;
    OracleHandle& operator=(const OracleHandle&) = delete;
};

Json params_json(const lho_param_values& v) {
    Json j;
    j["hbar"] = v.hbar;
    j["mass"] = v.mass;
    j["omega"] = v.omega;
    j["lambda"] = v.lambda;
    j["mu"] = v.mu;
    j["d_pp"] = v.d_pp;
    j["d_qq"] = v.d_qq;
    j["d_pq"] = v.d_pq;
    return j;
}

const char* source_label(int s) {
    switch (s) {
        case LHO_SOURCE_THERMAL: return "thermal";
        case LHO_SOURCE_MICRO: return "micro";
        default: return "direct";
    }
}

void require_format(const Run& run, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (run.common.format == a) return;
    throw Failure{LHO_INVALID_INPUT, "format '" + run.common.format + "' not supported here"};
}

// ------------------------------------------------------------ validate

int run_validate(Run& run) {
    require_format(run, {"json"});
    lho_param_values v{};
    int source = 0;
    check(lho_resolve_json(run.config_text.c_str(), &v, &source));
    lho_validation r{};
    check(lho_validate(&v, &r));

    Json out;
    out["source"] = source_label(source);
    out["params"] = params_json(v);
    Json c;
    c["momentum_diffusion"] = {{"ok", bool(r.momentum_diffusion_ok)},
                               {"margin", r.momentum_diffusion_margin}};
    c["position_diffusion"] = {{"ok", bool(r.position_diffusion_ok)},
                               {"margin", r.position_diffusion_margin}};
    c["uncertainty"] = {{"ok", bool(r.uncertainty_ok)}, {"margin", r.uncertainty_margin}};
    out["constraints"] = c;

    Json violations = Json::array();
    if (!r.momentum_diffusion_ok) violations.push_back("momentum_diffusion");
    if (!r.position_diffusion_ok) violations.push_back("position_diffusion");
    if (!r.uncertainty_ok) violations.push_back("uncertainty");

    // Remaining invariants (positive hbar, mass, omega, lambda; mu >= 0)
    // are enforced on construction.
    lho_params* p = nullptr;
    const int made = lho_params_create(&v, &p);
    std::string construction = made == LHO_OK ? "" : lho_last_error();
    lho_params_destroy(p);
    if (made != LHO_OK && violations.empty()) violations.push_back("parameters");

    const bool pass = r.pass && made == LHO_OK;
    out["violations"] = violations;
    out["pass"] = pass;
    int code = kOk;
    if (!pass) {
        const int status = made != LHO_OK ? made : LHO_CONSTRAINT_VIOLATION;
        std::string msg = construction;
        if (msg.empty()) {
            msg = "violated constraint(s):";
            for (const auto& name : violations) msg += " " + name.get<std::string>();
        }
        code = exit_for(status);
        out["error"] = {{"code", lho_status_name(status)}, {"status", status},
                        {"message", msg}, {"exit_code", code}};
    }
    run.emit(to_text(out));
    return code;
}

// ------------------------------------------------------------- moments

int run_moments(Run& run) {
    require_format(run, {"csv", "json"});
    if (!(run.sc.t1 > 0.0)) throw Failure{LHO_INVALID_INPUT, "--t1 must be positive"};
    if (run.sc.steps < 1) throw Failure{LHO_INVALID_INPUT, "--steps must be at least 1"};
    ParamsHandle params(run.config_text);
    lho_moments initial{};
    check(lho_moments_coherent(run.alpha0(), &initial));

    std::ostringstream csv;
    csv << "t,re_a,im_a,re_a2,im_a2,n,mean_q,mean_p,var_q,var_p,cov_qp\n";
    Json rows = Json::array();
    for (int k = 0; k <= run.sc.steps; ++k) {
        const double t = run.sc.t1 * k / run.sc.steps;
        lho_moments m{};
        lho_quadratures q{};
        check(lho_moments_evolve(params.p, &initial, t, &m));
        check(lho_quadratures_of(params.p, &m, &q));
        const double vals[] = {t,        m.exp_a.re, m.exp_a.im, m.exp_a2.re, m.exp_a2.im, m.exp_n,
                               q.mean_q, q.mean_p,   q.var_q,    q.var_p,     q.cov_qp};
        for (size_t i = 0; i < std::size(vals); ++i) csv << (i ? "," : "") << num(vals[i]);
        csv << "\n";
        rows.push_back({{"t", t},
                        {"exp_a", cjson(m.exp_a)},
                        {"exp_a2", cjson(m.exp_a2)},
                        {"exp_n", m.exp_n},
                        {"mean_q", q.mean_q},
                        {"mean_p", q.mean_p},
                        {"var_q", q.var_q},
                        {"var_p", q.var_p},
                        {"cov_qp", q.cov_qp}});
    }
    if (run.common.format == "csv") {
        run.emit(csv.str());
    } else {
        Json out;
        out["alpha0"] = cjson(run.alpha0());
        out["t1"] = run.sc.t1;
        out["steps"] = run.sc.steps;
        out["rows"] = rows;
        run.emit(to_text(out));
    }
    return kOk;
}

// ----------------------------------------------------------------- rho

int bracket_of(const std::string& s) {
    if (s == "symmetric") return LHO_BRACKET_SYMMETRIC;
    if (s == "asymmetric") return LHO_BRACKET_ASYMMETRIC;
    throw Failure{LHO_INVALID_INPUT, "--bracket must be symmetric or asymmetric"};
}

int run_rho(Run& run) {
    require_format(run, {"json", "csv"});
    if (run.sc.dim < 1) throw Failure{LHO_INVALID_INPUT, "--dim must be at least 1"};
    if (!(run.sc.t1 >= 0.0)) throw Failure{LHO_INVALID_INPUT, "--t1 must be >= 0"};
    ParamsHandle params(run.config_text);
    const int dim = run.sc.dim;
    std::vector<lho_complex> el(static_cast<size_t>(dim) * dim);
    lho_rho_info info{};
    check(lho_rho_matrix(params.p, dim, run.sc.t1, run.alpha0(), bracket_of(run.sc.bracket),
                         el.data(), &info));
    run.warnings.low_precision += info.low_precision_count;

    if (run.common.format == "csv") {
        std::ostringstream csv;
        csv << "m,n,re,im\n";
        for (int m = 0; m < dim; ++m)
            for (int n = 0; n < dim; ++n) {
                const auto& c = el[static_cast<size_t>(m) * dim + n];
                csv << m << "," << n << "," << num(c.re) << "," << num(c.im) << "\n";
            }
        run.emit(csv.str());
        return kOk;
    }
    Json out;
    out["dim"] = dim;
    out["t"] = run.sc.t1;
    out["alpha0"] = cjson(run.alpha0());
    out["bracket"] = run.sc.bracket;
    Json elements = Json::array();
    for (const auto& c : el) elements.push_back(cjson(c));
    out["elements"] = elements;
    out["trace_deficit"] = info.trace_deficit;
    out["hermiticity_residual"] = info.hermiticity_residual;
    out["low_precision_count"] = info.low_precision_count;
    run.emit(to_text(out));
    return kOk;
}

// -------------------------------------------------------------- wigner

lho_grid parse_grid(const std::string& s) {
    lho_grid g{-3.0, 3.0, -3.0, 3.0, 61, 61};
    if (s.empty()) return g;
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
    if (parts.size() != 6)
        throw Failure{LHO_INVALID_INPUT, "--grid expects x1min,x1max,x2min,x2max,n1,n2"};
    try {
        size_t used = 0;
        auto real = [&](const std::string& p) {
            const double v = std::stod(p, &used);
            if (used != p.size()) throw std::invalid_argument(p);
            return v;
        };
        auto whole = [&](const std::string& p) {
            const int v = std::stoi(p, &used);
            if (used != p.size()) throw std::invalid_argument(p);
            return v;
        };
        g = {real(parts[0]), real(parts[1]), real(parts[2]),
             real(parts[3]), whole(parts[4]), whole(parts[5])};
    } catch (const std::logic_error&) {
        throw Failure{LHO_INVALID_INPUT, "cannot parse --grid '" + s + "'"};
    }
    return g;
}

Json wigner_json(const lho_wigner& w) {
    static const char* kinds[] = {"wavepacket", "delta", "steady"};
    Json j;
    j["kind"] = kinds[w.kind];
    j["t"] = w.time;
    j["mean"] = Json::array({w.mean_x1, w.mean_x2});
    j["covariance"] = Json::array({Json::array({w.cov11, w.cov12}), Json::array({w.cov12, w.cov22})});
    j["coefficients"] = {{"phi", w.phi},       {"psi", w.psi},         {"chi", w.chi},
                         {"b_norm", w.b_norm}, {"divisor", w.divisor}, {"norm", w.norm}};
    return j;
}

std::string grid_csv(const lho_wigner& w, const lho_grid& g, double& mass) {
    std::vector<double> values(static_cast<size_t>(g.n1) * g.n2);
    check(lho_wigner_grid(&w, &g, values.data(), &mass));
    std::ostringstream csv;
    csv << "x1,x2,W\n";
    for (int i = 0; i < g.n1; ++i) {
        const double x1 = g.x1_min + (g.x1_max - g.x1_min) * i / (g.n1 - 1);
        for (int j = 0; j < g.n2; ++j) {
            const double x2 = g.x2_min + (g.x2_max - g.x2_min) * j / (g.n2 - 1);
            csv << num(x1) << "," << num(x2) << "," << num(values[static_cast<size_t>(i) * g.n2 + j])
                << "\n";
        }
    }
    return csv.str();
}

Json grid_json(const lho_grid& g) {
    return {{"x1_min", g.x1_min}, {"x1_max", g.x1_max}, {"x2_min", g.x2_min},
            {"x2_max", g.x2_max}, {"n1", g.n1},         {"n2", g.n2}};
}

void emit_grid_and_sidecar(Run& run, const lho_wigner& w, Json sidecar) {
    const lho_grid g = parse_grid(run.sc.grid);
    double grid_mass = 0.0;
    const std::string csv = grid_csv(w, g, grid_mass);
    double mass = 0.0;
    check(lho_wigner_mass(&w, 1e-10, &mass));
    sidecar["grid"] = grid_json(g);
    sidecar["grid_mass"] = grid_mass;
    sidecar["normalization"] = mass;
    if (run.common.format == "json") {
        run.emit(to_text(sidecar));
        return;
    }
    run.emit(csv);
    if (!run.common.out_path.empty() && run.common.out_path != "-")
        run.emit(to_text(sidecar), run.common.out_path + ".json");
}

int run_wigner(Run& run) {
    require_format(run, {"csv", "json"});
    int kind = 0;
    if (run.sc.kind == "wavepacket") kind = LHO_WIGNER_WAVEPACKET;
    else if (run.sc.kind == "delta") kind = LHO_WIGNER_DELTA;
    else throw Failure{LHO_INVALID_INPUT, "--kind must be wavepacket or delta"};
    ParamsHandle params(run.config_text);
    lho_wigner w{};
    check(lho_wigner_solve(params.p, kind, run.sc.alpha0_re, run.sc.alpha0_im, run.sc.t1, &w));
    Json sidecar = wigner_json(w);
    sidecar["x0"] = Json::array({run.sc.alpha0_re, run.sc.alpha0_im});
    emit_grid_and_sidecar(run, w, sidecar);
    return kOk;
}

// -------------------------------------------------------------- steady

int run_steady(Run& run) {
    require_format(run, {"json", "csv"});
    ParamsHandle params(run.config_text);
    lho_steady s{};
    check(lho_steady_state(params.p, &s));
    double n_inf = 0.0;
    check(lho_asymptotic_number(params.p, &n_inf));
    Json out;
    out["closed_form"] = {{"s11", s.s11}, {"s22", s.s22}, {"s12", s.s12}};
    out["lyapunov"] = {{"s11", s.lyapunov_s11}, {"s22", s.lyapunov_s22}, {"s12", s.lyapunov_s12}};
    out["agreement"] = s.agreement;
    out["residual"] = s.residual;
    out["asymptotic_number"] = n_inf;
    out["wigner"] = wigner_json(s.wigner);
    if (run.common.format == "json" && run.sc.grid.empty()) {
        run.emit(to_text(out));
        return kOk;
    }
    emit_grid_and_sidecar(run, s.wigner, out);
    return kOk;
}

// ------------------------------------------------------ oracle-compare

int run_oracle_compare(Run& run) {
    require_format(run, {"json"});
    const std::string& qty = run.sc.quantity;
    const bool want_a = qty == "all" || qty == "a";
    const bool want_a2 = qty == "all" || qty == "a2";
    const bool want_n = qty == "all" || qty == "n";
    const bool want_rho = qty == "all" || qty == "rho";
    if (!(want_a || want_a2 || want_n || want_rho))
        throw Failure{LHO_INVALID_INPUT, "--quantity must be a, a2, n, rho or all"};
    if (!(run.sc.t1 > 0.0)) throw Failure{LHO_INVALID_INPUT, "--t1 must be positive"};
    if (run.sc.steps < 1) throw Failure{LHO_INVALID_INPUT, "--steps must be at least 1"};

    ParamsHandle params(run.config_text);
    lho_integrator_config cfg{};
    check(lho_integrator_defaults(params.p, run.sc.t1, run.sc.dim, &cfg));
    if (run.sc.dt > 0.0) cfg.dt = run.sc.dt;
    lho_initial_state init{};
    init.kind = LHO_INITIAL_COHERENT;
    init.alpha0 = run.alpha0();
    lho_moments m0{};
    check(lho_moments_coherent(run.alpha0(), &m0));

    const int block = std::min(run.sc.dim, 11);
    bool rho_available = want_rho;
    double dev_a = 0.0, dev_a2 = 0.0, dev_n = 0.0, dev_rho = 0.0;
    std::vector<lho_complex> analytic_rho(static_cast<size_t>(block) * block);
    std::ostringstream csv;
    lho_oracle_health h{};
    double min_eig = 0.0;
    int escalations = 0;

    // A trace breach means the basis is too small: double it and start over.
    constexpr int kMaxDim = 480;
    for (;;) {
        rho_available = want_rho;
        dev_a = dev_a2 = dev_n = dev_rho = 0.0;
        csv.str("");
        csv << "t,dev_a,dev_a2,dev_n,dev_rho,oracle_n,analytic_n\n";
        std::vector<lho_complex> oracle_rho(static_cast<size_t>(cfg.dim) * cfg.dim);
        try {
            OracleHandle oracle(params.p, init, cfg);
            for (int k = 0; k <= run.sc.steps; ++k) {
                const double t = run.sc.t1 * k / run.sc.steps;
                check(lho_oracle_advance(oracle.o, t));
                lho_moments mo{}, ma{};
                check(lho_oracle_moments(oracle.o, &mo));
                check(lho_moments_evolve(params.p, &m0, t, &ma));
                const double da =
                    std::hypot(mo.exp_a.re - ma.exp_a.re, mo.exp_a.im - ma.exp_a.im);
                const double da2 =
                    std::hypot(mo.exp_a2.re - ma.exp_a2.re, mo.exp_a2.im - ma.exp_a2.im);
                const double dn = std::abs(mo.exp_n - ma.exp_n);
                dev_a = std::max(dev_a, da);
                dev_a2 = std::max(dev_a2, da2);
                dev_n = std::max(dev_n, dn);

                double dr = std::nan("");
                if (rho_available) {
                    lho_rho_info info{};
                    const int st = lho_rho_matrix(params.p, block, t, run.alpha0(),
                                                  LHO_BRACKET_SYMMETRIC, analytic_rho.data(),
                                                  &info);
                    if (st == LHO_P_REPRESENTATION_UNAVAILABLE) {
                        ++run.warnings.p_unavailable;
                        rho_available = false;
                    } else {
                        check(st);
                        run.warnings.low_precision += info.low_precision_count;
                        check(lho_oracle_rho(oracle.o, oracle_rho.data(), nullptr));
                        dr = 0.0;
                        for (int m = 0; m < block; ++m)
                            for (int n = 0; n < block; ++n) {
                                const auto& x = analytic_rho[static_cast<size_t>(m) * block + n];
                                const auto& y = oracle_rho[static_cast<size_t>(m) * cfg.dim + n];
                                dr = std::max(dr, std::hypot(x.re - y.re, x.im - y.im));
                            }
                        dev_rho = std::max(dev_rho, dr);
                    }
                }
                csv << num(t) << "," << num(da) << "," << num(da2) << "," << num(dn) << ","
                    << num(dr) << "," << num(mo.exp_n) << "," << num(ma.exp_n) << "\n";
            }
            check(lho_oracle_health_of(oracle.o, &h));
            check(lho_oracle_min_eigenvalue(oracle.o, &min_eig));
            break;
        } catch (const Failure& f) {
            if (f.status != LHO_TRUNCATION_BREACH) throw;
            ++run.warnings.truncation_breach;
            if (cfg.dim >= kMaxDim) throw;
            cfg.dim = std::min(2 * cfg.dim, kMaxDim);
            // A larger basis is stiffer, so the step may have to shrink too.
            lho_integrator_config wider{};
            check(lho_integrator_defaults(params.p, run.sc.t1, cfg.dim, &wider));
            cfg.dt = std::min(cfg.dt, wider.dt);
            ++escalations;
        }
    }

    constexpr double kTolerance = 1e-6;
    Json dev;
    bool pass = true;
    auto add = [&](bool want, const char* name, double v, bool available = true) {
        if (!want) return;
        if (available) {
            dev[name] = v;
            pass = pass && v < kTolerance;
        } else {
            dev[name] = nullptr;
        }
    };
    add(want_a, "a", dev_a);
    add(want_a2, "a2", dev_a2);
    add(want_n, "n", dev_n);
    add(want_rho, "rho", dev_rho, rho_available);

    Json out;
    out["quantity"] = qty;
    out["t1"] = run.sc.t1;
    out["samples"] = run.sc.steps + 1;
    out["dim"] = cfg.dim;
    out["dim_escalations"] = escalations;
    out["dt"] = cfg.dt;
    out["alpha0"] = cjson(run.alpha0());
    out["rho_block"] = block;
    out["max_deviation"] = dev;
    out["tolerance"] = kTolerance;
    out["pass"] = pass;
    out["health"] = {{"max_trace_drift", h.max_trace_drift},
                     {"max_hermiticity_residual", h.max_hermiticity_residual},
                     {"steps", h.steps},
                     {"min_eigenvalue", min_eig}};
    run.emit(to_text(out));
    if (!run.sc.csv_path.empty()) run.emit(csv.str(), run.sc.csv_path);
    return kOk;
}

void write_report(const Run& run, const std::string& scenario, double seconds, int exit_code) {
    Json r;
    r["scenario"] = scenario;
    r["exit_code"] = exit_code;
    r["wall_time_s"] = seconds;
    r["warnings"] = {{"LowPrecision", run.warnings.low_precision},
                     {"TruncationBreach", run.warnings.truncation_breach},
                     {"PRepresentationUnavailable", run.warnings.p_unavailable}};
    r["outputs"] = run.outputs;
    const std::string text = to_text(r);
    if (run.common.report_path.empty()) {
        std::cerr << text;
    } else {
        std::ofstream f(run.common.report_path, std::ios::binary);
        f << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lindblad-damped harmonic oscillator: closed forms and a master-equation oracle"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(lho_version()));

    Run run;
    std::string format;
    app.add_option("--config", run.common.config_path, "parameter JSON (default: thermal bath)")
        ->check(CLI::ExistingFile);
    app.add_option("--out", run.common.out_path, "output path (default: stdout)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--report", run.common.report_path, "run report path (default: stderr)");

    // Each subcommand binds its own storage so that defaults do not collide.
    Scenario sm, sr, sw, ss, sc;
    auto alpha = [](CLI::App* sub, Scenario& s) {
        sub->add_option("--alpha0-re", s.alpha0_re, "Re of the initial coherent amplitude");
        sub->add_option("--alpha0-im", s.alpha0_im, "Im of the initial coherent amplitude");
    };

    auto* validate = app.add_subcommand("validate", "check the parameter constraints");

    auto* moments = app.add_subcommand("moments", "closed-form moments on a time grid");
    moments->add_option("--t1", sm.t1, "final time")->default_val(10.0);
    moments->add_option("--steps", sm.steps, "number of intervals")->default_val(1000);
    alpha(moments, sm);

    auto* rho = app.add_subcommand("rho", "number-basis density matrix");
    rho->add_option("--t1", sr.t1, "time")->default_val(1.0);
    rho->add_option("--dim", sr.dim, "truncation")->default_val(11);
    rho->add_option("--bracket", sr.bracket, "symmetric or asymmetric")->default_val("symmetric");
    alpha(rho, sr);

    auto* wigner = app.add_subcommand("wigner", "Gaussian Wigner function on a grid");
    wigner->add_option("--t1", sw.t1, "time")->default_val(1.0);
    wigner->add_option("--kind", sw.kind, "wavepacket or delta")->default_val("wavepacket");
    wigner->add_option("--grid", sw.grid, "x1min,x1max,x2min,x2max,n1,n2");
    alpha(wigner, sw);

    auto* steady = app.add_subcommand("steady", "stationary covariance and Wigner function");
    steady->add_option("--grid", ss.grid, "x1min,x1max,x2min,x2max,n1,n2");

    auto* compare = app.add_subcommand("oracle-compare", "closed forms against the oracle");
    compare->add_option("--t1", sc.t1, "final time")->default_val(8.0);
    compare->add_option("--steps", sc.steps, "number of sample intervals")->default_val(80);
    compare->add_option("--dim", sc.dim, "truncation")->default_val(60);
    compare->add_option("--dt", sc.dt, "integrator step (default from parameters)");
    compare->add_option("--quantity", sc.quantity, "a, a2, n, rho or all")->default_val("all");
    compare->add_option("--csv", sc.csv_path, "per-time-point deviations");
    alpha(compare, sc);

    std::string scenario = "none";
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        Json err;
        err["error"] = {{"code", "UsageError"}, {"status", LHO_CONFIG_ERROR},
                        {"message", e.what()}, {"exit_code", int(kUsage)}};
        std::cout << to_text(err);
        return kUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    int code = kOk;
    try {
        run.config_text = read_config(run.common.config_path);
        if (validate->parsed()) {
            scenario = "validate";
            run.common.format = format.empty() ? "json" : format;
            code = run_validate(run);
        } else if (moments->parsed()) {
            scenario = "moments";
            run.sc = sm;
            run.common.format = format.empty() ? "csv" : format;
            code = run_moments(run);
        } else if (rho->parsed()) {
            scenario = "rho";
            run.sc = sr;
            run.common.format = format.empty() ? "json" : format;
            code = run_rho(run);
        } else if (wigner->parsed()) {
            scenario = "wigner";
            run.sc = sw;
            run.common.format = format.empty() ? "csv" : format;
            code = run_wigner(run);
        } else if (steady->parsed()) {
            scenario = "steady";
            run.sc = ss;
            run.common.format = format.empty() ? "json" : format;
            code = run_steady(run);
        } else if (compare->parsed()) {
            scenario = "oracle-compare";
            run.sc = sc;
            run.common.format = format.empty() ? "json" : format;
            code = run_oracle_compare(run);
        }
    } catch (const Failure& f) {
        code = exit_for(f.status);
        Json err;
        err["error"] = {{"code", lho_status_name(f.status)}, {"status", f.status},
                        {"message", f.message}, {"exit_code", code}};
        std::cout << to_text(err);
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_report(run, scenario, seconds, code);
    return code;
}
