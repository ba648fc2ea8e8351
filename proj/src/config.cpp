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

#include "lindho/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lindho/errors.hpp"

namespace lindho {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::kConfigError, msg); }

double number(const json& doc, const char* key) {
    const auto it = doc.find(key);
    if (it == doc.end()) fail(std::string("missing key \"") + key + "\"");
    if (!it->is_number()) fail(std::string("key \"") + key + "\" must be a number");
    return it->get<double>();
}

double number_or(const json& doc, const char* key, double fallback) {
    return doc.contains(key) ? number(doc, key) : fallback;
}

void reject_unknown(const json& doc, const std::set<std::string>& allowed, const char* where) {
    for (const auto& [key, value] : doc.items()) {
        if (!allowed.count(key)) fail("unknown key \"" + key + "\" in " + where);
    }
}

cplx amplitude(const json& micro, const char* key) {
    const auto it = micro.find(key);
    if (it == micro.end()) return {0.0, 0.0};
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number())
        fail(std::string("micro amplitude \"") + key + "\" must be [re, im]");
    return {(*it)[0].get<double>(), (*it)[1].get<double>()};
}

}  // namespace

ParamsConfig parse_params_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("configuration must be a JSON object");

    const bool thermal = doc.contains("thermal");
    const bool micro = doc.contains("micro");
    const bool direct = doc.contains("d_pp") || doc.contains("d_qq") || doc.contains("d_pq");
    if (int(thermal) + int(micro) + int(direct) != 1)
        fail("exactly one parameter source is required: direct d_pp/d_qq/d_pq, \"thermal\" or "
             "\"micro\"");

    ParamsConfig cfg;
    ParamValues& v = cfg.values;
    v.hbar = number_or(doc, "hbar", 1.0);
    v.mass = number_or(doc, "mass", 1.0);
    v.omega = number(doc, "omega");
    v.mu = number(doc, "mu");

    if (direct) {
        cfg.source = ParamSource::kDirect;
        reject_unknown(doc, {"hbar", "mass", "omega", "lambda", "mu", "d_pp", "d_qq", "d_pq"},
                       "configuration");
        v.lambda = number(doc, "lambda");
        v.d_pp = number(doc, "d_pp");
        v.d_qq = number(doc, "d_qq");
        v.d_pq = number(doc, "d_pq");
    } else if (thermal) {
        cfg.source = ParamSource::kThermal;
        reject_unknown(doc, {"hbar", "mass", "omega", "lambda", "mu", "thermal"}, "configuration");
        v.lambda = number(doc, "lambda");
        const json& t = doc["thermal"];
        if (!t.is_object()) fail("\"thermal\" must be an object");
        reject_unknown(t, {"kT"}, "\"thermal\"");
        cfg.kT = number(t, "kT");
    } else {
        cfg.source = ParamSource::kMicro;
        reject_unknown(doc, {"hbar", "mass", "omega", "mu", "micro"}, "configuration");
        const json& m = doc["micro"];
        if (!m.is_object()) fail("\"micro\" must be an object");
        reject_unknown(m, {"a1", "b1", "a2", "b2"}, "\"micro\"");
        cfg.micro.a1 = amplitude(m, "a1");
        cfg.micro.b1 = amplitude(m, "b1");
        cfg.micro.a2 = amplitude(m, "a2");
        cfg.micro.b2 = amplitude(m, "b2");
    }
    return cfg;
}

ParamsConfig load_params_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot read configuration file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_params_config(buf.str());
}

ParamValues resolve(const ParamsConfig& config) {
    ParamValues v = config.values;
    switch (config.source) {
        case ParamSource::kDirect:
            break;
        case ParamSource::kThermal: {
            const DiffusionCoefficients d =
                thermal_coefficients(v.lambda, v.mu, v.mass, v.omega, v.hbar, config.kT);
            v.d_pp = d.d_pp;
            v.d_qq = d.d_qq;
            v.d_pq = d.d_pq;
            break;
        }
        case ParamSource::kMicro: {
            const MicroCoefficients c = from_micro(config.micro, v.hbar);
            v.d_pp = c.d_pp;
            v.d_qq = c.d_qq;
            v.d_pq = c.d_pq;
            v.lambda = c.lambda;
            break;
        }
    }
    return v;
}

std::string_view source_name(ParamSource source) noexcept {
    switch (source) {
        case ParamSource::kDirect: return "direct";
        case ParamSource::kThermal: return "thermal";
        case ParamSource::kMicro: return "micro";
    }
    return "unknown";
}

}  // namespace lindho
