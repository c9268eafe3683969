#include "qdo/run_config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <string_view>

#include "qdo/error.hpp"

namespace qdo {

using nlohmann::json;

namespace {

void require_object(const json& j, std::string_view where,
                    std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ConfigError("unknown key '" + key + "' in " + std::string(where));
  }
}

void read_number(const json& j, const char* key, std::string_view where, double& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_number())
    throw ConfigError(std::string(where) + "." + key + " must be a number");
  out = v.get<double>();
  if (!std::isfinite(out)) throw ConfigError(std::string(where) + "." + key + " must be finite");
}

void read_coupling(const json& j, const char* key, ComplexCoupling& out) {
  if (!j.contains(key)) return;
  const std::string where = std::string("couplings.") + key;
  const json& v = j.at(key);
  if (v.is_number()) {
    out = {v.get<double>(), 0.0};
    return;
  }
  require_object(v, where, {"re", "im"});
  read_number(v, "re", where, out.re);
  read_number(v, "im", where, out.im);
}

std::string read_string(const json& j, const char* key, std::string_view where,
                        std::string fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string())
    throw ConfigError(std::string(where) + "." + key + " must be a string");
  return j.at(key).get<std::string>();
}

json coupling_json(const ComplexCoupling& c) { return {{"re", c.re}, {"im", c.im}}; }

}  // namespace

LindbladCouplings RunConfig::default_couplings() {
  LindbladCouplings h;
  h.h12.re = 1.0;
  h.h24.re = 1.0;
  return h;
}

void RunConfig::validate() const {
  oscillator.validate();
  integrator.validate();
  if (outputs.precision < 1 || outputs.precision > 17)
    throw ConfigError("outputs.precision must lie in [1, 17]");
}

RunConfig parse_run_config(const json& j) {
  require_object(j, "config",
                 {"oscillator", "couplings", "initial", "model", "integrator", "outputs"});
  RunConfig cfg;

  if (j.contains("oscillator")) {
    const json& o = j.at("oscillator");
    require_object(o, "oscillator", {"omega_a", "omega_b", "lambda"});
    read_number(o, "omega_a", "oscillator", cfg.oscillator.omega_a);
    read_number(o, "omega_b", "oscillator", cfg.oscillator.omega_b);
    read_number(o, "lambda", "oscillator", cfg.oscillator.lambda);
  }

  if (j.contains("couplings")) {
    const json& c = j.at("couplings");
    require_object(c, "couplings",
                   {"h11", "h22", "h33", "h44", "h12", "h13", "h14", "h23", "h24", "h34"});
    auto& h = cfg.couplings;
    read_number(c, "h11", "couplings", h.h11);
    read_number(c, "h22", "couplings", h.h22);
    read_number(c, "h33", "couplings", h.h33);
    read_number(c, "h44", "couplings", h.h44);
    read_coupling(c, "h12", h.h12);
    read_coupling(c, "h13", h.h13);
    read_coupling(c, "h14", h.h14);
    read_coupling(c, "h23", h.h23);
    read_coupling(c, "h24", h.h24);
    read_coupling(c, "h34", h.h34);
  }

  if (j.contains("initial")) {
    const json& s = j.at("initial");
    require_object(s, "initial", {"a1", "b1", "a2", "b2", "a12", "b12"});
    read_number(s, "a1", "initial", cfg.initial.a1);
    read_number(s, "b1", "initial", cfg.initial.b1);
    read_number(s, "a2", "initial", cfg.initial.a2);
    read_number(s, "b2", "initial", cfg.initial.b2);
    read_number(s, "a12", "initial", cfg.initial.a12);
    read_number(s, "b12", "initial", cfg.initial.b12);
  }

  cfg.model = model_from_string(read_string(j, "model", "config", "simplified"));

  if (j.contains("integrator")) {
    const json& i = j.at("integrator");
    require_object(i, "integrator", {"dt", "t_end", "sample_stride", "method", "adapt_tol"});
    read_number(i, "dt", "integrator", cfg.integrator.dt);
    read_number(i, "t_end", "integrator", cfg.integrator.t_end);
    read_number(i, "adapt_tol", "integrator", cfg.integrator.adapt_tol);
    if (i.contains("sample_stride")) {
      const json& v = i.at("sample_stride");
      if (!v.is_number_integer() || v.get<long long>() < 1)
        throw ConfigError("integrator.sample_stride must be a positive integer");
      cfg.integrator.sample_stride = v.get<std::size_t>();
    }
    cfg.integrator.method = method_from_string(read_string(i, "method", "integrator", "rk4"));
  }

  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    require_object(o, "outputs", {"csv_path", "svg_path", "precision"});
    cfg.outputs.csv_path = read_string(o, "csv_path", "outputs", "");
    cfg.outputs.svg_path = read_string(o, "svg_path", "outputs", "");
    if (o.contains("precision")) {
      if (!o.at("precision").is_number_integer())
        throw ConfigError("outputs.precision must be an integer");
      cfg.outputs.precision = o.at("precision").get<int>();
    }
  }

  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed JSON in '" + path + "': " + e.what());
  }
  return parse_run_config(j);
}

json to_json(const RunConfig& cfg) {
  const auto& h = cfg.couplings;
  json j;
  j["oscillator"] = {{"omega_a", cfg.oscillator.omega_a},
                     {"omega_b", cfg.oscillator.omega_b},
                     {"lambda", cfg.oscillator.lambda}};
  j["couplings"] = {{"h11", h.h11},
                    {"h22", h.h22},
                    {"h33", h.h33},
                    {"h44", h.h44},
                    {"h12", coupling_json(h.h12)},
                    {"h13", coupling_json(h.h13)},
                    {"h14", coupling_json(h.h14)},
                    {"h23", coupling_json(h.h23)},
                    {"h24", coupling_json(h.h24)},
                    {"h34", coupling_json(h.h34)}};
  j["initial"] = {{"a1", cfg.initial.a1},   {"b1", cfg.initial.b1},
                  {"a2", cfg.initial.a2},   {"b2", cfg.initial.b2},
                  {"a12", cfg.initial.a12}, {"b12", cfg.initial.b12}};
  j["model"] = std::string(to_string(cfg.model));
  j["integrator"] = {{"dt", cfg.integrator.dt},
                     {"t_end", cfg.integrator.t_end},
                     {"sample_stride", cfg.integrator.sample_stride},
                     {"method", std::string(to_string(cfg.integrator.method))},
                     {"adapt_tol", cfg.integrator.adapt_tol}};
  j["outputs"] = {{"csv_path", cfg.outputs.csv_path},
                  {"svg_path", cfg.outputs.svg_path},
                  {"precision", cfg.outputs.precision}};
  return j;
}

RunConfig with_parameter(const RunConfig& cfg, const std::string& path, double value) {
  if (!std::isfinite(value)) throw ConfigError("sweep value for '" + path + "' is not finite");
  if (path == "r") {
    RunConfig out = cfg;
    out.oscillator.omega_b = value * cfg.oscillator.omega_a;
    out.validate();
    return out;
  }
  const std::string full = path == "h12r" ? "couplings.h12.re" : path;

  json j = to_json(cfg);
  json::json_pointer ptr;
  try {
    std::string pointer = "/" + full;
    for (auto& ch : pointer)
      if (ch == '.') ch = '/';
    ptr = json::json_pointer(pointer);
  } catch (const json::exception&) {
    throw ConfigError("invalid parameter path '" + path + "'");
  }
  if (!j.contains(ptr) || !j.at(ptr).is_number())
    throw ConfigError("parameter path '" + path + "' does not name a numeric field");
  if (j.at(ptr).is_number_integer()) {
    if (value != std::floor(value))
      throw ConfigError("parameter '" + path + "' requires an integer value");
    j[ptr] = static_cast<long long>(value);
  } else {
    j[ptr] = value;
  }
  return parse_run_config(j);
}

}  // namespace qdo
