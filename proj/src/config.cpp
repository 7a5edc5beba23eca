#include "rmpslab/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rmpslab {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\'')))
    return s.substr(1, s.size() - 2);
  return s;
}

long long to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    throw UsageError("config field " + key + ": expected an integer, got '" + v + "'");
  }
  if (used != v.size()) throw UsageError("config field " + key + ": expected an integer, got '" + v + "'");
  return out;
}

double to_real(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    throw UsageError("config field " + key + ": expected a number, got '" + v + "'");
  }
  if (used != v.size()) throw UsageError("config field " + key + ": expected a number, got '" + v + "'");
  return out;
}

struct Assembler {
  ExperimentConfig cfg;
  bool have_kind = false, have_d = false, have_n = false, have_D = false, have_samples = false,
       have_seed = false;

  void set(const std::string& key, const std::string& raw) {
    const std::string v = unquote(trim(raw));
    if (key == "kind") {
      cfg.kind = experiment_kind_from_name(v);
      have_kind = true;
    } else if (key == "d") {
      cfg.d = static_cast<int>(to_int(key, v));
      have_d = true;
    } else if (key == "n") {
      cfg.n = static_cast<int>(to_int(key, v));
      have_n = true;
    } else if (key == "D") {
      cfg.bond = static_cast<int>(to_int(key, v));
      have_D = true;
    } else if (key == "k") {
      cfg.k = static_cast<int>(to_int(key, v));
    } else if (key == "l") {
      cfg.l = static_cast<int>(to_int(key, v));
    } else if (key == "samples") {
      const long long s = to_int(key, v);
      if (s < 0) throw UsageError("config field samples: must be non-negative");
      cfg.samples = static_cast<std::size_t>(s);
      have_samples = true;
    } else if (key == "seed") {
      try {
        cfg.seed = std::stoull(v);
      } catch (const std::exception&) {
        throw UsageError("config field seed: expected an unsigned integer, got '" + v + "'");
      }
      have_seed = true;
    } else if (key == "epsilon") {
      cfg.epsilon = to_real(key, v);
    } else if (key == "observable") {
      cfg.observable = v;
    } else if (key == "observable_file") {
      cfg.observable_file = v;
    } else if (key == "boundary") {
      if (v == "periodic")
        cfg.boundary = BoundaryKind::Periodic;
      else if (v == "open")
        cfg.boundary = BoundaryKind::Open;
      else
        throw UsageError("config field boundary: must be 'periodic' or 'open', got '" + v + "'");
    } else if (key == "output_dir") {
      cfg.output_dir = v;
    } else {
      throw UsageError("config field " + key + ": unknown key");
    }
  }

  ExperimentConfig finish() const {
    if (!have_kind) throw UsageError("config field kind: missing");
    if (!have_d) throw UsageError("config field d: missing");
    if (!have_n) throw UsageError("config field n: missing");
    if (!have_D) throw UsageError("config field D: missing");
    if (!have_samples) throw UsageError("config field samples: missing");
    if (!have_seed) throw UsageError("config field seed: missing");
    return cfg;
  }
};

ExperimentConfig parse_json_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config: JSON form must be an object");
  Assembler a;
  for (const auto& [key, value] : j.items()) {
    if (value.is_string())
      a.set(key, value.get<std::string>());
    else
      a.set(key, value.dump());
  }
  return a.finish();
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return parse_json_config(text);
    break;
  }

  Assembler a;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (const std::size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config: expected 'key = value', got '" + line + "'");
    a.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return a.finish();
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot open file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["kind"] = experiment_kind_name(cfg.kind);
  j["d"] = cfg.d;
  j["n"] = cfg.n;
  j["D"] = cfg.bond;
  if (cfg.k) j["k"] = *cfg.k;
  if (cfg.l) j["l"] = *cfg.l;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  if (cfg.epsilon) j["epsilon"] = *cfg.epsilon;
  j["observable"] = cfg.observable;
  if (cfg.observable_file) j["observable_file"] = *cfg.observable_file;
  j["boundary"] = cfg.boundary == BoundaryKind::Periodic ? "periodic" : "open";
  j["output_dir"] = cfg.output_dir;
  return j.dump(2);
}

bool config_equal(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.kind == b.kind && a.d == b.d && a.n == b.n && a.bond == b.bond && a.k == b.k &&
         a.l == b.l && a.samples == b.samples && a.seed == b.seed && a.epsilon == b.epsilon &&
         a.observable == b.observable && a.observable_file == b.observable_file &&
         a.boundary == b.boundary && a.output_dir == b.output_dir;
}

}  // namespace rmpslab
