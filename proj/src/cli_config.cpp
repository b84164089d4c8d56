#include "udwq/cli/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace udwq::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

int line_of_byte(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

Eigen::Vector3d parse_vec3(const json& j, const std::string& path, const char* key) {
  if (!j.is_array() || j.size() > 3) fail(path, std::string(key) + " must be an array of <=3 numbers");
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = j[i].get<double>();
  return v;
}

ProfileConfig parse_profile(const json& j, const std::string& path) {
  ProfileConfig p;
  p.type = j.value("type", "gaussian");
  if (p.type != "gaussian" && p.type != "compact_bump")
    fail(path, "profile.type must be 'gaussian' or 'compact_bump'");
  p.width = j.value("width", 1.0);
  p.radius = j.value("radius", 1.0);
  if (j.contains("center")) p.center = parse_vec3(j["center"], path, "profile.center");
  if (p.type == "gaussian" && !(p.width > 0.0)) fail(path, "profile.width must be > 0");
  if (p.type == "compact_bump" && !(p.radius > 0.0)) fail(path, "profile.radius must be > 0");
  return p;
}

json profile_json(const ProfileConfig& p) {
  json j;
  j["type"] = p.type;
  if (p.type == "gaussian")
    j["width"] = p.width;
  else
    j["radius"] = p.radius;
  j["center"] = {p.center[0], p.center[1], p.center[2]};
  return j;
}

const std::vector<std::string> kSweepParameters = {
    "lambda2_sq_w2", "lambda2", "branch", "coverage", "bob_distance", "bob_time"};

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(path + ":" + std::to_string(line_of_byte(text, e.byte)),
         std::string("JSON parse error: ") + e.what());
  }

  ExperimentConfig cfg;
  try {
    if (root.contains("model")) {
      const auto& m = root["model"];
      cfg.spatial_dimension = m.value("spatial_dimension", 3);
      cfg.mass = m.value("mass", 0.0);
    }
    if (cfg.spatial_dimension != 1 && cfg.spatial_dimension != 3)
      fail(path, "model.spatial_dimension must be 1 or 3 (shipped backends)");
    if (cfg.mass < 0.0) fail(path, "model.mass must be >= 0");

    if (root.contains("grid")) {
      const auto& g = root["grid"];
      cfg.cutoff = g.value("cutoff", 12.0);
      cfg.points = g.value("points", 2048);
    }
    if (!(cfg.cutoff > 0.0)) fail(path, "grid.cutoff must be > 0");
    if (cfg.points < 16) fail(path, "grid.points must be >= 16");

    if (root.contains("alice")) {
      const auto& a = root["alice"];
      cfg.alice.time = a.value("time", 0.0);
      if (a.contains("profile")) cfg.alice.profile = parse_profile(a["profile"], path);
      cfg.alice.coupling_mode = a.value("coupling_mode", "fine_tuned");
      if (cfg.alice.coupling_mode != "fine_tuned" && cfg.alice.coupling_mode != "explicit")
        fail(path, "alice.coupling_mode must be 'fine_tuned' or 'explicit'");
      cfg.alice.lambda2 = a.value("lambda2", 0.1);
      if (a.contains("lambda2_sq_w2"))
        cfg.alice.lambda2_sq_w2 = a["lambda2_sq_w2"].get<double>();
      cfg.alice.lambda1 = a.value("lambda1", 1.0);
      cfg.alice.branch = a.value("branch", 0);
      cfg.alice.margin_threshold = a.value("margin_threshold", 100.0);
      if (!(cfg.alice.lambda2 > 0.0)) fail(path, "alice.lambda2 must be > 0");
      if (cfg.alice.branch < 0) fail(path, "alice.branch must be >= 0");
    }

    if (root.contains("bob")) {
      const auto& b = root["bob"];
      if (b.contains("mode") && !b["mode"].is_string()) fail(path, "bob.mode must be a string");
      cfg.bob.mode = b.value("mode", "ideal");
      const bool known = cfg.bob.mode == "ideal" || cfg.bob.mode == "solve" ||
                         cfg.bob.mode == "spacelike" || cfg.bob.mode == "explicit";
      if (!known) fail(path, "bob.mode must be one of ideal|solve|spacelike|explicit");
      cfg.bob.time = b.value("time", 0.0);
      cfg.bob.coverage = b.value("coverage", 1.0);
      if (b.contains("offset")) cfg.bob.offset = parse_vec3(b["offset"], path, "bob.offset");
      if (b.contains("profile")) cfg.bob.profile = parse_profile(b["profile"], path);
      cfg.bob.lambda1 = b.value("lambda1", 1.0);
      cfg.bob.lambda2 = b.value("lambda2", 0.1);
      if (!(cfg.bob.coverage > 0.0) || cfg.bob.coverage > 1.0)
        fail(path, "bob.coverage must be in (0, 1]");
    }

    if (root.contains("sweep")) {
      SweepConfig s;
      s.parameter = root["sweep"].value("parameter", "");
      if (std::find(kSweepParameters.begin(), kSweepParameters.end(), s.parameter) ==
          kSweepParameters.end())
        fail(path, "sweep.parameter '" + s.parameter + "' does not name a sweepable field");
      if (!root["sweep"].contains("values") || !root["sweep"]["values"].is_array() ||
          root["sweep"]["values"].empty())
        fail(path, "sweep.values must be a non-empty array");
      for (const auto& v : root["sweep"]["values"]) s.values.push_back(v.get<double>());
      cfg.sweep = s;
    }

    if (root.contains("oracle")) {
      const auto& o = root["oracle"];
      cfg.oracle.models = o.value("models", 20);
      cfg.oracle.modes = o.value("modes", 2);
      cfg.oracle.n_max = o.value("n_max", 60);
      cfg.oracle.amplitude = o.value("amplitude", 0.5);
      if (cfg.oracle.models < 1) fail(path, "oracle.models must be >= 1");
      if (cfg.oracle.modes < 1 || cfg.oracle.modes > 4)
        fail(path, "oracle.modes must be 1-4");
    }

    cfg.seed = root.value("seed", std::uint64_t(20240817));
    if (root.contains("output")) cfg.precision = root["output"].value("precision", 17);
  } catch (const json::exception& e) {
    fail(path, std::string("invalid config value: ") + e.what());
  }
  return cfg;
}

std::string dump_config(const ExperimentConfig& cfg) {
  json j;
  j["model"] = {{"spatial_dimension", cfg.spatial_dimension}, {"mass", cfg.mass}};
  j["grid"] = {{"cutoff", cfg.cutoff}, {"points", cfg.points}};
  json a;
  a["time"] = cfg.alice.time;
  a["profile"] = profile_json(cfg.alice.profile);
  a["coupling_mode"] = cfg.alice.coupling_mode;
  a["lambda2"] = cfg.alice.lambda2;
  if (cfg.alice.lambda2_sq_w2) a["lambda2_sq_w2"] = *cfg.alice.lambda2_sq_w2;
  if (cfg.alice.coupling_mode == "explicit") a["lambda1"] = cfg.alice.lambda1;
  a["branch"] = cfg.alice.branch;
  a["margin_threshold"] = cfg.alice.margin_threshold;
  j["alice"] = a;
  json b;
  b["mode"] = cfg.bob.mode;
  b["time"] = cfg.bob.time;
  if (cfg.bob.mode == "solve") b["coverage"] = cfg.bob.coverage;
  if (cfg.bob.mode == "spacelike" || cfg.bob.mode == "explicit")
    b["offset"] = {cfg.bob.offset[0], cfg.bob.offset[1], cfg.bob.offset[2]};
  if (cfg.bob.mode == "explicit") {
    b["profile"] = profile_json(cfg.bob.profile);
    b["lambda1"] = cfg.bob.lambda1;
    b["lambda2"] = cfg.bob.lambda2;
  }
  j["bob"] = b;
  if (cfg.sweep) j["sweep"] = {{"parameter", cfg.sweep->parameter}, {"values", cfg.sweep->values}};
  j["oracle"] = {{"models", cfg.oracle.models},
                 {"modes", cfg.oracle.modes},
                 {"n_max", cfg.oracle.n_max},
                 {"amplitude", cfg.oracle.amplitude}};
  j["seed"] = cfg.seed;
  j["output"] = {{"precision", cfg.precision}};
  return j.dump(2) + "\n";
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace udwq::cli
