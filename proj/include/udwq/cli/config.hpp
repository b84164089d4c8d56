#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "udwq/support/errors.hpp"

namespace udwq::cli {

inline constexpr const char* kVersion = "udwq 0.1.0";

struct ProfileConfig {
  std::string type = "gaussian";  // gaussian | compact_bump
  double width = 1.0;
  double radius = 1.0;
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
};

struct AliceConfig {
  double time = 0.0;
  ProfileConfig profile;
  std::string coupling_mode = "fine_tuned";  // fine_tuned | explicit
  double lambda2 = 0.1;
  std::optional<double> lambda2_sq_w2;  // overrides lambda2 when set
  double lambda1 = 1.0;                 // explicit mode only
  int branch = 0;
  double margin_threshold = 100.0;
};

struct BobConfig {
  std::string mode = "ideal";  // ideal | solve | spacelike | explicit
  double time = 0.0;
  double coverage = 1.0;                              // solve mode
  Eigen::Vector3d offset = Eigen::Vector3d::Zero();   // spacelike/explicit center
  ProfileConfig profile;                              // explicit mode
  double lambda1 = 1.0, lambda2 = 0.1;                // explicit mode
};

struct SweepConfig {
  std::string parameter;
  std::vector<double> values;
};

struct OracleConfig {
  int models = 20;
  int modes = 2;
  int n_max = 60;
  double amplitude = 0.5;
};

struct ExperimentConfig {
  int spatial_dimension = 3;
  double mass = 0.0;
  double cutoff = 12.0;
  int points = 2048;
  AliceConfig alice;
  BobConfig bob;
  std::optional<SweepConfig> sweep;
  OracleConfig oracle;
  std::uint64_t seed = 20240817;
  int precision = 17;
};

// Parses and validates; errors carry the config path and a line anchor.
ExperimentConfig load_config(const std::string& path);

// Full round-trippable echo of the resolved configuration.
std::string dump_config(const ExperimentConfig& cfg);

std::uint64_t fnv1a64(std::string_view s);

}  // namespace udwq::cli
