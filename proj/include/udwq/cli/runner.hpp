#pragma once

#include <memory>
#include <string>

#include "udwq/cli/config.hpp"
#include "udwq/field/correlators.hpp"
#include "udwq/protocol/protocol.hpp"

namespace udwq::cli {

struct Scenario {
  std::shared_ptr<field::SpacetimeModel> model;
  std::shared_ptr<const field::KGrid> grid;
  field::SmearingSpec f1, f2, g1, g2;
  weyl::BilinearTable table;
  double lambda1 = 0.0, lambda2 = 0.0, coupling_ratio = 0.0;
  protocol::ProtocolConditions conditions;
};

// Builds the model/grid/smearings/table a config describes (after any sweep
// substitution has been applied).
Scenario resolve_scenario(const ExperimentConfig& cfg);

// Substitutes one sweep value into a copy of the config.
ExperimentConfig with_sweep_value(const ExperimentConfig& cfg, const std::string& parameter,
                                  double value);

struct RunOptions {
  std::string out_dir = ".";
  unsigned threads = 1;
  std::optional<std::uint64_t> seed_override;
};

// Exit codes: 0 success, 2 configuration/precondition error, 3 numerical
// contract violation.
int run_subcommand(const std::string& name, const std::string& config_path,
                   const RunOptions& options);

int exit_code_for_current_exception();

}  // namespace udwq::cli
