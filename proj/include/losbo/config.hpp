#pragma once

#include <stdexcept>
#include <string>

#include "losbo/bound_check.hpp"
#include "losbo/campaign.hpp"

#include <nlohmann/json_fwd.hpp>

namespace losbo {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenerateConfig {
  FunctionGenSpec functions;
  int count = 10;
  std::uint64_t seed = 1;
  std::string output_dir = ".";
  std::string prefix = "function";
};

nlohmann::json load_json_file(const std::string& path);

Kernel kernel_from_json(const nlohmann::json& j);
Domain domain_from_json(const nlohmann::json& j);
NoiseSpec noise_from_json(const nlohmann::json& j);
BoundSpec bound_from_json(const nlohmann::json& j);
GpConfig gp_from_json(const nlohmann::json& j);
FunctionGenSpec function_gen_from_json(const nlohmann::json& j);

CampaignConfig campaign_config_from_json(const nlohmann::json& j);
BoundCheckConfig bound_check_config_from_json(const nlohmann::json& j);
GenerateConfig generate_config_from_json(const nlohmann::json& j);

}  // namespace losbo
