#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace msl {

// Config validation failure with a machine-readable record naming the violated
// precondition and, when meaningful, the threshold value.
class ValidationError : public std::runtime_error {
  public:
    ValidationError(std::string param, const std::string& message,
                    double threshold = std::nan(""))
        : std::runtime_error(message), param_(std::move(param)), threshold_(threshold) {}

    const std::string& param() const { return param_; }
    nlohmann::ordered_json record() const {
        nlohmann::ordered_json err{{"code", "validation"}, {"param", param_}, {"message", what()}};
        if (std::isfinite(threshold_)) err["threshold"] = threshold_;
        return nlohmann::ordered_json{{"status", "error"}, {"error", err}};
    }

  private:
    std::string param_;
    double threshold_;
};

std::vector<std::string> scenario_names();

// Human-readable listing: scenario, required parameters, and the claim it checks.
std::string list_scenarios();

// Executes one scenario: validates the config (throwing ValidationError),
// writes results.csv / report.json / manifest.json under out_dir, and returns
// 0 when every hard invariant passed, 1 otherwise. CSV and report bodies are
// byte-identical across re-runs with the same config; wall time lives only in
// the manifest.
int run_scenario(const std::string& name, const nlohmann::ordered_json& config,
                 const std::string& out_dir, nlohmann::ordered_json* report_out = nullptr);

}  // namespace msl
