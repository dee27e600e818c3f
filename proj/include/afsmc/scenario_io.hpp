#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "afsmc/sim.hpp"

namespace afsmc {

/// Configuration problem: parse failure, missing/unknown key, or an
/// invariant violation. The message carries the offending key path.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using KeyOverrides = std::vector<std::pair<std::string, std::string>>;

/// Parses and validates a sectioned key = value scenario file. Unknown keys
/// are rejected. Overrides (section.key, value) are applied on the raw text
/// values before validation; sweep mode uses them.
Scenario load_scenario(const std::filesystem::path& path,
                       const KeyOverrides& overrides = {});
Scenario load_scenario_text(const std::string& text,
                            const KeyOverrides& overrides = {});

/// Canonical text form; loading it back yields an identical Scenario.
std::string serialize_scenario(const Scenario& scenario);

bool operator==(const Scenario& a, const Scenario& b);

}  // namespace afsmc
