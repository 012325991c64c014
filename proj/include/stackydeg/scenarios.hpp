#pragma once

// Built-in degeneration inputs for the worked examples.

#include "stackydeg/engine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stackydeg {

struct ScenarioParams {
  std::optional<int> k;
  std::optional<int> d;
  std::optional<int> m;
  std::optional<int> m2;
};

std::vector<std::string> scenario_names();
bool is_scenario(const std::string& name);

/// Throws InputError for an unknown name or out-of-range parameters.
DegenerationInput builtin_scenario(const std::string& name, const ScenarioParams& p = {});

}  // namespace stackydeg
