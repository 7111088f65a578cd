#pragma once

#include <memory>

#include "json.hpp"

#include "bankbench/models/adapter.hpp"

namespace bankbench::models {

// Rebuilds a fitted model from its to_json() artifact, dispatching on "family".
std::unique_ptr<ModelAdapter> model_from_json(const nlohmann::json& artifact);

} // namespace bankbench::models
