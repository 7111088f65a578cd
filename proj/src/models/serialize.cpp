#include "bankbench/models/serialize.hpp"

#include <string>

#include "bankbench/core/error.hpp"
#include "bankbench/models/gbt.hpp"
#include "bankbench/models/logreg.hpp"
#include "bankbench/models/mlp.hpp"

namespace bankbench::models {

std::unique_ptr<ModelAdapter> model_from_json(const nlohmann::json& artifact) {
    if (!artifact.is_object() || !artifact.contains("family"))
        throw parse_error("model artifact: missing \"family\"");
    const std::string family = artifact.at("family").get<std::string>();
    if (family == "logreg") return LogisticRegression::from_json(artifact);
    if (family == "gbt") return GradientBoostedTrees::from_json(artifact);
    if (family == "mlp") return MlpClassifier::from_json(artifact);
    throw parse_error("model artifact: unknown family \"" + family + "\"");
}

} // namespace bankbench::models
