#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bankbench/data/panel.hpp"

namespace bankbench::llm {

struct PromptField {
    std::string key;        // display name in the serialized line
    std::string feature_id; // column to read from the raw_imputed feature row
};

struct PromptGroup {
    std::string title;
    std::vector<PromptField> fields;
};

// The curated ratio subset serialized into prompts, grouped by category.
// Group membership is configuration data; this is the shipped default.
std::vector<PromptGroup> default_prompt_groups();

// ISO country codes spelled out for prompt text ("PL" -> "Poland"); unknown
// codes pass through unchanged.
std::string country_display_name(const std::string& code);

// Renders one company as grouped key=value lines: a Company Info line built
// from record metadata followed by one line per feature group, ratios in
// fixed 3-decimal form. Values come from a raw_imputed feature row, so
// missing entries surface as their imputed medians, never blanks.
std::string serialize_company(const data::CompanyYearRecord& record, const std::vector<double>& raw_features,
                              const std::vector<std::string>& feature_ids, const std::vector<PromptGroup>& groups);

enum class PromptMode { zero_shot, icl };

struct IclExample {
    std::string serialized;
    int label = 0;
};

struct PromptTemplate {
    int horizon = 0;
    std::string horizon_guidance; // empty picks default_horizon_guidance(horizon)
};

std::string default_horizon_guidance(int horizon);

// Assembles the full prompt: persona and task header, ratio explanations,
// risk indicators, interpretation guidelines, response-format block, the
// examples section when mode is icl, and the serialized target. The rendered
// text always ends with the "Prediction:" cue.
std::string render_prompt(const PromptTemplate& tmpl, const std::string& target_serialized, PromptMode mode,
                          const std::vector<IclExample>& examples = {});

struct IclSelection {
    std::vector<std::size_t> positive_rows; // k positives, lowest proxy score first
    std::vector<std::size_t> negative_rows; // k negatives, highest proxy score first
};

// Hard-example mining over validation rows scored by a proxy model: the k
// positives the proxy is least sure about and the k negatives it is most
// confident on. Ties break toward the lower row index.
IclSelection select_icl_examples(const std::vector<double>& proxy_scores, const std::vector<int>& labels,
                                 std::size_t k);

} // namespace bankbench::llm
