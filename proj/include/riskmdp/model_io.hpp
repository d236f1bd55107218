#pragma once

#include <iosfwd>
#include <string>

#include "riskmdp/mdp.hpp"

namespace riskmdp {

/// Read a model from the version-1 JSON schema.
///
/// Schema violations throw IoError with a JSON-pointer-style path to the
/// offending field. The loaded model is NOT validated; run validate() to
/// audit numeric invariants.
ParametricMDP load_model(const std::string& path);
ParametricMDP parse_model(const std::string& json_text);

/// Write the model as version-1 JSON with numbers at 17 significant
/// digits, so load(save(m)) reproduces every field bit-for-bit.
void save_model(const ParametricMDP& model, const std::string& path);
std::string model_to_json(const ParametricMDP& model);

} // namespace riskmdp
