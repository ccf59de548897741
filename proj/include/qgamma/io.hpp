#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qgamma/algebra.hpp"
#include "qgamma/channels.hpp"
#include "qgamma/embeddings.hpp"
#include "qgamma/projection.hpp"

namespace qgamma {

using Json = nlohmann::json;

// Matrix element schema: {"shape":[d1,...], "blocks":[[[[re,im],...],...],...]}
// with blocks row-major and complex entries as [re, im] pairs.
Json to_json(const HermitianElement& x);
Json to_json(const State& s);
// Adds a "gamma" field to the element schema.
Json to_json(const GammaVector& x);
// {"in_shape":[...], "out_shape":[...], "kraus":[matrix,...]} where each
// Kraus matrix is a bare row-major array of [re, im] entries.
Json to_json(const Channel& t);
// {"gamma": g, "constraints": [{"a": element-schema, "c": float}, ...]}
Json to_json(const ConstraintSet& set);

HermitianElement hermitian_from_json(const Json& j);
State state_from_json(const Json& j);
GammaVector gamma_vector_from_json(const Json& j);
Channel channel_from_json(const Json& j);
ConstraintSet constraint_set_from_json(const Json& j);

Json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const Json& j);

State load_state(const std::filesystem::path& path);
ConstraintSet load_constraint_set(const std::filesystem::path& path);

}  // namespace qgamma
