#pragma once

#include <json.hpp>

namespace racah {

// Ordered maps keep key order stable so serialized output is byte-identical
// across runs with equal inputs.
using Json = nlohmann::ordered_json;

} // namespace racah
