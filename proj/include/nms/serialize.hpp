#pragma once

#include <string>

#include "nms/model.hpp"

namespace nms {

// Canonical text form of a model: statements sorted by category and id, one
// per line, fixed spacing. A fixed point of parse/serialize: the empty model
// serializes to the empty string, and serialize(parse(serialize(m))) equals
// serialize(m) byte for byte. Hypothesis arguments are implied by `realize`
// statements and are not emitted.
std::string serialize_model(const Model& model);

// Quotes and escapes a string literal the way the canonical form does.
std::string quote_string(const std::string& text);

}  // namespace nms
