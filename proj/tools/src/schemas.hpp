#pragma once

#include <string_view>
#include <utility>
#include <vector>

namespace sympack::io {

/// (name, JSON text) for every file in tools/schemas, compiled in.
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_schemas();

}  // namespace sympack::io
