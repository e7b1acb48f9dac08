#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace resreg::client {

/// A cell of a hosted dataset row. Rows are flat; task-specific schemas
/// (NER tag sequences and the like) are not modelled.
using Scalar = std::variant<std::monostate, bool, std::int64_t, double, std::string>;
using Record = std::map<std::string, Scalar>;
using Table = std::vector<Record>;

nlohmann::json to_json(const Table& table);

/// Array of flat objects -> Table. Throws Error(kProtocol) on nested values.
Table table_from_json(const nlohmann::json& j);

}  // namespace resreg::client
