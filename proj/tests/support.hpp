#pragma once

#include <string>

#include "qfzeta/group_definition.hpp"

namespace qfzeta::test {

inline std::string group_path(const std::string& name) {
  return std::string(QFZETA_DATA_DIR) + "/groups/" + name;
}

inline GroupDefinition load(const std::string& name) { return read_group_file(group_path(name)); }

constexpr double kPi = 3.14159265358979323846;

}  // namespace qfzeta::test
