#pragma once

#include "gblocks/category.hpp"

#include <fstream>
#include <string>

namespace test {

inline std::string data_path(const std::string& rel) { return std::string(GBLOCKS_DATA_DIR) + "/" + rel; }

inline nlohmann::json json_of(const std::string& rel) {
  std::ifstream in(data_path(rel));
  return nlohmann::json::parse(in);
}

inline gb::GCategoryData load(const std::string& rel) { return gb::load_category(data_path(rel)); }

}  // namespace test
