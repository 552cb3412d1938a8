#pragma once

#include "crnacr/parser.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace testing_helpers {

inline std::string fixture_path(const std::string& name) {
  return std::string(CRNACR_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture: " + name);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline crnacr::ParsedModel load_fixture(const std::string& name) {
  return crnacr::parse_model(read_fixture(name));
}

}  // namespace testing_helpers
