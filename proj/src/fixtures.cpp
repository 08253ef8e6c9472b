#include "toric/fixtures.hpp"

#include <cstdlib>

#ifndef TORIC_FIXTURE_DIR
#define TORIC_FIXTURE_DIR "fixtures"
#endif

namespace toric {

std::string fixture_dir() {
  if (const char* env = std::getenv("TORIC_FIXTURES")) return env;
  return TORIC_FIXTURE_DIR;
}

std::string fixture_path(const std::string& name) {
  return fixture_dir() + "/" + name + ".json";
}

Fan load_fixture(const std::string& name) {
  return load_fan_file(fixture_path(name));
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {
      "p1", "p2", "a2", "p1xp1", "bl2p2", "quadric_u", "quadric_x"};
  return names;
}

}  // namespace toric
