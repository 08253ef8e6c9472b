#pragma once

#include "toric/fan.hpp"

namespace toric {

/// Directory holding the bundled fan and model files. Defaults to the
/// source-tree fixtures directory baked in at configure time; the
/// TORIC_FIXTURES environment variable overrides it.
std::string fixture_dir();

std::string fixture_path(const std::string& name);

/// Load a bundled fan by base name, e.g. "bl2p2" -> fixtures/bl2p2.json.
Fan load_fixture(const std::string& name);

/// Names of the bundled fan fixtures.
const std::vector<std::string>& fixture_names();

}  // namespace toric
