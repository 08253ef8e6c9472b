#pragma once

#include <iosfwd>
#include <string>

namespace toric {

/// Runs the full verification suite against the bundled fixtures, printing
/// one PASS/FAIL line per criterion. Returns true when everything passed.
bool run_acceptance(std::ostream& os, unsigned workers = 4);

}  // namespace toric
