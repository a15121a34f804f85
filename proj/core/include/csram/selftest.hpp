#pragma once

#include <ostream>

namespace csram {

// Built-in consistency checks: ADC transfer function round-trip and code
// space, both engines against the packed-word reference, cost calibration
// points and a small end-to-end network where every engine must agree.
// Prints one line per check and returns true only if all pass.
bool run_selftest(std::ostream& out);

} // namespace csram
