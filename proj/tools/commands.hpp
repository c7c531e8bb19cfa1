#pragma once

#include <iosfwd>

#include "run_config.hpp"

namespace dicke::cli {

// Runs a resolved config. CSV goes to cfg.out (or `console` when empty);
// short human-readable notes go to `console`.
void run(const RunConfig& cfg, std::ostream& console);

} // namespace dicke::cli
