#ifndef FRICTION_LAB_COMMANDS_HPP
#define FRICTION_LAB_COMMANDS_HPP

#include "config.hpp"
#include "report.hpp"

namespace lab {

// Runs the subcommand named in cfg, writing artifacts and checks into report.
// Library exceptions propagate to the caller.
void dispatch(const Config& cfg, RunReport& report);

}  // namespace lab

#endif
