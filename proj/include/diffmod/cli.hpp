#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dm {

// Exit status: 0 when every check passes, 1 when some check fails, 2 on
// usage errors. JSON goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dm
