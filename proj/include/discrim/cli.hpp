#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace discrim {

/// Entry point behind the `discrim` binary; args is argv without the program
/// name. Returns 0 on success, 2 on usage errors, 3 on data errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace discrim
