// `optocool` subcommand dispatch.
//
//   simulate -c CFG [-o OUT]                       trajectory CSV
//   steady   -c CFG --target-a RE,IM [-o OUT]       steady-state JSON
//   sweep    (--preset NAME | -c CFG --axis k=v1,v2,...) [-j N] [-o OUT]
//   verify                                          invariant suite
//
// Exit status: 0 success, 1 usage or input error, 2 numerical failure.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace optocool::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

// `args` excludes the program name. OUT of "-" (the default) writes to `out`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace optocool::cli
