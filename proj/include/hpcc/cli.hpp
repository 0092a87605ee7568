#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hpcc::cli {

/// Runs the command line `args` (without the program name). Exit codes: 0
/// success, 1 validation, secrecy or decoding failure, 2 parse or I/O
/// failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Seed used when --seed is absent: HPCC_SEED if set, else 0.
std::uint64_t default_seed();

}  // namespace hpcc::cli
