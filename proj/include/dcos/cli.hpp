#ifndef DCOS_CLI_HPP
#define DCOS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace dcos::cli {

// exit codes: 0 ok, 1 failed checks / impossible requests, 2 usage,
// 3 budget refusal
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

constexpr uint64_t kDefaultSeed = 1729;

}  // namespace dcos::cli

#endif
