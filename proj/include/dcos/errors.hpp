#ifndef DCOS_ERRORS_HPP
#define DCOS_ERRORS_HPP

#include <stdexcept>

namespace dcos {

// resource guard refusal (CLI exit code 3)
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a request that is provably unsatisfiable, e.g. an exception triple
struct impossible_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dcos

#endif
