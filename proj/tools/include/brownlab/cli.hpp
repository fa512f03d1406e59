#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace brownlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidation = 3;

// Bad arguments, unknown preset or malformed model file.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runs one brownlab invocation; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace brownlab
