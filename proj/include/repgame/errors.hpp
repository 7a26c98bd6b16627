#pragma once

#include <stdexcept>
#include <string>

namespace repgame {

/// A strategy or caller broke an interface contract (out-of-range action,
/// replay mismatch).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace repgame
