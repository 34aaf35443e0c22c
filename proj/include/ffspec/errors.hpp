#pragma once

#include <stdexcept>
#include <string>

namespace ffspec {

/// Raised when a computed object breaks an identity that must hold by
/// construction (moment identities, exact divisions). Always a bug, never
/// bad user input.
class IdentityViolation : public std::logic_error {
  public:
    explicit IdentityViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ffspec
