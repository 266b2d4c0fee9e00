#pragma once

#include <stdexcept>
#include <string>

namespace chemlat {

// Invalid parameters or scenario configuration. `field` names the offending
// key path when one is known.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg, std::string field = {})
      : std::runtime_error(field.empty() ? msg : field + ": " + msg),
        field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Malformed data handed to an analysis routine (too short, empty band...).
class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Problem size beyond what an exhaustive routine supports.
class CapacityError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of an operation (not a lattice element,
// coherence ratio outside the tolerance band...).
class DomainError : public std::logic_error {
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace chemlat
