#pragma once

#include <stdexcept>
#include <string>

namespace torsep {

/// Malformed or inconsistent input (bad dimensions, parse failures).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A theorem's hypothesis does not hold for the given instance.
class HypothesisError : public std::runtime_error {
 public:
  explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration guard was exceeded.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& guard, const std::string& what)
      : std::runtime_error(what), guard_(guard) {}
  const std::string& guard() const noexcept { return guard_; }

 private:
  std::string guard_;
};

/// Broken internal invariant: failed certificate or cross-check.
class InternalError : public std::runtime_error {
 public:
  explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace torsep
