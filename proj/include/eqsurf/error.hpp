#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace eqsurf {

/// Raised when an input is outside the domain of an operation.
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Parse or semantic error in a textual descriptor, with an optional
/// character offset into the input.
class ParseError : public DomainError {
public:
  ParseError(const std::string& what, std::optional<std::size_t> pos = std::nullopt)
      : DomainError(pos ? what + " (at offset " + std::to_string(*pos) + ")" : what), pos_(pos) {}

  std::optional<std::size_t> position() const { return pos_; }

private:
  std::optional<std::size_t> pos_;
};

}  // namespace eqsurf
