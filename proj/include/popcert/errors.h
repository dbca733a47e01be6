#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace popcert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text; `position` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at byte " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Well-formed text whose content violates a structural invariant.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Input outside an operation's domain (dimension mismatch, caps, bad parameters).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace popcert
