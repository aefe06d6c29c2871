#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace latwire {

/// Malformed tree text. `offset` is the byte position of the first bad character.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// A node would get a third child.
class DegreeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A subdivision plan breaks the left >= right size-ordering of a reduction.
class OrderingError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// No subdivision plan with the requested total satisfies the size-ordering.
class NoLegalPlanError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive search would exceed its configured budget.
class BudgetError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace latwire
