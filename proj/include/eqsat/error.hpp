#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eqsat {

// Location of a parse node in program text. Offsets are bytes; line and
// column are 1-based.
struct SourceSpan
{
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t line = 1;
  std::size_t column = 1;

  bool operator==(const SourceSpan &) const = default;
};

enum class ErrorCode
{
  UnknownFunction,
  UnknownSort,
  UnknownName,
  UnknownPrimitive,
  ArityMismatch,
  SortMismatch,
  AmbiguousSort,
  DuplicateSort,
  DuplicateFunction,
  DuplicateName,
  ReservedName,
  InvalidName,
  InvalidId,
  InvalidArgument,
  OverflowError,
  UnboundVariable,
  DegeneratePattern,
  InvalidPattern,
  NoFiniteTerm,
  NodeBudgetExceeded,
  LexError,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Errors that abort evaluation at runtime rather than rejecting the program.
bool is_runtime_error(ErrorCode code);

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, std::string message, std::optional< SourceSpan > span = std::nullopt);

  ErrorCode code() const { return _code; }
  const std::string &message() const { return _message; }
  const std::optional< SourceSpan > &span() const { return _span; }

  // Same error with extra context appended to the message.
  Error with_context(std::string_view context) const;

  // Attaches a span unless one is already present.
  Error with_span(const SourceSpan &span) const;

private:
  ErrorCode _code;
  std::string _message;
  std::optional< SourceSpan > _span;
};

} // namespace eqsat
