#include <eqsat/error.hpp>

namespace eqsat {

std::string_view to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::UnknownFunction: return "UnknownFunction";
    case ErrorCode::UnknownSort: return "UnknownSort";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::UnknownPrimitive: return "UnknownPrimitive";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::SortMismatch: return "SortMismatch";
    case ErrorCode::AmbiguousSort: return "AmbiguousSort";
    case ErrorCode::DuplicateSort: return "DuplicateSort";
    case ErrorCode::DuplicateFunction: return "DuplicateFunction";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::ReservedName: return "ReservedName";
    case ErrorCode::InvalidName: return "InvalidName";
    case ErrorCode::InvalidId: return "InvalidId";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OverflowError: return "OverflowError";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::DegeneratePattern: return "DegeneratePattern";
    case ErrorCode::InvalidPattern: return "InvalidPattern";
    case ErrorCode::NoFiniteTerm: return "NoFiniteTerm";
    case ErrorCode::NodeBudgetExceeded: return "NodeBudgetExceeded";
    case ErrorCode::LexError: return "LexError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_runtime_error(ErrorCode code)
{
  return code == ErrorCode::OverflowError
      || code == ErrorCode::NodeBudgetExceeded
      || code == ErrorCode::NoFiniteTerm;
}

namespace {

  std::string render(ErrorCode code, const std::string &message)
  {
    std::string out(to_string(code));
    out += ": ";
    out += message;
    return out;
  }

} // namespace

Error::Error(ErrorCode code, std::string message, std::optional< SourceSpan > span)
  : std::runtime_error(render(code, message)), _code(code), _message(std::move(message)), _span(span)
{}

Error Error::with_context(std::string_view context) const
{
  std::string msg = _message;
  msg += " (";
  msg += context;
  msg += ")";
  return Error(_code, std::move(msg), _span);
}

Error Error::with_span(const SourceSpan &span) const
{
  if (_span)
    return *this;
  return Error(_code, _message, span);
}

} // namespace eqsat
