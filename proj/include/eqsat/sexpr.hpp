#pragma once

#include <eqsat/error.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace eqsat {

// Raw s-expression as read from program text, before any command structure
// is imposed.
struct SExpr
{
  enum class Kind { List, Symbol, Keyword, Integer, String };

  Kind kind = Kind::List;
  std::string text;          // Symbol / Keyword (with ':') / decoded String
  std::int64_t integer = 0;  // Integer
  std::vector< SExpr > items; // List
  SourceSpan span;

  bool is_list() const { return kind == Kind::List; }
  bool is_symbol() const { return kind == Kind::Symbol; }
  bool is_symbol(std::string_view name) const { return kind == Kind::Symbol && text == name; }
  bool is_keyword() const { return kind == Kind::Keyword; }
};

// identifier: [A-Za-z_+*/<>=!?-][A-Za-z0-9_+*/<>=!?.-]*, excluding integers.
bool is_identifier(std::string_view token);

// Reads every top-level form. Throws LexError for malformed tokens and
// ParseError for unbalanced parentheses, both carrying a span.
std::vector< SExpr > read_sexprs(std::string_view text);

// True when `text` ends inside an open list or string, i.e. more input could
// complete it.
bool input_incomplete(std::string_view text);

} // namespace eqsat
