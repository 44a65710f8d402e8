#pragma once

#include <eqsat/error.hpp>
#include <eqsat/primitive.hpp>
#include <eqsat/schema.hpp>
#include <eqsat/sexpr.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace eqsat {

// Unresolved expression of the command language. Identifiers become bound
// names or pattern variables only at evaluation time. Spans are carried for
// diagnostics and ignored by ==.
struct Expr
{
  struct Ident
  {
    std::string name;

    bool operator==(const Ident &) const = default;
  };

  struct Call
  {
    std::string head;
    std::vector< Expr > args;

    bool operator==(const Call &) const = default;
  };

  std::variant< PrimitiveValue, Ident, Call > node;
  SourceSpan span;

  static Expr literal(PrimitiveValue v) { return Expr{std::move(v), {}}; }
  static Expr ident(std::string name) { return Expr{Ident{std::move(name)}, {}}; }
  static Expr call(std::string head, std::vector< Expr > args = {}) { return Expr{Call{std::move(head), std::move(args)}, {}}; }

  bool operator==(const Expr &other) const { return node == other.node; }
};

// `(= lhs rhs)` when rhs is present, otherwise an existence fact.
struct FactExpr
{
  Expr lhs;
  std::optional< Expr > rhs;

  bool is_eq() const { return rhs.has_value(); }
  bool operator==(const FactExpr &) const = default;
};

struct UnionExpr
{
  Expr lhs;
  Expr rhs;

  bool operator==(const UnionExpr &) const = default;
};

struct LetExpr
{
  std::string name;
  Expr value;

  bool operator==(const LetExpr &) const = default;
};

using ActionExpr = std::variant< UnionExpr, LetExpr >;

struct DatatypeCommand
{
  std::string name;
  std::vector< ConstructorSpec > constructors;

  bool operator==(const DatatypeCommand &) const = default;
};

struct FunctionCommand
{
  std::string name;
  std::vector< std::string > params;
  std::string result;
  std::optional< std::int64_t > cost;

  bool operator==(const FunctionCommand &) const = default;
};

// `let`, also spelled `define`.
struct LetCommand
{
  std::string name;
  Expr value;

  bool operator==(const LetCommand &) const = default;
};

struct RewriteCommand
{
  Expr lhs;
  Expr rhs;
  std::vector< FactExpr > when;

  bool operator==(const RewriteCommand &) const = default;
};

struct RuleCommand
{
  std::vector< FactExpr > query;
  std::vector< ActionExpr > actions;

  bool operator==(const RuleCommand &) const = default;
};

struct RunCommand
{
  std::int64_t limit = 1;

  bool operator==(const RunCommand &) const = default;
};

struct CheckCommand
{
  FactExpr fact;

  bool operator==(const CheckCommand &) const = default;
};

struct ExtractCommand
{
  Expr term;

  bool operator==(const ExtractCommand &) const = default;
};

struct Command
{
  using Form = std::variant< DatatypeCommand, FunctionCommand, LetCommand, RewriteCommand, RuleCommand, RunCommand,
                             CheckCommand, ExtractCommand >;

  Form form;
  SourceSpan span;

  bool operator==(const Command &other) const { return form == other.form; }
};

Command parse_command(const SExpr &form);
std::vector< Command > parse_program(std::string_view text);

std::string to_sexpr(const Expr &expr);
std::string to_sexpr(const FactExpr &fact);
std::string to_sexpr(const ActionExpr &action);
std::string to_sexpr(const Command &command);

// One command per line, each line newline-terminated.
std::string print_program(std::span< const Command > commands);

} // namespace eqsat
