#pragma once

#include <eqsat/ids.hpp>
#include <eqsat/primitive.hpp>
#include <eqsat/schema.hpp>

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace eqsat {

// Term with typed variables. `Ref` names a class bound outside the rule (a
// program-level `let`); `Prim` is a primitive operation evaluated when the
// pattern is instantiated.
struct Pattern
{
  struct Var
  {
    std::string name;
    SortId sort;

    bool operator==(const Var &) const = default;
  };

  struct Ref
  {
    std::string name;
    EClassId id;
    SortId sort;

    bool operator==(const Ref &) const = default;
  };

  struct Apply
  {
    FunctionId function;
    std::vector< Pattern > args;

    bool operator==(const Apply &) const = default;
  };

  struct Prim
  {
    PrimOp op;
    std::vector< Pattern > args;

    bool operator==(const Prim &) const = default;
  };

  std::variant< PrimitiveValue, Var, Ref, Apply, Prim > node;

  static Pattern literal(PrimitiveValue v) { return Pattern{std::move(v)}; }
  static Pattern var(std::string name, SortId sort) { return Pattern{Var{std::move(name), sort}}; }
  static Pattern ref(std::string name, EClassId id, SortId sort) { return Pattern{Ref{std::move(name), id, sort}}; }
  static Pattern apply(FunctionId f, std::vector< Pattern > args = {}) { return Pattern{Apply{f, std::move(args)}}; }
  static Pattern prim(PrimOp op, std::vector< Pattern > args) { return Pattern{Prim{op, std::move(args)}}; }

  template< typename T >
  bool is() const { return std::holds_alternative< T >(node); }

  template< typename T >
  const T &as() const { return std::get< T >(node); }

  bool operator==(const Pattern &) const = default;
};

using VarSorts = std::map< std::string, SortId, std::less<> >;

// Checks well-sortedness and returns the pattern's sort. Variables are added
// to `vars`; a variable reused at a different sort is a SortMismatch.
SortId typecheck_pattern(const Schema &schema, const Pattern &pattern, VarSorts &vars);
SortId typecheck_pattern(const Schema &schema, const Pattern &pattern);

void collect_vars(const Pattern &pattern, VarSorts &vars);
bool contains_prim(const Pattern &pattern);
bool is_ground(const Pattern &pattern);

std::string to_sexpr(const Schema &schema, const Pattern &pattern);

struct EqFact
{
  Pattern lhs;
  Pattern rhs;

  bool operator==(const EqFact &) const = default;
};

struct ExistsFact
{
  Pattern pattern;

  bool operator==(const ExistsFact &) const = default;
};

using Fact = std::variant< EqFact, ExistsFact >;

struct UnionAction
{
  Pattern lhs;
  Pattern rhs;

  bool operator==(const UnionAction &) const = default;
};

// Binds `name` to the instantiated class for the remaining actions.
struct LetAction
{
  std::string name;
  Pattern value;

  bool operator==(const LetAction &) const = default;
};

using Action = std::variant< UnionAction, LetAction >;

std::string to_sexpr(const Schema &schema, const Fact &fact);
std::string to_sexpr(const Schema &schema, const Action &action);

struct Rule
{
  std::string name;
  std::vector< Fact > query;
  std::vector< Action > actions;
};

// Validates facts in order and returns the variables they bind. Primitive
// calls may only form a whole side of an equality, and their variables must be
// bound by the time the fact is evaluated.
VarSorts validate_query(const Schema &schema, const std::vector< Fact > &query);

Rule make_rule(const Schema &schema, std::vector< Fact > query, std::vector< Action > actions,
               std::string name = {});

// lhs => rhs as a rule: query [Exists(lhs), conditions...], action
// [Union(lhs, rhs)]. Both sides must have the same sort; lhs must be a
// function application; rhs may only use variables bound by the query.
Rule make_rewrite(const Schema &schema, Pattern lhs, Pattern rhs, std::vector< Fact > conditions = {});

} // namespace eqsat
