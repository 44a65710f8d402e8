#pragma once

#include <eqsat/ids.hpp>
#include <eqsat/primitive.hpp>

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace eqsat {

enum class SortKind { Primitive, User };

struct Sort
{
  std::string name;
  SortKind kind = SortKind::User;
  std::optional< PrimitiveKind > primitive;
};

struct FunctionDecl
{
  std::string name;
  std::vector< SortId > params;
  SortId result;
  std::int64_t cost = 1;
  bool is_constructor = false;
  // Set only for the predeclared literal constructors, one per primitive sort.
  std::optional< PrimitiveKind > literal_of;
};

// Constructor entry of a datatype, with parameter sorts given by name.
struct ConstructorSpec
{
  std::string name;
  std::vector< std::string > params;
  std::optional< std::int64_t > cost;

  bool operator==(const ConstructorSpec &) const = default;
};

// Qualified member name `Owner.member`. '.' is rejected inside either part so
// that same-named members of different owners never collide.
std::string qualified_name(std::string_view owner, std::string_view member);

/// Declared sorts and functions of one program.
///
/// The four primitive sorts (i64, String, bool, Unit) are predeclared at
/// SortId 0..3, each with a literal constructor function of the same name at
/// FunctionId 0..3. Ids are dense and stable; declarations are append-only.
class Schema
{
public:
  Schema();

  SortId declare_sort(std::string_view name);

  // Validates every constructor before declaring anything, so a failed call
  // leaves the schema untouched.
  std::pair< SortId, std::vector< FunctionId > > declare_datatype(std::string_view name,
                                                                  std::span< const ConstructorSpec > ctors);
  std::pair< SortId, std::vector< FunctionId > > declare_datatype(std::string_view name,
                                                                  std::initializer_list< ConstructorSpec > ctors)
  {
    return declare_datatype(name, std::span< const ConstructorSpec >(ctors.begin(), ctors.size()));
  }

  FunctionId declare_function(FunctionDecl decl);

  std::optional< SortId > find_sort(std::string_view name) const;
  std::optional< FunctionId > find_function(std::string_view name) const;

  // Throwing variants (UnknownSort / UnknownFunction).
  SortId sort_id(std::string_view name) const;
  FunctionId function_id(std::string_view name) const;

  const Sort &sort(SortId id) const;
  const FunctionDecl &function(FunctionId id) const;

  std::size_t sort_count() const { return _sorts.size(); }
  std::size_t function_count() const { return _functions.size(); }

  static SortId primitive_sort(PrimitiveKind kind) { return SortId(static_cast< std::uint32_t >(kind)); }
  static FunctionId literal_function(PrimitiveKind kind) { return FunctionId(static_cast< std::uint32_t >(kind)); }
  static SortId sort_of(const PrimitiveValue &value) { return primitive_sort(value.kind()); }

  bool is_primitive(SortId id) const { return sort(id).kind == SortKind::Primitive; }
  bool is_literal_function(FunctionId id) const { return function(id).literal_of.has_value(); }

  const std::string &sort_name(SortId id) const { return sort(id).name; }
  const std::string &function_name(FunctionId id) const { return function(id).name; }

private:
  void check_sort_name(std::string_view name) const;
  void check_function_name(std::string_view name) const;

  std::vector< Sort > _sorts;
  std::vector< FunctionDecl > _functions;
  std::unordered_map< std::string, SortId > _sort_index;
  std::unordered_map< std::string, FunctionId > _function_index;
};

// Ground, typed expression tree.
struct Term
{
  struct Apply
  {
    FunctionId function;
    std::vector< Term > args;

    bool operator==(const Apply &) const = default;
  };

  struct Ref
  {
    std::string name;

    bool operator==(const Ref &) const = default;
  };

  std::variant< PrimitiveValue, Apply, Ref > node;

  static Term literal(PrimitiveValue v) { return Term{std::move(v)}; }
  static Term apply(FunctionId f, std::vector< Term > args = {}) { return Term{Apply{f, std::move(args)}}; }
  static Term ref(std::string name) { return Term{Ref{std::move(name)}}; }

  bool operator==(const Term &) const = default;
};

using SortEnv = std::map< std::string, SortId, std::less<> >;

// Sort of `term`, or throws UnknownName / ArityMismatch / SortMismatch with
// the argument position.
SortId typecheck_term(const Schema &schema, const Term &term, const SortEnv &env = {});

std::string to_sexpr(const Schema &schema, const Term &term);

} // namespace eqsat
