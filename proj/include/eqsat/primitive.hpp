#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <variant>

namespace eqsat {

enum class PrimitiveKind : std::uint8_t { Int64, Str, Bool, Unit };

struct UnitValue
{
  auto operator<=>(const UnitValue &) const = default;
};

// Immutable primitive literal. Build through the named factories: plain
// constructors would make `PrimitiveValue(2)` ambiguous between i64 and bool.
class PrimitiveValue
{
public:
  using Storage = std::variant< std::int64_t, std::string, bool, UnitValue >;

  PrimitiveValue() : _value(UnitValue{}) {}

  static PrimitiveValue i64(std::int64_t v) { return PrimitiveValue(Storage(std::in_place_index< 0 >, v)); }
  static PrimitiveValue str(std::string v) { return PrimitiveValue(Storage(std::in_place_index< 1 >, std::move(v))); }
  static PrimitiveValue boolean(bool v) { return PrimitiveValue(Storage(std::in_place_index< 2 >, v)); }
  static PrimitiveValue unit() { return PrimitiveValue(); }

  PrimitiveKind kind() const { return static_cast< PrimitiveKind >(_value.index()); }

  bool is_i64() const { return kind() == PrimitiveKind::Int64; }
  std::int64_t as_i64() const { return std::get< 0 >(_value); }
  const std::string &as_str() const { return std::get< 1 >(_value); }
  bool as_bool() const { return std::get< 2 >(_value); }

  const Storage &storage() const { return _value; }

  auto operator<=>(const PrimitiveValue &) const = default;
  bool operator==(const PrimitiveValue &) const = default;

private:
  explicit PrimitiveValue(Storage v) : _value(std::move(v)) {}

  Storage _value;
};

std::size_t hash_value(const PrimitiveValue &value);

// s-expression spelling: 42, "text" (with \" and \\ escapes), true, ().
std::string to_sexpr(const PrimitiveValue &value);
std::string quote_string(std::string_view raw);

std::ostream &operator<<(std::ostream &os, const PrimitiveValue &value);

std::string_view primitive_sort_name(PrimitiveKind kind);

enum class PrimOp : std::uint8_t { Add, Sub, Mul, Min, Max, Eq, Ne };

std::optional< PrimOp > primitive_op(std::string_view name);
std::string_view primitive_op_name(PrimOp op);

// Arithmetic ops take and return i64; = and != accept any primitive pair of
// the same kind and return bool.
bool is_comparison(PrimOp op);

PrimitiveValue eval_primitive(PrimOp op, std::span< const PrimitiveValue > args);
PrimitiveValue eval_primitive(std::string_view op_name, std::span< const PrimitiveValue > args);

} // namespace eqsat
