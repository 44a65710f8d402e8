#include <eqsat/primitive.hpp>

#include <eqsat/error.hpp>

#include <algorithm>
#include <array>
#include <functional>
#include <sstream>

namespace eqsat {

std::size_t hash_value(const PrimitiveValue &value)
{
  auto inner = std::visit([] (const auto &v) -> std::size_t {
    using T = std::decay_t< decltype(v) >;
    if constexpr (std::is_same_v< T, UnitValue >)
      return 0x9e3779b9u;
    else
      return std::hash< T >{}(v);
  }, value.storage());
  return inner ^ (value.storage().index() * 0x100000001b3ull);
}

std::string quote_string(std::string_view raw)
{
  std::string out;
  out.reserve(raw.size() + 2);
  out.push_back('"');
  for (char c : raw) {
    if (c == '"' || c == '\\')
      out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string to_sexpr(const PrimitiveValue &value)
{
  switch (value.kind()) {
    case PrimitiveKind::Int64: return std::to_string(value.as_i64());
    case PrimitiveKind::Str: return quote_string(value.as_str());
    case PrimitiveKind::Bool: return value.as_bool() ? "true" : "false";
    case PrimitiveKind::Unit: return "()";
  }
  return "";
}

std::ostream &operator<<(std::ostream &os, const PrimitiveValue &value)
{
  return os << to_sexpr(value);
}

std::string_view primitive_sort_name(PrimitiveKind kind)
{
  switch (kind) {
    case PrimitiveKind::Int64: return "i64";
    case PrimitiveKind::Str: return "String";
    case PrimitiveKind::Bool: return "bool";
    case PrimitiveKind::Unit: return "Unit";
  }
  return "";
}

namespace {

  constexpr std::array< std::pair< PrimOp, std::string_view >, 7 > op_names = {{
    {PrimOp::Add, "+"},
    {PrimOp::Sub, "-"},
    {PrimOp::Mul, "*"},
    {PrimOp::Min, "min"},
    {PrimOp::Max, "max"},
    {PrimOp::Eq, "="},
    {PrimOp::Ne, "!="},
  }};

  std::string render_call(PrimOp op, std::span< const PrimitiveValue > args)
  {
    std::ostringstream os;
    os << "(" << primitive_op_name(op);
    for (const auto &a : args)
      os << " " << a;
    os << ")";
    return os.str();
  }

  std::int64_t checked(PrimOp op, std::int64_t a, std::int64_t b, std::span< const PrimitiveValue > args)
  {
    std::int64_t out = 0;
    bool overflow = false;
    switch (op) {
      case PrimOp::Add: overflow = __builtin_add_overflow(a, b, &out); break;
      case PrimOp::Sub: overflow = __builtin_sub_overflow(a, b, &out); break;
      case PrimOp::Mul: overflow = __builtin_mul_overflow(a, b, &out); break;
      case PrimOp::Min: out = std::min(a, b); break;
      case PrimOp::Max: out = std::max(a, b); break;
      default: break;
    }
    if (overflow)
      throw Error(ErrorCode::OverflowError, "signed 64-bit overflow in " + render_call(op, args));
    return out;
  }

} // namespace

std::optional< PrimOp > primitive_op(std::string_view name)
{
  for (const auto &[op, n] : op_names)
    if (n == name)
      return op;
  return std::nullopt;
}

std::string_view primitive_op_name(PrimOp op)
{
  for (const auto &[o, n] : op_names)
    if (o == op)
      return n;
  return "?";
}

bool is_comparison(PrimOp op)
{
  return op == PrimOp::Eq || op == PrimOp::Ne;
}

PrimitiveValue eval_primitive(PrimOp op, std::span< const PrimitiveValue > args)
{
  if (args.size() != 2) {
    throw Error(ErrorCode::ArityMismatch,
                std::string(primitive_op_name(op)) + " expects 2 arguments, got " + std::to_string(args.size()));
  }
  const auto &lhs = args[0];
  const auto &rhs = args[1];

  if (is_comparison(op)) {
    if (lhs.kind() != rhs.kind()) {
      throw Error(ErrorCode::SortMismatch,
                  "cannot compare " + std::string(primitive_sort_name(lhs.kind())) + " with "
                    + std::string(primitive_sort_name(rhs.kind())));
    }
    bool equal = lhs == rhs;
    return PrimitiveValue::boolean(op == PrimOp::Eq ? equal : !equal);
  }

  if (!lhs.is_i64() || !rhs.is_i64()) {
    throw Error(ErrorCode::SortMismatch,
                std::string(primitive_op_name(op)) + " expects i64 arguments in " + render_call(op, args));
  }
  return PrimitiveValue::i64(checked(op, lhs.as_i64(), rhs.as_i64(), args));
}

PrimitiveValue eval_primitive(std::string_view op_name, std::span< const PrimitiveValue > args)
{
  auto op = primitive_op(op_name);
  if (!op)
    throw Error(ErrorCode::UnknownPrimitive, "unknown primitive `" + std::string(op_name) + "`");
  return eval_primitive(*op, args);
}

} // namespace eqsat
