#include <eqsat/schema.hpp>

#include <eqsat/error.hpp>

#include <set>

namespace eqsat {

std::string qualified_name(std::string_view owner, std::string_view member)
{
  auto valid = [] (std::string_view part) {
    return !part.empty() && part.find('.') == std::string_view::npos;
  };
  if (!valid(owner) || !valid(member)) {
    throw Error(ErrorCode::InvalidName,
                "cannot qualify `" + std::string(member) + "` with owner `" + std::string(owner)
                  + "`: parts must be non-empty and free of '.'");
  }
  std::string out(owner);
  out += '.';
  out += member;
  return out;
}

Schema::Schema()
{
  for (auto kind : {PrimitiveKind::Int64, PrimitiveKind::Str, PrimitiveKind::Bool, PrimitiveKind::Unit}) {
    std::string name(primitive_sort_name(kind));
    auto sort = SortId::from_index(_sorts.size());
    _sorts.push_back(Sort{name, SortKind::Primitive, kind});
    _sort_index.emplace(name, sort);

    auto fn = FunctionId::from_index(_functions.size());
    _functions.push_back(FunctionDecl{name, {}, sort, 1, true, kind});
    _function_index.emplace(name, fn);
  }
}

void Schema::check_sort_name(std::string_view name) const
{
  if (name.empty())
    throw Error(ErrorCode::InvalidName, "sort name must not be empty");
  if (auto existing = find_sort(name)) {
    if (sort(*existing).kind == SortKind::Primitive)
      throw Error(ErrorCode::ReservedName, "`" + std::string(name) + "` is a primitive sort");
    throw Error(ErrorCode::DuplicateSort, "sort `" + std::string(name) + "` is already declared");
  }
}

void Schema::check_function_name(std::string_view name) const
{
  if (name.empty())
    throw Error(ErrorCode::InvalidName, "function name must not be empty");
  if (primitive_op(name))
    throw Error(ErrorCode::ReservedName, "`" + std::string(name) + "` is a primitive operation");
  if (auto existing = find_function(name)) {
    if (is_literal_function(*existing))
      throw Error(ErrorCode::ReservedName, "`" + std::string(name) + "` is a literal constructor");
    throw Error(ErrorCode::DuplicateFunction, "function `" + std::string(name) + "` is already declared");
  }
}

SortId Schema::declare_sort(std::string_view name)
{
  check_sort_name(name);
  auto id = SortId::from_index(_sorts.size());
  _sorts.push_back(Sort{std::string(name), SortKind::User, std::nullopt});
  _sort_index.emplace(std::string(name), id);
  return id;
}

std::pair< SortId, std::vector< FunctionId > > Schema::declare_datatype(std::string_view name,
                                                                        std::span< const ConstructorSpec > ctors)
{
  check_sort_name(name);

  std::set< std::string_view > seen;
  for (const auto &ctor : ctors) {
    check_function_name(ctor.name);
    if (!seen.insert(ctor.name).second)
      throw Error(ErrorCode::DuplicateFunction, "constructor `" + ctor.name + "` is listed twice");
    for (const auto &param : ctor.params) {
      if (param != name && !find_sort(param))
        throw Error(ErrorCode::UnknownSort, "constructor `" + ctor.name + "` uses undeclared sort `" + param + "`");
    }
    if (ctor.cost && *ctor.cost < 1)
      throw Error(ErrorCode::InvalidArgument, "constructor `" + ctor.name + "` must have cost >= 1");
  }

  auto sort = declare_sort(name);
  std::vector< FunctionId > fns;
  fns.reserve(ctors.size());
  for (const auto &ctor : ctors) {
    FunctionDecl decl;
    decl.name = ctor.name;
    for (const auto &param : ctor.params)
      decl.params.push_back(sort_id(param));
    decl.result = sort;
    decl.cost = ctor.cost.value_or(1);
    decl.is_constructor = true;
    fns.push_back(declare_function(std::move(decl)));
  }
  return {sort, std::move(fns)};
}

FunctionId Schema::declare_function(FunctionDecl decl)
{
  check_function_name(decl.name);
  if (decl.cost < 1)
    throw Error(ErrorCode::InvalidArgument, "function `" + decl.name + "` must have cost >= 1");
  if (decl.literal_of)
    throw Error(ErrorCode::InvalidArgument, "literal constructors are predeclared");
  for (auto param : decl.params)
    sort(param);
  sort(decl.result);

  auto id = FunctionId::from_index(_functions.size());
  _function_index.emplace(decl.name, id);
  _functions.push_back(std::move(decl));
  return id;
}

std::optional< SortId > Schema::find_sort(std::string_view name) const
{
  if (auto it = _sort_index.find(std::string(name)); it != _sort_index.end())
    return it->second;
  return std::nullopt;
}

std::optional< FunctionId > Schema::find_function(std::string_view name) const
{
  if (auto it = _function_index.find(std::string(name)); it != _function_index.end())
    return it->second;
  return std::nullopt;
}

SortId Schema::sort_id(std::string_view name) const
{
  if (auto id = find_sort(name))
    return *id;
  throw Error(ErrorCode::UnknownSort, "unknown sort `" + std::string(name) + "`");
}

FunctionId Schema::function_id(std::string_view name) const
{
  if (auto id = find_function(name))
    return *id;
  throw Error(ErrorCode::UnknownFunction, "unknown function `" + std::string(name) + "`");
}

const Sort &Schema::sort(SortId id) const
{
  if (id.index() >= _sorts.size())
    throw Error(ErrorCode::UnknownSort, "sort id " + std::to_string(id.value) + " is not declared");
  return _sorts[id.index()];
}

const FunctionDecl &Schema::function(FunctionId id) const
{
  if (id.index() >= _functions.size())
    throw Error(ErrorCode::UnknownFunction, "function id " + std::to_string(id.value) + " is not declared");
  return _functions[id.index()];
}

SortId typecheck_term(const Schema &schema, const Term &term, const SortEnv &env)
{
  return std::visit([&] (const auto &node) -> SortId {
    using T = std::decay_t< decltype(node) >;
    if constexpr (std::is_same_v< T, PrimitiveValue >) {
      return Schema::sort_of(node);
    } else if constexpr (std::is_same_v< T, Term::Ref >) {
      if (auto it = env.find(node.name); it != env.end())
        return it->second;
      throw Error(ErrorCode::UnknownName, "unknown name `" + node.name + "`");
    } else {
      const auto &decl = schema.function(node.function);
      if (decl.literal_of)
        throw Error(ErrorCode::InvalidArgument, "literal constructor `" + decl.name + "` cannot be applied");
      if (node.args.size() != decl.params.size()) {
        throw Error(ErrorCode::ArityMismatch,
                    "`" + decl.name + "` expects " + std::to_string(decl.params.size()) + " arguments, got "
                      + std::to_string(node.args.size()));
      }
      for (std::size_t i = 0; i < node.args.size(); ++i) {
        auto actual = typecheck_term(schema, node.args[i], env);
        if (actual != decl.params[i]) {
          throw Error(ErrorCode::SortMismatch,
                      "argument " + std::to_string(i) + " of `" + decl.name + "` expects sort "
                        + schema.sort_name(decl.params[i]) + " but got " + schema.sort_name(actual));
        }
      }
      return decl.result;
    }
  }, term.node);
}

std::string to_sexpr(const Schema &schema, const Term &term)
{
  return std::visit([&] (const auto &node) -> std::string {
    using T = std::decay_t< decltype(node) >;
    if constexpr (std::is_same_v< T, PrimitiveValue >) {
      return to_sexpr(node);
    } else if constexpr (std::is_same_v< T, Term::Ref >) {
      return node.name;
    } else {
      std::string out = "(" + schema.function_name(node.function);
      for (const auto &arg : node.args)
        out += " " + to_sexpr(schema, arg);
      return out + ")";
    }
  }, term.node);
}

} // namespace eqsat
