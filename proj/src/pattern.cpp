#include <eqsat/pattern.hpp>

#include <eqsat/error.hpp>

namespace eqsat {

namespace {

  std::string sort_name(const Schema &schema, SortId sort) { return schema.sort_name(sort); }

  void bind_var(const Schema &schema, VarSorts &vars, const std::string &name, SortId sort)
  {
    auto [it, inserted] = vars.emplace(name, sort);
    if (!inserted && it->second != sort) {
      throw Error(ErrorCode::SortMismatch,
                  "variable `" + name + "` is used at sort " + sort_name(schema, it->second) + " and at sort "
                    + sort_name(schema, sort));
    }
  }

  bool vars_bound(const Pattern &pattern, const VarSorts &bound)
  {
    VarSorts vars;
    collect_vars(pattern, vars);
    for (const auto &[name, _] : vars)
      if (!bound.count(name))
        return false;
    return true;
  }

  std::string first_unbound(const Pattern &pattern, const VarSorts &bound)
  {
    VarSorts vars;
    collect_vars(pattern, vars);
    for (const auto &[name, _] : vars)
      if (!bound.count(name))
        return name;
    return {};
  }

  void require_bound(const Schema &schema, const Pattern &pattern, const VarSorts &bound, std::string_view where)
  {
    if (auto name = first_unbound(pattern, bound); !name.empty()) {
      throw Error(ErrorCode::UnboundVariable,
                  "variable `" + name + "` in " + std::string(where) + " " + to_sexpr(schema, pattern)
                    + " is not bound by the query");
    }
  }

  // Primitive calls in a query are allowed only as a whole equality side, and
  // only over variables, literals, refs and other primitive calls.
  void check_query_side(const Schema &schema, const Pattern &side, bool top)
  {
    std::visit([&] (const auto &node) {
      using T = std::decay_t< decltype(node) >;
      if constexpr (std::is_same_v< T, Pattern::Apply >) {
        for (const auto &arg : node.args)
          check_query_side(schema, arg, false);
      } else if constexpr (std::is_same_v< T, Pattern::Prim >) {
        if (!top) {
          throw Error(ErrorCode::InvalidPattern,
                      "primitive call " + to_sexpr(schema, side)
                        + " may only appear as a whole side of an equality in a query");
        }
        for (const auto &arg : node.args) {
          if (arg.template is< Pattern::Apply >()) {
            throw Error(ErrorCode::InvalidPattern,
                        "primitive call " + to_sexpr(schema, side) + " in a query may not contain function applications");
          }
          if (arg.template is< Pattern::Prim >())
            check_query_side(schema, arg, true);
        }
      }
    }, side.node);
  }

  // Whether a query side resolves to a single class without search.
  bool anchorable(const Pattern &side, const VarSorts &bound)
  {
    if (side.is< Pattern::Apply >())
      return false;
    return vars_bound(side, bound);
  }

} // namespace

SortId typecheck_pattern(const Schema &schema, const Pattern &pattern, VarSorts &vars)
{
  return std::visit([&] (const auto &node) -> SortId {
    using T = std::decay_t< decltype(node) >;
    if constexpr (std::is_same_v< T, PrimitiveValue >) {
      return Schema::sort_of(node);
    } else if constexpr (std::is_same_v< T, Pattern::Var >) {
      schema.sort(node.sort);
      bind_var(schema, vars, node.name, node.sort);
      return node.sort;
    } else if constexpr (std::is_same_v< T, Pattern::Ref >) {
      return node.sort;
    } else if constexpr (std::is_same_v< T, Pattern::Apply >) {
      const auto &decl = schema.function(node.function);
      if (decl.literal_of)
        throw Error(ErrorCode::InvalidArgument, "literal constructor `" + decl.name + "` cannot be applied");
      if (node.args.size() != decl.params.size()) {
        throw Error(ErrorCode::ArityMismatch,
                    "`" + decl.name + "` expects " + std::to_string(decl.params.size()) + " arguments, got "
                      + std::to_string(node.args.size()));
      }
      for (std::size_t i = 0; i < node.args.size(); ++i) {
        auto actual = typecheck_pattern(schema, node.args[i], vars);
        if (actual != decl.params[i]) {
          throw Error(ErrorCode::SortMismatch,
                      "argument " + std::to_string(i) + " of `" + decl.name + "` expects sort "
                        + sort_name(schema, decl.params[i]) + " but got " + sort_name(schema, actual));
        }
      }
      return decl.result;
    } else {
      auto name = std::string(primitive_op_name(node.op));
      if (node.args.size() != 2)
        throw Error(ErrorCode::ArityMismatch, "`" + name + "` expects 2 arguments, got " + std::to_string(node.args.size()));
      auto lhs = typecheck_pattern(schema, node.args[0], vars);
      auto rhs = typecheck_pattern(schema, node.args[1], vars);
      if (is_comparison(node.op)) {
        if (!schema.is_primitive(lhs) || lhs != rhs) {
          throw Error(ErrorCode::SortMismatch,
                      "`" + name + "` compares primitives of one sort, got " + sort_name(schema, lhs) + " and "
                        + sort_name(schema, rhs));
        }
        return Schema::primitive_sort(PrimitiveKind::Bool);
      }
      auto i64 = Schema::primitive_sort(PrimitiveKind::Int64);
      for (auto [pos, sort] : {std::pair{0, lhs}, std::pair{1, rhs}}) {
        if (sort != i64) {
          throw Error(ErrorCode::SortMismatch,
                      "argument " + std::to_string(pos) + " of `" + name + "` expects sort i64 but got "
                        + sort_name(schema, sort));
        }
      }
      return i64;
    }
  }, pattern.node);
}

SortId typecheck_pattern(const Schema &schema, const Pattern &pattern)
{
  VarSorts vars;
  return typecheck_pattern(schema, pattern, vars);
}

void collect_vars(const Pattern &pattern, VarSorts &vars)
{
  std::visit([&] (const auto &node) {
    using T = std::decay_t< decltype(node) >;
    if constexpr (std::is_same_v< T, Pattern::Var >) {
      vars.emplace(node.name, node.sort);
    } else if constexpr (std::is_same_v< T, Pattern::Apply > || std::is_same_v< T, Pattern::Prim >) {
      for (const auto &arg : node.args)
        collect_vars(arg, vars);
    }
  }, pattern.node);
}

bool contains_prim(const Pattern &pattern)
{
  return std::visit([&] (const auto &node) -> bool {
    using T = std::decay_t< decltype(node) >;
    if constexpr (std::is_same_v< T, Pattern::Prim >) {
      return true;
    } else if constexpr (std::is_same_v< T, Pattern::Apply >) {
      for (const auto &arg : node.args)
        if (contains_prim(arg))
          return true;
      return false;
    } else {
      return false;
    }
  }, pattern.node);
}

bool is_ground(const Pattern &pattern)
{
  VarSorts vars;
  collect_vars(pattern, vars);
  return vars.empty();
}

std::string to_sexpr(const Schema &schema, const Pattern &pattern)
{
  return std::visit([&] (const auto &node) -> std::string {
    using T = std::decay_t< decltype(node) >;
    if constexpr (std::is_same_v< T, PrimitiveValue >) {
      return to_sexpr(node);
    } else if constexpr (std::is_same_v< T, Pattern::Var > || std::is_same_v< T, Pattern::Ref >) {
      return node.name;
    } else {
      std::string out = "(";
      if constexpr (std::is_same_v< T, Pattern::Apply >)
        out += schema.function_name(node.function);
      else
        out += primitive_op_name(node.op);
      for (const auto &arg : node.args)
        out += " " + to_sexpr(schema, arg);
      return out + ")";
    }
  }, pattern.node);
}

std::string to_sexpr(const Schema &schema, const Fact &fact)
{
  if (auto *eq = std::get_if< EqFact >(&fact))
    return "(= " + to_sexpr(schema, eq->lhs) + " " + to_sexpr(schema, eq->rhs) + ")";
  return to_sexpr(schema, std::get< ExistsFact >(fact).pattern);
}

std::string to_sexpr(const Schema &schema, const Action &action)
{
  if (auto *u = std::get_if< UnionAction >(&action))
    return "(union " + to_sexpr(schema, u->lhs) + " " + to_sexpr(schema, u->rhs) + ")";
  const auto &let = std::get< LetAction >(action);
  return "(let " + let.name + " " + to_sexpr(schema, let.value) + ")";
}

VarSorts validate_query(const Schema &schema, const std::vector< Fact > &query)
{
  VarSorts sorts;
  VarSorts bound;
  for (const auto &fact : query) {
    if (const auto *exists = std::get_if< ExistsFact >(&fact)) {
      const auto &p = exists->pattern;
      if (p.is< Pattern::Var >())
        throw Error(ErrorCode::DegeneratePattern, "bare variable `" + p.as< Pattern::Var >().name + "` matches every e-class");
      if (contains_prim(p))
        throw Error(ErrorCode::InvalidPattern, "primitive calls are only allowed in equality facts: " + to_sexpr(schema, p));
      typecheck_pattern(schema, p, sorts);
      collect_vars(p, bound);
      continue;
    }

    const auto &eq = std::get< EqFact >(fact);
    check_query_side(schema, eq.lhs, true);
    check_query_side(schema, eq.rhs, true);
    auto lhs_sort = typecheck_pattern(schema, eq.lhs, sorts);
    auto rhs_sort = typecheck_pattern(schema, eq.rhs, sorts);
    if (lhs_sort != rhs_sort) {
      throw Error(ErrorCode::SortMismatch,
                  "equality relates sort " + sort_name(schema, lhs_sort) + " with sort " + sort_name(schema, rhs_sort)
                    + " in " + to_sexpr(schema, fact));
    }

    const Pattern *first = nullptr;
    const Pattern *second = nullptr;
    if (anchorable(eq.lhs, bound)) {
      first = &eq.lhs, second = &eq.rhs;
    } else if (anchorable(eq.rhs, bound)) {
      first = &eq.rhs, second = &eq.lhs;
    } else if (eq.lhs.is< Pattern::Apply >()) {
      first = &eq.lhs, second = &eq.rhs;
    } else if (eq.rhs.is< Pattern::Apply >()) {
      first = &eq.rhs, second = &eq.lhs;
    } else {
      throw Error(ErrorCode::UnboundVariable,
                  "neither side of " + to_sexpr(schema, fact) + " can be evaluated from bound variables");
    }
    collect_vars(*first, bound);
    if (second->is< Pattern::Prim >())
      require_bound(schema, *second, bound, "primitive call");
    collect_vars(*second, bound);
  }
  return bound;
}

Rule make_rule(const Schema &schema, std::vector< Fact > query, std::vector< Action > actions, std::string name)
{
  auto bound = validate_query(schema, query);
  auto sorts = bound;

  for (const auto &action : actions) {
    if (const auto *u = std::get_if< UnionAction >(&action)) {
      require_bound(schema, u->lhs, bound, "union side");
      require_bound(schema, u->rhs, bound, "union side");
      auto lhs_sort = typecheck_pattern(schema, u->lhs, sorts);
      auto rhs_sort = typecheck_pattern(schema, u->rhs, sorts);
      if (lhs_sort != rhs_sort) {
        throw Error(ErrorCode::SortMismatch,
                    "union relates sort " + sort_name(schema, lhs_sort) + " with sort " + sort_name(schema, rhs_sort)
                      + " in " + to_sexpr(schema, action));
      }
    } else {
      const auto &let = std::get< LetAction >(action);
      require_bound(schema, let.value, bound, "let value");
      auto sort = typecheck_pattern(schema, let.value, sorts);
      if (bound.count(let.name))
        throw Error(ErrorCode::DuplicateName, "`" + let.name + "` is already bound in this rule");
      bound.emplace(let.name, sort);
      sorts.emplace(let.name, sort);
    }
  }

  if (name.empty()) {
    name = "(rule (";
    for (std::size_t i = 0; i < query.size(); ++i)
      name += (i ? " " : "") + to_sexpr(schema, query[i]);
    name += ") (";
    for (std::size_t i = 0; i < actions.size(); ++i)
      name += (i ? " " : "") + to_sexpr(schema, actions[i]);
    name += "))";
  }
  return Rule{std::move(name), std::move(query), std::move(actions)};
}

Rule make_rewrite(const Schema &schema, Pattern lhs, Pattern rhs, std::vector< Fact > conditions)
{
  if (!lhs.is< Pattern::Apply >()) {
    throw Error(ErrorCode::DegeneratePattern,
                "rewrite left-hand side " + to_sexpr(schema, lhs) + " must be a function application");
  }

  VarSorts sorts;
  auto lhs_sort = typecheck_pattern(schema, lhs, sorts);
  auto rhs_sort = typecheck_pattern(schema, rhs, sorts);
  if (lhs_sort != rhs_sort) {
    throw Error(ErrorCode::SortMismatch,
                "rewrite sides have different sorts: " + to_sexpr(schema, lhs) + " is " + sort_name(schema, lhs_sort)
                  + " but " + to_sexpr(schema, rhs) + " is " + sort_name(schema, rhs_sort));
  }

  std::string name = "(rewrite " + to_sexpr(schema, lhs) + " " + to_sexpr(schema, rhs);
  if (!conditions.empty()) {
    name += " :when (";
    for (std::size_t i = 0; i < conditions.size(); ++i)
      name += (i ? " " : "") + to_sexpr(schema, conditions[i]);
    name += ")";
  }
  name += ")";

  std::vector< Fact > query;
  query.reserve(conditions.size() + 1);
  query.emplace_back(ExistsFact{lhs});
  for (auto &c : conditions)
    query.push_back(std::move(c));

  std::vector< Action > actions;
  actions.emplace_back(UnionAction{std::move(lhs), std::move(rhs)});
  return make_rule(schema, std::move(query), std::move(actions), std::move(name));
}

} // namespace eqsat
