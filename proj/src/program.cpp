#include <eqsat/program.hpp>

#include <eqsat/ematch.hpp>

namespace eqsat {

namespace {

  using BindingIndex = std::map< std::string, EClassId, std::less<> >;

  void require_identifier(std::string_view name, std::string_view what)
  {
    if (!is_identifier(name) || name == "true" || name == "false")
      throw Error(ErrorCode::InvalidName, "`" + std::string(name) + "` is not a valid " + std::string(what) + " name");
  }

  // Turns command-language expressions into typed patterns. Variable sorts
  // are inferred by repeatedly propagating the sorts fixed by function
  // signatures, arithmetic primitives and equated sides until nothing
  // changes.
  class Resolver
  {
  public:
    Resolver(const EGraph &egraph, const BindingIndex &bindings, bool ground)
        : _egraph(egraph), _schema(egraph.schema()), _bindings(bindings), _ground(ground)
    {}

    template< typename F >
    void infer(F &&pass)
    {
      do {
        _changed = false;
        pass();
      } while (_changed);
    }

    std::optional< SortId > constrain(const Expr &e, std::optional< SortId > expected)
    {
      if (const auto *lit = std::get_if< PrimitiveValue >(&e.node))
        return _schema.sort_of(*lit);

      if (const auto *id = std::get_if< Expr::Ident >(&e.node)) {
        if (!_vars.count(id->name)) {
          if (auto it = _bindings.find(id->name); it != _bindings.end())
            return _egraph.sort_of(it->second);
          if (_ground)
            throw Error(ErrorCode::UnknownName, "unknown name `" + id->name + "`", e.span);
        }
        auto &slot = _vars[id->name];
        if (!slot.span)
          slot.span = e.span;
        if (!slot.sort && expected) {
          slot.sort = expected;
          _changed = true;
        }
        return slot.sort;
      }

      const auto &call = std::get< Expr::Call >(e.node);
      if (auto f = _schema.find_function(call.head)) {
        const auto &decl = _schema.function(*f);
        for (std::size_t i = 0; i < call.args.size(); ++i)
          constrain(call.args[i], i < decl.params.size() ? std::optional(decl.params[i]) : std::nullopt);
        return decl.result;
      }
      if (auto op = primitive_op(call.head)) {
        if (is_comparison(*op)) {
          if (call.args.size() == 2)
            unify(call.args[0], call.args[1]);
          else
            for (const auto &arg : call.args)
              constrain(arg, std::nullopt);
          return _schema.primitive_sort(PrimitiveKind::Bool);
        }
        auto i64 = _schema.primitive_sort(PrimitiveKind::Int64);
        for (const auto &arg : call.args)
          constrain(arg, i64);
        return i64;
      }
      throw Error(ErrorCode::UnknownFunction, "unknown function `" + call.head + "`", e.span);
    }

    void unify(const Expr &a, const Expr &b)
    {
      auto sa = constrain(a, std::nullopt);
      auto sb = constrain(b, sa);
      if (!sa && sb)
        constrain(a, sb);
    }

    void fact(const FactExpr &f)
    {
      if (f.rhs)
        unify(f.lhs, *f.rhs);
      else
        constrain(f.lhs, std::nullopt);
    }

    // Names introduced by `let` actions shadow program bindings.
    void local(const std::string &name, std::optional< SortId > sort)
    {
      auto &slot = _vars[name];
      if (!slot.sort && sort) {
        slot.sort = sort;
        _changed = true;
      }
    }

    Pattern build(const Expr &e) const
    {
      if (const auto *lit = std::get_if< PrimitiveValue >(&e.node))
        return Pattern::literal(*lit);

      if (const auto *id = std::get_if< Expr::Ident >(&e.node)) {
        if (auto v = _vars.find(id->name); v != _vars.end()) {
          if (!v->second.sort)
            throw Error(ErrorCode::AmbiguousSort, "cannot infer the sort of variable `" + id->name + "`",
                        v->second.span ? *v->second.span : e.span);
          return Pattern::var(id->name, *v->second.sort);
        }
        auto bound = _bindings.find(id->name);
        return Pattern::ref(id->name, bound->second, _egraph.sort_of(bound->second));
      }

      const auto &call = std::get< Expr::Call >(e.node);
      std::vector< Pattern > args;
      for (const auto &arg : call.args)
        args.push_back(build(arg));
      if (auto f = _schema.find_function(call.head)) {
        if (_schema.is_literal_function(*f))
          throw Error(ErrorCode::InvalidArgument, "`" + call.head + "` is a sort, not a constructor; write the literal",
                      e.span);
        return Pattern::apply(*f, std::move(args));
      }
      return Pattern::prim(*primitive_op(call.head), std::move(args));
    }

    Fact build_fact(const FactExpr &f) const
    {
      if (f.rhs)
        return EqFact{build(f.lhs), build(*f.rhs)};
      return ExistsFact{build(f.lhs)};
    }

  private:
    struct Slot
    {
      std::optional< SortId > sort;
      std::optional< SourceSpan > span;
    };

    const EGraph &_egraph;
    const Schema &_schema;
    const BindingIndex &_bindings;
    bool _ground;
    bool _changed = false;
    std::map< std::string, Slot, std::less<> > _vars;
  };

  Pattern resolve_ground(const EGraph &egraph, const BindingIndex &bindings, const Expr &e)
  {
    Resolver r(egraph, bindings, true);
    r.infer([&] { r.constrain(e, std::nullopt); });
    auto p = r.build(e);
    typecheck_pattern(egraph.schema(), p);
    return p;
  }

  Rule resolve_rewrite(const EGraph &egraph, const BindingIndex &bindings, const RewriteCommand &cmd)
  {
    Resolver r(egraph, bindings, false);
    r.infer([&] {
      r.unify(cmd.lhs, cmd.rhs);
      for (const auto &f : cmd.when)
        r.fact(f);
    });
    std::vector< Fact > when;
    for (const auto &f : cmd.when)
      when.push_back(r.build_fact(f));
    return make_rewrite(egraph.schema(), r.build(cmd.lhs), r.build(cmd.rhs), std::move(when));
  }

  Rule resolve_rule(const EGraph &egraph, const BindingIndex &bindings, const RuleCommand &cmd)
  {
    Resolver r(egraph, bindings, false);
    for (const auto &a : cmd.actions)
      if (const auto *let = std::get_if< LetExpr >(&a)) {
        require_identifier(let->name, "local");
        r.local(let->name, std::nullopt);
      }
    r.infer([&] {
      for (const auto &f : cmd.query)
        r.fact(f);
      for (const auto &a : cmd.actions) {
        if (const auto *u = std::get_if< UnionExpr >(&a))
          r.unify(u->lhs, u->rhs);
        else
          r.local(std::get< LetExpr >(a).name, r.constrain(std::get< LetExpr >(a).value, std::nullopt));
      }
    });

    std::vector< Fact > query;
    for (const auto &f : cmd.query)
      query.push_back(r.build_fact(f));
    std::vector< Action > actions;
    for (const auto &a : cmd.actions) {
      if (const auto *u = std::get_if< UnionExpr >(&a))
        actions.push_back(UnionAction{r.build(u->lhs), r.build(u->rhs)});
      else
        actions.push_back(LetAction{std::get< LetExpr >(a).name, r.build(std::get< LetExpr >(a).value)});
    }
    return make_rule(egraph.schema(), std::move(query), std::move(actions));
  }

  Fact resolve_check(const EGraph &egraph, const BindingIndex &bindings, const FactExpr &f)
  {
    Resolver r(egraph, bindings, false);
    r.infer([&] { r.fact(f); });
    auto fact = r.build_fact(f);
    validate_query(egraph.schema(), {fact});
    return fact;
  }

  bool same_rule(const Rule &a, const Rule &b)
  {
    return a.name == b.name && a.query == b.query && a.actions == b.actions;
  }

  [[noreturn]] void not_expressible(std::string_view what, std::string_view text)
  {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + " does not resolve to itself in the command language: " + std::string(text));
  }

} // namespace

CommandOutput Program::eval(const Command &command)
{
  try {
    auto out = dispatch(command);
    _history.push_back(command);
    return out;
  } catch (const Error &err) {
    throw err.with_span(command.span);
  }
}

std::vector< CommandOutput > Program::eval_text(std::string_view text)
{
  std::vector< CommandOutput > out;
  for (const auto &cmd : parse_program(text))
    out.push_back(eval(cmd));
  return out;
}

CommandOutput Program::dispatch(const Command &command)
{
  auto &schema = _egraph.schema();
  return std::visit([&] (const auto &c) -> CommandOutput {
    using T = std::decay_t< decltype(c) >;
    if constexpr (std::is_same_v< T, DatatypeCommand >) {
      require_identifier(c.name, "sort");
      for (const auto &ctor : c.constructors)
        require_identifier(ctor.name, "constructor");
      schema.declare_datatype(c.name, c.constructors);
      return {};
    } else if constexpr (std::is_same_v< T, FunctionCommand >) {
      require_identifier(c.name, "function");
      FunctionDecl decl;
      decl.name = c.name;
      for (const auto &p : c.params)
        decl.params.push_back(schema.sort_id(p));
      decl.result = schema.sort_id(c.result);
      if (c.cost) {
        if (*c.cost < 1)
          throw Error(ErrorCode::InvalidArgument, "cost must be at least 1");
        decl.cost = *c.cost;
      }
      schema.declare_function(std::move(decl));
      return {};
    } else if constexpr (std::is_same_v< T, LetCommand >) {
      require_identifier(c.name, "binding");
      if (_binding_index.count(c.name))
        throw Error(ErrorCode::DuplicateName, "`" + c.name + "` is already bound");
      if (schema.find_function(c.name) || primitive_op(c.name))
        throw Error(ErrorCode::DuplicateName, "`" + c.name + "` is already the name of a function");
      auto pattern = resolve_ground(_egraph, _binding_index, c.value);
      auto id = instantiate(_egraph, pattern, {});
      if (!id)
        throw Error(ErrorCode::InvalidArgument, "primitive call has no literal argument");
      _egraph.rebuild();
      _bindings.emplace_back(c.name, *id);
      _binding_index.emplace(c.name, *id);
      return {};
    } else if constexpr (std::is_same_v< T, RewriteCommand >) {
      _rules.push_back(resolve_rewrite(_egraph, _binding_index, c));
      return {};
    } else if constexpr (std::is_same_v< T, RuleCommand >) {
      _rules.push_back(resolve_rule(_egraph, _binding_index, c));
      return {};
    } else if constexpr (std::is_same_v< T, RunCommand >) {
      if (c.limit < 1)
        throw Error(ErrorCode::InvalidArgument, "run limit must be at least 1");
      return eqsat::run(_egraph, _rules, static_cast< std::size_t >(c.limit));
    } else if constexpr (std::is_same_v< T, CheckCommand >) {
      auto fact = resolve_check(_egraph, _binding_index, c.fact);
      return CheckOutcome{eqsat::check(_egraph, fact), to_sexpr(c.fact)};
    } else {
      auto pattern = resolve_ground(_egraph, _binding_index, c.term);
      auto id = instantiate(_egraph, pattern, {});
      if (!id)
        throw Error(ErrorCode::InvalidArgument, "primitive call has no literal argument");
      _egraph.rebuild();
      auto best = eqsat::extract(_egraph, *id);
      auto text = to_sexpr(_egraph.schema(), best.term);
      return Extracted{std::move(best.term), best.cost, std::move(text)};
    }
  }, command.form);
}

SortId Program::declare_datatype(std::string name, std::vector< ConstructorSpec > constructors)
{
  eval(Command{DatatypeCommand{name, std::move(constructors)}, {}});
  return schema().sort_id(name);
}

FunctionId Program::declare_function(std::string name, std::vector< std::string > params, std::string result,
                                     std::optional< std::int64_t > cost)
{
  eval(Command{FunctionCommand{name, std::move(params), std::move(result), cost}, {}});
  return schema().function_id(name);
}

EClassId Program::let(std::string name, const Pattern &value)
{
  typecheck_pattern(schema(), value);
  if (!is_ground(value))
    throw Error(ErrorCode::UnboundVariable, "let value must not contain variables");
  eval(Command{LetCommand{name, to_expr(schema(), value)}, {}});
  return _bindings.back().second;
}

const Rule &Program::rewrite(Pattern lhs, Pattern rhs, std::vector< Fact > when)
{
  auto typed = make_rewrite(schema(), lhs, rhs, when);
  RewriteCommand cmd{to_expr(schema(), lhs), to_expr(schema(), rhs), {}};
  for (const auto &f : when)
    cmd.when.push_back(to_fact_expr(schema(), f));
  if (!same_rule(resolve_rewrite(_egraph, _binding_index, cmd), typed))
    not_expressible("rewrite", typed.name);
  eval(Command{std::move(cmd), {}});
  return _rules.back();
}

const Rule &Program::rule(std::vector< Fact > query, std::vector< Action > actions)
{
  auto typed = make_rule(schema(), query, actions);
  RuleCommand cmd;
  for (const auto &f : query)
    cmd.query.push_back(to_fact_expr(schema(), f));
  for (const auto &a : actions)
    cmd.actions.push_back(to_action_expr(schema(), a));
  if (!same_rule(resolve_rule(_egraph, _binding_index, cmd), typed))
    not_expressible("rule", typed.name);
  eval(Command{std::move(cmd), {}});
  return _rules.back();
}

RunReport Program::run(std::size_t limit)
{
  return std::get< RunReport >(eval(Command{RunCommand{static_cast< std::int64_t >(limit)}, {}}));
}

bool Program::check(const Fact &fact)
{
  validate_query(schema(), {fact});
  auto text = to_fact_expr(schema(), fact);
  if (!(resolve_check(_egraph, _binding_index, text) == fact))
    not_expressible("fact", to_sexpr(schema(), fact));
  return std::get< CheckOutcome >(eval(Command{CheckCommand{std::move(text)}, {}})).passed;
}

Extracted Program::extract(const Pattern &value)
{
  typecheck_pattern(schema(), value);
  if (!is_ground(value))
    throw Error(ErrorCode::UnboundVariable, "extract needs a term without variables");
  return std::get< Extracted >(eval(Command{ExtractCommand{to_expr(schema(), value)}, {}}));
}

Pattern Program::ref(std::string_view name) const
{
  auto id = binding(name);
  if (!id)
    throw Error(ErrorCode::UnknownName, "unknown name `" + std::string(name) + "`");
  return Pattern::ref(std::string(name), *id, _egraph.sort_of(*id));
}

std::optional< EClassId > Program::binding(std::string_view name) const
{
  if (auto it = _binding_index.find(name); it != _binding_index.end())
    return it->second;
  return std::nullopt;
}

std::string Program::program_text() const
{
  return print_program(_history);
}

std::string Program::export_json() const
{
  return eqsat::export_json(_egraph, _bindings);
}

void Program::import_json(std::string_view document)
{
  auto imported = eqsat::import_json(_egraph.schema(), document);
  imported.egraph.set_node_limit(_egraph.node_limit());
  BindingIndex index;
  for (const auto &[name, id] : imported.bindings)
    if (!index.emplace(name, id).second)
      throw Error(ErrorCode::DuplicateName, "`" + name + "` is bound twice");
  _egraph = std::move(imported.egraph);
  _bindings = std::move(imported.bindings);
  _binding_index = std::move(index);
}

Expr to_expr(const Schema &schema, const Pattern &pattern)
{
  return std::visit([&] (const auto &node) -> Expr {
    using T = std::decay_t< decltype(node) >;
    if constexpr (std::is_same_v< T, PrimitiveValue >) {
      if (node.kind() == PrimitiveKind::Unit)
        throw Error(ErrorCode::InvalidArgument, "Unit literals have no form in the command language");
      return Expr::literal(node);
    } else if constexpr (std::is_same_v< T, Pattern::Var > || std::is_same_v< T, Pattern::Ref >) {
      return Expr::ident(node.name);
    } else {
      std::vector< Expr > args;
      for (const auto &arg : node.args)
        args.push_back(to_expr(schema, arg));
      if constexpr (std::is_same_v< T, Pattern::Apply >)
        return Expr::call(schema.function_name(node.function), std::move(args));
      else
        return Expr::call(std::string(primitive_op_name(node.op)), std::move(args));
    }
  }, pattern.node);
}

FactExpr to_fact_expr(const Schema &schema, const Fact &fact)
{
  if (const auto *eq = std::get_if< EqFact >(&fact))
    return FactExpr{to_expr(schema, eq->lhs), to_expr(schema, eq->rhs)};
  return FactExpr{to_expr(schema, std::get< ExistsFact >(fact).pattern), std::nullopt};
}

ActionExpr to_action_expr(const Schema &schema, const Action &action)
{
  if (const auto *u = std::get_if< UnionAction >(&action))
    return UnionExpr{to_expr(schema, u->lhs), to_expr(schema, u->rhs)};
  const auto &let = std::get< LetAction >(action);
  return LetExpr{let.name, to_expr(schema, let.value)};
}

std::string to_string(const CommandOutput &output)
{
  return std::visit([] (const auto &o) -> std::string {
    using T = std::decay_t< decltype(o) >;
    if constexpr (std::is_same_v< T, std::monostate >) {
      return {};
    } else if constexpr (std::is_same_v< T, RunReport >) {
      return "run: " + std::to_string(o.iterations_run) + (o.iterations_run == 1 ? " iteration, " : " iterations, ")
             + (o.saturated ? "saturated" : "not saturated");
    } else if constexpr (std::is_same_v< T, CheckOutcome >) {
      return std::string(o.passed ? "check passed: " : "check failed: ") + o.fact;
    } else {
      return o.text;
    }
  }, output);
}

} // namespace eqsat
