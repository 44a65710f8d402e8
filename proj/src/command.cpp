#include <eqsat/command.hpp>

namespace eqsat {

namespace {

  [[noreturn]] void fail(const SExpr &at, const std::string &message)
  {
    throw Error(ErrorCode::ParseError, message, at.span);
  }

  const std::string &expect_name(const SExpr &e, std::string_view what)
  {
    if (!e.is_symbol())
      fail(e, "expected " + std::string(what) + " name");
    return e.text;
  }

  std::int64_t expect_cost(const SExpr &kw, const SExpr *value)
  {
    if (!value || value->kind != SExpr::Kind::Integer)
      fail(kw, ":cost needs an integer argument");
    if (value->integer < 1)
      fail(*value, ":cost must be at least 1");
    return value->integer;
  }

  Expr parse_expr(const SExpr &e)
  {
    Expr out;
    out.span = e.span;
    switch (e.kind) {
      case SExpr::Kind::Integer:
        out.node = PrimitiveValue::i64(e.integer);
        break;
      case SExpr::Kind::String:
        out.node = PrimitiveValue::str(e.text);
        break;
      case SExpr::Kind::Symbol:
        if (e.text == "true" || e.text == "false")
          out.node = PrimitiveValue::boolean(e.text == "true");
        else
          out.node = Expr::Ident{e.text};
        break;
      case SExpr::Kind::Keyword:
        fail(e, "unexpected keyword `" + e.text + "` in expression");
      case SExpr::Kind::List: {
        if (e.items.empty())
          fail(e, "empty form");
        if (!e.items.front().is_symbol())
          fail(e.items.front(), "expected a function name at the head of a call");
        Expr::Call call{e.items.front().text, {}};
        for (std::size_t i = 1; i < e.items.size(); ++i)
          call.args.push_back(parse_expr(e.items[i]));
        out.node = std::move(call);
        break;
      }
    }
    return out;
  }

  FactExpr parse_fact(const SExpr &e)
  {
    if (e.is_list() && !e.items.empty() && e.items.front().is_symbol("=")) {
      if (e.items.size() != 3)
        fail(e, "equality fact takes exactly two sides");
      return FactExpr{parse_expr(e.items[1]), parse_expr(e.items[2])};
    }
    return FactExpr{parse_expr(e), std::nullopt};
  }

  std::vector< FactExpr > parse_fact_list(const SExpr &e, std::string_view what)
  {
    if (!e.is_list())
      fail(e, "expected a parenthesized list of " + std::string(what));
    std::vector< FactExpr > out;
    for (const auto &item : e.items)
      out.push_back(parse_fact(item));
    return out;
  }

  ActionExpr parse_action(const SExpr &e)
  {
    if (!e.is_list() || e.items.empty() || !e.items.front().is_symbol())
      fail(e, "expected an action `(union a b)` or `(let name expr)`");
    const auto &head = e.items.front().text;
    if (head == "union") {
      if (e.items.size() != 3)
        fail(e, "union takes exactly two arguments");
      return UnionExpr{parse_expr(e.items[1]), parse_expr(e.items[2])};
    }
    if (head == "let") {
      if (e.items.size() != 3)
        fail(e, "let takes a name and an expression");
      return LetExpr{expect_name(e.items[1], "binding"), parse_expr(e.items[2])};
    }
    fail(e.items.front(), "unknown action `" + head + "`");
  }

  ConstructorSpec parse_constructor(const SExpr &e)
  {
    if (!e.is_list() || e.items.empty())
      fail(e, "expected a constructor `(Name Sort ...)`");
    ConstructorSpec spec;
    spec.name = expect_name(e.items.front(), "constructor");
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      const auto &item = e.items[i];
      if (item.is_keyword()) {
        if (item.text != ":cost")
          fail(item, "unexpected keyword `" + item.text + "` in constructor");
        if (i + 2 != e.items.size())
          fail(item, ":cost must be followed by exactly one integer at the end of the constructor");
        spec.cost = expect_cost(item, &e.items[i + 1]);
        break;
      }
      spec.params.push_back(expect_name(item, "sort"));
    }
    return spec;
  }

  DatatypeCommand parse_datatype(const SExpr &form)
  {
    const auto &items = form.items;
    if (items.size() < 2)
      fail(form, "datatype needs a name");
    DatatypeCommand cmd;
    cmd.name = expect_name(items[1], "datatype");
    for (std::size_t i = 2; i < items.size(); ++i)
      cmd.constructors.push_back(parse_constructor(items[i]));
    return cmd;
  }

  FunctionCommand parse_function(const SExpr &form)
  {
    const auto &items = form.items;
    if (items.size() != 4 && items.size() != 6)
      fail(form, "expected `(function name (Sort ...) Sort [:cost n])`");
    FunctionCommand cmd;
    cmd.name = expect_name(items[1], "function");
    if (!items[2].is_list())
      fail(items[2], "expected a parenthesized list of parameter sorts");
    for (const auto &p : items[2].items)
      cmd.params.push_back(expect_name(p, "sort"));
    cmd.result = expect_name(items[3], "sort");
    if (items.size() == 6) {
      if (!items[4].is_keyword() || items[4].text != ":cost")
        fail(items[4], "expected :cost");
      cmd.cost = expect_cost(items[4], &items[5]);
    }
    return cmd;
  }

  RewriteCommand parse_rewrite(const SExpr &form)
  {
    const auto &items = form.items;
    if (items.size() != 3 && items.size() != 5)
      fail(form, "expected `(rewrite lhs rhs [:when (fact ...)])`");
    RewriteCommand cmd{parse_expr(items[1]), parse_expr(items[2]), {}};
    if (items.size() == 5) {
      if (!items[3].is_keyword() || items[3].text != ":when")
        fail(items[3], "expected :when");
      cmd.when = parse_fact_list(items[4], "facts");
    }
    return cmd;
  }

  RuleCommand parse_rule(const SExpr &form)
  {
    const auto &items = form.items;
    if (items.size() != 3)
      fail(form, "expected `(rule (fact ...) (action ...))`");
    RuleCommand cmd;
    cmd.query = parse_fact_list(items[1], "facts");
    if (!items[2].is_list())
      fail(items[2], "expected a parenthesized list of actions");
    for (const auto &a : items[2].items)
      cmd.actions.push_back(parse_action(a));
    return cmd;
  }

} // namespace

Command parse_command(const SExpr &form)
{
  if (!form.is_list())
    fail(form, "expected a command form `(command ...)`");
  if (form.items.empty())
    fail(form, "empty form");
  const auto &head = form.items.front();
  if (!head.is_symbol())
    fail(head, "expected a command name");

  const auto &items = form.items;
  auto arity = [&] (std::size_t n, std::string_view usage) {
    if (items.size() != n)
      fail(form, "expected `" + std::string(usage) + "`");
  };

  Command cmd;
  cmd.span = form.span;
  const auto &name = head.text;
  if (name == "datatype") {
    cmd.form = parse_datatype(form);
  } else if (name == "function") {
    cmd.form = parse_function(form);
  } else if (name == "let" || name == "define") {
    arity(3, "(" + name + " name expr)");
    cmd.form = LetCommand{expect_name(items[1], "binding"), parse_expr(items[2])};
  } else if (name == "rewrite") {
    cmd.form = parse_rewrite(form);
  } else if (name == "rule") {
    cmd.form = parse_rule(form);
  } else if (name == "run") {
    arity(2, "(run limit)");
    if (items[1].kind != SExpr::Kind::Integer || items[1].integer < 1)
      fail(items[1], "run limit must be a positive integer");
    cmd.form = RunCommand{items[1].integer};
  } else if (name == "check") {
    arity(2, "(check fact)");
    cmd.form = CheckCommand{parse_fact(items[1])};
  } else if (name == "extract") {
    arity(2, "(extract expr)");
    cmd.form = ExtractCommand{parse_expr(items[1])};
  } else {
    fail(head, "unknown command `" + name + "`");
  }
  return cmd;
}

std::vector< Command > parse_program(std::string_view text)
{
  std::vector< Command > out;
  for (const auto &form : read_sexprs(text))
    out.push_back(parse_command(form));
  return out;
}

std::string to_sexpr(const Expr &expr)
{
  return std::visit([] (const auto &node) -> std::string {
    using T = std::decay_t< decltype(node) >;
    if constexpr (std::is_same_v< T, PrimitiveValue >) {
      return to_sexpr(node);
    } else if constexpr (std::is_same_v< T, Expr::Ident >) {
      return node.name;
    } else {
      std::string out = "(" + node.head;
      for (const auto &arg : node.args)
        out += " " + to_sexpr(arg);
      return out + ")";
    }
  }, expr.node);
}

std::string to_sexpr(const FactExpr &fact)
{
  if (fact.rhs)
    return "(= " + to_sexpr(fact.lhs) + " " + to_sexpr(*fact.rhs) + ")";
  return to_sexpr(fact.lhs);
}

std::string to_sexpr(const ActionExpr &action)
{
  if (const auto *u = std::get_if< UnionExpr >(&action))
    return "(union " + to_sexpr(u->lhs) + " " + to_sexpr(u->rhs) + ")";
  const auto &let = std::get< LetExpr >(action);
  return "(let " + let.name + " " + to_sexpr(let.value) + ")";
}

namespace {

  template< typename T, typename F >
  std::string join(const std::vector< T > &items, F &&render)
  {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i)
        out += " ";
      out += render(items[i]);
    }
    return out;
  }

} // namespace

std::string to_sexpr(const Command &command)
{
  return std::visit([] (const auto &c) -> std::string {
    using T = std::decay_t< decltype(c) >;
    if constexpr (std::is_same_v< T, DatatypeCommand >) {
      std::string out = "(datatype " + c.name;
      for (const auto &ctor : c.constructors) {
        out += " (" + ctor.name;
        for (const auto &p : ctor.params)
          out += " " + p;
        if (ctor.cost)
          out += " :cost " + std::to_string(*ctor.cost);
        out += ")";
      }
      return out + ")";
    } else if constexpr (std::is_same_v< T, FunctionCommand >) {
      std::string out = "(function " + c.name + " (" + join(c.params, [] (const auto &p) { return p; }) + ") "
                        + c.result;
      if (c.cost)
        out += " :cost " + std::to_string(*c.cost);
      return out + ")";
    } else if constexpr (std::is_same_v< T, LetCommand >) {
      return "(let " + c.name + " " + to_sexpr(c.value) + ")";
    } else if constexpr (std::is_same_v< T, RewriteCommand >) {
      std::string out = "(rewrite " + to_sexpr(c.lhs) + " " + to_sexpr(c.rhs);
      if (!c.when.empty())
        out += " :when (" + join(c.when, [] (const auto &f) { return to_sexpr(f); }) + ")";
      return out + ")";
    } else if constexpr (std::is_same_v< T, RuleCommand >) {
      return "(rule (" + join(c.query, [] (const auto &f) { return to_sexpr(f); }) + ") ("
             + join(c.actions, [] (const auto &a) { return to_sexpr(a); }) + "))";
    } else if constexpr (std::is_same_v< T, RunCommand >) {
      return "(run " + std::to_string(c.limit) + ")";
    } else if constexpr (std::is_same_v< T, CheckCommand >) {
      return "(check " + to_sexpr(c.fact) + ")";
    } else {
      return "(extract " + to_sexpr(c.term) + ")";
    }
  }, command.form);
}

std::string print_program(std::span< const Command > commands)
{
  std::string out;
  for (const auto &cmd : commands)
    out += to_sexpr(cmd) + "\n";
  return out;
}

} // namespace eqsat
