#pragma once

#include <eqsat/command.hpp>
#include <eqsat/egraph.hpp>
#include <eqsat/extract.hpp>
#include <eqsat/json_io.hpp>
#include <eqsat/pattern.hpp>
#include <eqsat/scheduler.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace eqsat {

struct CheckOutcome
{
  bool passed = false;
  // The checked fact as written.
  std::string fact;
};

struct Extracted
{
  Term term;
  std::int64_t cost = 0;
  std::string text;
};

using CommandOutput = std::variant< std::monostate, RunReport, CheckOutcome, Extracted >;

/// Evaluator state for the command language: e-graph (with its schema),
/// program-level bindings, registered rules and the log of commands that
/// evaluated successfully.
///
/// Two entry points share one implementation. `eval` takes parsed commands;
/// the typed methods take engine objects, convert them to the equivalent
/// command, and evaluate that, so `program_text()` always replays to the same
/// state. A typed call whose text form would resolve differently (for
/// example a variable whose declared sort the text language would infer
/// otherwise) is rejected with InvalidArgument.
///
/// Identifiers in commands resolve to program bindings first; any other
/// identifier in a rule or check is a pattern variable whose sort is
/// inferred from where it occurs.
class Program
{
public:
  Program() = default;

  // Errors are annotated with the command's span unless they carry one.
  CommandOutput eval(const Command &command);
  std::vector< CommandOutput > eval_text(std::string_view text);

  SortId declare_datatype(std::string name, std::vector< ConstructorSpec > constructors);
  FunctionId declare_function(std::string name, std::vector< std::string > params, std::string result,
                              std::optional< std::int64_t > cost = std::nullopt);
  // `value` must be ground; program bindings appear as Pattern::Ref.
  EClassId let(std::string name, const Pattern &value);
  const Rule &rewrite(Pattern lhs, Pattern rhs, std::vector< Fact > when = {});
  const Rule &rule(std::vector< Fact > query, std::vector< Action > actions);
  RunReport run(std::size_t limit);
  bool check(const Fact &fact);
  Extracted extract(const Pattern &value);

  // Pattern referring to a program binding; throws UnknownName.
  Pattern ref(std::string_view name) const;
  std::optional< EClassId > binding(std::string_view name) const;
  const Bindings &bindings() const { return _bindings; }

  const EGraph &egraph() const { return _egraph; }
  const Schema &schema() const { return _egraph.schema(); }
  const std::vector< Rule > &rules() const { return _rules; }
  const std::vector< Command > &history() const { return _history; }

  // The history, one command per line.
  std::string program_text() const;

  std::string export_json() const;
  // Replaces the e-graph and bindings with a document produced by
  // export_json. Sorts and functions must already be declared; rules and
  // history are kept.
  void import_json(std::string_view document);

  void set_node_limit(std::size_t limit) { _egraph.set_node_limit(limit); }

private:
  CommandOutput dispatch(const Command &command);

  EGraph _egraph;
  Bindings _bindings;
  std::map< std::string, EClassId, std::less<> > _binding_index;
  std::vector< Rule > _rules;
  std::vector< Command > _history;
};

// Text-language rendering of engine objects. Variables and references print
// as their names.
Expr to_expr(const Schema &schema, const Pattern &pattern);
FactExpr to_fact_expr(const Schema &schema, const Fact &fact);
ActionExpr to_action_expr(const Schema &schema, const Action &action);

std::string to_string(const CommandOutput &output);

} // namespace eqsat
