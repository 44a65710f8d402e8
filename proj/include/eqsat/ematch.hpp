#pragma once

#include <eqsat/egraph.hpp>
#include <eqsat/pattern.hpp>

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace eqsat {

// Variable name -> canonical class id.
using Substitution = std::map< std::string, EClassId, std::less<> >;

struct Match
{
  EClassId root;
  Substitution subst;

  auto operator<=>(const Match &) const = default;
  bool operator==(const Match &) const = default;
};

std::string to_string(const Substitution &subst);

// All (root, substitution) pairs under which `pattern` is represented,
// deduplicated and sorted by root then substitution. Expects a rebuilt graph.
std::vector< Match > ematch(const EGraph &egraph, const Pattern &pattern);

// Substitutions satisfying every fact, evaluated left to right. Sorted and
// deduplicated; never mutates the graph.
std::vector< Substitution > match_query(const EGraph &egraph, std::span< const Fact > query);

bool check(const EGraph &egraph, const Fact &fact);
bool check(const EGraph &egraph, std::span< const Fact > facts);

// Adds the pattern under `subst` and returns its class. Primitive calls are
// evaluated from the literal held by each argument class; returns nullopt if
// an argument class holds no literal.
std::optional< EClassId > instantiate(EGraph &egraph, const Pattern &pattern, const Substitution &subst);

// Runs the rule's actions once per substitution. Returns how many
// substitutions had all of their actions executed. Does not rebuild.
std::size_t apply_matches(EGraph &egraph, const Rule &rule, std::span< const Substitution > matches);

// Snapshot semantics: every match is collected before any action runs.
std::size_t apply_rule(EGraph &egraph, const Rule &rule);

} // namespace eqsat
