#pragma once

#include <eqsat/egraph.hpp>

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eqsat {

using Bindings = std::vector< std::pair< std::string, EClassId > >;

// {"classes":[{"id":N,"sort":S,"nodes":[{"op":F,"children":[...],"literal":V}]}],
//  "bindings":{name:N}}
//
// Canonical classes only, ascending by id; nodes in class order; bindings in
// definition order and mapped through find. "literal" is present only on
// literal nodes (i64 -> number, String -> string, bool -> true/false,
// Unit -> null). Output is compact, with no whitespace.
std::string export_json(const EGraph &egraph, std::span< const std::pair< std::string, EClassId > > bindings);

struct ImportedGraph
{
  EGraph egraph;
  Bindings bindings;
};

// Inverse of export_json against a schema that declares every sort and
// function the document mentions. Class ids are preserved exactly.
ImportedGraph import_json(Schema schema, std::string_view document);

} // namespace eqsat
