#pragma once

#include <eqsat/egraph.hpp>
#include <eqsat/schema.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace eqsat {

// Per-function node costs. Functions without an override use their declared
// cost; literal nodes cost 1.
struct CostModel
{
  std::map< std::string, std::int64_t, std::less<> > overrides;

  std::int64_t cost_of(const FunctionDecl &decl) const;
};

struct Extraction
{
  Term term;
  std::int64_t cost = 0;
};

// Sum of node costs over the whole tree (shared subterms counted each time).
std::int64_t term_cost(const Schema &schema, const Term &term, const CostModel &model = {});

/// Minimum-cost term per e-class.
///
/// Costs are computed bottom-up to a fixpoint, so cyclic classes are handled:
/// a node only becomes usable once all of its children have finite cost.
/// Among equally cheap nodes the choice is ordered by function declaration
/// index, then literal value, then the chosen terms of the children.
class Extractor
{
public:
  Extractor(const EGraph &egraph, CostModel model = {});

  std::optional< std::int64_t > best_cost(EClassId id) const;

  // Throws NoFiniteTerm if the class has no finite term.
  Extraction extract(EClassId id) const;

private:
  int compare_classes(EClassId a, EClassId b) const;
  Term build(EClassId id) const;

  const EGraph &_egraph;
  CostModel _model;
  std::vector< std::optional< std::int64_t > > _cost;
  std::vector< const ENode * > _choice;
  mutable std::map< std::pair< EClassId, EClassId >, int > _order_memo;
};

Extraction extract(const EGraph &egraph, EClassId root, const CostModel &model = {});

} // namespace eqsat
