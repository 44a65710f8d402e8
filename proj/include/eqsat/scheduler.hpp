#pragma once

#include <eqsat/egraph.hpp>
#include <eqsat/pattern.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace eqsat {

struct IterationStats
{
  // Match count per rule, in rule registration order.
  std::vector< std::pair< std::string, std::size_t > > matches;
  std::size_t nodes_added = 0;
  std::size_t merges = 0;
  std::size_t classes_after = 0;
  std::size_t nodes_after = 0;

  bool changed() const { return nodes_added != 0 || merges != 0; }

  bool operator==(const IterationStats &) const = default;
};

struct RunReport
{
  std::size_t iterations_run = 0;
  bool saturated = false;
  std::vector< IterationStats > per_iteration;

  bool operator==(const RunReport &) const = default;
};

// Stable single-line JSON rendering.
std::string to_json(const RunReport &report);

/// Equality saturation: up to `limit` iterations of match-all, apply-all,
/// rebuild. Stops early, with `saturated` set, after an iteration that adds
/// no e-node and merges no classes. Errors from rule actions (overflow, node
/// budget) propagate with the iteration index attached.
RunReport run(EGraph &egraph, std::span< const Rule > rules, std::size_t limit);

} // namespace eqsat
