#pragma once

#include <eqsat/ids.hpp>
#include <eqsat/primitive.hpp>
#include <eqsat/schema.hpp>
#include <eqsat/union_find.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace eqsat {

struct ENode
{
  FunctionId op;
  std::vector< EClassId > children;
  // Present iff `op` is a literal constructor.
  std::optional< PrimitiveValue > literal;

  static ENode make_literal(PrimitiveValue value)
  {
    return ENode{Schema::literal_function(value.kind()), {}, std::move(value)};
  }

  bool operator==(const ENode &) const = default;
};

struct ENodeHash
{
  std::size_t operator()(const ENode &node) const noexcept;
};

struct EClass
{
  EClassId id;
  SortId sort;
  std::vector< ENode > nodes;
  std::vector< std::pair< ENode, EClassId > > parents;
};

// Plain description of one class, used to restore a graph from an export.
struct ClassSnapshot
{
  EClassId id;
  SortId sort;
  std::vector< ENode > nodes;
};

/// Hashconsed e-graph with deferred (worklist) congruence closure.
///
/// `merge` only links the union-find and queues the parents of the absorbed
/// class; congruence is restored by `rebuild`. Between the two, lookups may
/// miss congruent nodes, which at worst creates a class that the next
/// rebuild merges back.
///
/// Class ids are dense and never reused. The lower id wins every merge, and
/// every iteration order is insertion order, so identical operation
/// sequences produce identical graphs.
class EGraph
{
public:
  static constexpr std::size_t default_node_limit = 1'000'000;

  explicit EGraph(Schema schema = Schema());

  Schema &schema() { return _schema; }
  const Schema &schema() const { return _schema; }

  EClassId add_node(ENode node);
  EClassId add(FunctionId op, std::vector< EClassId > children = {});
  EClassId add_literal(PrimitiveValue value);
  EClassId add_term(const Term &term);

  // Pure hashcons probe for the canonical form of `node`.
  std::optional< EClassId > lookup(const ENode &node) const;
  std::optional< EClassId > lookup_term(const Term &term) const;

  EClassId find(EClassId id) const { return _uf.find(id); }

  // Unions the classes of `a` and `b`; both must have the same sort.
  EClassId merge(EClassId a, EClassId b);

  // Restores congruence; returns the number of classes merged.
  std::size_t rebuild();

  bool is_clean() const { return !_dirty; }

  const EClass &eclass(EClassId id) const { return _classes[find(id).index()]; }
  SortId sort_of(EClassId id) const { return eclass(id).sort; }

  // Canonical, non-empty classes in ascending id order.
  std::vector< EClassId > class_ids() const;

  std::size_t class_count() const;
  std::size_t node_count() const { return _node_total; }
  std::size_t id_count() const { return _uf.size(); }

  // Monotone counters used to detect change between two points in time.
  std::uint64_t nodes_created() const { return _nodes_created; }
  std::uint64_t merges_performed() const { return _merges; }

  void set_node_limit(std::size_t limit) { _node_limit = limit; }
  std::size_t node_limit() const { return _node_limit; }

  ENode canonicalize(ENode node) const;

  // First literal node of the class, if any.
  std::optional< PrimitiveValue > literal_value(EClassId id) const;

  static EGraph restore(Schema schema, std::span< const ClassSnapshot > classes);

private:
  void validate(const ENode &node) const;
  EClassId find_mut(EClassId id) { return _uf.find_compress(id); }
  void process_pending();
  void normalize_classes();

  Schema _schema;
  UnionFind _uf;
  std::vector< EClass > _classes;
  std::unordered_map< ENode, EClassId, ENodeHash > _memo;
  std::vector< std::pair< ENode, EClassId > > _pending;
  std::uint64_t _nodes_created = 0;
  std::uint64_t _merges = 0;
  std::size_t _node_total = 0;
  bool _dirty = false;
  std::size_t _node_limit = default_node_limit;
};

} // namespace eqsat
