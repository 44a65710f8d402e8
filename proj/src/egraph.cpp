#include <eqsat/egraph.hpp>

#include <eqsat/error.hpp>

#include <algorithm>
#include <limits>
#include <unordered_set>

namespace eqsat {

namespace {

  constexpr SortId no_sort{std::numeric_limits< std::uint32_t >::max()};

  inline void hash_combine(std::size_t &seed, std::size_t v)
  {
    seed ^= v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
  }

  std::string describe(const Schema &schema, const ENode &node)
  {
    if (node.literal)
      return to_sexpr(*node.literal);
    std::string out = "(" + schema.function_name(node.op);
    for (auto child : node.children)
      out += " #" + std::to_string(child.value);
    return out + ")";
  }

} // namespace

std::size_t ENodeHash::operator()(const ENode &node) const noexcept
{
  std::size_t seed = std::hash< FunctionId >{}(node.op);
  for (auto child : node.children)
    hash_combine(seed, std::hash< EClassId >{}(child));
  if (node.literal)
    hash_combine(seed, hash_value(*node.literal));
  return seed;
}

EGraph::EGraph(Schema schema) : _schema(std::move(schema)) {}

void EGraph::validate(const ENode &node) const
{
  const auto &decl = _schema.function(node.op);
  if (decl.literal_of.has_value() != node.literal.has_value()) {
    throw Error(ErrorCode::InvalidArgument,
                node.literal ? "literal value attached to non-literal function `" + decl.name + "`"
                             : "literal constructor `" + decl.name + "` needs a value");
  }
  if (node.literal && node.literal->kind() != *decl.literal_of) {
    throw Error(ErrorCode::SortMismatch,
                "literal " + to_sexpr(*node.literal) + " is not of sort " + decl.name);
  }
  if (node.children.size() != decl.params.size()) {
    throw Error(ErrorCode::ArityMismatch,
                "`" + decl.name + "` expects " + std::to_string(decl.params.size()) + " children, got "
                  + std::to_string(node.children.size()));
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const auto &child = eclass(node.children[i]);
    if (child.nodes.empty())
      throw Error(ErrorCode::InvalidId, "e-class " + std::to_string(node.children[i].value) + " holds no nodes");
    if (child.sort != decl.params[i]) {
      throw Error(ErrorCode::SortMismatch,
                  "child " + std::to_string(i) + " of `" + decl.name + "` expects sort "
                    + _schema.sort_name(decl.params[i]) + " but e-class " + std::to_string(child.id.value)
                    + " has sort " + _schema.sort_name(child.sort));
    }
  }
}

ENode EGraph::canonicalize(ENode node) const
{
  for (auto &child : node.children)
    child = find(child);
  return node;
}

EClassId EGraph::add_node(ENode node)
{
  validate(node);
  node = canonicalize(std::move(node));
  if (auto it = _memo.find(node); it != _memo.end())
    return find_mut(it->second);

  if (_node_total >= _node_limit) {
    throw Error(ErrorCode::NodeBudgetExceeded,
                "e-graph reached its limit of " + std::to_string(_node_limit) + " e-nodes");
  }

  auto id = _uf.make_set();
  auto sort = _schema.function(node.op).result;

  std::vector< EClassId > seen;
  for (auto child : node.children) {
    if (std::find(seen.begin(), seen.end(), child) != seen.end())
      continue;
    seen.push_back(child);
    _classes[child.index()].parents.emplace_back(node, id);
  }

  _memo.emplace(node, id);
  _classes.push_back(EClass{id, sort, {std::move(node)}, {}});
  ++_node_total;
  ++_nodes_created;
  return id;
}

EClassId EGraph::add(FunctionId op, std::vector< EClassId > children)
{
  return add_node(ENode{op, std::move(children), std::nullopt});
}

EClassId EGraph::add_literal(PrimitiveValue value)
{
  return add_node(ENode::make_literal(std::move(value)));
}

EClassId EGraph::add_term(const Term &term)
{
  return std::visit([&] (const auto &node) -> EClassId {
    using T = std::decay_t< decltype(node) >;
    if constexpr (std::is_same_v< T, PrimitiveValue >) {
      return add_literal(node);
    } else if constexpr (std::is_same_v< T, Term::Ref >) {
      throw Error(ErrorCode::UnknownName, "cannot add unresolved name `" + node.name + "`");
    } else {
      std::vector< EClassId > children;
      children.reserve(node.args.size());
      for (const auto &arg : node.args)
        children.push_back(add_term(arg));
      return add(node.function, std::move(children));
    }
  }, term.node);
}

std::optional< EClassId > EGraph::lookup(const ENode &node) const
{
  for (auto child : node.children)
    if (!_uf.contains(child))
      return std::nullopt;
  if (auto it = _memo.find(canonicalize(node)); it != _memo.end())
    return find(it->second);
  return std::nullopt;
}

std::optional< EClassId > EGraph::lookup_term(const Term &term) const
{
  return std::visit([&] (const auto &node) -> std::optional< EClassId > {
    using T = std::decay_t< decltype(node) >;
    if constexpr (std::is_same_v< T, PrimitiveValue >) {
      return lookup(ENode::make_literal(node));
    } else if constexpr (std::is_same_v< T, Term::Ref >) {
      return std::nullopt;
    } else {
      ENode probe{node.function, {}, std::nullopt};
      for (const auto &arg : node.args) {
        auto child = lookup_term(arg);
        if (!child)
          return std::nullopt;
        probe.children.push_back(*child);
      }
      return lookup(probe);
    }
  }, term.node);
}

EClassId EGraph::merge(EClassId a, EClassId b)
{
  a = find_mut(a);
  b = find_mut(b);
  if (a == b)
    return a;

  const auto sort_a = _classes[a.index()].sort;
  const auto sort_b = _classes[b.index()].sort;
  if (sort_a != sort_b) {
    throw Error(ErrorCode::SortMismatch,
                "cannot union e-class " + std::to_string(a.value) + " of sort " + _schema.sort_name(sort_a)
                  + " with e-class " + std::to_string(b.value) + " of sort " + _schema.sort_name(sort_b));
  }

  auto root = _uf.merge(a, b);
  auto other = root == a ? b : a;

  auto &into = _classes[root.index()];
  auto &from = _classes[other.index()];

  // Every node with `other` as a child is now non-canonical.
  _pending.insert(_pending.end(), from.parents.begin(), from.parents.end());

  into.nodes.insert(into.nodes.end(), std::make_move_iterator(from.nodes.begin()),
                    std::make_move_iterator(from.nodes.end()));
  into.parents.insert(into.parents.end(), std::make_move_iterator(from.parents.begin()),
                      std::make_move_iterator(from.parents.end()));
  from.nodes.clear();
  from.parents.clear();

  _dirty = true;
  ++_merges;
  return root;
}

void EGraph::process_pending()
{
  while (!_pending.empty()) {
    auto todo = std::move(_pending);
    _pending.clear();
    for (auto &[node, cls] : todo) {
      auto canon = canonicalize(std::move(node));
      auto owner = find_mut(cls);
      auto [it, inserted] = _memo.try_emplace(std::move(canon), owner);
      if (!inserted) {
        auto existing = find_mut(it->second);
        if (existing != owner)
          merge(existing, owner);
      }
    }
  }
}

void EGraph::normalize_classes()
{
  _memo.clear();
  _node_total = 0;
  for (auto &cls : _classes) {
    if (find(cls.id) != cls.id || cls.nodes.empty())
      continue;

    std::unordered_set< ENode, ENodeHash > seen;
    std::vector< ENode > nodes;
    nodes.reserve(cls.nodes.size());
    for (auto &node : cls.nodes) {
      auto canon = canonicalize(std::move(node));
      if (seen.insert(canon).second)
        nodes.push_back(std::move(canon));
    }
    cls.nodes = std::move(nodes);
    for (const auto &node : cls.nodes) {
      [[maybe_unused]] auto [_, fresh] = _memo.emplace(node, cls.id);
      // A collision here would mean a congruence was missed by the worklist.
      if (!fresh)
        throw std::logic_error("e-graph congruence invariant violated during rebuild");
    }
    _node_total += cls.nodes.size();

    std::unordered_set< ENode, ENodeHash > seen_parents;
    std::vector< std::pair< ENode, EClassId > > parents;
    for (auto &[node, owner] : cls.parents) {
      auto canon = canonicalize(std::move(node));
      if (seen_parents.insert(canon).second)
        parents.emplace_back(std::move(canon), find(owner));
    }
    cls.parents = std::move(parents);
  }
}

std::size_t EGraph::rebuild()
{
  if (!_dirty)
    return 0;
  auto before = _merges;
  process_pending();
  normalize_classes();
  _dirty = false;
  return static_cast< std::size_t >(_merges - before);
}

std::vector< EClassId > EGraph::class_ids() const
{
  std::vector< EClassId > out;
  for (const auto &cls : _classes)
    if (!cls.nodes.empty() && find(cls.id) == cls.id)
      out.push_back(cls.id);
  return out;
}

std::size_t EGraph::class_count() const
{
  std::size_t n = 0;
  for (const auto &cls : _classes)
    if (!cls.nodes.empty() && find(cls.id) == cls.id)
      ++n;
  return n;
}

std::optional< PrimitiveValue > EGraph::literal_value(EClassId id) const
{
  for (const auto &node : eclass(id).nodes)
    if (node.literal)
      return node.literal;
  return std::nullopt;
}

EGraph EGraph::restore(Schema schema, std::span< const ClassSnapshot > classes)
{
  EGraph graph(std::move(schema));

  std::size_t max_id = 0;
  for (const auto &cls : classes)
    max_id = std::max(max_id, cls.id.index() + 1);
  for (std::size_t i = 0; i < max_id; ++i) {
    auto id = graph._uf.make_set();
    graph._classes.push_back(EClass{id, no_sort, {}, {}});
  }

  for (const auto &snap : classes) {
    auto &cls = graph._classes[snap.id.index()];
    if (!cls.nodes.empty() || cls.sort != no_sort)
      throw Error(ErrorCode::InvalidArgument, "e-class " + std::to_string(snap.id.value) + " listed twice");
    if (snap.nodes.empty())
      throw Error(ErrorCode::InvalidArgument, "e-class " + std::to_string(snap.id.value) + " has no nodes");
    graph.schema().sort(snap.sort);
    cls.sort = snap.sort;
    cls.nodes = snap.nodes;
  }

  for (const auto &snap : classes) {
    for (const auto &node : snap.nodes) {
      graph.validate(node);
      const auto &decl = graph._schema.function(node.op);
      if (decl.result != snap.sort) {
        throw Error(ErrorCode::SortMismatch,
                    describe(graph._schema, node) + " has sort " + graph._schema.sort_name(decl.result)
                      + " but sits in e-class " + std::to_string(snap.id.value) + " of sort "
                      + graph._schema.sort_name(snap.sort));
      }
      if (!graph._memo.emplace(node, snap.id).second)
        throw Error(ErrorCode::InvalidArgument, "node " + describe(graph._schema, node) + " appears twice");
      std::vector< EClassId > seen;
      for (auto child : node.children) {
        if (std::find(seen.begin(), seen.end(), child) != seen.end())
          continue;
        seen.push_back(child);
        graph._classes[child.index()].parents.emplace_back(node, snap.id);
      }
      ++graph._node_total;
      ++graph._nodes_created;
    }
  }
  return graph;
}

} // namespace eqsat
